#include <algorithm>

#include "reduction_detail.hpp"

namespace fixpoint {

std::string_view case_name(CaseId c) {
  switch (c) {
    case CaseId::C1InitialBot: return "C1-bot";
    case CaseId::C1InitialEq: return "C1-eq";
    case CaseId::C2Ind: return "C2";
    case CaseId::C3Explicit: return "C3";
    case CaseId::C4QFreeCut: return "C4";
    case CaseId::C5LowerCut: return "C5";
    case CaseId::C6MergeChain: return "C6";
    case CaseId::C7CutToChain: return "C7";
    case CaseId::C8DeepCut: return "C8";
    case CaseId::C9ChainSP: return "C9";
  }
  return "?";
}

int case_number(CaseId c) {
  switch (c) {
    case CaseId::C1InitialBot:
    case CaseId::C1InitialEq: return 1;
    default: return static_cast<int>(c);
  }
}

std::string_view propagation_name(Propagation p) {
  switch (p) {
    case Propagation::AllTrueImplies: return "all-true-implies";
    case Propagation::BranchForEachWitness: return "branch-for-each-witness";
    case Propagation::SingleRewrite: return "single-rewrite";
  }
  return "?";
}

namespace detail {

Path relative(const Path& base, const Path& full) {
  if (full.size() < base.size() || !std::equal(base.begin(), base.end(), full.begin()))
    throw ReductionError("internal: path " + path_str(full) + " is not above " + path_str(base));
  return Path(full.begin() + static_cast<long>(base.size()), full.end());
}

bool topmost_first(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

bool lowest_first(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool matches_connective(Rule r, Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::Q: return r == Rule::LQ || r == Rule::RQ;
    case K::Or: return r == Rule::LOr || r == Rule::ROr;
    case K::And: return r == Rule::LAnd || r == Rule::RAnd;
    case K::Imp: return r == Rule::LImp || r == Rule::RImp;
    case K::Ex: return r == Rule::LEx || r == Rule::REx;
    case K::All: return r == Rule::LAll || r == Rule::RAll;
    default: return false;
  }
}

ProofPtr rep(Sequent s, ProofPtr p) { return make_node(std::move(s), Rule::Rep, {}, {std::move(p)}); }
ProofPtr e_rule(Sequent s, ProofPtr p) { return make_node(std::move(s), Rule::E, {}, {std::move(p)}); }
ProofPtr cut(Sequent s, ProofPtr left, ProofPtr right) {
  return make_node(std::move(s), Rule::Cut, {}, {std::move(left), std::move(right)});
}
ProofPtr chain(Sequent s, std::vector<ProofPtr> prems) {
  return make_node(std::move(s), Rule::Chain, {}, std::move(prems));
}

ProofPtr replace_succ_up(const ProofPtr& n, const Formula& fold, const Formula& cnew) {
  if (n->seq.succ != fold) throw ReductionError("internal: succedent mismatch while rewriting upwards");
  const Sequent s = n->seq.with_succ(cnew);
  const std::size_t k = n->premises.size();
  bool inherits = k > 0;
  for (std::size_t i = 0; i < k; ++i)
    if (inherits_succedent(n->rule, i, k) && n->premises[i]->seq.succ != fold) inherits = false;
  if (inherits) {
    ProofNode c = *n;
    c.seq = s;
    for (std::size_t i = 0; i < k; ++i)
      if (inherits_succedent(n->rule, i, k)) c.premises[i] = replace_succ_up(n->premises[i], fold, cnew);
    return std::make_shared<const ProofNode>(std::move(c));
  }
  if ((n->rule == Rule::InitialEq || n->rule == Rule::InitialBot) && is_initial_sequent(s)) {
    const bool bot = std::any_of(s.ante.begin(), s.ante.end(), is_bot);
    return make_node(s, bot ? Rule::InitialBot : Rule::InitialEq, {}, {});
  }
  return cut(s, n, make_node(s.with(fold), Rule::InitialBot, {}, {}));
}

std::optional<Path> e_below(const ProofPtr& root, const Path& at) {
  for (std::size_t k = at.size(); k-- > 0;) {
    const Path p = prefix(at, k);
    const Rule r = node_at(root, p).rule;
    if (r == Rule::E) return p;
    if (r == Rule::Chain) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

using namespace detail;

ProofPtr rewrite_down(const ProofPtr& root, const Path& path, ProofPtr replacement,
                      const std::optional<Formula>& new_succ, const std::vector<Formula>& add_ante) {
  ProofPtr cur = std::move(replacement);
  for (std::size_t k = path.size(); k-- > 0;) {
    const ProofNode& par = node_at(root, prefix(path, k));
    const std::size_t i = path[k];
    const std::size_t n = par.premises.size();
    Sequent seq = par.seq;
    for (const auto& f : add_ante) seq = seq.with(f);
    if (new_succ) {
      if (inherits_succedent(par.rule, i, n)) {
        seq = seq.with_succ(*new_succ);
      } else if ((par.rule == Rule::Cut && i == 0) || (par.rule == Rule::Chain && i + 1 < n)) {
        // the cut formula is gone, so the rule collapses
        cur = rep(seq.with_succ(*new_succ), cur);
        continue;
      } else {
        throw ReductionError("cannot carry a new succedent through " + std::string(rule_tag(par.rule)) + " at " +
                             path_str(prefix(path, k)));
      }
    }
    ProofNode c = par;
    c.seq = std::move(seq);
    c.premises[i] = cur;
    cur = std::make_shared<const ProofNode>(std::move(c));
  }
  return cur;
}

ProofPtr prune(const ProofPtr& root, const Path& path, ProofPtr replacement) {
  const Formula f = replacement->seq.succ;
  return rewrite_down(root, path, std::move(replacement), f, {});
}

// ---- suitable cuts ----

namespace {

std::size_t inheriting_premise(const ProofNode& n) {
  switch (n.rule) {
    case Rule::Cut: return 1;
    case Rule::Chain: return n.premises.size() - 1;
    default: return 0;
  }
}

std::optional<Path> left_boundary(const ProofPtr& root, Path at, const Formula& a) {
  for (;;) {
    const ProofNode& m = node_at(root, at);
    if (!is_end_piece_rule(m.rule)) {
      if (is_right_logical(m.rule) && matches_connective(m.rule, a.kind()) && m.seq.succ == a) return at;
      return std::nullopt;
    }
    at.push_back(inheriting_premise(m));
  }
}

std::optional<Path> right_boundary(const ProofPtr& root, const Path& at, const Formula& a) {
  const ProofNode& m = node_at(root, at);
  if (!m.seq.has(a)) return std::nullopt;
  if (!is_end_piece_rule(m.rule)) {
    if (is_left_logical(m.rule) && matches_connective(m.rule, a.kind()) && m.data.principal == a) return at;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < m.premises.size(); ++i)
    if (auto r = right_boundary(root, append(at, i), a)) return r;
  return std::nullopt;
}

std::vector<NodeInfo> end_piece_sorted(const ProofPtr& root, bool lowest) {
  std::vector<NodeInfo> ep;
  for (auto& info : annotate(root))
    if (info.end_piece) ep.push_back(std::move(info));
  std::stable_sort(ep.begin(), ep.end(), [&](const NodeInfo& a, const NodeInfo& b) {
    return lowest ? lowest_first(a.path, b.path) : topmost_first(a.path, b.path);
  });
  return ep;
}

}  // namespace

std::vector<SuitableCut> find_suitable_cuts(const Proof& p) {
  std::vector<SuitableCut> out;
  for (const auto& info : end_piece_sorted(p.root, false)) {
    const ProofNode& j = *info.node;
    if (j.rule != Rule::Cut && j.rule != Rule::Chain) continue;
    const std::size_t last = j.premises.size() - 1;
    for (std::size_t i = 0; i < last; ++i) {
      const Formula a = j.premises[i]->seq.succ;
      if (!a.has_q()) continue;
      auto jl = left_boundary(p.root, append(info.path, i), a);
      if (!jl) continue;
      auto jr = right_boundary(p.root, append(info.path, last), a);
      if (!jr) continue;
      out.push_back({info.path, i, *jl, *jr, a});
    }
  }
  return out;
}

std::optional<SuitableCut> find_suitable_cut(const Proof& p) {
  auto all = find_suitable_cuts(p);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// ---- classification ----

namespace {

std::optional<Locus> case1_at(const ProofPtr& root, const Path& at) {
  const ProofNode& n = node_at(root, at);
  if (n.seq.has(n.seq.succ)) {
    const Formula a = n.seq.succ;
    for (std::size_t k = at.size(); k-- > 0;) {
      const Path jp = prefix(at, k);
      const ProofNode& j = node_at(root, jp);
      const std::size_t i = at[k];
      if (!inherits_succedent(j.rule, i, j.premises.size())) {
        if (j.rule != Rule::Cut && j.rule != Rule::Chain) return std::nullopt;
        return Locus{CaseId::C1InitialEq, jp, at, {}, {}, i, "drop"};
      }
      if (!j.seq.has(a)) {
        for (std::size_t q = 0; q + 1 < j.premises.size(); ++q)
          if (j.premises[q]->seq.succ == a) return Locus{CaseId::C1InitialEq, jp, at, {}, {}, q, "discharge"};
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
  auto bot = std::find_if(n.seq.ante.begin(), n.seq.ante.end(), is_bot);
  if (bot == n.seq.ante.end()) return std::nullopt;
  const Formula f = *bot;
  for (std::size_t k = at.size(); k-- > 0;) {
    const Path jp = prefix(at, k);
    const ProofNode& j = node_at(root, jp);
    if (j.seq.has(f)) continue;
    for (std::size_t q = 0; q + 1 < j.premises.size(); ++q)
      if (j.premises[q]->seq.succ == f) return Locus{CaseId::C1InitialBot, jp, at, {}, {}, q, "bot"};
    return std::nullopt;
  }
  return std::nullopt;
}

std::string connective_name(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Q: return "Q";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Imp: return "imp";
    case Formula::Kind::Ex: return "ex";
    case Formula::Kind::All: return "all";
    default: return "atom";
  }
}

bool explicit_rule(const ProofPtr& root, const Path& at, const ProofNode& n) {
  const auto f = major_formula(n);
  if (!f) return false;
  const bool left = is_left_logical(n.rule);
  for (std::size_t k = 0; k < at.size(); ++k) {
    const ProofNode& a = node_at(root, prefix(at, k));
    if (left ? !a.seq.has(*f) : a.seq.succ != *f) return false;
  }
  return true;
}

}  // namespace

std::optional<Locus> classify(const Proof& p, const ClassifyOptions& opts) {
  const ProofPtr& root = p.root;
  if (is_initial_sequent(root->seq)) return std::nullopt;
  auto on = [&](CaseId c) { return std::find(opts.masked.begin(), opts.masked.end(), c) == opts.masked.end(); };
  const auto ep = end_piece_sorted(root, false);

  for (const auto& info : ep) {
    const Rule r = info.node->rule;
    if (r != Rule::InitialEq && r != Rule::InitialBot) continue;
    if (auto l = case1_at(root, info.path); l && on(l->id)) return l;
  }

  if (on(CaseId::C2Ind))
    for (const auto& info : ep)
      if (info.node->rule == Rule::Ind) return Locus{CaseId::C2Ind, info.path, {}, {}, {}, 0, ""};

  if (on(CaseId::C3Explicit))
    for (const auto& info : ep) {
      const Rule r = info.node->rule;
      if (r == Rule::LQ || r == Rule::RQ || !(is_left_logical(r) || is_right_logical(r))) continue;
      if (explicit_rule(root, info.path, *info.node))
        return Locus{CaseId::C3Explicit, info.path, {}, {}, {}, 0, std::string(rule_tag(r))};
    }

  if (on(CaseId::C4QFreeCut))
    for (const auto& info : ep) {
      const ProofNode& j = *info.node;
      if (j.rule != Rule::Cut && j.rule != Rule::Chain) continue;
      for (std::size_t q = 0; q + 1 < j.premises.size(); ++q)
        if (!j.premises[q]->seq.succ.has_q())
          return Locus{CaseId::C4QFreeCut, info.path, {}, {}, {}, q, std::string(rule_tag(j.rule))};
    }

  if (on(CaseId::C5LowerCut))
    for (const auto& info : ep) {
      const ProofNode& j = *info.node;
      if (j.rule != Rule::Cut) continue;
      const int d = depth(j.premises[0]->seq.succ);
      if (d <= 0 || static_cast<int>(info.height) <= d) continue;
      if (auto e = e_below(root, info.path)) return Locus{CaseId::C5LowerCut, info.path, *e, {}, {}, 0, ""};
    }

  if (on(CaseId::C6MergeChain))
    for (const auto& info : ep) {
      if (info.node->rule != Rule::Cut || info.path.empty()) continue;
      const Path jp = prefix(info.path, info.path.size() - 1);
      const ProofNode& j = node_at(root, jp);
      if (j.rule != Rule::Chain || info.path.back() + 1 != j.premises.size()) continue;
      if (!is_strictly_positive(info.node->premises[0]->seq.succ)) continue;
      return Locus{CaseId::C6MergeChain, jp, info.path, {}, {}, 0, ""};
    }

  if (on(CaseId::C7CutToChain))
    for (const auto& info : end_piece_sorted(root, true)) {
      const ProofNode& j = *info.node;
      if (j.rule != Rule::Cut || info.path.size() < 2) continue;
      const Formula& a = j.premises[0]->seq.succ;
      if (!a.has_q() || !is_strictly_positive(a)) continue;
      const Path p1 = prefix(info.path, info.path.size() - 1);
      const Path p2 = prefix(info.path, info.path.size() - 2);
      if (node_at(root, p1).rule != Rule::E || node_at(root, p2).rule != Rule::E) continue;
      if (height(root, p2) != 0) continue;
      return Locus{CaseId::C7CutToChain, info.path, p2, {}, {}, 0, ""};
    }

  if (on(CaseId::C8DeepCut) || on(CaseId::C9ChainSP))
    for (const auto& sc : find_suitable_cuts(p)) {
      const ProofNode& j = node_at(root, sc.j);
      const std::string kind = connective_name(sc.a.kind());
      if (j.rule == Rule::Cut && on(CaseId::C8DeepCut) && depth(sc.a) > 2) {
        if (auto e = e_below(root, sc.j)) return Locus{CaseId::C8DeepCut, sc.j, sc.jl, sc.jr, *e, sc.index, kind};
      }
      if (j.rule == Rule::Chain && on(CaseId::C9ChainSP))
        return Locus{CaseId::C9ChainSP, sc.j, sc.jl, sc.jr, {}, sc.index, kind};
    }

  return std::nullopt;
}

}  // namespace fixpoint
