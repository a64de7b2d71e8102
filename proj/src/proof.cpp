#include "fixpoint/proof.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fixpoint {

// ---- sequents ----

Sequent Sequent::make(std::vector<Formula> ante, const Formula& succ) {
  std::sort(ante.begin(), ante.end());
  ante.erase(std::unique(ante.begin(), ante.end()), ante.end());
  return {std::move(ante), succ};
}

bool Sequent::has(const Formula& f) const { return std::binary_search(ante.begin(), ante.end(), f); }

Sequent Sequent::with(const Formula& f) const {
  auto a = ante;
  a.push_back(f);
  return make(std::move(a), succ);
}

bool Sequent::ante_subset_of(const Sequent& other, const std::vector<Formula>& extra) const {
  for (const auto& f : ante)
    if (!other.has(f) && std::find(extra.begin(), extra.end(), f) == extra.end()) return false;
  return true;
}

std::set<std::string> Sequent::free_vars() const {
  std::set<std::string> s = succ.free_vars();
  for (const auto& f : ante) s.insert(f.free_vars().begin(), f.free_vars().end());
  return s;
}

std::string Sequent::str() const {
  std::string s = "(seq (";
  for (std::size_t i = 0; i < ante.size(); ++i) s += (i ? " " : "") + ante[i].str();
  return s + ") " + succ.str() + ")";
}

// ---- rules ----

namespace {

constexpr std::pair<Rule, std::string_view> kTags[] = {
    {Rule::InitialEq, "init-eq"}, {Rule::InitialBot, "init-bot"}, {Rule::LQ, "LQ"},       {Rule::RQ, "RQ"},
    {Rule::LOr, "L-or"},          {Rule::ROr, "R-or"},            {Rule::LAnd, "L-and"},   {Rule::RAnd, "R-and"},
    {Rule::LImp, "L-imp"},        {Rule::RImp, "R-imp"},          {Rule::LEx, "L-ex"},     {Rule::REx, "R-ex"},
    {Rule::LAll, "L-all"},        {Rule::RAll, "R-all"},          {Rule::Cut, "cut"},      {Rule::Chain, "chain"},
    {Rule::Ind, "ind"},           {Rule::Rep, "rep"},             {Rule::E, "E"},
};

}  // namespace

std::string_view rule_tag(Rule r) {
  for (const auto& [rule, tag] : kTags)
    if (rule == r) return tag;
  return "?";
}

std::optional<Rule> rule_from_tag(std::string_view tag) {
  for (const auto& [rule, t] : kTags)
    if (t == tag) return rule;
  return std::nullopt;
}

bool is_left_logical(Rule r) {
  return r == Rule::LQ || r == Rule::LOr || r == Rule::LAnd || r == Rule::LImp || r == Rule::LEx || r == Rule::LAll;
}

bool is_right_logical(Rule r) {
  return r == Rule::RQ || r == Rule::ROr || r == Rule::RAnd || r == Rule::RImp || r == Rule::REx || r == Rule::RAll;
}

bool is_end_piece_rule(Rule r) { return r == Rule::Cut || r == Rule::Chain || r == Rule::Rep || r == Rule::E; }

bool inherits_succedent(Rule r, std::size_t premise, std::size_t n_premises) {
  switch (r) {
    case Rule::LQ:
    case Rule::LAnd:
    case Rule::LEx:
    case Rule::LAll:
    case Rule::LOr:
    case Rule::Rep:
    case Rule::E: return true;
    case Rule::LImp:
    case Rule::Cut:
    case Rule::Ind: return premise == 1;
    case Rule::Chain: return premise + 1 == n_premises;
    default: return false;
  }
}

ProofPtr make_node(Sequent seq, Rule rule, RuleData data, std::vector<ProofPtr> premises) {
  return std::make_shared<const ProofNode>(ProofNode{std::move(seq), rule, std::move(data), std::move(premises)});
}

namespace {

void collect_formulas(const ProofPtr& n, InstanceClosure& cls) {
  for (const auto& f : n->seq.ante) cls.add(f);
  cls.add(n->seq.succ);
  if (n->data.principal) cls.add(*n->data.principal);
  if (n->data.ind_formula) cls.add(*n->data.ind_formula);
  for (const auto& p : n->premises) collect_formulas(p, cls);
}

}  // namespace

std::shared_ptr<const InstanceClosure> closure_of(const ProofPtr& root) {
  auto cls = std::make_shared<InstanceClosure>();
  collect_formulas(root, *cls);
  return cls;
}

Proof reference_proof(ProofPtr root, FixedPointTemplate tmpl) {
  auto cls = closure_of(root);
  return {std::move(root), std::move(cls), std::move(tmpl)};
}

const ProofNode& node_at(const ProofPtr& root, const Path& path) { return *subtree_at(root, path); }

ProofPtr subtree_at(const ProofPtr& root, const Path& path) {
  ProofPtr cur = root;
  for (auto i : path) {
    if (i >= cur->premises.size()) throw std::out_of_range("path " + path_str(path) + " leaves the proof");
    cur = cur->premises[i];
  }
  return cur;
}

ProofPtr replace_at(const ProofPtr& root, const Path& path, ProofPtr sub) {
  if (path.empty()) return sub;
  ProofNode copy = *root;
  const Path rest(path.begin() + 1, path.end());
  copy.premises.at(path[0]) = replace_at(root->premises.at(path[0]), rest, std::move(sub));
  return std::make_shared<const ProofNode>(std::move(copy));
}

std::size_t proof_size(const ProofPtr& root) {
  std::size_t n = 1;
  for (const auto& p : root->premises) n += proof_size(p);
  return n;
}

Formula ind_hypothesis(const RuleData& d, const Term& t) {
  return Formula::all_in(d.ind_bound, t, substitute(*d.ind_formula, d.eigen, Term::var(d.ind_bound)));
}

Formula ind_instance(const RuleData& d, const Term& t) { return substitute(*d.ind_formula, d.eigen, t); }

std::optional<Formula> major_formula(const ProofNode& n) {
  if (is_left_logical(n.rule)) return n.data.principal;
  if (is_right_logical(n.rule)) return n.seq.succ;
  return std::nullopt;
}

std::string path_str(const Path& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

std::string format(const Diagnostics& ds) {
  std::string s;
  for (const auto& d : ds) s += "at " + path_str(d.path) + " [" + d.clause + "] " + d.message + "\n";
  return s;
}

// ---- well-formedness ----

namespace {

// b and s agree except where b has iota and s has nu.
bool eq_modulo(const Formula& b, const Formula& s, const Term& iota, const Term& nu) {
  if (b.kind() != s.kind()) return false;
  auto tm = [&](const Term& x, const Term& y) { return x == y || (x == iota && y == nu); };
  switch (b.kind()) {
    case Formula::Kind::In:
    case Formula::Kind::Eq: return tm(b.term(0), s.term(0)) && tm(b.term(1), s.term(1));
    case Formula::Kind::Q: return tm(b.term(0), s.term(0));
    case Formula::Kind::Ex:
    case Formula::Kind::All: return b.var() == s.var() && eq_modulo(b.sub(0), s.sub(0), iota, nu);
    default: return eq_modulo(b.sub(0), s.sub(0), iota, nu) && eq_modulo(b.sub(1), s.sub(1), iota, nu);
  }
}

bool initial_eq_holds(const Sequent& s) {
  if (s.has(s.succ)) return true;
  for (const auto& e : s.ante) {
    if (e.kind() != Formula::Kind::Eq) continue;
    for (const auto& b : s.ante)
      if (eq_modulo(b, s.succ, e.term(0), e.term(1))) return true;
  }
  return false;
}

bool has_bot(const Sequent& s) { return std::any_of(s.ante.begin(), s.ante.end(), is_bot); }

std::size_t arity(Rule r) {
  switch (r) {
    case Rule::InitialEq:
    case Rule::InitialBot: return 0;
    case Rule::LOr:
    case Rule::RAnd:
    case Rule::LImp:
    case Rule::Cut: return 2;
    case Rule::Ind: return 3;
    case Rule::Chain: return 0;  // checked separately
    default: return 1;
  }
}

struct NodeChecker {
  const ProofNode& n;
  const FixedPointTemplate& tmpl;
  Diagnostics out;

  void fail(const std::string& clause, const std::string& msg) { out.push_back({{}, clause, msg}); }

  const Sequent& prem(std::size_t i) const { return n.premises[i]->seq; }

  void succ_is(std::size_t i, const Formula& f, const std::string& clause) {
    if (prem(i).succ != f) fail(clause, "premise " + std::to_string(i) + " succedent should be " + f.str());
  }
  void ante_within(std::size_t i, const std::vector<Formula>& extra, const std::string& clause) {
    if (!prem(i).ante_subset_of(n.seq, extra))
      fail(clause, "premise " + std::to_string(i) + " antecedent is not contained in the conclusion");
  }
  bool principal(Formula::Kind k) {
    if (!n.data.principal) {
      fail("principal", "missing principal formula");
      return false;
    }
    if (n.data.principal->kind() != k) {
      fail("principal", "principal formula has the wrong shape");
      return false;
    }
    if (!n.seq.has(*n.data.principal)) {
      fail("principal", "principal formula is not in the antecedent");
      return false;
    }
    return true;
  }
  bool succ_shape(Formula::Kind k) {
    if (n.seq.succ.kind() != k) {
      fail("succedent", "succedent has the wrong shape");
      return false;
    }
    return true;
  }
  bool eigen_ok() {
    if (n.data.eigen.empty()) {
      fail("eigenvariable", "missing eigenvariable");
      return false;
    }
    if (n.seq.free_vars().contains(n.data.eigen)) {
      fail("eigenvariable", "eigenvariable " + n.data.eigen + " occurs in the lower sequent");
      return false;
    }
    return true;
  }

  void run() {
    const std::size_t k = n.premises.size();
    if (n.rule == Rule::Chain ? k < 2 : k != arity(n.rule)) {
      fail("arity", "wrong number of premises for " + std::string(rule_tag(n.rule)));
      return;
    }
    const Formula& C = n.seq.succ;
    switch (n.rule) {
      case Rule::InitialEq:
        if (!initial_eq_holds(n.seq)) fail("initial", "not an initial sequent of the equality form");
        break;
      case Rule::InitialBot:
        if (!has_bot(n.seq)) fail("initial", "no false closed atomic formula in the antecedent");
        break;
      case Rule::LQ:
        if (!principal(Formula::Kind::Q)) break;
        succ_is(0, C, "LQ");
        ante_within(0, {unfold_template(tmpl, n.data.principal->term(0))}, "LQ");
        break;
      case Rule::RQ:
        if (!succ_shape(Formula::Kind::Q)) break;
        succ_is(0, unfold_template(tmpl, C.term(0)), "RQ");
        ante_within(0, {}, "RQ");
        break;
      case Rule::LOr:
        if (!principal(Formula::Kind::Or)) break;
        for (std::size_t i = 0; i < 2; ++i) {
          succ_is(i, C, "L-or");
          ante_within(i, {n.data.principal->sub(static_cast<int>(i))}, "L-or");
        }
        break;
      case Rule::ROr:
        if (!succ_shape(Formula::Kind::Or)) break;
        if (n.data.index != 0 && n.data.index != 1) {
          fail("R-or", "index must be 0 or 1");
          break;
        }
        succ_is(0, C.sub(n.data.index), "R-or");
        ante_within(0, {}, "R-or");
        break;
      case Rule::LAnd:
        if (!principal(Formula::Kind::And)) break;
        if (n.data.index != 0 && n.data.index != 1) {
          fail("L-and", "index must be 0 or 1");
          break;
        }
        succ_is(0, C, "L-and");
        ante_within(0, {n.data.principal->sub(n.data.index)}, "L-and");
        break;
      case Rule::RAnd:
        if (!succ_shape(Formula::Kind::And)) break;
        for (std::size_t i = 0; i < 2; ++i) {
          succ_is(i, C.sub(static_cast<int>(i)), "R-and");
          ante_within(i, {}, "R-and");
        }
        break;
      case Rule::LImp:
        if (!principal(Formula::Kind::Imp)) break;
        succ_is(0, n.data.principal->sub(0), "L-imp");
        ante_within(0, {}, "L-imp");
        succ_is(1, C, "L-imp");
        ante_within(1, {n.data.principal->sub(1)}, "L-imp");
        break;
      case Rule::RImp:
        if (!succ_shape(Formula::Kind::Imp)) break;
        succ_is(0, C.sub(1), "R-imp");
        ante_within(0, {C.sub(0)}, "R-imp");
        break;
      case Rule::LEx: {
        if (!principal(Formula::Kind::Ex) || !eigen_ok()) break;
        const Formula& p = *n.data.principal;
        succ_is(0, C, "L-ex");
        ante_within(0, {substitute(p.sub(0), p.var(), Term::var(n.data.eigen))}, "L-ex");
        break;
      }
      case Rule::REx:
        if (!succ_shape(Formula::Kind::Ex)) break;
        if (!n.data.term) {
          fail("R-ex", "missing witness term");
          break;
        }
        succ_is(0, substitute(C.sub(0), C.var(), *n.data.term), "R-ex");
        ante_within(0, {}, "R-ex");
        break;
      case Rule::LAll: {
        if (!principal(Formula::Kind::All)) break;
        if (!n.data.term) {
          fail("L-all", "missing witness term");
          break;
        }
        const Formula& p = *n.data.principal;
        succ_is(0, C, "L-all");
        ante_within(0, {substitute(p.sub(0), p.var(), *n.data.term)}, "L-all");
        break;
      }
      case Rule::RAll:
        if (!succ_shape(Formula::Kind::All) || !eigen_ok()) break;
        succ_is(0, substitute(C.sub(0), C.var(), Term::var(n.data.eigen)), "R-all");
        ante_within(0, {}, "R-all");
        break;
      case Rule::Cut:
        ante_within(0, {}, "cut");
        succ_is(1, C, "cut");
        ante_within(1, {prem(0).succ}, "cut");
        break;
      case Rule::Chain: {
        std::vector<Formula> cuts;
        for (std::size_t i = 0; i + 1 < k; ++i) {
          ante_within(i, {}, "chain");
          if (!is_strictly_positive(prem(i).succ))
            fail("chain", "cut formula " + prem(i).succ.str() + " is not strictly positive");
          cuts.push_back(prem(i).succ);
        }
        succ_is(k - 1, C, "chain");
        ante_within(k - 1, cuts, "chain");
        break;
      }
      case Rule::Ind: {
        const RuleData& d = n.data;
        if (!d.ind_formula || !d.term || !d.nu || d.ind_bound.empty()) {
          fail("ind", "missing ind data");
          break;
        }
        if (!eigen_ok()) break;
        if (d.ind_bound == d.eigen || d.ind_formula->free_vars().contains(d.ind_bound)) {
          fail("ind", "bound variable clashes with the induction formula");
          break;
        }
        succ_is(0, *d.ind_formula, "ind");
        ante_within(0, {ind_hypothesis(d, Term::var(d.eigen))}, "ind");
        succ_is(1, C, "ind");
        ante_within(1, {ind_instance(d, *d.term)}, "ind");
        succ_is(2, Formula::in(*d.term, *d.nu), "ind");
        ante_within(2, {}, "ind");
        break;
      }
      case Rule::Rep:
      case Rule::E:
        succ_is(0, C, std::string(rule_tag(n.rule)));
        ante_within(0, {}, std::string(rule_tag(n.rule)));
        break;
    }
  }
};

void check_rec(const ProofPtr& n, const FixedPointTemplate& tmpl, Path& path, Diagnostics& out) {
  for (auto d : check_node(*n, tmpl)) {
    d.path = path;
    out.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < n->premises.size(); ++i) {
    path.push_back(i);
    check_rec(n->premises[i], tmpl, path, out);
    path.pop_back();
  }
}

bool has_eigen(Rule r) { return r == Rule::LEx || r == Rule::RAll || r == Rule::Ind; }

// premise i lies in the scope of the node's eigenvariable
bool in_eigen_scope(const ProofNode& n, std::size_t i) {
  return has_eigen(n.rule) && (n.rule != Rule::Ind || i == 0);
}

}  // namespace

Diagnostics check_node(const ProofNode& n, const FixedPointTemplate& tmpl) {
  NodeChecker c{n, tmpl, {}};
  c.run();
  return std::move(c.out);
}

Diagnostics check_wellformed(const Proof& p) {
  Diagnostics out;
  Path path;
  check_rec(p.root, p.tmpl, path, out);
  return out;
}

Diagnostics check_pure_variable(const Proof& p) {
  Diagnostics out;
  std::map<std::string, Path> seen;
  const auto end_vars = p.root->seq.free_vars();
  std::function<void(const ProofPtr&, Path&)> go = [&](const ProofPtr& n, Path& path) {
    if (has_eigen(n->rule)) {
      const auto& e = n->data.eigen;
      if (auto [it, fresh] = seen.emplace(e, path); !fresh)
        out.push_back({path, "pure-1", "eigenvariable " + e + " is also used at " + path_str(it->second)});
      if (end_vars.contains(e)) out.push_back({path, "pure-2", "eigenvariable " + e + " occurs in the end sequent"});
    }
    const auto lower = n->seq.free_vars();
    for (std::size_t i = 0; i < n->premises.size(); ++i) {
      for (const auto& v : n->premises[i]->seq.free_vars()) {
        if (lower.contains(v)) continue;
        if (in_eigen_scope(*n, i) && v == n->data.eigen) continue;
        out.push_back({path, "pure-3", "free variable " + v + " of premise " + std::to_string(i) +
                                           " is lost without being the eigenvariable"});
      }
      path.push_back(i);
      go(n->premises[i], path);
      path.pop_back();
    }
  };
  Path path;
  go(p.root, path);
  return out;
}

// ---- substitution over proofs ----

namespace {

Sequent subst_seq(const Sequent& s, const std::string& x, const Term& t) {
  std::vector<Formula> a;
  a.reserve(s.ante.size());
  for (const auto& f : s.ante) a.push_back(substitute(f, x, t));
  return Sequent::make(std::move(a), substitute(s.succ, x, t));
}

Term subst_term(const Term& s, const std::string& x, const Term& t) { return s.is_var() && s.name == x ? t : s; }

RuleData subst_data(const RuleData& d, const std::string& x, const Term& t, bool binds_x) {
  RuleData r = d;
  if (r.principal) r.principal = substitute(*r.principal, x, t);
  if (r.term) r.term = subst_term(*r.term, x, t);
  if (r.nu) r.nu = subst_term(*r.nu, x, t);
  if (r.ind_formula && !binds_x) r.ind_formula = substitute(*r.ind_formula, x, t);
  return r;
}

bool same_data(const RuleData& a, const RuleData& b) {
  return a.principal == b.principal && a.term == b.term && a.nu == b.nu && a.ind_formula == b.ind_formula &&
         a.eigen == b.eigen;
}

}  // namespace

ProofPtr subst_subtree(const ProofPtr& n, const std::string& x, const Term& t) {
  const bool binds = has_eigen(n->rule) && n->data.eigen == x;
  ProofNode c = *n;
  c.seq = subst_seq(n->seq, x, t);
  c.data = subst_data(n->data, x, t, binds);
  bool changed = !(c.seq == n->seq) || !same_data(c.data, n->data);
  for (std::size_t i = 0; i < c.premises.size(); ++i) {
    if (binds && in_eigen_scope(*n, i)) continue;
    c.premises[i] = subst_subtree(n->premises[i], x, t);
    changed |= c.premises[i] != n->premises[i];
  }
  return changed ? std::make_shared<const ProofNode>(std::move(c)) : n;
}

namespace {

ProofPtr rename_eigen(const ProofPtr& n, const std::string& fresh) {
  ProofNode c = *n;
  const std::string old = n->data.eigen;
  const Term v = Term::var(fresh);
  for (std::size_t i = 0; i < c.premises.size(); ++i)
    if (in_eigen_scope(*n, i)) c.premises[i] = subst_subtree(n->premises[i], old, v);
  c.data.eigen = fresh;
  if (c.data.ind_formula) c.data.ind_formula = substitute(*c.data.ind_formula, old, v);
  return std::make_shared<const ProofNode>(std::move(c));
}

ProofPtr rename_apart(const ProofPtr& n, std::set<std::string>& used) {
  ProofPtr cur = n;
  if (has_eigen(cur->rule)) {
    if (used.contains(cur->data.eigen)) cur = rename_eigen(cur, fresh_var(cur->data.eigen));
    used.insert(cur->data.eigen);
  }
  ProofNode c = *cur;
  bool changed = cur != n;
  for (auto& p : c.premises) {
    auto q = rename_apart(p, used);
    if (q != p) changed = true;
    p = std::move(q);
  }
  return changed ? std::make_shared<const ProofNode>(std::move(c)) : n;
}

ProofPtr drop_strays(const ProofPtr& n) {
  const auto lower = n->seq.free_vars();
  std::set<std::string> strays;
  for (std::size_t i = 0; i < n->premises.size(); ++i)
    for (const auto& v : n->premises[i]->seq.free_vars())
      if (!lower.contains(v) && !(in_eigen_scope(*n, i) && v == n->data.eigen)) strays.insert(v);
  ProofNode c = *n;
  const Term empty = Term::constant(HFSet());
  for (const auto& v : strays) {
    const bool binds = has_eigen(n->rule) && n->data.eigen == v;
    c.data = subst_data(c.data, v, empty, binds);
    for (std::size_t i = 0; i < c.premises.size(); ++i)
      if (!(binds && in_eigen_scope(*n, i))) c.premises[i] = subst_subtree(c.premises[i], v, empty);
  }
  bool changed = !strays.empty();
  for (auto& p : c.premises) {
    auto q = drop_strays(p);
    if (q != p) changed = true;
    p = std::move(q);
  }
  return changed ? std::make_shared<const ProofNode>(std::move(c)) : n;
}

}  // namespace

Proof purify(Proof p) {
  std::set<std::string> used = p.root->seq.free_vars();
  p.root = rename_apart(p.root, used);
  p.root = drop_strays(p.root);
  return p;
}

// ---- end-piece and heights ----

std::vector<NodeInfo> annotate(const ProofPtr& root) {
  std::vector<NodeInfo> out;
  std::function<void(const ProofPtr&, Path&, std::size_t, bool)> go = [&](const ProofPtr& n, Path& path,
                                                                          std::size_t h, bool ep) {
    out.push_back({path, n, h, ep});
    const std::size_t k = n->premises.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t hh = h;
      if (n->rule == Rule::E) hh = h + 1;
      if (n->rule == Rule::Chain && i + 1 == k) hh = std::max<std::size_t>(h, 2);
      path.push_back(i);
      go(n->premises[i], path, hh, ep && is_end_piece_rule(n->rule));
      path.pop_back();
    }
  };
  Path path;
  go(root, path, 0, true);
  return out;
}

std::size_t height(const ProofPtr& root, const Path& path) {
  std::size_t h = 0;
  ProofPtr cur = root;
  for (auto i : path) {
    if (cur->rule == Rule::E) ++h;
    if (cur->rule == Rule::Chain && i + 1 == cur->premises.size()) h = std::max<std::size_t>(h, 2);
    cur = cur->premises.at(i);
  }
  return h;
}

bool in_end_piece(const ProofPtr& root, const Path& path) {
  ProofPtr cur = root;
  for (auto i : path) {
    if (!is_end_piece_rule(cur->rule)) return false;
    cur = cur->premises.at(i);
  }
  return true;
}

Diagnostics height_normal_diagnostics(const Proof& p) {
  Diagnostics out;
  for (const auto& info : annotate(p.root)) {
    const ProofNode& n = *info.node;
    const auto h = static_cast<int>(info.height);
    if (n.rule == Rule::Chain && info.height != 0)
      out.push_back({info.path, "height-1", "chain at height " + std::to_string(h)});
    if (n.rule == Rule::Cut && n.premises.size() == 2) {
      const int d = depth(n.premises[0]->seq.succ);
      if (h < d)
        out.push_back({info.path, "height-2",
                       "cut at height " + std::to_string(h) + " below cut formula depth " + std::to_string(d)});
    }
    if (n.rule == Rule::Ind && n.data.ind_formula && n.data.nu) {
      const int d = depth(ind_hypothesis(n.data, *n.data.nu));
      if (h < d)
        out.push_back({info.path, "height-3",
                       "ind at height " + std::to_string(h) + " below depth " + std::to_string(d)});
    }
    if ((n.rule == Rule::Chain || n.rule == Rule::E) && !info.end_piece)
      out.push_back({info.path, "height-4", std::string(rule_tag(n.rule)) + " outside the end-piece"});
  }
  return out;
}

bool is_height_normal(const Proof& p) { return height_normal_diagnostics(p).empty(); }

Proof make_height_normal(Proof p) {
  int need = 0;
  for (const auto& info : annotate(p.root)) {
    const ProofNode& n = *info.node;
    if (n.rule == Rule::Chain) throw std::invalid_argument("make_height_normal: proof contains a chain");
    if (n.rule == Rule::E && !info.end_piece)
      throw std::invalid_argument("make_height_normal: E rule outside the end-piece");
    const auto h = static_cast<int>(info.height);
    if (n.rule == Rule::Cut) need = std::max(need, depth(n.premises.at(0)->seq.succ) - h);
    if (n.rule == Rule::Ind) need = std::max(need, depth(ind_hypothesis(n.data, *n.data.nu)) - h);
  }
  for (int i = 0; i < need; ++i) p.root = make_node(p.root->seq, Rule::E, {}, {p.root});
  return p;
}

// ---- codes ----

Code mj(const Term& nu) { return nu.is_var() ? bar(SetOrV::universe()) : bar(SetOrV::of(nu.value)); }

namespace {

Code code_rec(const ProofPtr& n, std::unordered_map<const ProofNode*, Code>& memo) {
  if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
  std::vector<Code> c;
  for (const auto& p : n->premises) c.push_back(code_rec(p, memo));
  const Code one = Code::one();
  Code r;
  switch (n->rule) {
    case Rule::InitialEq:
    case Rule::InitialBot: r = times_n(one, 2); break;
    case Rule::LQ:
    case Rule::RQ:
    case Rule::ROr:
    case Rule::LAnd:
    case Rule::RImp:
    case Rule::LEx:
    case Rule::REx:
    case Rule::LAll:
    case Rule::RAll: r = nat_sum(c.at(0), one); break;
    case Rule::LOr:
    case Rule::RAnd:
    case Rule::LImp:
    case Rule::Cut: r = nat_sum(c.at(0), c.at(1)); break;
    case Rule::Chain: {
      std::vector<Code> others(c.begin(), c.end() - 1);
      r = omega2_apply(c.back(), nat_sum(others));
      break;
    }
    case Rule::Ind:
      r = nat_sum({nat_prod(nat_sum(c.at(0), times_n(one, 6)), mj(*n->data.nu)), c.at(1), c.at(2)});
      break;
    case Rule::Rep: r = c.at(0); break;
    case Rule::E: r = omega_pow(c.at(0), one); break;
  }
  memo.emplace(n.get(), r);
  return r;
}

}  // namespace

Code assign_code(const ProofPtr& root, const Path& path) {
  std::unordered_map<const ProofNode*, Code> memo;
  return code_rec(subtree_at(root, path), memo);
}

Code proof_code(const ProofPtr& root) { return assign_code(root, {}); }

// ---- restrictedness ----

Diagnostics restricted_diagnostics(const Proof& p) {
  Diagnostics out = check_wellformed(p);
  if (!out.empty()) return out;
  for (auto& d : check_pure_variable(p)) out.push_back(std::move(d));
  for (auto& d : height_normal_diagnostics(p)) out.push_back(std::move(d));
  const Sequent& end = p.root->seq;
  auto sentence = [&](const Formula& f) {
    if (f.has_q() || !f.closed()) out.push_back({{}, "end-sequent", "not a Q-free sentence: " + f.str()});
  };
  for (const auto& f : end.ante) sentence(f);
  sentence(end.succ);
  if (p.closure) {
    std::set<std::string> checked;
    for (const auto& info : annotate(p.root)) {
      auto test = [&](const Formula& f) {
        if (!checked.insert(f.str()).second) return;
        if (!p.closure->contains(f)) out.push_back({info.path, "closure", "formula outside the instance closure: " + f.str()});
      };
      for (const auto& f : info.node->seq.ante) test(f);
      test(info.node->seq.succ);
    }
  }
  return out;
}

bool is_restricted(const Proof& p) { return restricted_diagnostics(p).empty(); }

bool is_initial_sequent(const Sequent& s) { return has_bot(s) || initial_eq_holds(s); }

EvalResult evaluate_sequent(const Sequent& s, const UniverseBound& bound) {
  EvalResult r{true, false};
  for (const auto& f : s.ante) {
    auto e = evaluate(f, {}, bound);
    r.bound_relative |= e.bound_relative;
    if (!e.value) return r;
  }
  auto e = evaluate(s.succ, {}, bound);
  r.value = e.value;
  r.bound_relative |= e.bound_relative;
  return r;
}

}  // namespace fixpoint
