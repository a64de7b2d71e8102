#include <algorithm>

#include "reduction_detail.hpp"

namespace fixpoint {

using namespace detail;

namespace {

Sequent seq_of(const std::vector<Formula>& ante, const Formula& succ) { return Sequent::make(ante, succ); }

Term closed_term(const std::optional<Term>& t, const char* what) {
  if (!t) throw ReductionError(std::string("missing ") + what);
  return *t;
}

struct Witnesses {
  std::vector<HFSet> sets;
  bool relative = false;
};

// Instances needed to decide a quantifier over closed terms: the members of
// the bound for bounded quantifiers, the rank-bounded universe otherwise.
Witnesses witnesses(const Formula& q, const UniverseBound& bound) {
  if (auto bq = bounded_quantifier(q); bq && !bq->second.is_var()) return {bq->second.value.elements(), false};
  if (!bound.max_rank) throw ReductionError("unbounded quantifier " + q.str() + " needs a rank bound");
  return {enumerate_upto_rank(*bound.max_rank), true};
}

// Components of a principal formula between its right rule jl and its left
// rule jr: `left` proves jl's antecedent => comp, `right` is jr's conclusion
// with comp added.
struct Split {
  Formula comp;
  ProofPtr left, right;
};

Split split_boundary(const ProofNode& jl, const ProofNode& jr, const Formula& a, const FixedPointTemplate& tmpl) {
  const auto& ante = jl.seq.ante;
  auto mk = [&](const Formula& comp, const ProofPtr& l, const ProofPtr& r) {
    return Split{comp, rep(seq_of(ante, comp), l), rep(jr.seq.with(comp), r)};
  };
  switch (a.kind()) {
    case Formula::Kind::Q: return mk(unfold_template(tmpl, a.term(0)), jl.premises[0], jr.premises[0]);
    case Formula::Kind::All: {
      const Term t = closed_term(jr.data.term, "witness term");
      return mk(substitute(a.sub(0), a.var(), t), subst_subtree(jl.premises[0], jl.data.eigen, t), jr.premises[0]);
    }
    case Formula::Kind::Ex: {
      const Term t = closed_term(jl.data.term, "witness term");
      return mk(jl.premises[0]->seq.succ, jl.premises[0], subst_subtree(jr.premises[0], jr.data.eigen, t));
    }
    case Formula::Kind::And: {
      const int i = jr.data.index;
      return mk(a.sub(i), jl.premises[static_cast<std::size_t>(i)], jr.premises[0]);
    }
    case Formula::Kind::Or: {
      const int i = jl.data.index;
      return mk(a.sub(i), jl.premises[0], jr.premises[static_cast<std::size_t>(i)]);
    }
    default: throw ReductionError("no component split for " + a.str());
  }
}

struct Reducer {
  const Proof& p;
  const Locus& l;
  const ReduceOptions& opts;
  ReductionResult out;
  std::vector<ProofPtr> roots;

  const ProofPtr& root() const { return p.root; }
  const ProofNode& at(const Path& q) const { return node_at(p.root, q); }
  ProofPtr sub(const Path& q) const { return subtree_at(p.root, q); }
  void put(const Path& q, ProofPtr n) { roots.push_back(replace_at(p.root, q, std::move(n))); }

  void case1_eq() {
    const ProofNode& j = at(l.path);
    if (l.detail == "discharge") {
      put(l.path, rep(j.seq, j.premises.at(l.index)));
      return;
    }
    // the cut formula is already available in the antecedent
    if (j.rule == Rule::Cut) {
      put(l.path, rep(j.seq, j.premises[1]));
      return;
    }
    if (j.premises.size() > 2) {
      auto prems = j.premises;
      prems.erase(prems.begin() + static_cast<long>(l.index));
      put(l.path, chain(j.seq, std::move(prems)));
      return;
    }
    put(l.path, e_rule(j.seq, e_rule(j.seq, j.premises.back())));
  }

  void case1_bot() {
    const ProofNode& j = at(l.path);
    const ProofPtr& q = j.premises.at(l.index);
    put(l.path, rep(j.seq, replace_succ_up(q, q->seq.succ, j.seq.succ)));
  }

  void case2() {
    const ProofNode& ind = at(l.path);
    const RuleData& d = ind.data;
    const Term iota = closed_term(d.term, "ind term");
    const Term nu = closed_term(d.nu, "ind bound");
    if (iota.is_var() || nu.is_var()) throw ReductionError("ind in the end-piece with open terms");
    const auto& gamma = ind.seq.ante;
    if (!mem(iota.value, nu.value)) {
      const ProofPtr& s2 = ind.premises[2];
      put(l.path, rep(ind.seq, replace_succ_up(s2, s2->seq.succ, ind.seq.succ)));
      return;
    }
    // induct again below iota, then instantiate the original step at iota
    const std::string z = fresh_var("z");
    const Term zt = Term::var(z);
    const Formula hyp = ind_hypothesis(d, iota);
    const Formula body = substitute(hyp.sub(0), hyp.var(), zt);  // z in iota -> A(z)
    const Formula az = body.sub(1);
    const Formula z_in = body.sub(0);
    const Sequent inner = seq_of(gamma, az).with(z_in);
    RuleData d2 = d;
    d2.term = zt;
    d2.nu = iota;
    auto init1 = make_node(seq_of(gamma, az).with(ind_instance(d, zt)), Rule::InitialEq, {}, {});
    auto init2 = make_node(seq_of(gamma, z_in).with(z_in), Rule::InitialEq, {}, {});
    auto ind2 = make_node(inner, Rule::Ind, d2, {ind.premises[0], init1, init2});
    auto rimp = make_node(seq_of(gamma, body), Rule::RImp, {}, {ind2});
    RuleData da;
    da.eigen = z;
    auto rall = make_node(seq_of(gamma, hyp), Rule::RAll, da, {rimp});
    auto step = subst_subtree(ind.premises[0], d.eigen, iota);
    auto cut1 = cut(seq_of(gamma, ind_instance(d, iota)), rall, step);
    put(l.path, cut(ind.seq, cut1, ind.premises[1]));
  }

  void case3() {
    const ProofNode& n = at(l.path);
    const Formula f = *major_formula(n);
    const auto& ante = n.seq.ante;
    auto down = [&](ProofPtr r, std::optional<Formula> succ, std::vector<Formula> add) {
      roots.push_back(rewrite_down(p.root, l.path, std::move(r), succ, add));
    };
    auto add_one = [&](const Formula& g, const ProofPtr& prem) { down(rep(n.seq.with(g), prem), std::nullopt, {g}); };
    switch (n.rule) {
      case Rule::RAll: {
        auto w = witnesses(f, opts.bound);
        out.bound_relative = w.relative;
        out.propagation = Propagation::BranchForEachWitness;
        for (const auto& a : w.sets) {
          const Term t = Term::constant(a);
          const Formula g = substitute(f.sub(0), f.var(), t);
          down(rep(seq_of(ante, g), subst_subtree(n.premises[0], n.data.eigen, t)), g, {});
        }
        break;
      }
      case Rule::REx:
      case Rule::ROr: {
        const Formula g = n.premises[0]->seq.succ;
        down(rep(seq_of(ante, g), n.premises[0]), g, {});
        break;
      }
      case Rule::RAnd:
        for (const auto& prem : n.premises) down(rep(seq_of(ante, prem->seq.succ), prem), prem->seq.succ, {});
        break;
      case Rule::RImp: {
        const Formula b = f.sub(0), c = f.sub(1);
        down(rep(seq_of(ante, c).with(b), n.premises[0]), c, {b});
        break;
      }
      case Rule::LOr:
        add_one(f.sub(0), n.premises[0]);
        add_one(f.sub(1), n.premises[1]);
        break;
      case Rule::LAnd: add_one(f.sub(n.data.index), n.premises[0]); break;
      case Rule::LImp: {
        const Formula b = f.sub(0);
        down(rep(seq_of(ante, b), n.premises[0]), b, {});
        add_one(f.sub(1), n.premises[1]);
        break;
      }
      case Rule::LEx: {
        auto w = witnesses(f, opts.bound);
        out.bound_relative = w.relative;
        out.propagation = Propagation::BranchForEachWitness;
        for (const auto& a : w.sets) {
          const Term t = Term::constant(a);
          add_one(substitute(f.sub(0), f.var(), t), subst_subtree(n.premises[0], n.data.eigen, t));
        }
        break;
      }
      case Rule::LAll: add_one(substitute(f.sub(0), f.var(), closed_term(n.data.term, "witness")), n.premises[0]); break;
      default: throw ReductionError("case 3 on rule " + std::string(rule_tag(n.rule)));
    }
  }

  void case4() {
    const ProofNode& j = at(l.path);
    const ProofPtr& q = j.premises.at(l.index);
    const Formula a = q->seq.succ;
    roots.push_back(rewrite_down(p.root, l.path, rep(seq_of(j.seq.ante, a), q), a, {}));
    const Sequent s = j.seq.with(a);
    ProofPtr lower;
    if (j.rule == Rule::Cut) {
      lower = rep(s, j.premises[1]);
    } else if (j.premises.size() > 2) {
      auto prems = j.premises;
      prems.erase(prems.begin() + static_cast<long>(l.index));
      lower = chain(s, std::move(prems));
    } else {
      lower = e_rule(s, e_rule(s, j.premises.back()));
    }
    roots.push_back(rewrite_down(p.root, l.path, lower, std::nullopt, {a}));
  }

  void case5() {
    const ProofNode& j0 = at(l.path);
    const ProofNode& e = at(l.aux1);
    const Formula a = j0.premises[0]->seq.succ;
    const Path vp = append(l.aux1, 0);
    const ProofPtr v = sub(vp);
    const Path rel = relative(vp, l.path);
    auto v1 = rewrite_down(v, rel, rep(seq_of(j0.seq.ante, a), j0.premises[0]), a, {});
    auto v2 = rewrite_down(v, rel, rep(j0.seq.with(a), j0.premises[1]), std::nullopt, {a});
    put(l.aux1, cut(e.seq, e_rule(seq_of(e.seq.ante, a), v1), e_rule(e.seq.with(a), v2)));
  }

  void case6() {
    const ProofNode& j = at(l.path);
    const ProofNode& j0 = at(l.aux1);
    const ProofPtr& s0 = j0.premises[0];
    const ProofPtr& t = j0.premises[1];
    std::vector<ProofPtr> bold(j.premises.begin(), j.premises.end() - 1);
    std::vector<Formula> cut_formulas, ante;
    for (const auto& b : bold) {
      cut_formulas.push_back(b->seq.succ);
      ante.insert(ante.end(), b->seq.ante.begin(), b->seq.ante.end());
    }
    for (const auto& f : s0->seq.ante)
      if (std::find(cut_formulas.begin(), cut_formulas.end(), f) == cut_formulas.end()) ante.push_back(f);
    auto inner_prems = bold;
    inner_prems.push_back(s0);
    auto inner = chain(seq_of(ante, s0->seq.succ), std::move(inner_prems));
    auto prems = bold;
    prems.push_back(inner);
    prems.push_back(rep(t->seq, t));
    put(l.path, chain(j.seq, std::move(prems)));
  }

  void case7() {
    const ProofNode& j0 = at(l.path);
    const ProofNode& s = at(l.aux1);
    const Formula a = j0.premises[0]->seq.succ;
    const Sequent sa = seq_of(s.seq.ante, a);
    auto t0 = rep(sa, j0.premises[0]);
    auto t1 = rep(s.seq.with(a), j0.premises[1]);
    put(l.aux1, chain(s.seq, {e_rule(sa, e_rule(sa, t0)), t1}));
  }

  void case8() {
    const ProofNode& j = at(l.path);
    const ProofNode& jl = at(l.aux1);
    const ProofNode& jr = at(l.aux2);
    const ProofNode& pe = at(l.aux3);
    const Formula a = j.premises[0]->seq.succ;
    const ProofPtr& u0 = j.premises[0];
    const ProofPtr& u1 = j.premises[1];
    const Path rel_l = relative(append(l.path, 0), l.aux1);
    const Path rel_r = relative(append(l.path, 1), l.aux2);
    const Path vp = append(l.aux3, 0);
    const ProofPtr v = sub(vp);
    const Path rel_j = relative(vp, l.path);
    const auto& gamma = pe.seq.ante;

    if (a.kind() == Formula::Kind::Imp) {
      const Formula d = a.sub(0), c = a.sub(1);
      auto u1d = rewrite_down(u1, rel_r, rep(seq_of(jr.seq.ante, d), jr.premises[0]), d, {});
      auto s_b = cut(seq_of(j.seq.ante, d), u0, u1d);
      auto t_b = e_rule(seq_of(gamma, d), rewrite_down(v, rel_j, s_b, d, {}));
      auto u0p = rewrite_down(u0, rel_l, rep(seq_of(jl.seq.ante, c).with(d), jl.premises[0]), c, {d});
      auto s_l = rep(seq_of(j.seq.ante, c).with(d), u0p);
      auto t_l = e_rule(seq_of(gamma, c).with(d), rewrite_down(v, rel_j, s_l, c, {d}));
      auto u1p = rewrite_down(u1, rel_r, rep(jr.seq.with(c), jr.premises[1]), std::nullopt, {c});
      auto s_r = cut(j.seq.with(c), u0, u1p);
      auto t_r = e_rule(pe.seq.with(c), rewrite_down(v, rel_j, s_r, std::nullopt, {c}));
      auto inner = cut(pe.seq.with(d), t_l, t_r);
      put(l.aux3, cut(pe.seq, t_b, inner));
      return;
    }
    const Split sp = split_boundary(jl, jr, a, p.tmpl);
    const Formula& comp = sp.comp;
    auto u0p = rewrite_down(u0, rel_l, sp.left, comp, {});
    auto u1p = rewrite_down(u1, rel_r, sp.right, std::nullopt, {comp});
    auto s_l = rep(seq_of(j.seq.ante, comp), u0p);
    auto s_r = cut(j.seq.with(comp), u0, u1p);
    auto v_l = rewrite_down(v, rel_j, s_l, comp, {});
    auto v_r = rewrite_down(v, rel_j, s_r, std::nullopt, {comp});
    put(l.aux3, cut(pe.seq, e_rule(seq_of(gamma, comp), v_l), e_rule(pe.seq.with(comp), v_r)));
  }

  void case9() {
    const ProofNode& j = at(l.path);
    const ProofNode& jl = at(l.aux1);
    const ProofNode& jr = at(l.aux2);
    const std::size_t last = j.premises.size() - 1;
    const ProofPtr& s1 = j.premises.at(l.index);
    const ProofPtr& s2 = j.premises[last];
    const Formula a = s1->seq.succ;
    const Path rel_l = relative(append(l.path, l.index), l.aux1);
    const Path rel_r = relative(append(l.path, last), l.aux2);
    std::vector<ProofPtr> others(j.premises.begin(), j.premises.end() - 1);

    if (a.kind() == Formula::Kind::Imp) {
      const Formula d = a.sub(0), e = a.sub(1);
      auto s2l = rewrite_down(s2, rel_r, rep(seq_of(jr.seq.ante, d), jr.premises[0]), d, {});
      auto pl = others;
      pl.push_back(s2l);
      roots.push_back(rewrite_down(p.root, l.path, chain(seq_of(j.seq.ante, d), std::move(pl)), d, {}));
      auto s1r = rewrite_down(s1, rel_l, rep(seq_of(jl.seq.ante, e).with(d), jl.premises[0]), e, {d});
      auto s2r = rewrite_down(s2, rel_r, rep(jr.seq.with(e), jr.premises[1]), std::nullopt, {e});
      auto pr = others;
      pr.push_back(s1r);
      pr.push_back(s2r);
      roots.push_back(rewrite_down(p.root, l.path, chain(j.seq.with(d), std::move(pr)), std::nullopt, {d}));
      return;
    }
    const Split sp = split_boundary(jl, jr, a, p.tmpl);
    auto s1p = rewrite_down(s1, rel_l, sp.left, sp.comp, {});
    auto s2p = rewrite_down(s2, rel_r, sp.right, std::nullopt, {sp.comp});
    auto prems = others;
    prems.push_back(s1p);
    prems.push_back(s2p);
    put(l.path, chain(j.seq, std::move(prems)));
  }

  void run() {
    out.locus = l;
    out.propagation = Propagation::AllTrueImplies;
    switch (l.id) {
      case CaseId::C1InitialBot: case1_bot(); break;
      case CaseId::C1InitialEq: case1_eq(); break;
      case CaseId::C2Ind: case2(); break;
      case CaseId::C3Explicit: case3(); break;
      case CaseId::C4QFreeCut: case4(); break;
      case CaseId::C5LowerCut: case5(); break;
      case CaseId::C6MergeChain: case6(); break;
      case CaseId::C7CutToChain: case7(); break;
      case CaseId::C8DeepCut: case8(); break;
      case CaseId::C9ChainSP: case9(); break;
    }
    for (auto& r : roots) out.successors.push_back(purify(Proof{std::move(r), p.closure, p.tmpl}));
    if (out.propagation != Propagation::BranchForEachWitness && out.successors.size() == 1 &&
        out.successors[0].root->seq == p.root->seq)
      out.propagation = Propagation::SingleRewrite;
  }
};

}  // namespace

ReductionResult reduce(const Proof& p, const Locus& l, const ReduceOptions& opts) {
  Reducer r{p, l, opts, {}, {}};
  r.run();
  return std::move(r.out);
}

}  // namespace fixpoint
