#include "corpus.hpp"

#include <stdexcept>

namespace fixpoint::corpus {

Term c(std::size_t n) { return Term::constant(HFSet::numeral(n)); }
Term v(const std::string& name) { return Term::var(name); }

FixedPointTemplate standard_template() {
  return parse_template("(template x (and (eq (var x) (var x)) (all y (imp (in (var y) (var x)) (X (var y))))))");
}

namespace {

using F = Formula;
using Ante = std::vector<Formula>;
using K = std::vector<ProofPtr>;

Ante operator+(Ante a, const Ante& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

F IN(const Term& a, const Term& b) { return F::in(a, b); }
F EQ(const Term& a, const Term& b) { return F::eq(a, b); }
F Q(const Term& t) { return F::q(t); }
F AND(const F& a, const F& b) { return F::conj(a, b); }
F OR(const F& a, const F& b) { return F::disj(a, b); }
F IMP(const F& a, const F& b) { return F::imp(a, b); }
F ALL(const std::string& x, const F& a) { return F::all(x, a); }
F EX(const std::string& x, const F& a) { return F::ex(x, a); }

ProofPtr mk(Rule r, const Ante& a, const F& s, K ps = {}, RuleData d = {}) {
  return make_node(Sequent::make(a, s), r, std::move(d), std::move(ps));
}
ProofPtr init(const Ante& a, const F& s) {
  auto seq = Sequent::make(a, s);
  const Rule r = seq.has(s) ? Rule::InitialEq : Rule::InitialBot;
  return make_node(std::move(seq), r, {}, {});
}
ProofPtr e(const ProofPtr& p, int n = 1) {
  ProofPtr r = p;
  for (int i = 0; i < n; ++i) r = make_node(p->seq, Rule::E, {}, {r});
  return r;
}

RuleData pr(const F& p) {
  RuleData d;
  d.principal = p;
  return d;
}
RuleData pr_i(const F& p, int i) {
  RuleData d = pr(p);
  d.index = i;
  return d;
}
RuleData pr_t(const F& p, const Term& t) {
  RuleData d = pr(p);
  d.term = t;
  return d;
}
RuleData pr_e(const F& p, const std::string& x) {
  RuleData d = pr(p);
  d.eigen = x;
  return d;
}
RuleData eig(const std::string& x) {
  RuleData d;
  d.eigen = x;
  return d;
}
RuleData idx(int i) {
  RuleData d;
  d.index = i;
  return d;
}
RuleData term(const Term& t) {
  RuleData d;
  d.term = t;
  return d;
}

const FixedPointTemplate& tmpl() {
  static const FixedPointTemplate t = standard_template();
  return t;
}
F unfold(const Term& t) { return unfold_template(tmpl(), t); }

Proof P(const ProofPtr& root) { return reference_proof(root, tmpl()); }

// forall z (z = z) and forall z (z in 0 -> 0 in 0)
F refl() { return ALL("z", EQ(v("z"), v("z"))); }
F empty0() { return ALL("z", IMP(IN(v("z"), c(0)), IN(c(0), c(0)))); }
Ante gq() { return {refl(), empty0()}; }
F eq00() { return EQ(c(0), c(0)); }

// G => t = t from refl
ProofPtr prove_eq(const Ante& g, const Term& t) {
  const F a = EQ(t, t);
  return mk(Rule::LAll, g, a, {init(g + Ante{a}, a)}, pr_t(refl(), t));
}

// G => Q(0), G containing gq(); u is the eigenvariable used inside
ProofPtr lq(const Ante& g, const std::string& u) {
  const F U = unfold(c(0));
  const F U1 = U.sub(1);
  const F body = substitute(U1.sub(0), U1.var(), v(u));
  const F uin = body.sub(0), qu = body.sub(1);
  const F inst = substitute(empty0().sub(0), "z", v(u));
  const Ante g2 = g + Ante{uin, inst};
  auto limp = mk(Rule::LImp, g2, qu, {init(g2, uin), init(g2 + Ante{IN(c(0), c(0))}, qu)}, pr(inst));
  auto lall = mk(Rule::LAll, g + Ante{uin}, qu, {limp}, pr_t(empty0(), v(u)));
  auto rall = mk(Rule::RAll, g, U1, {mk(Rule::RImp, g, body, {lall})}, eig(u));
  return mk(Rule::RQ, g, Q(c(0)), {mk(Rule::RAnd, g, U, {prove_eq(g, c(0)), rall})});
}

// G, Q(0) => 0 = 0 through LQ
ProofPtr rq(const Ante& g) {
  const F U = unfold(c(0));
  const Ante g1 = g + Ante{Q(c(0))};
  auto land = mk(Rule::LAnd, g1 + Ante{U}, eq00(), {init(g1 + Ante{U, eq00()}, eq00())}, pr_i(U, 0));
  return mk(Rule::LQ, g1, eq00(), {land}, pr(Q(c(0))));
}

// G => Q(0) -> 0 = 0
ProofPtr imp_q_eq(const Ante& g) {
  return mk(Rule::RImp, g, IMP(Q(c(0)), eq00()), {prove_eq(g + Ante{Q(c(0))}, c(0))});
}

ProofPtr ind_eq(const Ante& g, const Term& iota, const Term& nu, ProofPtr s2) {
  RuleData d;
  d.ind_formula = EQ(v("x"), v("x"));
  d.eigen = "x";
  d.ind_bound = "y";
  d.term = iota;
  d.nu = nu;
  const F hyp = ind_hypothesis(d, v("x"));
  auto s0 = prove_eq(g + Ante{hyp}, v("x"));
  const F a = EQ(iota, iota);
  auto s1 = init(g + Ante{a}, a);
  return mk(Rule::Ind, g, a, {s0, s1, std::move(s2)}, d);
}

std::vector<Entry> build() {
  std::vector<Entry> out;
  auto add = [&](std::string name, std::string first, const ProofPtr& root) {
    out.push_back({std::move(name), std::move(first), P(root)});
  };
  const F in01 = IN(c(0), c(1)), in12 = IN(c(1), c(2)), in00 = IN(c(0), c(0));

  {
    const Ante g{in01};
    const F d = AND(in01, in01);
    auto r = mk(Rule::RAnd, g, d, {init(g, in01), init(g, in01)});
    add("c1_eq_drop_cut", "C1-eq", mk(Rule::Cut, g, d, {init(g, in01), r}));
    add("c1_eq_drop_chain", "C1-eq", mk(Rule::Chain, g, d, {init(g, in01), r}));
  }
  {
    const F p = AND(in01, in01);
    const Ante g{p};
    auto l = mk(Rule::LAnd, g, in01, {init(g + Ante{in01}, in01)}, pr_i(p, 0));
    add("c1_eq_discharge", "C1-eq", mk(Rule::Cut, g, in01, {l, init(g + Ante{in01}, in01)}));
  }
  {
    const F p = AND(in00, in01);
    const Ante g{p};
    auto l = mk(Rule::LAnd, g, in00, {init(g + Ante{in00}, in00)}, pr_i(p, 0));
    add("c1_bot", "C1-bot", mk(Rule::Cut, g, in01, {l, init(g + Ante{in00}, in01)}));
  }
  {
    const Ante g{refl(), in01};
    add("c2_member", "C2", ind_eq(g, c(0), c(1), init(g, in01)));
  }
  {
    const F bad = ALL("z", IMP(IN(v("z"), c(2)), IN(v("z"), c(1))));
    const Ante g{refl(), in12, bad};
    const F inst = IMP(in12, IN(c(1), c(1)));
    const F in11 = IN(c(1), c(1));
    auto limp = mk(Rule::LImp, g + Ante{inst}, in11, {init(g + Ante{inst}, in12), init(g + Ante{inst, in11}, in11)},
                   pr(inst));
    auto s2 = mk(Rule::LAll, g, in11, {limp}, pr_t(bad, c(1)));
    add("c2_nonmember", "C2", ind_eq(g, c(1), c(1), s2));
  }
  {
    const Ante g{refl()};
    const F goal = ALL("w", EQ(v("w"), v("w")));
    add("c3_rall_unbounded", "C3", mk(Rule::RAll, g, goal, {prove_eq(g, v("u"))}, eig("u")));
  }
  {
    const F gf = ALL("z", IMP(IN(v("z"), c(1)), IN(v("z"), c(2))));
    const Ante g{gf};
    const F goal = ALL("w", IMP(IN(v("w"), c(1)), IN(v("w"), c(2))));
    const F u1 = IN(v("u"), c(1)), u2 = IN(v("u"), c(2));
    const F inst = IMP(u1, u2);
    auto limp = mk(Rule::LImp, g + Ante{u1, inst}, u2, {init(g + Ante{u1, inst}, u1), init(g + Ante{u1, inst, u2}, u2)},
                   pr(inst));
    auto lall = mk(Rule::LAll, g + Ante{u1}, u2, {limp}, pr_t(gf, v("u")));
    add("c3_rall_bounded", "C3", mk(Rule::RAll, g, goal, {mk(Rule::RImp, g, inst, {lall})}, eig("u")));
  }
  {
    const F p = IMP(in01, in12);
    const Ante g{p, in01};
    add("c3_limp", "C3", mk(Rule::LImp, g, in12, {init(g, in01), init(g + Ante{in12}, in12)}, pr(p)));
  }
  {
    const F p = OR(in01, in12);
    const Ante g{p};
    const F goal = OR(in12, in01);
    auto b0 = mk(Rule::ROr, g + Ante{in01}, goal, {init(g + Ante{in01}, in01)}, idx(1));
    auto b1 = mk(Rule::ROr, g + Ante{in12}, goal, {init(g + Ante{in12}, in12)}, idx(0));
    add("c3_lor", "C3", mk(Rule::LOr, g, goal, {b0, b1}, pr(p)));
  }
  add("c3_rimp", "C3", mk(Rule::RImp, {}, IMP(in01, in01), {init({in01}, in01)}));
  {
    const Ante g{refl(), in01};
    const F goal = EX("w", AND(IN(v("w"), c(1)), EQ(v("w"), v("w"))));
    auto rand = mk(Rule::RAnd, g, AND(in01, eq00()), {init(g, in01), prove_eq(g, c(0))});
    add("c3_rex", "C3", mk(Rule::REx, g, goal, {rand}, term(c(0))));
  }
  {
    const F body = AND(IN(v("u"), c(1)), IN(v("u"), c(2)));
    const F p = EX("z", AND(IN(v("z"), c(1)), IN(v("z"), c(2))));
    const Ante g{p};
    const F goal = EX("w", IN(v("w"), c(2)));
    const F u2 = IN(v("u"), c(2));
    auto rex = mk(Rule::REx, g + Ante{body, u2}, goal, {init(g + Ante{body, u2}, u2)}, term(v("u")));
    auto land = mk(Rule::LAnd, g + Ante{body}, goal, {rex}, pr_i(body, 1));
    add("c3_lex", "C3", mk(Rule::LEx, g, goal, {land}, pr_e(p, "u")));
  }
  add("c3_lall", "C3", prove_eq({refl()}, c(1)));
  {
    const Ante g{in01};
    const F a1 = AND(in01, in01);
    const F goal = OR(in01, in01);
    auto l = mk(Rule::RAnd, g, a1, {init(g, in01), init(g, in01)});
    auto r = mk(Rule::LAnd, g + Ante{a1}, goal,
                {mk(Rule::ROr, g + Ante{a1}, goal, {init(g + Ante{a1}, in01)}, idx(0))}, pr_i(a1, 0));
    add("c4_cut", "C4", mk(Rule::Cut, g, goal, {l, r}));
    add("c4_chain", "C4", mk(Rule::Chain, g, goal, {l, r}));
  }
  const Ante g = gq();
  add("c5_lower_cut", "C5", e(mk(Rule::Cut, g, eq00(), {lq(g, "u"), rq(g)}), 3));
  {
    auto j0 = mk(Rule::Cut, g, eq00(), {lq(g, "v"), rq(g)});
    add("c6_merge", "C6", mk(Rule::Chain, g, eq00(), {lq(g, "u"), j0}));
  }
  add("c7_cut_to_chain", "C7", e(mk(Rule::Cut, g, eq00(), {lq(g, "u"), rq(g)}), 2));
  {
    const F a = IMP(Q(c(0)), eq00());
    auto r = mk(Rule::LImp, g + Ante{a}, eq00(), {lq(g, "u"), init(g + Ante{a, eq00()}, eq00())}, pr(a));
    add("c8_imp", "C8", e(mk(Rule::Cut, g, eq00(), {imp_q_eq(g), r}), 3));
  }
  {
    const F a = AND(IMP(Q(c(0)), eq00()), eq00());
    auto l = mk(Rule::RAnd, g, a, {imp_q_eq(g), prove_eq(g, c(0))});
    auto r = mk(Rule::LAnd, g + Ante{a}, eq00(), {init(g + Ante{a, eq00()}, eq00())}, pr_i(a, 1));
    add("c8_and", "C8", e(mk(Rule::Cut, g, eq00(), {l, r}), 4));
  }
  {
    const F a = OR(IMP(Q(c(0)), eq00()), eq00());
    auto l = mk(Rule::ROr, g, a, {prove_eq(g, c(0))}, idx(1));
    const F left = a.sub(0);
    auto r = mk(Rule::LOr, g + Ante{a}, eq00(),
                {prove_eq(g + Ante{a, left}, c(0)), init(g + Ante{a, eq00()}, eq00())}, pr(a));
    add("c8_or", "C8", e(mk(Rule::Cut, g, eq00(), {l, r}), 4));
  }
  {
    const F a = ALL("w", IMP(Q(v("w")), EQ(v("w"), v("w"))));
    const F qu = Q(v("u"));
    auto l = mk(Rule::RAll, g, a,
                {mk(Rule::RImp, g, IMP(qu, EQ(v("u"), v("u"))), {prove_eq(g + Ante{qu}, v("u"))})}, eig("u"));
    const F inst = IMP(Q(c(0)), eq00());
    auto r = mk(Rule::LAll, g + Ante{a}, eq00(), {prove_eq(g + Ante{a, inst}, c(0))}, pr_t(a, c(0)));
    add("c8_all", "C8", e(mk(Rule::Cut, g, eq00(), {l, r}), 4));
  }
  {
    const F a = EX("w", IMP(Q(v("w")), EQ(v("w"), v("w"))));
    auto l = mk(Rule::REx, g, a, {imp_q_eq(g)}, term(c(0)));
    const F inst = IMP(Q(v("u")), EQ(v("u"), v("u")));
    auto r = mk(Rule::LEx, g + Ante{a}, eq00(), {prove_eq(g + Ante{a, inst}, c(0))}, pr_e(a, "u"));
    add("c8_ex", "C8", e(mk(Rule::Cut, g, eq00(), {l, r}), 4));
  }
  add("c9_q", "C9", mk(Rule::Chain, g, eq00(), {lq(g, "u"), rq(g)}));
  {
    const Ante g2 = g + Ante{in01};
    const F a = IMP(in01, Q(c(0)));
    auto l = mk(Rule::RImp, g2, a, {lq(g2, "u")});
    auto r = mk(Rule::LImp, g2 + Ante{a}, eq00(), {init(g2 + Ante{a}, in01), rq(g2)}, pr(a));
    add("c9_imp", "C9", mk(Rule::Chain, g2, eq00(), {l, r}));
  }
  {
    const F a = AND(Q(c(0)), eq00());
    auto l = mk(Rule::RAnd, g, a, {lq(g, "u"), prove_eq(g, c(0))});
    auto r = mk(Rule::LAnd, g + Ante{a}, eq00(), {rq(g + Ante{a})}, pr_i(a, 0));
    add("c9_and", "C9", mk(Rule::Chain, g, eq00(), {l, r}));
  }
  add("initial_root", "none", init({in01}, in01));
  out.push_back({"qelim", "C2", qelim()});
  return out;
}

}  // namespace

Proof qelim() {
  const Ante g{refl(), IN(c(1), c(2))};
  RuleData d;
  d.ind_formula = Q(v("x"));
  d.eigen = "x";
  d.ind_bound = "y";
  d.term = c(1);
  d.nu = c(2);
  const F hyp = ind_hypothesis(d, v("x"));
  const F ux = unfold(v("x"));
  auto s0 = mk(Rule::RQ, g + Ante{hyp}, Q(v("x")),
               {mk(Rule::RAnd, g + Ante{hyp}, ux, {prove_eq(g + Ante{hyp}, v("x")), init(g + Ante{hyp}, ux.sub(1))})});

  const Term u = v("u");
  const F goal = F::all_in("w", c(1), EQ(v("w"), v("w")));
  const F u1 = IN(u, c(1)), euu = EQ(u, u);
  const F U1 = unfold(c(1));
  const F A1 = U1.sub(1);
  const F inst = substitute(A1.sub(0), A1.var(), u);  // u in 1 -> Q(u)
  const F Uu = unfold(u);
  Ante a = g + Ante{Q(c(1)), u1, U1, A1, inst};
  auto q_side = mk(Rule::LQ, a + Ante{Q(u)}, euu,
                   {mk(Rule::LAnd, a + Ante{Q(u), Uu}, euu, {init(a + Ante{Q(u), Uu, euu}, euu)}, pr_i(Uu, 0))},
                   pr(Q(u)));
  auto limp = mk(Rule::LImp, a, euu, {init(a, u1), q_side}, pr(inst));
  auto lall = mk(Rule::LAll, g + Ante{Q(c(1)), u1, U1, A1}, euu, {limp}, pr_t(A1, u));
  auto land = mk(Rule::LAnd, g + Ante{Q(c(1)), u1, U1}, euu, {lall}, pr_i(U1, 1));
  auto lqn = mk(Rule::LQ, g + Ante{Q(c(1)), u1}, euu, {land}, pr(Q(c(1))));
  auto rimp = mk(Rule::RImp, g + Ante{Q(c(1))}, substitute(goal.sub(0), goal.var(), u), {lqn});
  auto s1 = mk(Rule::RAll, g + Ante{Q(c(1))}, goal, {rimp}, eig("u"));
  auto s2 = init(g, IN(c(1), c(2)));
  auto ind = mk(Rule::Ind, g, goal, {s0, s1, s2}, d);
  return P(e(ind, 2));
}

std::vector<Entry> all() { return build(); }

Entry by_name(const std::string& name) {
  for (auto& en : build())
    if (en.name == name) return en;
  throw std::invalid_argument("no corpus entry " + name);
}

}  // namespace fixpoint::corpus
