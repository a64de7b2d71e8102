#include <doctest.h>

#include "fixpoint/formula.hpp"
#include "oracles.hpp"

using namespace fixpoint;

namespace {

HFSet S(const char* text) { return parse_set(text); }

const HFSet E;                       // {}
const HFSet ONE = HFSet::numeral(1);  // {{}}
const HFSet TWO = HFSet::numeral(2);

}  // namespace

TEST_CASE("membership and canonical form") {
  CHECK_FALSE(mem(E, E));
  CHECK(mem(E, ONE));
  CHECK(mem(ONE, TWO));
  CHECK(S("{{} {{}}}") == S("{{{}} {} {}}"));
  CHECK(S("{{} {{}}}") == TWO);
  CHECK(S("{{{}}}").str() == "{{{}}}");
  CHECK_THROWS_AS(parse_set("{{}"), ParseError);
  CHECK_THROWS_AS(parse_set("{} x"), ParseError);
}

TEST_CASE("rank is zero for the empty set and one more than the largest member otherwise") {
  for (const auto& s : oracle::sets_upto_rank(3)) {
    std::size_t r = 0;
    for (const auto& e : s.elements()) r = std::max(r, e.rank() + 1);
    CHECK(s.rank() == r);
    CHECK(parse_set(s.str()) == s);
  }
}

TEST_CASE("the basic functions on small arguments") {
  CHECK(bs_fn(0, E, E) == ONE);
  CHECK(bs_fn(1, S("{{{}}}"), E) == ONE);
  CHECK(bs_fn(3, ONE, ONE) == S("{{{}}}"));
  CHECK(bs_fn(2, TWO, ONE) == S("{{{}}}"));
  // dom and rng of {<0,1>}
  const HFSet g = HFSet::of({oracle::ordered_pair(E, ONE)});
  CHECK(bs_fn(4, g, E) == ONE);
  CHECK(bs_fn(5, g, E) == HFSet::of({ONE}));
  CHECK_THROWS(bs_fn(9, E, E));
}

TEST_CASE("cartesian product") {
  CHECK(cartesian(E, TWO) == E);
  CHECK(cartesian(ONE, ONE) == S("{{{{}}}}"));
  CHECK(cartesian(TWO, ONE).size() == 2);
  CHECK(cartesian(TWO, TWO).size() == 4);
}

TEST_CASE("function spaces") {
  CHECK(fun_space(0, TWO) == ONE);
  CHECK(fun_space(0, E) == ONE);
  CHECK(fun_space(1, ONE) == HFSet::of({HFSet::of({oracle::ordered_pair(E, E)})}));
  CHECK(fun_space(3, TWO).size() == 8);
  CHECK(fun_space(2, E) == E);
  CHECK(fun_space_lt(2, ONE) == set_union(fun_space(0, ONE), fun_space(1, ONE)));
  CHECK(fun_space_lt(0, ONE) == E);
  CHECK_THROWS_AS(fun_space(20, TWO, 1000), BudgetError);
}

TEST_CASE("iterated unions and transitive closure") {
  CHECK(trcl(E) == E);
  CHECK(trcl(S("{{{}}}")) == S("{{{}} {}}"));
  CHECK(iter_union(1, S("{{{}}}")) == ONE);
  CHECK(iter_union(0, TWO) == TWO);
  CHECK(mem_iter(E, 1, SetOrV::of(ONE)));
  CHECK(mem_iter(E, 2, SetOrV::of(S("{{{}}}"))));
  CHECK_FALSE(mem_iter(E, 1, SetOrV::of(S("{{{}}}"))));
  CHECK(mem_iter(TWO, 1, SetOrV::universe()));
  CHECK(mem_iter(TWO, 5, SetOrV::universe()));
  CHECK_THROWS(mem_iter(E, 0, SetOrV::of(ONE)));
  CHECK(max_mem_depth(E, HFSet::numeral(3)) == 3);
  CHECK(max_mem_depth(TWO, TWO) == 0);
}

TEST_CASE("enumeration by rank") {
  CHECK(enumerate_upto_rank(0).size() == 1);
  CHECK(enumerate_upto_rank(1).size() == 2);
  CHECK(enumerate_upto_rank(2).size() == 4);
  CHECK(enumerate_upto_rank(3).size() == 16);
  const auto ours = enumerate_upto_rank(3);
  auto theirs = oracle::sets_upto_rank(3);
  std::sort(theirs.begin(), theirs.end());
  auto sorted = ours;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == theirs);
  CHECK_THROWS_AS(enumerate_upto_rank(5), BudgetError);
}

TEST_CASE("basic functions, products and closures agree with brute force on rank <= 3") {
  const auto sets = oracle::sets_upto_rank(3);
  int checked = 0;
  for (const auto& x : sets)
    for (const auto& y : sets) {
      for (int i = 0; i < 9; ++i) {
        INFO("F" << i << "(" << x.str() << ", " << y.str() << ")");
        CHECK(bs_fn(i, x, y) == oracle::basic_fn(i, x, y));
        ++checked;
      }
      CHECK(cartesian(x, y) == oracle::product_set(x, y));
      CHECK(cartesian(x, y).size() == x.size() * y.size());
    }
  CHECK(checked == 9 * 256);
}

TEST_CASE("transitive closure is the least transitive superset") {
  for (const auto& a : oracle::sets_upto_rank(3)) {
    INFO(a.str());
    const HFSet t = trcl(a);
    CHECK(t == oracle::closure(a));
    CHECK(oracle::is_transitive(t));
    CHECK(a.subset_of(t));
    for (const auto& e : t.elements()) CHECK_FALSE((oracle::is_transitive(difference(t, HFSet::of({e}))) &&
                                                    a.subset_of(difference(t, HFSet::of({e})))));
  }
}

TEST_CASE("iterated membership matches chain search") {
  const auto sets = oracle::sets_upto_rank(3);
  for (const auto& a : sets)
    for (const auto& b : sets)
      for (std::size_t n = 1; n <= 3; ++n) CHECK(mem_iter(a, n, SetOrV::of(b)) == oracle::mem_chain(a, n, b));
}

TEST_CASE("function spaces agree with enumeration of graphs") {
  for (const auto& a : oracle::sets_upto_rank(3)) {
    for (std::size_t n = 0; n <= 3; ++n) {
      INFO(n << " " << a.str());
      CHECK(fun_space(n, a) == oracle::functions(n, a));
      CHECK(fun_space_lt(n, a) == oracle::functions_below(n, a));
    }
  }
}

TEST_CASE("evaluation of bounded and unbounded formulas") {
  const Term a = Term::constant(ONE);
  const auto y = Term::var("y");
  CHECK(evaluate(Formula::in(Term::constant(E), a), {}, {}).value);
  CHECK(evaluate(Formula::all_in("x", a, Formula::eq(Term::var("x"), Term::var("x"))), {}, {}).value);
  const auto ex = evaluate(Formula::ex("y", Formula::in(y, a)), {}, {3});
  CHECK(ex.value);
  CHECK(ex.bound_relative);
  const auto bounded = evaluate(Formula::ex_in("y", a, Formula::eq(y, y)), {}, {3});
  CHECK(bounded.value);
  CHECK_FALSE(bounded.bound_relative);
  CHECK_THROWS_AS(evaluate(Formula::ex("y", Formula::in(y, a)), {}, {std::nullopt}), EvalError);
  CHECK_THROWS_AS(evaluate(Formula::q(a), {}, {}), EvalError);
}

TEST_CASE("bounded formulas do not depend on the universe bound") {
  oracle::CodeGen g(7);
  const auto x = Term::var("x"), y = Term::var("y");
  for (int i = 0; i < 200; ++i) {
    const Term b = Term::constant(g.set()), c = Term::constant(g.set());
    const Formula body = g.coin() ? Formula::in(x, c) : Formula::all_in("y", x, Formula::in(y, c));
    const Formula phi = g.coin() ? Formula::all_in("x", b, body) : Formula::ex_in("x", b, body);
    const auto r0 = evaluate(phi, {}, {0}), r3 = evaluate(phi, {}, {3});
    CHECK(r0.value == r3.value);
    CHECK_FALSE(r3.bound_relative);
  }
}
