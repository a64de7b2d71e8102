#include <doctest.h>

#include "oracles.hpp"
#include "order_props.hpp"

using namespace fixpoint;

namespace {

Code P(const char* text) { return parse_code(text); }
Code bar_of(std::size_t n) { return bar(SetOrV::of(HFSet::numeral(n))); }

}  // namespace

TEST_CASE("small comparisons") {
  CHECK(lt(P("O"), P("I")) == LtResult::True);
  CHECK(lt(P("I"), P("(w I I)")) == LtResult::True);
  CHECK(lt(P("(w I I)"), P("I")) == LtResult::False);
  CHECK(lt(P("I"), P("O")) == LtResult::False);
  CHECK(le(P("O"), P("O")) == LtResult::True);
  CHECK(le(P("O"), P("I")) == LtResult::True);
  CHECK(le(P("(+ I V)"), P("(+ I V)")) == LtResult::True);
  // members step down: 2 < 3 and 2 < V, while 3 and V do not go below 2
  CHECK(lt(bar_of(2), bar_of(3)) == LtResult::True);
  CHECK(lt(bar_of(3), bar_of(2)) == LtResult::False);
  CHECK(lt(bar_of(3), P("V")) == LtResult::True);
  CHECK(lt(P("V"), bar_of(3)) == LtResult::False);
  // (g x a) # g*n < g x b along a membership chain of length n
  const Code g = P("(+ I V)");
  CHECK(lt(nat_sum(nat_prod(g, bar_of(2)), g), nat_prod(g, bar_of(3))) == LtResult::True);
  CHECK(lt(times_n(g, 3), nat_prod(g, bar_of(3))) == LtResult::True);
  CHECK(lt(nat_sum(nat_prod(g, bar_of(2)), times_n(g, 3)), nat_prod(g, P("V"))) == LtResult::True);
  CHECK(lt(P("(+ I I I I I I I)"), P("(w I I)")) == LtResult::True);
  CHECK(lt(P("(w I (+ I I))"), P("(w (+ I I) I)")) == LtResult::True);
}

TEST_CASE("codes of sums agree with the sum order") {
  for (const auto& a : enumerate_codes(1, 2))
    for (const auto& b : enumerate_codes(1, 2))
      if (a.is_sum() && b.is_sum()) CHECK(lt(a, b) == lt_p(a, b));
  CHECK_THROWS(lt_p(P("(w I I)"), P("I")));
}

TEST_CASE("the order is irreflexive on small codes") {
  for (const auto& a : enumerate_codes(2, 2)) {
    INFO(a.str());
    CHECK(lt(a, a) == LtResult::False);
  }
}

TEST_CASE("an exhausted budget is reported, not treated as false") {
  LtDerivationBudget tiny{1, 1};
  clear_lt_memo();
  const Code a = P("(w (+ I V) (+ I I))"), b = P("(w (w I I) (x V V))");
  CHECK(lt(a, b, tiny) == LtResult::BudgetExhausted);
  clear_lt_memo();
  CHECK(lt(a, b) == LtResult::True);
}

TEST_CASE("lt agrees with the brute-force closure on codes of length <= 2 over rank <= 1") {
  const auto cs = enumerate_codes(2, 1);
  CodeOracle o(cs);
  o.run(64);
  std::size_t pairs = 0, agree = 0;
  for (const auto& a : cs)
    for (const auto& b : cs) {
      ++pairs;
      const bool ours = lt(a, b) == LtResult::True;
      if (ours == o.lt(a, b)) ++agree;
      else FAIL_CHECK(a.str() << " < " << b.str() << ": lt " << ours << ", closure " << !ours);
    }
  MESSAGE(agree << "/" << pairs << " pairs agree");
  CHECK(agree == pairs);
  CHECK(oracle_lt(P("O"), P("I"), 1));
  CHECK_FALSE(oracle_lt(P("I"), P("O"), 4));
}

TEST_CASE("sampled order properties") {
  for (const auto& r : props::check_all(3, 100)) {
    INFO(r.name << ": " << r.statement);
    if (r.name == "sum-decomposition") continue;  // fails as stated; see below
    CHECK(r.instances >= 100);
    CHECK(r.budget_failures == 0);
    CHECK_MESSAGE(r.counterexamples == 0, (r.witnesses.empty() ? "" : r.witnesses.front()));
  }
}

TEST_CASE("decomposition of a sum fails without extra hypotheses") {
  // c = 2#2 < 3#2 by the congruence clause, yet c is not below 3 and does
  // not contain 3 as a summand.
  const Code two = bar_of(2), three = bar_of(3);
  const Code c = nat_sum(two, two);
  CHECK(lt(c, nat_sum(three, two)) == LtResult::True);
  CHECK(lt(c, three) == LtResult::False);
  CodeOracle o({c, nat_sum(three, two), three});
  o.run(64);
  CHECK(o.lt(c, nat_sum(three, two)));
  CHECK_FALSE(o.lt(c, three));
}
