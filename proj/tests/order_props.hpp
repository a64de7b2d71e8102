#pragma once

// Sampled instances of the algebraic facts about the code order, checked
// with lt. Shared by the unit tests (small counts) and the acceptance
// binary (at least 1000 instances per property).

#include <cstdint>
#include <string>
#include <vector>

namespace fixpoint::props {

struct Report {
  std::string name;
  std::string statement;
  std::size_t instances = 0;
  std::size_t counterexamples = 0;
  std::size_t budget_failures = 0;  // lt ran out of budget on a premise or conclusion
  std::vector<std::string> witnesses;  // first few counterexamples

  bool ok(std::size_t want) const { return instances >= want && counterexamples == 0 && budget_failures == 0; }
};

// transitivity, zero-least, product-step, sum-grows, sum-decomposition,
// monotone, omega-dominates, omega-pair, exponent-trade.
std::vector<Report> check_all(std::uint64_t seed, std::size_t want);

}  // namespace fixpoint::props
