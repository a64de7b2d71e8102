#pragma once

// Internal helpers shared by the classifier and the case constructions.

#include "fixpoint/reduction.hpp"

namespace fixpoint::detail {

inline Path prefix(const Path& p, std::size_t k) { return Path(p.begin(), p.begin() + static_cast<long>(k)); }
inline Path append(Path p, std::size_t i) {
  p.push_back(i);
  return p;
}
// The part of `full` below `base`; base must be a prefix of full.
Path relative(const Path& base, const Path& full);

// Deeper first, then left to right.
bool topmost_first(const Path& a, const Path& b);
// Shallower first, then left to right.
bool lowest_first(const Path& a, const Path& b);

bool matches_connective(Rule r, Formula::Kind k);

// n proves Delta => fold. Returns a proof of Delta => cnew, rewriting the
// succedent through inheriting premises; where that fails the node is cut
// against a false-atom initial sequent.
ProofPtr replace_succ_up(const ProofPtr& n, const Formula& fold, const Formula& cnew);

ProofPtr rep(Sequent s, ProofPtr p);
ProofPtr e_rule(Sequent s, ProofPtr p);
ProofPtr cut(Sequent s, ProofPtr left, ProofPtr right);
ProofPtr chain(Sequent s, std::vector<ProofPtr> prems);

// Uppermost E strictly below `at`, provided no chain lies in between.
std::optional<Path> e_below(const ProofPtr& root, const Path& at);

}  // namespace fixpoint::detail
