#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fixpoint/hf_set.hpp"

namespace fixpoint {

// Factor of a product: a set name, the class symbol V, or W. W never comes
// out of the parser; the order decision uses it for "some set large enough".
struct Atom {
  enum class Kind : std::uint8_t { Set, V, W };
  Kind kind = Kind::Set;
  HFSet set;

  static Atom of(const HFSet& s) { return {Kind::Set, s}; }
  static Atom v() { return {Kind::V, HFSet()}; }
  static Atom w() { return {Kind::W, HFSet()}; }

  bool is_set() const { return kind == Kind::Set; }
  std::string str() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.set <=> b.set;
  }
};

using Prod = std::vector<Atom>;  // sorted multiset, empty is the unit
using Sum = std::vector<Prod>;   // sorted multiset, empty is zero

class Code {
 public:
  struct Group;
  struct Node;

  Code();  // zero

  static Code zero() { return Code(); }
  static Code one();
  static Code atom(const Atom& a);  // bar of a set; zero and unit absorbed
  static Code from_prod(Prod p);
  static Code from_sum(Sum s);
  // Merges equal exponents, drops empty bases, sorts.
  static Code from_groups(std::vector<Group> gs);

  const std::vector<Group>& groups() const;
  bool is_zero() const;
  bool is_one() const;
  bool is_sum() const;          // only the exponent-zero group, if any
  const Sum& sum_part() const;  // base of the exponent-zero group
  Sum base_at(const Code& exp) const;

  std::uint64_t id() const;
  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const Code& a, const Code& b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const Code& a, const Code& b);

 private:
  explicit Code(const Node* n) : node_(n) {}
  const Node* node_;
};

struct Code::Group {
  Code exp;
  Sum base;
  friend bool operator==(const Group&, const Group&) = default;
  friend std::strong_ordering operator<=>(const Group& a, const Group& b) {
    if (auto c = a.exp <=> b.exp; c != 0) return c;
    return a.base <=> b.base;
  }
};

struct CodeHash {
  std::size_t operator()(const Code& c) const { return c.hash(); }
};

// Sorted with unit factors removed; nullopt when some factor is zero.
std::optional<Prod> normalize_prod(Prod p);
Sum normalize_sum(Sum s);

Code bar(const SetOrV& a);
Code nat_sum(const Code& a, const Code& b);
Code nat_sum(const std::vector<Code>& xs);
Code times_n(const Code& a, std::size_t n);  // a # ... # a
Sum nat_prod(const Sum& a, const Sum& b);
// Throws std::invalid_argument unless both arguments are sums.
Code nat_prod(const Code& a, const Code& b);
Code omega_pow(const Code& exp, const Code& base);
Code omega2(const Code& a);                          // Omega^(Omega^a) 1
Code omega2_apply(const Code& a, const Code& base);  // Omega^(Omega^a) base

std::size_t length(const Code& a);

Code parse_code(std::string_view text);

// Summands as single-PCode codes: one per product of the sum part, one per
// product of every other group.
std::vector<Code> pcodes(const Code& a);

// Unnormalized expression trees, used to test normalization.
struct RawCode {
  enum class Kind : std::uint8_t { Zero, One, Leaf, Prod, Sum, Omega };
  Kind kind = Kind::Zero;
  Atom atom;
  std::vector<RawCode> kids;
};
Code normalize(const RawCode& r);
RawCode to_raw(const Code& c);

// Order decision.
enum class LtResult { True, False, BudgetExhausted };

struct LtDerivationBudget {
  std::size_t max_depth = 4096;
  std::size_t max_splits = std::size_t{1} << 24;
};

LtResult lt(const Code& a, const Code& b, const LtDerivationBudget& budget = {});
LtResult le(const Code& a, const Code& b, const LtDerivationBudget& budget = {});
// Both arguments must be sums.
LtResult lt_p(const Code& a, const Code& b, const LtDerivationBudget& budget = {});
void clear_lt_memo();

std::string to_string(LtResult r);

// Brute-force closure of the defining clauses over a finite universe that
// contains every seed together with the sub-multisets, bases, exponents and
// sub-products the clauses can mention.
class CodeOracle {
 public:
  explicit CodeOracle(const std::vector<Code>& seeds);
  // Applies every clause once per round; stops early at a fixpoint.
  // Returns the number of rounds that changed something.
  std::size_t run(std::size_t max_rounds);
  bool lt(const Code& a, const Code& b) const;  // both must be in the universe
  bool contains(const Code& a) const;
  std::size_t universe_size() const { return universe_.size(); }

 private:
  struct Split {
    std::size_t lo, hi;
  };
  std::size_t index(const Code& c) const;
  bool rel(const std::vector<std::vector<std::uint64_t>>& r, std::size_t i, std::size_t j) const {
    return r[i][j >> 6] >> (j & 63) & 1;
  }
  static void set(std::vector<std::vector<std::uint64_t>>& r, std::size_t i, std::size_t j) {
    r[i][j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  bool product_clause(std::size_t x, std::size_t y) const;
  bool omega_clause(std::size_t x, std::size_t y) const;
  bool split_clause(const std::vector<std::vector<std::uint64_t>>& r, std::size_t x, std::size_t y) const;
  void close_transitive(std::vector<std::vector<std::uint64_t>>& r);

  std::vector<Code> universe_;
  std::unordered_map<std::uint64_t, std::size_t> idx_;
  std::vector<bool> is_sum_;
  std::vector<std::vector<Split>> splits_;
  std::vector<std::vector<std::uint64_t>> rc_;  // code order
  std::vector<std::vector<std::uint64_t>> rp_;  // sum order, only sums are populated
};

bool oracle_lt(const Code& a, const Code& b, std::size_t depth);

// All normalized codes of length <= max_length whose set atoms have rank
// <= max_rank, with at most `width` factors per product and summands per
// sum or code.
std::vector<Code> enumerate_codes(std::size_t max_length, std::size_t max_rank, std::size_t width = 2);

}  // namespace fixpoint
