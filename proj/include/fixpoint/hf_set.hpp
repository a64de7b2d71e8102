#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fixpoint {

// Hereditarily finite set. Instances are hash-consed, so two values compare
// equal exactly when they point at the same node.
class HFSet {
 public:
  HFSet();  // the empty set

  static HFSet of(std::vector<HFSet> elems);  // duplicates allowed, canonicalized
  static HFSet singleton(const HFSet& a);
  static HFSet numeral(std::size_t n);  // von Neumann

  const std::vector<HFSet>& elements() const;
  std::size_t size() const { return elements().size(); }
  bool empty() const { return elements().empty(); }
  std::size_t rank() const;
  std::size_t hash() const;
  std::uint64_t id() const;

  bool contains(const HFSet& a) const;
  bool subset_of(const HFSet& b) const;

  std::string str() const;

  friend bool operator==(const HFSet& a, const HFSet& b) { return a.node_ == b.node_; }
  // rank, then cardinality, then lexicographic over the sorted members
  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);

  struct Node;

 private:
  explicit HFSet(const Node* n) : node_(n) {}
  const Node* node_;
};

struct HFSetHash {
  std::size_t operator()(const HFSet& s) const { return s.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HFSet parse_set(std::string_view text);
// Parses one set starting at pos, advances pos past it.
HFSet parse_set_at(std::string_view text, std::size_t& pos);

bool mem(const HFSet& a, const HFSet& b);

HFSet set_union(const HFSet& a, const HFSet& b);
HFSet big_union(const HFSet& a);
HFSet difference(const HFSet& a, const HFSet& b);

// <v,u> = {v,{v,u}}
HFSet pair(const HFSet& v, const HFSet& u);
HFSet triple(const HFSet& u, const HFSet& v, const HFSet& w);

HFSet bs_fn(int i, const HFSet& x, const HFSet& y);

HFSet cartesian(const HFSet& a, const HFSet& b);

inline constexpr std::size_t kDefaultFunSpaceBudget = 1u << 16;
HFSet fun_space(std::size_t n, const HFSet& a, std::size_t budget = kDefaultFunSpaceBudget);
HFSet fun_space_lt(std::size_t n, const HFSet& a, std::size_t budget = kDefaultFunSpaceBudget);

HFSet iter_union(std::size_t n, const HFSet& a);
HFSet trcl(const HFSet& a);

// Either a set or the universe V.
struct SetOrV {
  bool is_v = false;
  HFSet set;
  static SetOrV universe() { return {true, HFSet()}; }
  static SetOrV of(const HFSet& s) { return {false, s}; }
};

// a is a member of the (n-1)-fold union of b. Rejects n = 0.
bool mem_iter(const HFSet& a, std::size_t n, const SetOrV& b);
// Largest n with mem_iter(a, n, b), 0 when there is none. b must be a set.
std::size_t max_mem_depth(const HFSet& a, const HFSet& b);

inline constexpr std::size_t kDefaultRankCap = 4;
const std::vector<HFSet>& enumerate_upto_rank(std::size_t r, std::size_t cap = kDefaultRankCap);

}  // namespace fixpoint
