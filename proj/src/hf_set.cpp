#include "fixpoint/hf_set.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

namespace fixpoint {

struct HFSet::Node {
  std::vector<HFSet> elems;
  std::size_t rank = 0;
  std::size_t hash = 0;
  std::uint64_t id = 0;
};

namespace {

std::strong_ordering compare_nodes(const HFSet::Node* a, const HFSet::Node* b);

struct KeyHash {
  std::size_t operator()(const std::vector<const HFSet::Node*>& k) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto* n : k) h = (h ^ n->id) * 0x100000001b3ull + (h >> 7);
    return h;
  }
};

class Interner {
 public:
  const HFSet::Node* get(std::vector<HFSet>&& sorted, const std::vector<const HFSet::Node*>& key) {
    std::lock_guard lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    auto& n = nodes_.emplace_back();
    n.elems = std::move(sorted);
    n.id = nodes_.size();
    std::size_t r = 0;
    for (const auto& e : n.elems) r = std::max(r, e.rank() + 1);
    n.rank = r;
    n.hash = KeyHash{}(key) ^ (n.elems.size() * 0x51ed27ull);
    table_.emplace(key, &n);
    return &n;
  }

 private:
  std::mutex mu_;
  std::deque<HFSet::Node> nodes_;
  std::unordered_map<std::vector<const HFSet::Node*>, const HFSet::Node*, KeyHash> table_;
};

Interner& interner() {
  static Interner in;
  return in;
}

}  // namespace

HFSet::HFSet() {
  static const Node* empty = [] {
    std::vector<HFSet> none;
    // bootstrap: the empty node cannot be built through HFSet::of
    return interner().get(std::move(none), {});
  }();
  node_ = empty;
}

const std::vector<HFSet>& HFSet::elements() const { return node_->elems; }
std::size_t HFSet::rank() const { return node_->rank; }
std::size_t HFSet::hash() const { return node_->hash; }
std::uint64_t HFSet::id() const { return node_->id; }

namespace {
std::strong_ordering compare_nodes(const HFSet::Node* a, const HFSet::Node* b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->rank <=> b->rank; c != 0) return c;
  if (auto c = a->elems.size() <=> b->elems.size(); c != 0) return c;
  for (std::size_t i = 0; i < a->elems.size(); ++i) {
    if (auto c = a->elems[i] <=> b->elems[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}
}  // namespace

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  return compare_nodes(a.node_, b.node_);
}

HFSet HFSet::of(std::vector<HFSet> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<const Node*> key;
  key.reserve(elems.size());
  for (const auto& e : elems) key.push_back(e.node_);
  return HFSet(interner().get(std::move(elems), key));
}

HFSet HFSet::singleton(const HFSet& a) { return of({a}); }

HFSet HFSet::numeral(std::size_t n) {
  HFSet cur;
  for (std::size_t i = 0; i < n; ++i) {
    auto e = cur.elements();
    e.push_back(cur);
    cur = of(std::move(e));
  }
  return cur;
}

bool HFSet::contains(const HFSet& a) const {
  return std::binary_search(node_->elems.begin(), node_->elems.end(), a);
}

bool HFSet::subset_of(const HFSet& b) const {
  return std::all_of(elements().begin(), elements().end(),
                     [&](const HFSet& e) { return b.contains(e); });
}

std::string HFSet::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& e : elements()) {
    if (!first) out += ' ';
    first = false;
    out += e.str();
  }
  out += '}';
  return out;
}

HFSet parse_set_at(std::string_view text, std::size_t& pos) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '{') throw ParseError("expected '{'", pos);
  ++pos;
  std::vector<HFSet> elems;
  for (;;) {
    skip();
    if (pos >= text.size()) throw ParseError("unterminated set", pos);
    if (text[pos] == '}') {
      ++pos;
      break;
    }
    elems.push_back(parse_set_at(text, pos));
  }
  return HFSet::of(std::move(elems));
}

HFSet parse_set(std::string_view text) {
  std::size_t pos = 0;
  HFSet s = parse_set_at(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw ParseError("trailing input after set", pos);
  return s;
}

bool mem(const HFSet& a, const HFSet& b) { return b.contains(a); }

HFSet set_union(const HFSet& a, const HFSet& b) {
  auto e = a.elements();
  e.insert(e.end(), b.elements().begin(), b.elements().end());
  return HFSet::of(std::move(e));
}

HFSet big_union(const HFSet& a) {
  std::vector<HFSet> e;
  for (const auto& x : a.elements()) e.insert(e.end(), x.elements().begin(), x.elements().end());
  return HFSet::of(std::move(e));
}

HFSet difference(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> e;
  for (const auto& x : a.elements())
    if (!b.contains(x)) e.push_back(x);
  return HFSet::of(std::move(e));
}

HFSet pair(const HFSet& v, const HFSet& u) { return HFSet::of({v, HFSet::of({v, u})}); }

HFSet triple(const HFSet& u, const HFSet& v, const HFSet& w) { return pair(u, pair(v, w)); }

namespace {

HFSet adjoin_product(const HFSet& x, const HFSet& y) {
  std::vector<HFSet> out;
  for (const auto& u : x.elements())
    for (const auto& v : y.elements()) {
      auto e = u.elements();
      e.push_back(v);
      out.push_back(HFSet::of(std::move(e)));
    }
  return HFSet::of(std::move(out));
}

HFSet dom_or_rng(const HFSet& x, bool want_dom) {
  HFSet uu = big_union(big_union(x));
  std::vector<HFSet> out;
  for (const auto& u : uu.elements())
    for (const auto& v : uu.elements()) {
      if (x.contains(pair(u, v))) out.push_back(want_dom ? u : v);
    }
  return HFSet::of(std::move(out));
}

// All <u,v> members of x, found by trying every candidate pair over the
// double union.
std::vector<std::pair<HFSet, HFSet>> pairs_in(const HFSet& x) {
  HFSet uu = big_union(big_union(x));
  std::vector<std::pair<HFSet, HFSet>> out;
  for (const auto& u : uu.elements())
    for (const auto& v : uu.elements())
      if (x.contains(pair(u, v))) out.emplace_back(u, v);
  return out;
}

}  // namespace

HFSet bs_fn(int i, const HFSet& x, const HFSet& y) {
  switch (i) {
    case 0: return HFSet::of({x, y});
    case 1: return big_union(x);
    case 2: return difference(x, y);
    case 3: return adjoin_product(x, y);
    case 4: return dom_or_rng(x, true);
    case 5: return dom_or_rng(x, false);
    case 6: {
      std::vector<HFSet> out;
      for (const auto& v : y.elements())
        for (const auto& u : x.elements())
          if (u.contains(v)) out.push_back(pair(v, u));
      return HFSet::of(std::move(out));
    }
    case 7:
    case 8: {
      std::vector<HFSet> out;
      for (const auto& [u, v] : pairs_in(x))
        for (const auto& w : y.elements()) out.push_back(i == 7 ? triple(u, v, w) : triple(u, w, v));
      return HFSet::of(std::move(out));
    }
    default: throw std::invalid_argument("bs_fn index out of range: " + std::to_string(i));
  }
}

HFSet cartesian(const HFSet& a, const HFSet& b) {
  // {{x},{x,y}} per pair. Composing F3 with x -> {x} twice, as in
  // F3(G(G(a)), F3(G(a), b)), also yields {{x},{x',y}} for x != x'.
  std::vector<HFSet> out;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) out.push_back(HFSet::of({HFSet::singleton(x), HFSet::of({x, y})}));
  return HFSet::of(std::move(out));
}

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t budget) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > budget / base) throw BudgetError("function space exceeds size budget");
    r *= base;
  }
  if (r > budget) throw BudgetError("function space exceeds size budget");
  return r;
}

}  // namespace

HFSet fun_space(std::size_t n, const HFSet& a, std::size_t budget) {
  checked_pow(a.size(), n, budget);
  HFSet cur = HFSet::singleton(HFSet());
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<HFSet> column;
    const HFSet num = HFSet::numeral(m);
    for (const auto& b : a.elements()) column.push_back(pair(num, b));
    cur = bs_fn(3, cur, HFSet::of(std::move(column)));
  }
  return cur;
}

HFSet fun_space_lt(std::size_t n, const HFSet& a, std::size_t budget) {
  std::size_t total = 0;
  for (std::size_t m = 0; m < n; ++m) {
    total += checked_pow(a.size(), m, budget);
    if (total > budget) throw BudgetError("function space exceeds size budget");
  }
  HFSet acc;
  for (std::size_t m = 0; m < n; ++m) acc = set_union(acc, fun_space(m, a, budget));
  return acc;
}

HFSet iter_union(std::size_t n, const HFSet& a) {
  HFSet cur = a;
  for (std::size_t i = 0; i < n; ++i) cur = big_union(cur);
  return cur;
}

HFSet trcl(const HFSet& a) {
  // union of the n-fold unions for n >= 0 collects every member reachable
  // by a finite membership chain; the chain length is bounded by the rank
  HFSet acc;
  HFSet cur = a;
  while (!cur.empty()) {
    acc = set_union(acc, cur);
    cur = big_union(cur);
  }
  return acc;
}

bool mem_iter(const HFSet& a, std::size_t n, const SetOrV& b) {
  if (n == 0) throw std::invalid_argument("mem_iter requires n >= 1");
  if (b.is_v) return true;
  if (n - 1 > b.set.rank()) return false;
  return iter_union(n - 1, b.set).contains(a);
}

std::size_t max_mem_depth(const HFSet& a, const HFSet& b) {
  std::size_t best = 0;
  HFSet cur = b;
  for (std::size_t n = 1; !cur.empty(); ++n) {
    if (cur.contains(a)) best = n;
    cur = big_union(cur);
  }
  return best;
}

const std::vector<HFSet>& enumerate_upto_rank(std::size_t r, std::size_t cap) {
  if (r > cap) throw BudgetError("rank " + std::to_string(r) + " exceeds enumeration cap " + std::to_string(cap));
  static std::mutex mu;
  static std::map<std::size_t, std::vector<HFSet>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(r); it != cache.end()) return it->second;
  std::vector<HFSet> level{HFSet()};
  for (std::size_t k = 1; k <= r; ++k) {
    if (auto it = cache.find(k); it != cache.end()) {
      level = it->second;
      continue;
    }
    const std::size_t m = level.size();
    std::vector<HFSet> next;
    next.reserve(std::size_t{1} << m);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<HFSet> e;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) e.push_back(level[i]);
      next.push_back(HFSet::of(std::move(e)));
    }
    std::sort(next.begin(), next.end());
    cache[k] = next;
    level = std::move(next);
  }
  cache[0] = {HFSet()};
  return cache[r] = level;
}

}  // namespace fixpoint
