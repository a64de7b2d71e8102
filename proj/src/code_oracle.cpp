// Independent check of the code order: applies the defining clauses
// literally, round by round, over a finite universe of codes.

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "fixpoint/codes.hpp"

namespace fixpoint {

namespace {

template <class T, class F>
void for_submultisets(const std::vector<T>& sorted, F f) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    runs.emplace_back(i, j - i);
    i = j;
  }
  std::vector<std::size_t> take(runs.size(), 0);
  for (;;) {
    std::vector<T> sub, rest;
    for (std::size_t r = 0; r < runs.size(); ++r)
      for (std::size_t k = 0; k < runs[r].second; ++k) (k < take[r] ? sub : rest).push_back(sorted[runs[r].first]);
    f(sub, rest);
    std::size_t r = 0;
    while (r < runs.size() && take[r] == runs[r].second) take[r++] = 0;
    if (r == runs.size()) return;
    ++take[r];
  }
}

}  // namespace

CodeOracle::CodeOracle(const std::vector<Code>& seeds) {
  std::vector<Code> queue;
  auto add = [&](const Code& c) {
    if (idx_.contains(c.id())) return;
    idx_.emplace(c.id(), universe_.size());
    universe_.push_back(c);
    queue.push_back(c);
  };
  for (const auto& s : seeds) add(s);
  while (!queue.empty()) {
    Code c = queue.back();
    queue.pop_back();
    auto pcs = pcodes(c);
    std::sort(pcs.begin(), pcs.end());
    for_submultisets(pcs, [&](const std::vector<Code>& sub, const std::vector<Code>&) { add(nat_sum(sub)); });
    for (const auto& g : c.groups()) {
      add(g.exp);
      for_submultisets(g.base, [&](const Sum& sub, const Sum&) { add(Code::from_sum(sub)); });
      for (const auto& p : g.base)
        for_submultisets(p, [&](const Prod& sub, const Prod&) { add(Code::from_prod(sub)); });
    }
  }

  const std::size_t n = universe_.size();
  is_sum_.resize(n);
  splits_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    is_sum_[i] = universe_[i].is_sum();
    auto pcs = pcodes(universe_[i]);
    std::sort(pcs.begin(), pcs.end());
    for_submultisets(pcs, [&](const std::vector<Code>& sub, const std::vector<Code>& rest) {
      splits_[i].push_back({index(nat_sum(sub)), index(nat_sum(rest))});
    });
  }
  const std::size_t words = (n + 63) / 64;
  rc_.assign(n, std::vector<std::uint64_t>(words, 0));
  rp_.assign(n, std::vector<std::uint64_t>(words, 0));
}

std::size_t CodeOracle::index(const Code& c) const {
  if (auto it = idx_.find(c.id()); it != idx_.end()) return it->second;
  throw std::out_of_range("code outside oracle universe: " + c.str());
}

bool CodeOracle::contains(const Code& a) const {
  return idx_.contains(a.id());
}

bool CodeOracle::lt(const Code& a, const Code& b) const { return rel(rc_, index(a), index(b)); }

bool CodeOracle::product_clause(std::size_t x, std::size_t y) const {
  const Code& cy = universe_[y];
  if (cy.sum_part().size() != 1) return false;
  const Prod& p = cy.sum_part()[0];
  if (p.empty()) return false;
  const Sum& items = universe_[x].sum_part();
  const HFSet unit = HFSet::singleton(HFSet());

  for (std::size_t bi = 0; bi < p.size(); ++bi) {
    if (bi > 0 && p[bi] == p[bi - 1]) continue;
    const Atom& b = p[bi];
    if (b.kind == Atom::Kind::W) continue;
    Prod gamma = p;
    gamma.erase(gamma.begin() + static_cast<std::ptrdiff_t>(bi));
    const std::size_t gi = index(Code::from_prod(gamma));
    auto le_gamma = [&](const Prod& q) {
      const std::size_t qi = index(Code::from_prod(q));
      return qi == gi || rel(rp_, qi, gi);
    };
    // largest n with a in the (n-1)-fold union of b; effectively unbounded for V
    auto depth_of = [&](const HFSet& a) -> std::size_t {
      if (b.kind == Atom::Kind::V) return items.size() + 1;
      return max_mem_depth(a, b.set);
    };
    std::size_t best = 0;
    if (b.kind == Atom::Kind::V) {
      best = items.size() + 1;
    } else {
      for (const auto& a : trcl(b.set).elements()) best = std::max(best, max_mem_depth(a, b.set));
    }
    const bool all_le = std::all_of(items.begin(), items.end(), le_gamma);
    const std::size_t k = items.size();

    // designated summand vanishes
    if (all_le && best >= std::max<std::size_t>(1, k)) return true;
    // designated summand is gamma0 x 1
    const std::size_t nu = depth_of(unit);
    if (all_le && k >= 1 && nu >= 1 && k - 1 <= nu) return true;
    // designated summand is gamma0 x a with a a factor of some item
    for (std::size_t di = 0; di < items.size(); ++di) {
      if (di > 0 && items[di] == items[di - 1]) continue;
      const Prod& d = items[di];
      bool others_le = true;
      for (std::size_t j = 0; j < items.size() && others_le; ++j)
        if (j != di) others_le = le_gamma(items[j]);
      if (!others_le) continue;
      for (std::size_t ai = 0; ai < d.size(); ++ai) {
        if (ai > 0 && d[ai] == d[ai - 1]) continue;
        if (!d[ai].is_set()) continue;
        const std::size_t n = depth_of(d[ai].set);
        if (n == 0 || k - 1 > n) continue;
        Prod g0 = d;
        g0.erase(g0.begin() + static_cast<std::ptrdiff_t>(ai));
        if (le_gamma(g0)) return true;
      }
    }
  }
  return false;
}

bool CodeOracle::omega_clause(std::size_t x, std::size_t y) const {
  const Code& cy = universe_[y];
  if (cy.groups().size() != 1) return false;
  const auto& top = cy.groups()[0];
  const std::size_t ai = index(top.exp);
  const std::size_t bi = index(Code::from_sum(top.base));
  for (const auto& g : universe_[x].groups()) {
    if (rel(rc_, index(g.exp), ai)) continue;
    if (g.exp == top.exp && rel(rp_, index(Code::from_sum(g.base)), bi)) continue;
    return false;
  }
  return true;
}

bool CodeOracle::split_clause(const std::vector<std::vector<std::uint64_t>>& r, std::size_t x,
                              std::size_t y) const {
  for (const auto& sx : splits_[x])
    for (const auto& sy : splits_[y])
      if (rel(r, sx.lo, sy.lo) && (sx.hi == sy.hi || rel(r, sx.hi, sy.hi))) return true;
  return false;
}

void CodeOracle::close_transitive(std::vector<std::vector<std::uint64_t>>& r) {
  const std::size_t n = universe_.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel(r, i, k))
        for (std::size_t w = 0; w < r[i].size(); ++w) r[i][w] |= r[k][w];
}

std::size_t CodeOracle::run(std::size_t max_rounds) {
  const std::size_t n = universe_.size();
  auto count = [](const std::vector<std::vector<std::uint64_t>>& r) {
    std::size_t c = 0;
    for (const auto& row : r)
      for (auto w : row) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  };
  std::size_t rounds = 0;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const std::size_t before = count(rc_) + count(rp_);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!is_sum_[x] || !is_sum_[y] || rel(rp_, x, y)) continue;
        const bool z = universe_[x].is_zero() && !universe_[y].is_zero();
        if (z || product_clause(x, y) || split_clause(rp_, x, y)) set(rp_, x, y);
      }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (rel(rc_, x, y)) continue;
        const bool z = universe_[x].is_zero() && !universe_[y].is_zero();
        if (z || omega_clause(x, y) || split_clause(rc_, x, y)) set(rc_, x, y);
      }
    close_transitive(rp_);
    close_transitive(rc_);
    if (count(rc_) + count(rp_) == before) break;
    ++rounds;
  }
  return rounds;
}

bool oracle_lt(const Code& a, const Code& b, std::size_t depth) {
  CodeOracle o({a, b});
  o.run(depth);
  return o.lt(a, b);
}

}  // namespace fixpoint
