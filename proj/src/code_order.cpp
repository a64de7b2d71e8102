// Decision procedure for the order on codes.
//
// Sums: after cancelling common products, L < R holds iff the remaining
// products of L can be distributed over the remaining products r of R so
// that every bucket lies properly below its r. A bucket G lies below a
// product P iff P = g x b for some factor b and
//   * b is a set c, a is reachable from c in n membership steps (n maximal),
//     and G splits into one part below g x a plus at most n parts below g
//     (a = 0 drops the first part, a = 1 turns it into another part below g);
//   * b is V: every element of G that is not below g on its own goes into a
//     part below g x W, where W stands for a set that is large enough.
// Codes: exponents of R whose bucket can be strict are found as a greatest
// fixpoint; everything in L must then sit under a strictly larger exponent
// of that set, or match its own exponent in R.

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "fixpoint/codes.hpp"

namespace fixpoint {

namespace {

struct OutOfBudget {};

enum class Tag : std::uint8_t { LtCode, LtSum, Below, LeStar, Fits };

struct MemoKey {
  Tag tag;
  std::uint64_t a, b, n;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.tag) * 0x9e3779b97f4a7c15ull;
    h ^= k.a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= k.b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= k.n + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

thread_local std::unordered_map<MemoKey, bool, MemoHash> t_memo;

std::uint64_t sum_id(const Sum& s) { return Code::from_sum(s).id(); }
std::uint64_t prod_id(const Prod& p) { return Code::from_prod(p).id(); }

Sum minus(const Sum& a, const Sum& b) {
  Sum out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Prod with_atom(Prod p, const Atom& a) {
  p.insert(std::upper_bound(p.begin(), p.end(), a), a);
  return p;
}

// Calls f(sub, rest) for every sub-multiset of items; stops at the first true.
bool any_split(const Sum& items, const std::function<bool(const Sum&, const Sum&)>& f,
               const std::function<void()>& tick) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // start, count
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i;
    while (j < items.size() && items[j] == items[i]) ++j;
    runs.emplace_back(i, j - i);
    i = j;
  }
  std::vector<std::size_t> take(runs.size(), 0);
  for (;;) {
    tick();
    Sum sub, rest;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (std::size_t k = 0; k < runs[r].second; ++k)
        (k < take[r] ? sub : rest).push_back(items[runs[r].first]);
    }
    if (f(sub, rest)) return true;
    std::size_t r = 0;
    while (r < runs.size() && take[r] == runs[r].second) take[r++] = 0;
    if (r == runs.size()) return false;
    ++take[r];
  }
}

// x equals p once every W in p is replaced by a set factor or dropped.
bool eq_mod_w(const Prod& x, const Prod& p) {
  std::size_t ws = 0;
  Prod fixed;
  for (const auto& a : p) {
    if (a.kind == Atom::Kind::W)
      ++ws;
    else
      fixed.push_back(a);
  }
  if (ws == 0) return x == p;
  if (!std::includes(x.begin(), x.end(), fixed.begin(), fixed.end())) return false;
  Prod extra;
  std::set_difference(x.begin(), x.end(), fixed.begin(), fixed.end(), std::back_inserter(extra));
  if (extra.size() > ws) return false;
  return std::all_of(extra.begin(), extra.end(), [](const Atom& a) { return a.is_set(); });
}

class Decider {
 public:
  explicit Decider(const LtDerivationBudget& b) : budget_(b) {}

  bool lt_code(const Code& l, const Code& r) {
    if (l == r) return false;
    if (l.is_zero()) return true;
    if (r.is_zero()) return false;
    if (l.is_sum() && r.is_sum()) return lt_sum(l.sum_part(), r.sum_part());
    const MemoKey key{Tag::LtCode, l.id(), r.id(), 0};
    if (auto it = t_memo.find(key); it != t_memo.end()) return it->second;
    Guard g(*this);

    std::vector<Code> s;
    for (const auto& grp : r.groups()) s.push_back(grp.exp);
    std::map<std::pair<std::uint64_t, std::uint64_t>, bool> below;
    auto exp_lt = [&](const Code& a, const Code& b) {
      auto k = std::make_pair(a.id(), b.id());
      if (auto it = below.find(k); it != below.end()) return it->second;
      return below[k] = lt_code(a, b);
    };
    auto dominated = [&](const Code& e) {
      return std::any_of(s.begin(), s.end(), [&](const Code& f) { return f != e && exp_lt(e, f); });
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (dominated(s[i]) || lt_sum(l.base_at(s[i]), r.base_at(s[i]))) continue;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
    bool ok = !s.empty();
    for (const auto& grp : l.groups()) {
      if (!ok) break;
      if (dominated(grp.exp)) continue;
      const Sum rb = r.base_at(grp.exp);
      if (rb.empty()) {
        ok = false;
      } else if (std::find(s.begin(), s.end(), grp.exp) != s.end()) {
        ok = lt_sum(grp.base, rb);
      } else {
        ok = grp.base == rb;
      }
    }
    t_memo[key] = ok;
    return ok;
  }

  bool lt_sum(const Sum& l0, const Sum& r0) {
    Sum l = minus(l0, r0);
    Sum r = minus(r0, l0);
    if (l.empty()) return !r.empty();
    if (r.empty()) return false;
    const MemoKey key{Tag::LtSum, sum_id(l), sum_id(r), 0};
    if (auto it = t_memo.find(key); it != t_memo.end()) return it->second;
    Guard g(*this);

    // cand[i][j]: product l[i] alone lies below r[j]
    std::vector<std::vector<bool>> cand(l.size(), std::vector<bool>(r.size()));
    bool ok = true;
    for (std::size_t i = 0; i < l.size() && ok; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (j > 0 && r[j] == r[j - 1]) {
          cand[i][j] = cand[i][j - 1];
        } else if (i > 0 && l[i] == l[i - 1]) {
          cand[i][j] = cand[i - 1][j];
        } else {
          cand[i][j] = below({l[i]}, r[j]);
        }
        any = any || cand[i][j];
      }
      ok = any;
    }
    if (ok) {
      std::map<std::pair<std::size_t, std::uint64_t>, bool> local;
      std::function<bool(std::size_t, const Sum&)> assign = [&](std::size_t j, const Sum& rem) -> bool {
        if (rem.empty()) return true;
        if (j == r.size()) return false;
        auto lk = std::make_pair(j, sum_id(rem));
        if (auto it = local.find(lk); it != local.end()) return it->second;
        // items that can go to bucket j
        Sum here, elsewhere;
        for (const auto& x : rem) {
          const std::size_t i = static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), x) - l.begin());
          (cand[i][j] ? here : elsewhere).push_back(x);
        }
        bool res = any_split(
            here,
            [&](const Sum& sub, const Sum& rest) {
              if (!below(sub, r[j])) return false;
              Sum next = rest;
              next.insert(next.end(), elsewhere.begin(), elsewhere.end());
              std::sort(next.begin(), next.end());
              return assign(j + 1, next);
            },
            [&] { tick(); });
        return local[lk] = res;
      };
      ok = assign(0, l);
    }
    t_memo[key] = ok;
    return ok;
  }

 private:
  struct Guard {
    explicit Guard(Decider& d) : d_(d) {
      if (++d_.depth_ > d_.budget_.max_depth) throw OutOfBudget{};
    }
    ~Guard() { --d_.depth_; }
    Decider& d_;
  };

  void tick() {
    if (++splits_ > budget_.max_splits) throw OutOfBudget{};
  }

  // The multiset of products l lies properly below the product p.
  bool below(const Sum& l, const Prod& p) {
    if (l.empty()) return true;
    if (p.empty()) return false;
    const MemoKey key{Tag::Below, sum_id(l), prod_id(p), 0};
    if (auto it = t_memo.find(key); it != t_memo.end()) return it->second;
    Guard g(*this);
    const HFSet unit = HFSet::singleton(HFSet());
    bool ok = false;
    for (std::size_t i = 0; i < p.size() && !ok; ++i) {
      if (i > 0 && p[i] == p[i - 1]) continue;
      const Atom& b = p[i];
      Prod gamma = p;
      gamma.erase(gamma.begin() + static_cast<std::ptrdiff_t>(i));
      if (b.is_set()) {
        for (const auto& a : trcl(b.set).elements()) {
          tick();
          const std::size_t n = max_mem_depth(a, b.set);
          if (a.empty()) {
            ok = fits(l, gamma, n);
          } else if (a == unit) {
            ok = fits(l, gamma, n + 1);
          } else {
            const Prod ga = with_atom(gamma, Atom::of(a));
            Sum forced, optional;
            for (const auto& x : l) (le_star({x}, gamma) ? optional : forced).push_back(x);
            ok = any_split(
                optional,
                [&](const Sum& sub, const Sum& rest) {
                  Sum l0 = forced;
                  l0.insert(l0.end(), sub.begin(), sub.end());
                  std::sort(l0.begin(), l0.end());
                  return le_star(l0, ga) && fits(rest, gamma, n);
                },
                [&] { tick(); });
          }
          if (ok) break;
        }
      } else {
        Sum x, l0;
        for (const auto& y : l) (le_star({y}, gamma) ? x : l0).push_back(y);
        if (l0.empty()) {
          ok = true;
        } else if (b.kind == Atom::Kind::W && x.empty()) {
          ok = false;
        } else {
          ok = le_star(l0, with_atom(gamma, Atom::w()));
        }
      }
    }
    t_memo[key] = ok;
    return ok;
  }

  // m is p itself, up to instantiating W, or lies properly below p.
  bool le_star(const Sum& m, const Prod& p) {
    if (m.empty()) return true;
    if (m.size() == 1 && eq_mod_w(m[0], p)) return true;
    return below(m, p);
  }

  // m splits into at most n parts, each at most g.
  bool fits(const Sum& m, const Prod& g, std::size_t n) {
    if (m.empty()) return true;
    if (n == 0) return false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      if (!le_star({m[i]}, g)) return false;
    }
    if (m.size() <= n) return true;
    if (n == 1) return le_star(m, g);
    const MemoKey key{Tag::Fits, sum_id(m), prod_id(g), n};
    if (auto it = t_memo.find(key); it != t_memo.end()) return it->second;
    Guard guard(*this);
    Sum rest(m.begin() + 1, m.end());
    bool ok = any_split(
        rest,
        [&](const Sum& sub, const Sum& others) {
          Sum part{m[0]};
          part.insert(part.end(), sub.begin(), sub.end());
          std::sort(part.begin(), part.end());
          return le_star(part, g) && fits(others, g, n - 1);
        },
        [&] { tick(); });
    t_memo[key] = ok;
    return ok;
  }

  LtDerivationBudget budget_;
  std::size_t depth_ = 0;
  std::size_t splits_ = 0;
};

LtResult run(const LtDerivationBudget& budget, const std::function<bool(Decider&)>& f) {
  if (t_memo.size() > (std::size_t{1} << 22)) t_memo.clear();
  Decider d(budget);
  try {
    return f(d) ? LtResult::True : LtResult::False;
  } catch (const OutOfBudget&) {
    return LtResult::BudgetExhausted;
  }
}

}  // namespace

LtResult lt(const Code& a, const Code& b, const LtDerivationBudget& budget) {
  return run(budget, [&](Decider& d) { return d.lt_code(a, b); });
}

LtResult le(const Code& a, const Code& b, const LtDerivationBudget& budget) {
  if (a == b) return LtResult::True;
  return lt(a, b, budget);
}

LtResult lt_p(const Code& a, const Code& b, const LtDerivationBudget& budget) {
  if (!a.is_sum() || !b.is_sum()) throw std::invalid_argument("lt_p needs sums: " + a.str() + ", " + b.str());
  return run(budget, [&](Decider& d) { return d.lt_sum(a.sum_part(), b.sum_part()); });
}

void clear_lt_memo() { t_memo.clear(); }

}  // namespace fixpoint
