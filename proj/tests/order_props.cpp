#include "order_props.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "oracles.hpp"

namespace fixpoint::props {

namespace {

struct Pool {
  std::vector<Code> items;
  std::vector<std::vector<LtResult>> rel;  // rel[i][j] = lt(items[i], items[j])
  std::vector<std::pair<std::size_t, std::size_t>> below;
  std::size_t budget_failures = 0;
};

Pool make_pool(const std::vector<Code>& cs) {
  Pool p;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& c : cs)
    if (seen.insert(c.id()).second) p.items.push_back(c);
  const std::size_t n = p.items.size();
  p.rel.assign(n, std::vector<LtResult>(n, LtResult::False));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      p.rel[i][j] = lt(p.items[i], p.items[j]);
      if (p.rel[i][j] == LtResult::True) p.below.emplace_back(i, j);
      if (p.rel[i][j] == LtResult::BudgetExhausted) ++p.budget_failures;
    }
  return p;
}

// Records one conclusion of an instance.
void conclude(Report& r, LtResult got, bool want, const std::function<std::string()>& what) {
  if (got == LtResult::BudgetExhausted) {
    ++r.budget_failures;
    return;
  }
  if ((got == LtResult::True) == want) return;
  ++r.counterexamples;
  if (r.witnesses.size() < 3) r.witnesses.push_back(what());
}

bool nonzero(const Code& c) { return !c.is_zero(); }

Code omega1(const Code& e) { return omega_pow(e, Code::one()); }

}  // namespace

std::vector<Report> check_all(std::uint64_t seed, std::size_t want) {
  oracle::CodeGen g(seed);
  const std::size_t cap = 2 * want;

  std::vector<Code> cs, ss;
  for (int i = 0; i < 140; ++i) cs.push_back(g.small_code(2));
  for (int i = 0; i < 90; ++i) ss.push_back(g.small_sum());
  const Pool codes = make_pool(cs), sums = make_pool(ss);
  auto pick = [&](const Pool& p) -> const Code& { return p.items[g.below(p.items.size())]; };
  auto pick_nonzero = [&](const Pool& p) -> Code {
    for (;;)
      if (const Code& c = pick(p); nonzero(c)) return c;
  };
  auto shuffled = [&](std::vector<std::pair<std::size_t, std::size_t>> v) {
    std::shuffle(v.begin(), v.end(), g.rng());
    return v;
  };

  std::vector<Report> out;

  {
    Report r{"transitivity", "a < b and b < c imply a < c"};
    r.budget_failures = codes.budget_failures;
    for (const auto& [i, j] : shuffled(codes.below)) {
      for (std::size_t k = 0; k < codes.items.size() && r.instances < cap; ++k) {
        if (codes.rel[j][k] != LtResult::True) continue;
        ++r.instances;
        conclude(r, codes.rel[i][k], true, [&] {
          return codes.items[i].str() + " < " + codes.items[j].str() + " < " + codes.items[k].str();
        });
      }
      if (r.instances >= cap) break;
    }
    out.push_back(r);
  }

  {
    Report r{"zero-least", "0 < a for a != 0, and nothing is below 0"};
    for (std::size_t t = 0; r.instances < cap && t < 20 * cap; ++t) {
      const Code a = g.small_code(2);
      if (!nonzero(a)) continue;
      ++r.instances;
      conclude(r, lt(Code::zero(), a), true, [&] { return "0 < " + a.str(); });
      conclude(r, lt(a, Code::zero()), false, [&] { return a.str() + " < 0"; });
    }
    out.push_back(r);
  }

  {
    Report r{"product-step", "a in b, b not 0 or 1, g != 0, g' <= g imply (g x a)#g' < (g x b)#d"};
    const HFSet one = HFSet::numeral(1);
    for (std::size_t t = 0; r.instances < cap && t < 50 * cap; ++t) {
      SetOrV b;
      HFSet a;
      if (g.below(5) == 0) {
        b = SetOrV::universe();
        a = g.set();
      } else {
        b = SetOrV::of(g.set());
        if (b.set.empty() || b.set == one) continue;
        a = b.set.elements()[g.below(b.set.size())];
      }
      const Code gamma = pick_nonzero(sums);
      Code gp = pick(sums);
      const LtResult le_prem = le(gp, gamma);
      if (le_prem == LtResult::BudgetExhausted) {
        ++r.budget_failures;
        continue;
      }
      if (le_prem != LtResult::True) gp = g.coin() ? gamma : Code::zero();
      const Code d = pick(sums);
      const Code lhs = nat_sum(nat_prod(gamma, bar(SetOrV::of(a))), gp);
      const Code rhs = nat_sum(nat_prod(gamma, bar(b)), d);
      ++r.instances;
      conclude(r, lt(lhs, rhs), true, [&] { return lhs.str() + " < " + rhs.str(); });
    }
    out.push_back(r);
  }

  {
    Report r{"sum-grows", "b < a#b for a != 0"};
    for (std::size_t t = 0; r.instances < cap && t < 20 * cap; ++t) {
      const Code a = g.small_code(2), b = g.small_code(2);
      if (!nonzero(a)) continue;
      ++r.instances;
      conclude(r, lt(b, nat_sum(a, b)), true, [&] { return b.str() + " < " + nat_sum(a, b).str(); });
    }
    out.push_back(r);
  }

  {
    Report r{"sum-decomposition", "c < a#b implies c < a or c = a#b0 with b0 < b"};
    r.budget_failures = codes.budget_failures;
    for (const auto& [i, j] : shuffled(codes.below)) {
      const Code& c = codes.items[i];
      auto xs = pcodes(codes.items[j]);
      if (xs.size() < 2 || xs.size() > 5) continue;
      auto cps = pcodes(c);
      std::sort(cps.begin(), cps.end());
      const std::size_t n = xs.size();
      for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n) && r.instances < cap; ++mask) {
        std::vector<Code> as, bs;
        for (std::size_t k = 0; k < n; ++k) (mask >> k & 1 ? as : bs).push_back(xs[k]);
        const Code a = nat_sum(as), b = nat_sum(bs);
        ++r.instances;
        const LtResult left = lt(c, a);
        if (left == LtResult::True) continue;
        if (left == LtResult::BudgetExhausted) {
          ++r.budget_failures;
          continue;
        }
        std::sort(as.begin(), as.end());
        LtResult right = LtResult::False;
        if (std::includes(cps.begin(), cps.end(), as.begin(), as.end())) {
          std::vector<Code> rest;
          std::set_difference(cps.begin(), cps.end(), as.begin(), as.end(), std::back_inserter(rest));
          right = lt(nat_sum(rest), b);
        }
        conclude(r, right, true, [&] { return c.str() + " < " + a.str() + " # " + b.str(); });
      }
      if (r.instances >= cap) break;
    }
    out.push_back(r);
  }

  {
    Report r{"monotone", "# and the exponential are monotone in each argument"};
    r.budget_failures = codes.budget_failures + sums.budget_failures;
    const auto cb = shuffled(codes.below), sb = shuffled(sums.below);
    for (std::size_t t = 0; r.instances < cap && t < 3 * cap; ++t) {
      switch (t % 3) {
        case 0: {
          const auto& [i, j] = cb[t / 3 % cb.size()];
          const Code& b = pick(codes);
          const Code lhs = nat_sum(codes.items[i], b), rhs = nat_sum(codes.items[j], b);
          ++r.instances;
          conclude(r, lt(lhs, rhs), true, [&] { return lhs.str() + " < " + rhs.str(); });
          break;
        }
        case 1: {
          const auto& [i, j] = cb[t / 3 % cb.size()];
          const Code b = pick_nonzero(sums);
          const Code lhs = omega_pow(codes.items[i], b), rhs = omega_pow(codes.items[j], b);
          ++r.instances;
          conclude(r, lt(lhs, rhs), true, [&] { return lhs.str() + " < " + rhs.str(); });
          break;
        }
        default: {
          const auto& [i, j] = sb[t / 3 % sb.size()];
          const Code& a = pick(codes);
          const Code lhs = omega_pow(a, sums.items[i]), rhs = omega_pow(a, sums.items[j]);
          ++r.instances;
          conclude(r, lt(lhs, rhs), true, [&] { return lhs.str() + " < " + rhs.str(); });
        }
      }
    }
    out.push_back(r);
  }

  {
    Report r{"omega-dominates", "a, b < w^a b for a, b != 0"};
    for (std::size_t t = 0; r.instances < cap && t < 20 * cap; ++t) {
      const Code a = pick_nonzero(codes), b = pick_nonzero(sums);
      const Code w = omega_pow(a, b);
      ++r.instances;
      conclude(r, lt(a, w), true, [&] { return a.str() + " < " + w.str(); });
      conclude(r, lt(b, w), true, [&] { return b.str() + " < " + w.str(); });
    }
    out.push_back(r);
  }

  {
    Report r{"omega-pair", "a1, a2 < b imply w^a1 # w^a2 < w^b"};
    r.budget_failures = codes.budget_failures;
    std::vector<std::vector<std::size_t>> under(codes.items.size());
    for (const auto& [i, j] : codes.below) under[j].push_back(i);
    for (std::size_t t = 0; r.instances < cap && t < 20 * cap; ++t) {
      const std::size_t j = g.below(codes.items.size());
      if (under[j].empty()) continue;
      const Code& a1 = codes.items[under[j][g.below(under[j].size())]];
      const Code& a2 = codes.items[under[j][g.below(under[j].size())]];
      const Code lhs = nat_sum(omega1(a1), omega1(a2)), rhs = omega1(codes.items[j]);
      ++r.instances;
      conclude(r, lt(lhs, rhs), true, [&] { return lhs.str() + " < " + rhs.str(); });
    }
    out.push_back(r);
  }

  {
    Report r{"exponent-trade", "b0 < b and a != 0 imply w^b0 (a#a) < w^b a"};
    r.budget_failures = codes.budget_failures;
    const auto cb = shuffled(codes.below);
    for (std::size_t t = 0; r.instances < cap && t < cb.size(); ++t) {
      const auto& [i, j] = cb[t];
      const Code a = pick_nonzero(sums);
      const Code lhs = omega_pow(codes.items[i], nat_sum(a, a)), rhs = omega_pow(codes.items[j], a);
      ++r.instances;
      conclude(r, lt(lhs, rhs), true, [&] { return lhs.str() + " < " + rhs.str(); });
    }
    out.push_back(r);
  }

  return out;
}

}  // namespace fixpoint::props
