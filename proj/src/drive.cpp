#include <chrono>

#include <json.hpp>

#include "fixpoint/reduction.hpp"

namespace fixpoint {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "TRUE";
    case Verdict::Stuck: return "STUCK";
    case Verdict::Budget: return "BUDGET";
    case Verdict::DecreaseViolation: return "DECREASE-VIOLATION";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::True: return 0;
    case Verdict::Stuck: return 2;
    case Verdict::Budget: return 3;
    case Verdict::DecreaseViolation: return 4;
  }
  return 1;
}

std::string trace_json(const TraceStep& s) {
  nlohmann::json j;
  j["step"] = s.step;
  j["case"] = std::string(case_name(s.id));
  j["detail"] = s.detail;
  j["locus"] = path_str(s.locus);
  j["input_code"] = s.input_code;
  j["successor_codes"] = s.successor_codes;
  j["lt"] = s.lt_results;
  j["propagation"] = std::string(propagation_name(s.propagation));
  j["wall_ms"] = s.wall_ms;
  return j.dump();
}

DriveReport drive(const Proof& p, const DriveOptions& opts) {
  DriveReport rep;
  auto fail = [&](Verdict v, std::string msg) {
    rep.verdict = v;
    rep.message = std::move(msg);
    return rep;
  };
  if (auto ds = restricted_diagnostics(p); !ds.empty()) return fail(Verdict::Stuck, "input is not restricted:\n" + format(ds));

  std::vector<Proof> work{p};
  while (!work.empty()) {
    Proof cur = std::move(work.back());
    work.pop_back();

    if (is_initial_sequent(cur.root->seq)) {
      ++rep.leaves;
      try {
        const auto e = evaluate_sequent(cur.root->seq, opts.bound);
        rep.bound_relative |= e.bound_relative;
        if (!e.value) return fail(Verdict::Stuck, "initial leaf evaluates false: " + cur.root->seq.str());
      } catch (const EvalError& e) {
        return fail(Verdict::Stuck, std::string("cannot evaluate leaf: ") + e.what());
      }
      continue;
    }
    if (rep.steps >= opts.max_steps) return fail(Verdict::Budget, "step budget exhausted");

    const auto t0 = std::chrono::steady_clock::now();
    const auto locus = classify(cur);
    if (!locus) return fail(Verdict::Stuck, "no reduction case applies to " + cur.root->seq.str());
    ReductionResult rr;
    try {
      rr = reduce(cur, *locus, {opts.bound});
    } catch (const std::exception& e) {
      return fail(Verdict::Stuck, std::string(case_name(locus->id)) + " failed: " + e.what());
    }
    if (opts.tamper) opts.tamper(cur, rr.successors);
    rep.bound_relative |= rr.bound_relative;

    TraceStep ts;
    ts.step = rep.steps;
    ts.id = locus->id;
    ts.detail = locus->detail;
    ts.locus = locus->path;
    ts.propagation = rr.propagation;
    const Code in = proof_code(cur.root);
    ts.input_code = in.str();
    for (const auto& s : rr.successors) {
      if (auto ds = check_wellformed(s); !ds.empty())
        return fail(Verdict::Stuck, std::string(case_name(locus->id)) + " produced an ill-formed successor:\n" + format(ds));
      const Code c = proof_code(s.root);
      const LtResult r = lt(c, in, opts.lt_budget);
      ts.successor_codes.push_back(c.str());
      ts.lt_results.push_back(to_string(r));
      if (r == LtResult::BudgetExhausted) return fail(Verdict::Budget, "order decision ran out of budget");
      if (r == LtResult::False) {
        if (opts.on_step) opts.on_step(ts);  // the failing step ends the trace
        return fail(Verdict::DecreaseViolation, std::string(case_name(locus->id)) + " successor code " + c.str() +
                                                    " is not below " + in.str());
      }
      if (auto ds = restricted_diagnostics(s); !ds.empty())
        return fail(Verdict::Stuck, std::string(case_name(locus->id)) + " produced an unrestricted successor:\n" + format(ds));
    }
    ts.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (opts.on_step) opts.on_step(ts);

    ++rep.steps;
    ++rep.case_counts[static_cast<std::size_t>(locus->id)];
    rep.details.push_back(std::string(case_name(locus->id)) + (locus->detail.empty() ? "" : ":" + locus->detail));
    for (auto it = rr.successors.rbegin(); it != rr.successors.rend(); ++it) work.push_back(std::move(*it));
  }
  return rep;
}

}  // namespace fixpoint
