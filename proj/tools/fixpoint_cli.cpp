#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fixpoint/reduction.hpp"

using namespace fixpoint;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Proof load(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_proof(ss.str());
}

int report(const std::string& label, const Diagnostics& ds) {
  if (ds.empty()) {
    std::cout << label << ": ok\n";
    return 0;
  }
  std::cout << label << ": " << ds.size() << " problem(s)\n" << format(ds);
  return 1;
}

int cmd_check(const std::string& file) {
  const Proof p = load(file);
  const auto wf = check_wellformed(p);
  int bad = report("wellformed", wf);
  if (!wf.empty()) return kInvalid;
  bad |= report("pure-variable", check_pure_variable(p));
  bad |= report("height-normal", height_normal_diagnostics(p));
  bad |= report("restricted", restricted_diagnostics(p));
  return bad ? kInvalid : kOk;
}

int cmd_ordinal(const std::string& file) {
  const Proof p = load(file);
  if (auto ds = restricted_diagnostics(p); !ds.empty()) {
    std::cerr << "not a restricted proof:\n" << format(ds);
    return kInvalid;
  }
  std::function<void(const ProofPtr&, Path&)> post = [&](const ProofPtr& n, Path& path) {
    for (std::size_t i = 0; i < n->premises.size(); ++i) {
      path.push_back(i);
      post(n->premises[i], path);
      path.pop_back();
    }
    std::cout << path_str(path) << '\t' << rule_tag(n->rule) << '\t' << assign_code(p.root, path).str() << '\n';
  };
  Path path;
  post(p.root, path);
  std::cout << "o(P) = " << proof_code(p.root).str() << '\n';
  return kOk;
}

int cmd_step(const std::string& file, std::optional<int> expect, std::size_t rank) {
  const Proof p = load(file);
  if (auto ds = restricted_diagnostics(p); !ds.empty()) {
    std::cerr << "not a restricted proof:\n" << format(ds);
    return kInvalid;
  }
  if (is_initial_sequent(p.root->seq)) {
    std::cout << "end sequent is initial; nothing to reduce\n";
    return expect ? kInvalid : kOk;
  }
  const auto l = classify(p);
  if (!l) {
    std::cout << "no case applies\n";
    return exit_code(Verdict::Stuck);
  }
  std::cout << "case " << case_name(l->id) << (l->detail.empty() ? "" : " " + l->detail) << " at "
            << path_str(l->path) << '\n';
  ReductionResult rr;
  try {
    rr = reduce(p, *l, {UniverseBound{rank}});
  } catch (const std::exception& e) {
    std::cout << "reduction failed: " << e.what() << '\n';
    return exit_code(Verdict::Stuck);
  }
  const Code in = proof_code(p.root);
  std::cout << "input code " << in.str() << "\npropagation " << propagation_name(rr.propagation) << '\n';
  int rc = kOk;
  for (std::size_t i = 0; i < rr.successors.size(); ++i) {
    const auto& s = rr.successors[i];
    const Code c = proof_code(s.root);
    const auto r = lt(c, in);
    std::cout << "successor " << i << " code " << c.str() << " lt " << to_string(r) << " restricted "
              << (is_restricted(s) ? "yes" : "no") << '\n'
              << print_proof(s);
    if (r == LtResult::False) rc = exit_code(Verdict::DecreaseViolation);
    else if (r == LtResult::BudgetExhausted && rc == kOk) rc = exit_code(Verdict::Budget);
    else if (!is_restricted(s) && rc == kOk) rc = exit_code(Verdict::Stuck);
  }
  if (expect && case_number(l->id) != *expect) {
    std::cout << "expected case " << *expect << ", got " << case_number(l->id) << '\n';
    return kInvalid;
  }
  return rc;
}

int cmd_run(const std::string& file, std::size_t max_steps, std::size_t rank, const std::string& trace,
            bool corrupt) {
  const Proof p = load(file);
  std::ofstream out;
  if (!trace.empty()) {
    out.open(trace);
    if (!out) throw InputError("cannot write " + trace);
  }
  DriveOptions opts;
  opts.max_steps = max_steps;
  opts.bound.max_rank = rank;
  if (out.is_open()) opts.on_step = [&](const TraceStep& s) { out << trace_json(s) << '\n'; };
  // Replaces every successor by the input, which cannot be below itself.
  if (corrupt)
    opts.tamper = [](const Proof& in, std::vector<Proof>& ss) {
      for (auto& s : ss) s = in;
    };
  const auto r = drive(p, opts);
  std::cout << verdict_name(r.verdict) << "\nsteps " << r.steps << "\nleaves " << r.leaves << "\nbound-relative "
            << (r.bound_relative ? "yes" : "no") << '\n';
  for (int c = 0; c < kCaseCount; ++c)
    if (r.case_counts[static_cast<std::size_t>(c)])
      std::cout << "case " << case_name(static_cast<CaseId>(c)) << ' ' << r.case_counts[static_cast<std::size_t>(c)]
                << '\n';
  if (!r.message.empty()) std::cout << r.message << '\n';
  return exit_code(r.verdict);
}

int cmd_compare(const std::string& a, const std::string& b, std::optional<std::size_t> depth) {
  const Code x = parse_code(a), y = parse_code(b);
  const auto r = lt(x, y);
  if (r == LtResult::BudgetExhausted) {
    std::cout << "budget-exhausted\n";
    return exit_code(Verdict::Budget);
  }
  const bool v = r == LtResult::True;
  std::cout << (v ? "≺" : "not ≺") << '\n';
  if (depth) {
    const bool o = oracle_lt(x, y, *depth);
    std::cout << "oracle " << (o ? "≺" : "not ≺") << (o == v ? " (agree)" : " (disagree)") << '\n';
  }
  return kOk;
}

int cmd_enumerate(std::size_t len, std::size_t rank) {
  const auto codes = enumerate_codes(len, rank);
  for (const auto& c : codes) std::cout << c.str() << '\n';
  std::cerr << codes.size() << " codes\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixpoint: proofs with a strictly positive fixed point, their codes and reductions"};
  app.require_subcommand(1);

  std::string file, trace, code_a, code_b;
  std::optional<int> expect;
  std::optional<std::size_t> oracle_depth;
  std::size_t max_steps = 10000, rank = 2, max_length = 2;
  bool corrupt = false;

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("file", file)->required();
  auto* ordinal = app.add_subcommand("ordinal", "print the code of every node, root last");
  ordinal->add_option("file", file)->required();
  auto* step = app.add_subcommand("step", "apply one reduction step");
  step->add_option("file", file)->required();
  step->add_option("--expect-case", expect, "fail unless this case number applies");
  step->add_option("--rank-bound", rank, "witness universe rank");
  auto* run = app.add_subcommand("run", "reduce until every branch ends in an initial sequent");
  run->add_option("file", file)->required();
  run->add_option("--max-steps", max_steps)->check(CLI::NonNegativeNumber);
  run->add_option("--rank-bound", rank)->check(CLI::NonNegativeNumber);
  run->add_option("--trace", trace, "write one JSON record per step");
  run->add_flag("--corrupt-successors", corrupt)->group("");
  auto* cmp = app.add_subcommand("compare-codes", "decide a < b");
  cmp->add_option("a", code_a)->required();
  cmp->add_option("b", code_b)->required();
  cmp->add_option("--oracle-depth", oracle_depth, "also ask the brute-force oracle");
  auto* en = app.add_subcommand("enumerate-codes", "list normalized codes");
  en->add_option("--max-length", max_length)->required();
  en->add_option("--max-rank", rank)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*check) return cmd_check(file);
    if (*ordinal) return cmd_ordinal(file);
    if (*step) return cmd_step(file, expect, rank);
    if (*run) return cmd_run(file, max_steps, rank, trace, corrupt);
    if (*cmp) return cmd_compare(code_a, code_b, oracle_depth);
    if (*en) return cmd_enumerate(max_length, rank);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
