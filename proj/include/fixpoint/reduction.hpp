#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fixpoint/proof.hpp"

namespace fixpoint {

enum class CaseId {
  C1InitialBot, C1InitialEq, C2Ind, C3Explicit, C4QFreeCut, C5LowerCut, C6MergeChain, C7CutToChain, C8DeepCut, C9ChainSP
};
inline constexpr int kCaseCount = 10;
std::string_view case_name(CaseId c);
int case_number(CaseId c);  // 1..9

enum class Propagation { AllTrueImplies, BranchForEachWitness, SingleRewrite };
std::string_view propagation_name(Propagation p);

// Where a case applies. `path` is the rule the case rewrites; the auxiliary
// paths are case specific:
//   C1: aux1 initial sequent, index = premise of J that is kept
//   C5: aux1 the uppermost E below the cut
//   C6: aux1 the cut (rightmost premise of the chain at path)
//   C7: aux1 the E-pair's lower sequent
//   C8: aux1 J_l, aux2 J_r, aux3 the uppermost E below J
//   C9: aux1 J_l, aux2 J_r, index = premise of the chain proving A
//   C4: index = premise proving the Q-free cut formula
struct Locus {
  CaseId id;
  Path path;
  Path aux1, aux2, aux3;
  std::size_t index = 0;
  std::string detail;
};

struct ClassifyOptions {
  std::vector<CaseId> masked;  // cases to skip
};

std::optional<Locus> classify(const Proof& p, const ClassifyOptions& opts = {});

struct ReductionResult {
  Locus locus;
  std::vector<Proof> successors;
  Propagation propagation = Propagation::SingleRewrite;
  bool bound_relative = false;  // successors range over a finite witness set
};

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReduceOptions {
  UniverseBound bound;  // witness universe for R-all / L-ex branches
};

ReductionResult reduce(const Proof& p, const Locus& l, const ReduceOptions& opts = {});

struct SuitableCut {
  Path j;
  std::size_t index = 0;  // premise of J proving A
  Path jl, jr;
  Formula a;
};
std::vector<SuitableCut> find_suitable_cuts(const Proof& p);
std::optional<SuitableCut> find_suitable_cut(const Proof& p);

// Places `replacement` at `path` and walks down to the root. With
// new_succ, succedents along the trunk are replaced and a cut or chain whose
// cut formula vanishes collapses to rep. Every formula in add_ante is added
// to the antecedents along the way.
ProofPtr rewrite_down(const ProofPtr& root, const Path& path, ProofPtr replacement,
                      const std::optional<Formula>& new_succ, const std::vector<Formula>& add_ante);
// Puts a subproof with a different succedent at path and prunes the trunk
// below it to that succedent.
ProofPtr prune(const ProofPtr& root, const Path& path, ProofPtr replacement);

// ---- driver ----

enum class Verdict { True, Stuck, Budget, DecreaseViolation };
std::string_view verdict_name(Verdict v);
int exit_code(Verdict v);

struct TraceStep {
  std::size_t step = 0;
  CaseId id{};
  std::string detail;
  Path locus;
  std::string input_code;
  std::vector<std::string> successor_codes;
  std::vector<std::string> lt_results;
  Propagation propagation{};
  double wall_ms = 0;
};

struct DriveOptions {
  std::size_t max_steps = 10000;
  UniverseBound bound;
  LtDerivationBudget lt_budget;
  // Test hook: lets a harness corrupt successors before verification.
  std::function<void(const Proof& input, std::vector<Proof>& successors)> tamper;
  std::function<void(const TraceStep&)> on_step;
};

struct DriveReport {
  Verdict verdict = Verdict::True;
  std::size_t steps = 0;
  std::size_t leaves = 0;
  bool bound_relative = false;
  std::vector<int> case_counts = std::vector<int>(kCaseCount, 0);
  std::vector<std::string> details;  // "C3:R-all" style, one per step
  std::string message;               // first failure, if any
};

DriveReport drive(const Proof& p, const DriveOptions& opts = {});

std::string trace_json(const TraceStep& s);

}  // namespace fixpoint
