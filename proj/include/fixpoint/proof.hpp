#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixpoint/codes.hpp"
#include "fixpoint/formula.hpp"

namespace fixpoint {

struct Sequent {
  std::vector<Formula> ante;  // sorted, duplicate-free
  Formula succ;

  static Sequent make(std::vector<Formula> ante, const Formula& succ);
  bool has(const Formula& f) const;
  Sequent with(const Formula& f) const;
  Sequent with_succ(const Formula& f) const { return make(ante, f); }
  bool ante_subset_of(const Sequent& other, const std::vector<Formula>& extra = {}) const;
  std::set<std::string> free_vars() const;
  std::string str() const;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

enum class Rule : std::uint8_t {
  InitialEq, InitialBot, LQ, RQ, LOr, ROr, LAnd, RAnd, LImp, RImp, LEx, REx, LAll, RAll, Cut, Chain, Ind, Rep, E
};

std::string_view rule_tag(Rule r);
std::optional<Rule> rule_from_tag(std::string_view tag);
bool is_left_logical(Rule r);   // LQ, L-or, L-and, L-imp, L-ex, L-all
bool is_right_logical(Rule r);  // RQ, R-or, R-and, R-imp, R-ex, R-all
bool is_end_piece_rule(Rule r);  // cut, chain, rep, E
bool inherits_succedent(Rule r, std::size_t premise, std::size_t n_premises);

struct RuleData {
  std::optional<Formula> principal;    // left rules: the antecedent formula acted on
  int index = 0;                       // R-or / L-and component
  std::string eigen;                   // L-ex, R-all, ind
  std::optional<Term> term;            // R-ex / L-all witness, ind iota
  std::optional<Term> nu;              // ind bound
  std::optional<Formula> ind_formula;  // ind: A(x) with x the eigenvariable
  std::string ind_bound;               // ind: y in (forall y in x) A(y)
};

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;
using Path = std::vector<std::size_t>;

struct ProofNode {
  Sequent seq;
  Rule rule;
  RuleData data;
  std::vector<ProofPtr> premises;
};

ProofPtr make_node(Sequent seq, Rule rule, RuleData data, std::vector<ProofPtr> premises);

struct Proof {
  ProofPtr root;
  std::shared_ptr<const InstanceClosure> closure;  // built from the reference proof
  FixedPointTemplate tmpl;
};

// Closure over every formula occurring in a proof tree, rule data included.
std::shared_ptr<const InstanceClosure> closure_of(const ProofPtr& root);
// Proof that serves as its own reference.
Proof reference_proof(ProofPtr root, FixedPointTemplate tmpl);

const ProofNode& node_at(const ProofPtr& root, const Path& path);
ProofPtr subtree_at(const ProofPtr& root, const Path& path);
ProofPtr replace_at(const ProofPtr& root, const Path& path, ProofPtr sub);
std::size_t proof_size(const ProofPtr& root);

// forall y (y in t -> A(y)) for the ind data of a node
Formula ind_hypothesis(const RuleData& d, const Term& t);
// A(t)
Formula ind_instance(const RuleData& d, const Term& t);

// The formula the rule introduces: principal for left rules, succedent for
// right rules.
std::optional<Formula> major_formula(const ProofNode& n);

struct Diagnostic {
  Path path;
  std::string clause;
  std::string message;
};
using Diagnostics = std::vector<Diagnostic>;
std::string path_str(const Path& p);
std::string format(const Diagnostics& ds);

Diagnostics check_node(const ProofNode& n, const FixedPointTemplate& tmpl);
Diagnostics check_wellformed(const Proof& p);
Diagnostics check_pure_variable(const Proof& p);

// Substitutes t for free occurrences of x, stopping at rules whose
// eigenvariable is x.
ProofPtr subst_subtree(const ProofPtr& n, const std::string& x, const Term& t);
Proof purify(Proof p);

struct NodeInfo {
  Path path;
  ProofPtr node;
  std::size_t height = 0;
  bool end_piece = false;
};
// Preorder.
std::vector<NodeInfo> annotate(const ProofPtr& root);
std::size_t height(const ProofPtr& root, const Path& path);
bool in_end_piece(const ProofPtr& root, const Path& path);

Diagnostics height_normal_diagnostics(const Proof& p);
bool is_height_normal(const Proof& p);
// Appends the least number of E rules at the root. Throws
// std::invalid_argument when the proof contains a chain.
Proof make_height_normal(Proof p);

Code mj(const Term& nu);
Code assign_code(const ProofPtr& root, const Path& path);
Code proof_code(const ProofPtr& root);

Diagnostics restricted_diagnostics(const Proof& p);
bool is_restricted(const Proof& p);

bool is_initial_sequent(const Sequent& s);
EvalResult evaluate_sequent(const Sequent& s, const UniverseBound& bound);

// Text format:
//   (proof (template x BODY) [(reference NODE)] NODE)
//   NODE = (node TAG (seq (F ...) F) ARG* NODE*)
//   ARG  = (principal F) | (index i) | (eigen x) | (term T) | (nu T)
//        | (ind-formula F) | (ind-bound y)
std::string print_node(const ProofPtr& n, int indent = 0);
std::string print_proof(const Proof& p);
ProofPtr parse_node(SexpReader& r);
Proof parse_proof(std::string_view text);

}  // namespace fixpoint
