#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fixpoint/hf_set.hpp"

namespace fixpoint {

struct Term {
  enum class Kind : std::uint8_t { Var, Const };
  Kind kind = Kind::Const;
  std::string name;  // variables
  HFSet value;       // constants

  static Term var(std::string n) { return {Kind::Var, std::move(n), HFSet()}; }
  static Term constant(const HFSet& s) { return {Kind::Const, {}, s}; }
  bool is_var() const { return kind == Kind::Var; }
  std::string str() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.value <=> b.value;
  }
};

// Hash-consed formula over {in, =, Q}. Equality is literal (bound names
// included); use alpha_equal for comparison up to renaming.
class Formula {
 public:
  enum class Kind : std::uint8_t { In, Eq, Q, Or, And, Imp, Ex, All };
  struct Node;

  static Formula in(const Term& a, const Term& b);
  static Formula eq(const Term& a, const Term& b);
  static Formula q(const Term& t);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula imp(const Formula& a, const Formula& b);
  static Formula ex(const std::string& x, const Formula& a);
  static Formula all(const std::string& x, const Formula& a);
  // forall y (y in t -> a), exists y (y in t and a)
  static Formula all_in(const std::string& y, const Term& t, const Formula& a);
  static Formula ex_in(const std::string& y, const Term& t, const Formula& a);

  Kind kind() const;
  bool is_atomic() const { return kind() == Kind::In || kind() == Kind::Eq || kind() == Kind::Q; }
  bool is_quant() const { return kind() == Kind::Ex || kind() == Kind::All; }
  bool is_binary() const { return kind() == Kind::Or || kind() == Kind::And || kind() == Kind::Imp; }
  const Term& term(int i) const;  // atomic arguments
  const std::string& var() const;  // quantifiers
  Formula sub(int i) const;        // 0/1 for connectives, 0 for quantifiers

  const std::string& str() const;
  const std::set<std::string>& free_vars() const;
  bool has_q() const;
  bool closed() const { return free_vars().empty(); }
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.node_ == b.node_; }
  // canonical order by printed text
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) { return a.str() <=> b.str(); }

 private:
  explicit Formula(const Node* n) : node_(n) {}
  static Formula make(Node&& n);
  const Node* node_;
};

// Thread-safe monotone supply of variable names that never clash with
// parsed names (they contain a '~').
std::string fresh_var(const std::string& base);

Formula substitute(const Formula& phi, const std::string& x, const Term& t);
bool alpha_equal(const Formula& a, const Formula& b);

bool is_strictly_positive(const Formula& phi);
int depth(const Formula& phi);
bool is_bot(const Formula& phi);

// If phi is forall y (y in t -> A) or exists y (y in t and A) with y not
// free in t, returns y and t.
std::optional<std::pair<std::string, Term>> bounded_quantifier(const Formula& phi);

// The fixed-point template: body over {in, =} whose Q atoms play the role
// of the hole predicate, and the hole variable.
struct FixedPointTemplate {
  std::string var;
  Formula body;
};
Formula unfold_template(const FixedPointTemplate& tmpl, const Term& t);
bool is_valid_template(const FixedPointTemplate& tmpl);

// Instances of subformulas of a reference set of formulas.
class InstanceClosure {
 public:
  InstanceClosure() = default;
  explicit InstanceClosure(const std::vector<Formula>& formulas);
  void add(const Formula& phi);
  bool contains(const Formula& phi) const;
  std::size_t skeleton_count() const { return skeletons_.size(); }

 private:
  std::map<Formula::Kind, std::vector<Formula>> skeletons_;
  std::set<std::string> seen_;
};

// Text grammar: (in t u) (eq t u) (Q t) (or A B) (and A B) (imp A B)
// (ex x A) (all x A); terms (var x) (const {..}). Inside a template body
// the hole is written (X t).
Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);
FixedPointTemplate parse_template(std::string_view text);
std::string template_str(const FixedPointTemplate& t);

// Low-level reader used by the proof parser.
class SexpReader {
 public:
  explicit SexpReader(std::string_view text) : text_(text) {}
  void skip();
  bool at_end();
  bool peek_open();
  bool peek_close();
  void expect_open();
  void expect_close();
  std::string atom();  // bare word
  std::string peek_head();  // word after the next '(' without consuming
  std::size_t pos() const { return pos_; }
  Term term();
  Formula formula(bool hole_is_x = false);
  HFSet set();
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Bounded truth evaluation of Q-free formulas.
struct UniverseBound {
  std::optional<std::size_t> max_rank = 2;  // nullopt disables unbounded quantifiers
};

struct EvalResult {
  bool value = false;
  bool bound_relative = false;  // an unbounded quantifier was approximated
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, HFSet>;

EvalResult evaluate(const Formula& phi, const Assignment& env, const UniverseBound& bound);

}  // namespace fixpoint
