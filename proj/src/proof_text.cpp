#include <stdexcept>

#include "fixpoint/proof.hpp"

namespace fixpoint {

std::string print_node(const ProofPtr& n, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string s = pad + "(node " + std::string(rule_tag(n->rule)) + " " + n->seq.str();
  const RuleData& d = n->data;
  if (d.principal) s += " (principal " + d.principal->str() + ")";
  if (n->rule == Rule::ROr || n->rule == Rule::LAnd) s += " (index " + std::to_string(d.index) + ")";
  if (!d.eigen.empty()) s += " (eigen " + d.eigen + ")";
  if (d.term) s += " (term " + d.term->str() + ")";
  if (d.nu) s += " (nu " + d.nu->str() + ")";
  if (d.ind_formula) s += " (ind-formula " + d.ind_formula->str() + ")";
  if (!d.ind_bound.empty()) s += " (ind-bound " + d.ind_bound + ")";
  for (const auto& p : n->premises) s += "\n" + print_node(p, indent + 2);
  return s + ")";
}

std::string print_proof(const Proof& p) {
  return "(proof " + template_str(p.tmpl) + "\n" + print_node(p.root, 2) + ")\n";
}

ProofPtr parse_node(SexpReader& r) {
  r.expect_open();
  if (r.atom() != "node") r.fail("expected 'node'");
  const std::string tag = r.atom();
  const auto rule = rule_from_tag(tag);
  if (!rule) r.fail("unknown rule tag '" + tag + "'");
  r.expect_open();
  if (r.atom() != "seq") r.fail("expected 'seq'");
  r.expect_open();
  std::vector<Formula> ante;
  while (!r.peek_close()) ante.push_back(r.formula());
  r.expect_close();
  const Formula succ = r.formula();
  r.expect_close();

  RuleData d;
  std::vector<ProofPtr> premises;
  while (r.peek_open()) {
    const std::string h = r.peek_head();
    if (h == "node") {
      premises.push_back(parse_node(r));
      continue;
    }
    r.expect_open();
    r.atom();
    if (h == "principal") {
      d.principal = r.formula();
    } else if (h == "index") {
      const std::string v = r.atom();
      if (v != "0" && v != "1") r.fail("index must be 0 or 1");
      d.index = v == "1";
    } else if (h == "eigen") {
      d.eigen = r.atom();
    } else if (h == "term") {
      d.term = r.term();
    } else if (h == "nu") {
      d.nu = r.term();
    } else if (h == "ind-formula") {
      d.ind_formula = r.formula();
    } else if (h == "ind-bound") {
      d.ind_bound = r.atom();
    } else {
      r.fail("unknown rule argument '" + h + "'");
    }
    r.expect_close();
  }
  r.expect_close();
  return make_node(Sequent::make(std::move(ante), succ), *rule, std::move(d), std::move(premises));
}

Proof parse_proof(std::string_view text) {
  SexpReader r(text);
  r.expect_open();
  if (r.atom() != "proof") r.fail("expected 'proof'");
  r.expect_open();
  if (r.atom() != "template") r.fail("expected 'template'");
  FixedPointTemplate tmpl{r.atom(), r.formula(true)};
  r.expect_close();
  if (!is_valid_template(tmpl)) r.fail("template must be strictly positive with only its hole variable free");
  ProofPtr reference;
  if (r.peek_head() == "reference") {
    r.expect_open();
    r.atom();
    reference = parse_node(r);
    r.expect_close();
  }
  ProofPtr root = parse_node(r);
  r.expect_close();
  if (!r.at_end()) r.fail("trailing input");
  return {root, closure_of(reference ? reference : root), tmpl};
}

}  // namespace fixpoint
