#include "fixpoint/formula.hpp"

namespace fixpoint {

namespace {

struct Evaluator {
  const UniverseBound& bound;
  bool relative = false;

  HFSet value(const Term& t, const Assignment& env) const {
    if (!t.is_var()) return t.value;
    auto it = env.find(t.name);
    if (it == env.end()) throw EvalError("unassigned variable " + t.name);
    return it->second;
  }

  bool eval(const Formula& phi, Assignment& env) {
    using K = Formula::Kind;
    switch (phi.kind()) {
      case K::In: return value(phi.term(1), env).contains(value(phi.term(0), env));
      case K::Eq: return value(phi.term(0), env) == value(phi.term(1), env);
      case K::Q: throw EvalError("cannot evaluate the fixed-point predicate: " + phi.str());
      case K::Or: return eval(phi.sub(0), env) || eval(phi.sub(1), env);
      case K::And: return eval(phi.sub(0), env) && eval(phi.sub(1), env);
      case K::Imp: return !eval(phi.sub(0), env) || eval(phi.sub(1), env);
      case K::Ex:
      case K::All: break;
    }
    const bool universal = phi.kind() == K::All;
    // Members outside the bounding term satisfy the guard vacuously, so the
    // members of its value are an exact range.
    std::vector<HFSet> range;
    if (auto bq = bounded_quantifier(phi)) {
      range = value(bq->second, env).elements();
    } else {
      if (!bound.max_rank) throw EvalError("unbounded quantifier with the universe bound disabled: " + phi.str());
      range = enumerate_upto_rank(*bound.max_rank);
      relative = true;
    }
    const std::string& x = phi.var();
    std::optional<HFSet> saved;
    if (auto it = env.find(x); it != env.end()) saved = it->second;
    bool result = universal;
    for (const auto& a : range) {
      env[x] = a;
      if (eval(phi.sub(0), env) != universal) {
        result = !universal;
        break;
      }
    }
    if (saved) {
      env[x] = *saved;
    } else {
      env.erase(x);
    }
    return result;
  }
};

}  // namespace

EvalResult evaluate(const Formula& phi, const Assignment& env, const UniverseBound& bound) {
  Evaluator e{bound};
  Assignment local = env;
  const bool v = e.eval(phi, local);
  return {v, e.relative};
}

}  // namespace fixpoint
