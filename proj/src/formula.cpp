#include "fixpoint/formula.hpp"

#include <atomic>
#include <cctype>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

namespace fixpoint {

std::string Term::str() const {
  return is_var() ? "(var " + name + ")" : "(const " + value.str() + ")";
}

struct Formula::Node {
  Kind kind;
  Term a, b;
  std::string var;
  const Node* l = nullptr;
  const Node* r = nullptr;
  std::string text;
  std::size_t hash = 0;
  std::set<std::string> free;
  bool has_q = false;
};

namespace {

class FormulaInterner {
 public:
  const Formula::Node* intern(Formula::Node&& n) {
    std::lock_guard lock(mu_);
    if (auto it = table_.find(n.text); it != table_.end()) return it->second;
    nodes_.push_back(std::move(n));
    const Formula::Node* p = &nodes_.back();
    table_.emplace(p->text, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::deque<Formula::Node> nodes_;
  std::unordered_map<std::string, const Formula::Node*> table_;
};

FormulaInterner& interner() {
  static FormulaInterner in;
  return in;
}

void add_term_vars(std::set<std::string>& s, const Term& t) {
  if (t.is_var()) s.insert(t.name);
}

const char* head(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::In: return "in";
    case Formula::Kind::Eq: return "eq";
    case Formula::Kind::Q: return "Q";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Imp: return "imp";
    case Formula::Kind::Ex: return "ex";
    case Formula::Kind::All: return "all";
  }
  return "?";
}

}  // namespace

Formula Formula::make(Node&& n) {
  std::string t = "(";
  t += head(n.kind);
  switch (n.kind) {
    case Kind::In:
    case Kind::Eq:
      t += " " + n.a.str() + " " + n.b.str();
      add_term_vars(n.free, n.a);
      add_term_vars(n.free, n.b);
      break;
    case Kind::Q:
      t += " " + n.a.str();
      add_term_vars(n.free, n.a);
      n.has_q = true;
      break;
    case Kind::Or:
    case Kind::And:
    case Kind::Imp:
      t += " " + n.l->text + " " + n.r->text;
      n.free = n.l->free;
      n.free.insert(n.r->free.begin(), n.r->free.end());
      n.has_q = n.l->has_q || n.r->has_q;
      break;
    case Kind::Ex:
    case Kind::All:
      t += " " + n.var + " " + n.l->text;
      n.free = n.l->free;
      n.free.erase(n.var);
      n.has_q = n.l->has_q;
      break;
  }
  t += ")";
  n.hash = std::hash<std::string>{}(t);
  n.text = std::move(t);
  return Formula(interner().intern(std::move(n)));
}

Formula Formula::in(const Term& a, const Term& b) { return make({Kind::In, a, b, {}, nullptr, nullptr, {}, 0, {}, false}); }
Formula Formula::eq(const Term& a, const Term& b) { return make({Kind::Eq, a, b, {}, nullptr, nullptr, {}, 0, {}, false}); }
Formula Formula::q(const Term& t) { return make({Kind::Q, t, {}, {}, nullptr, nullptr, {}, 0, {}, false}); }
Formula Formula::disj(const Formula& a, const Formula& b) {
  return make({Kind::Or, {}, {}, {}, a.node_, b.node_, {}, 0, {}, false});
}
Formula Formula::conj(const Formula& a, const Formula& b) {
  return make({Kind::And, {}, {}, {}, a.node_, b.node_, {}, 0, {}, false});
}
Formula Formula::imp(const Formula& a, const Formula& b) {
  return make({Kind::Imp, {}, {}, {}, a.node_, b.node_, {}, 0, {}, false});
}
Formula Formula::ex(const std::string& x, const Formula& a) {
  return make({Kind::Ex, {}, {}, x, a.node_, nullptr, {}, 0, {}, false});
}
Formula Formula::all(const std::string& x, const Formula& a) {
  return make({Kind::All, {}, {}, x, a.node_, nullptr, {}, 0, {}, false});
}
Formula Formula::all_in(const std::string& y, const Term& t, const Formula& a) {
  return all(y, imp(in(Term::var(y), t), a));
}
Formula Formula::ex_in(const std::string& y, const Term& t, const Formula& a) {
  return ex(y, conj(in(Term::var(y), t), a));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Term& Formula::term(int i) const { return i == 0 ? node_->a : node_->b; }
const std::string& Formula::var() const { return node_->var; }
Formula Formula::sub(int i) const { return Formula(i == 0 ? node_->l : node_->r); }
const std::string& Formula::str() const { return node_->text; }
const std::set<std::string>& Formula::free_vars() const { return node_->free; }
bool Formula::has_q() const { return node_->has_q; }
std::size_t Formula::hash() const { return node_->hash; }

std::string fresh_var(const std::string& base) {
  static std::atomic<std::uint64_t> counter{0};
  std::string stem = base.substr(0, base.find('~'));
  if (stem.empty()) stem = "v";
  return stem + "~" + std::to_string(++counter);
}

namespace {

Term subst_term(const Term& s, const std::string& x, const Term& t) {
  return s.is_var() && s.name == x ? t : s;
}

}  // namespace

Formula substitute(const Formula& phi, const std::string& x, const Term& t) {
  if (!phi.free_vars().contains(x)) return phi;
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::In: return Formula::in(subst_term(phi.term(0), x, t), subst_term(phi.term(1), x, t));
    case K::Eq: return Formula::eq(subst_term(phi.term(0), x, t), subst_term(phi.term(1), x, t));
    case K::Q: return Formula::q(subst_term(phi.term(0), x, t));
    case K::Or: return Formula::disj(substitute(phi.sub(0), x, t), substitute(phi.sub(1), x, t));
    case K::And: return Formula::conj(substitute(phi.sub(0), x, t), substitute(phi.sub(1), x, t));
    case K::Imp: return Formula::imp(substitute(phi.sub(0), x, t), substitute(phi.sub(1), x, t));
    case K::Ex:
    case K::All: {
      std::string y = phi.var();
      Formula body = phi.sub(0);
      if (t.is_var() && t.name == y) {
        std::string z = fresh_var(y);
        body = substitute(body, y, Term::var(z));
        y = z;
      }
      body = substitute(body, x, t);
      return phi.kind() == K::Ex ? Formula::ex(y, body) : Formula::all(y, body);
    }
  }
  return phi;
}

namespace {

using BoundPairs = std::vector<std::pair<std::string, std::string>>;

int bound_index(const BoundPairs& env, const std::string& name, bool left) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
    if ((left ? env[static_cast<std::size_t>(i)].first : env[static_cast<std::size_t>(i)].second) == name) return i;
  return -1;
}

bool alpha_term(const Term& s, const Term& f, const BoundPairs& env) {
  if (s.is_var() != f.is_var()) return false;
  if (!s.is_var()) return s.value == f.value;
  const int i = bound_index(env, s.name, true), j = bound_index(env, f.name, false);
  if (i != j) return false;
  return i >= 0 || s.name == f.name;
}

bool alpha_rec(const Formula& a, const Formula& b, BoundPairs& env) {
  if (a.kind() != b.kind()) return false;
  if (env.empty() && a == b) return true;
  switch (a.kind()) {
    case Formula::Kind::In:
    case Formula::Kind::Eq:
      return alpha_term(a.term(0), b.term(0), env) && alpha_term(a.term(1), b.term(1), env);
    case Formula::Kind::Q: return alpha_term(a.term(0), b.term(0), env);
    case Formula::Kind::Ex:
    case Formula::Kind::All: {
      env.emplace_back(a.var(), b.var());
      const bool ok = alpha_rec(a.sub(0), b.sub(0), env);
      env.pop_back();
      return ok;
    }
    default: return alpha_rec(a.sub(0), b.sub(0), env) && alpha_rec(a.sub(1), b.sub(1), env);
  }
}

// Skeleton s matches f when f = s[x := t] for some term substitution of the
// free variables of s, up to renaming of bound variables.
struct Matcher {
  BoundPairs env;
  std::map<std::string, Term> subst;

  bool term(const Term& s, const Term& f) {
    if (!s.is_var()) return !f.is_var() && s.value == f.value;
    const int i = bound_index(env, s.name, true);
    if (i >= 0) return f.is_var() && bound_index(env, f.name, false) == i;
    if (f.is_var() && bound_index(env, f.name, false) >= 0) return false;
    auto [it, fresh] = subst.emplace(s.name, f);
    return fresh || it->second == f;
  }

  bool formula(const Formula& s, const Formula& f) {
    if (s.kind() != f.kind()) return false;
    switch (s.kind()) {
      case Formula::Kind::In:
      case Formula::Kind::Eq: return term(s.term(0), f.term(0)) && term(s.term(1), f.term(1));
      case Formula::Kind::Q: return term(s.term(0), f.term(0));
      case Formula::Kind::Ex:
      case Formula::Kind::All: {
        env.emplace_back(s.var(), f.var());
        const bool ok = formula(s.sub(0), f.sub(0));
        env.pop_back();
        return ok;
      }
      default: return formula(s.sub(0), f.sub(0)) && formula(s.sub(1), f.sub(1));
    }
  }
};

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  BoundPairs env;
  return alpha_rec(a, b, env);
}

bool is_strictly_positive(const Formula& phi) {
  if (!phi.has_q()) return true;
  switch (phi.kind()) {
    case Formula::Kind::Imp: return !phi.sub(0).has_q() && is_strictly_positive(phi.sub(1));
    case Formula::Kind::Or:
    case Formula::Kind::And: return is_strictly_positive(phi.sub(0)) && is_strictly_positive(phi.sub(1));
    case Formula::Kind::Ex:
    case Formula::Kind::All: return is_strictly_positive(phi.sub(0));
    default: return true;
  }
}

int depth(const Formula& phi) {
  if (!phi.has_q()) return 0;
  if (is_strictly_positive(phi)) return 2;
  if (phi.is_quant()) return depth(phi.sub(0)) + 1;
  return std::max(depth(phi.sub(0)), depth(phi.sub(1))) + 1;
}

bool is_bot(const Formula& phi) {
  if (phi.kind() != Formula::Kind::In && phi.kind() != Formula::Kind::Eq) return false;
  const Term &a = phi.term(0), &b = phi.term(1);
  if (a.is_var() || b.is_var()) return false;
  return phi.kind() == Formula::Kind::In ? !b.value.contains(a.value) : a.value != b.value;
}

std::optional<std::pair<std::string, Term>> bounded_quantifier(const Formula& phi) {
  if (!phi.is_quant()) return std::nullopt;
  const Formula body = phi.sub(0);
  const auto want = phi.kind() == Formula::Kind::All ? Formula::Kind::Imp : Formula::Kind::And;
  if (body.kind() != want) return std::nullopt;
  const Formula guard = body.sub(0);
  if (guard.kind() != Formula::Kind::In) return std::nullopt;
  const Term &y = guard.term(0), &t = guard.term(1);
  if (!y.is_var() || y.name != phi.var()) return std::nullopt;
  if (t.is_var() && t.name == phi.var()) return std::nullopt;
  return std::make_pair(phi.var(), t);
}

Formula unfold_template(const FixedPointTemplate& tmpl, const Term& t) {
  return substitute(tmpl.body, tmpl.var, t);
}

bool is_valid_template(const FixedPointTemplate& tmpl) {
  for (const auto& v : tmpl.body.free_vars())
    if (v != tmpl.var) return false;
  return is_strictly_positive(tmpl.body);
}

InstanceClosure::InstanceClosure(const std::vector<Formula>& formulas) {
  for (const auto& f : formulas) add(f);
}

void InstanceClosure::add(const Formula& phi) {
  if (!seen_.insert(phi.str()).second) return;
  skeletons_[phi.kind()].push_back(phi);
  if (phi.is_quant()) add(phi.sub(0));
  if (phi.is_binary()) {
    add(phi.sub(0));
    add(phi.sub(1));
  }
}

bool InstanceClosure::contains(const Formula& phi) const {
  auto it = skeletons_.find(phi.kind());
  if (it == skeletons_.end()) return false;
  for (const auto& s : it->second) {
    Matcher m;
    if (m.formula(s, phi)) return true;
  }
  return false;
}

// ---- text ----

void SexpReader::skip() {
  while (pos_ < text_.size()) {
    if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    } else if (text_[pos_] == ';') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

bool SexpReader::at_end() {
  skip();
  return pos_ >= text_.size();
}

bool SexpReader::peek_open() {
  skip();
  return pos_ < text_.size() && text_[pos_] == '(';
}

bool SexpReader::peek_close() {
  skip();
  return pos_ < text_.size() && text_[pos_] == ')';
}

void SexpReader::expect_open() {
  if (!peek_open()) fail("expected '('");
  ++pos_;
}

void SexpReader::expect_close() {
  if (!peek_close()) fail("expected ')'");
  ++pos_;
}

void SexpReader::fail(const std::string& what) const { throw ParseError(what, pos_); }

std::string SexpReader::atom() {
  skip();
  const std::size_t start = pos_;
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '{' || c == '}' || c == ';') break;
    ++pos_;
  }
  if (start == pos_) fail("expected a word");
  return std::string(text_.substr(start, pos_ - start));
}

std::string SexpReader::peek_head() {
  const std::size_t save = pos_;
  expect_open();
  std::string h = atom();
  pos_ = save;
  return h;
}

HFSet SexpReader::set() {
  skip();
  return parse_set_at(text_, pos_);
}

Term SexpReader::term() {
  skip();
  if (pos_ < text_.size() && text_[pos_] == '{') return Term::constant(set());
  if (!peek_open()) return Term::var(atom());
  expect_open();
  const std::string h = atom();
  Term t;
  if (h == "var") {
    t = Term::var(atom());
  } else if (h == "const") {
    t = Term::constant(set());
  } else {
    fail("unknown term head '" + h + "'");
  }
  expect_close();
  return t;
}

Formula SexpReader::formula(bool hole_is_x) {
  expect_open();
  const std::string h = atom();
  Formula f = Formula::q(Term::var("_"));
  if (h == "in" || h == "eq") {
    Term a = term();
    Term b = term();
    f = h == "in" ? Formula::in(a, b) : Formula::eq(a, b);
  } else if (h == (hole_is_x ? "X" : "Q")) {
    f = Formula::q(term());
  } else if (h == "or" || h == "and" || h == "imp") {
    Formula a = formula(hole_is_x);
    Formula b = formula(hole_is_x);
    f = h == "or" ? Formula::disj(a, b) : h == "and" ? Formula::conj(a, b) : Formula::imp(a, b);
  } else if (h == "ex" || h == "all") {
    std::string x = atom();
    Formula a = formula(hole_is_x);
    f = h == "ex" ? Formula::ex(x, a) : Formula::all(x, a);
  } else {
    fail("unknown formula head '" + h + "'");
  }
  expect_close();
  return f;
}

Term parse_term(std::string_view text) {
  SexpReader r(text);
  Term t = r.term();
  if (!r.at_end()) r.fail("trailing input");
  return t;
}

Formula parse_formula(std::string_view text) {
  SexpReader r(text);
  Formula f = r.formula();
  if (!r.at_end()) r.fail("trailing input");
  return f;
}

FixedPointTemplate parse_template(std::string_view text) {
  SexpReader r(text);
  r.expect_open();
  if (r.atom() != "template") r.fail("expected 'template'");
  std::string x = r.atom();
  Formula body = r.formula(true);
  r.expect_close();
  if (!r.at_end()) r.fail("trailing input");
  return {x, body};
}

std::string template_str(const FixedPointTemplate& t) {
  std::string body = t.body.str();
  for (std::size_t p = body.find("(Q "); p != std::string::npos; p = body.find("(Q ", p)) body[p + 1] = 'X';
  return "(template " + t.var + " " + body + ")";
}

}  // namespace fixpoint
