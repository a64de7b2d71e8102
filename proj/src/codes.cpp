#include "fixpoint/codes.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace fixpoint {

std::string Atom::str() const {
  switch (kind) {
    case Kind::Set: return "(bar " + set.str() + ")";
    case Kind::V: return "V";
    case Kind::W: return "W";
  }
  return "?";
}

struct Code::Node {
  std::vector<Group> groups;
  std::size_t hash = 0;
  std::uint64_t id = 0;
};

namespace {

using Key = std::vector<std::uint64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : k) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

std::uint64_t atom_key(const Atom& a) {
  return (static_cast<std::uint64_t>(a.kind) << 60) | a.set.id();
}

class CodeInterner {
 public:
  const Code::Node* get(std::vector<Code::Group>&& gs) {
    Key key;
    for (const auto& g : gs) {
      key.push_back(g.exp.id());
      key.push_back(g.base.size());
      for (const auto& p : g.base) {
        key.push_back(p.size());
        for (const auto& a : p) key.push_back(atom_key(a));
      }
    }
    std::lock_guard lock(mu_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    auto& n = nodes_.emplace_back();
    n.groups = std::move(gs);
    n.id = nodes_.size();
    n.hash = KeyHash{}(key);
    table_.emplace(std::move(key), &n);
    return &n;
  }

 private:
  std::mutex mu_;
  std::deque<Code::Node> nodes_;
  std::unordered_map<Key, const Code::Node*, KeyHash> table_;
};

CodeInterner& interner() {
  static CodeInterner in;
  return in;
}

}  // namespace

Code::Code() {
  static const Node* zero = interner().get({});
  node_ = zero;
}

Code Code::one() {
  static const Code c = from_groups({Group{Code(), Sum{Prod{}}}});
  return c;
}

Code Code::atom(const Atom& a) { return from_prod({a}); }
Code Code::from_prod(Prod p) { return from_sum({std::move(p)}); }
Code Code::from_sum(Sum s) { return from_groups({Group{Code(), std::move(s)}}); }

Code Code::from_groups(std::vector<Group> gs) {
  for (auto& g : gs) g.base = normalize_sum(std::move(g.base));
  std::erase_if(gs, [](const Group& g) { return g.base.empty(); });
  std::sort(gs.begin(), gs.end(), [](const Group& a, const Group& b) { return a.exp < b.exp; });
  std::vector<Group> merged;
  for (auto& g : gs) {
    if (!merged.empty() && merged.back().exp == g.exp) {
      auto& b = merged.back().base;
      b.insert(b.end(), g.base.begin(), g.base.end());
      std::sort(b.begin(), b.end());
    } else {
      merged.push_back(std::move(g));
    }
  }
  return Code(interner().get(std::move(merged)));
}

const std::vector<Code::Group>& Code::groups() const { return node_->groups; }
bool Code::is_zero() const { return node_->groups.empty(); }
bool Code::is_one() const { return *this == one(); }
bool Code::is_sum() const {
  return groups().empty() || (groups().size() == 1 && groups()[0].exp.is_zero());
}

const Sum& Code::sum_part() const {
  static const Sum empty;
  if (!groups().empty() && groups()[0].exp.is_zero()) return groups()[0].base;
  return empty;
}

Sum Code::base_at(const Code& exp) const {
  for (const auto& g : groups())
    if (g.exp == exp) return g.base;
  return {};
}

std::uint64_t Code::id() const { return node_->id; }
std::size_t Code::hash() const { return node_->hash; }

std::strong_ordering operator<=>(const Code& a, const Code& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  return std::lexicographical_compare_three_way(a.groups().begin(), a.groups().end(),
                                                b.groups().begin(), b.groups().end());
}

namespace {

std::string prod_str(const Prod& p) {
  if (p.empty()) return "I";
  if (p.size() == 1) return p[0].str();
  std::string out = "(x";
  for (const auto& a : p) out += " " + a.str();
  return out + ")";
}

std::string sum_str(const Sum& s) {
  if (s.empty()) return "O";
  if (s.size() == 1) return prod_str(s[0]);
  std::string out = "(+";
  for (const auto& p : s) out += " " + prod_str(p);
  return out + ")";
}

}  // namespace

std::string Code::str() const {
  std::vector<std::string> parts;
  for (const auto& g : groups()) {
    if (g.exp.is_zero()) {
      for (const auto& p : g.base) parts.push_back(prod_str(p));
    } else {
      parts.push_back("(w " + g.exp.str() + " " + sum_str(g.base) + ")");
    }
  }
  if (parts.empty()) return "O";
  if (parts.size() == 1) return parts[0];
  std::string out = "(+";
  for (const auto& s : parts) out += " " + s;
  return out + ")";
}

std::optional<Prod> normalize_prod(Prod p) {
  const HFSet unit = HFSet::singleton(HFSet());
  Prod out;
  for (auto& a : p) {
    if (a.is_set() && a.set.empty()) return std::nullopt;
    if (a.is_set() && a.set == unit) continue;
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Sum normalize_sum(Sum s) {
  Sum out;
  for (auto& p : s)
    if (auto q = normalize_prod(std::move(p))) out.push_back(std::move(*q));
  std::sort(out.begin(), out.end());
  return out;
}

Code bar(const SetOrV& a) {
  if (a.is_v) return Code::atom(Atom::v());
  return Code::atom(Atom::of(a.set));
}

Code nat_sum(const Code& a, const Code& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto gs = a.groups();
  gs.insert(gs.end(), b.groups().begin(), b.groups().end());
  return Code::from_groups(std::move(gs));
}

Code nat_sum(const std::vector<Code>& xs) {
  std::vector<Code::Group> gs;
  for (const auto& x : xs) gs.insert(gs.end(), x.groups().begin(), x.groups().end());
  return Code::from_groups(std::move(gs));
}

Code times_n(const Code& a, std::size_t n) { return nat_sum(std::vector<Code>(n, a)); }

Sum nat_prod(const Sum& a, const Sum& b) {
  Sum out;
  for (const auto& p : a)
    for (const auto& q : b) {
      Prod r = p;
      r.insert(r.end(), q.begin(), q.end());
      out.push_back(std::move(r));
    }
  return normalize_sum(std::move(out));
}

Code nat_prod(const Code& a, const Code& b) {
  if (!a.is_sum() || !b.is_sum()) throw std::invalid_argument("product of codes outside Sum: " + a.str() + " x " + b.str());
  return Code::from_sum(nat_prod(a.sum_part(), b.sum_part()));
}

Code omega_pow(const Code& exp, const Code& base) {
  if (exp.is_zero()) return base;
  std::vector<Code::Group> gs;
  for (const auto& g : base.groups()) gs.push_back({nat_sum(exp, g.exp), g.base});
  return Code::from_groups(std::move(gs));
}

Code omega2(const Code& a) { return omega2_apply(a, Code::one()); }

Code omega2_apply(const Code& a, const Code& base) {
  return omega_pow(omega_pow(a, Code::one()), base);
}

namespace {

std::size_t prod_len(const Prod& p) { return p.size() >= 2 ? 1 : 0; }

std::size_t sum_len(const Sum& s) {
  if (s.empty()) return 0;
  if (s.size() == 1) return prod_len(s[0]);
  std::size_t m = 0;
  for (const auto& p : s) m = std::max(m, prod_len(p));
  return m + 1;
}

}  // namespace

std::size_t length(const Code& a) {
  std::vector<std::size_t> parts;
  for (const auto& g : a.groups()) {
    if (g.exp.is_zero()) {
      for (const auto& p : g.base) parts.push_back(prod_len(p));
    } else {
      parts.push_back(std::max(length(g.exp), sum_len(g.base)) + 1);
    }
  }
  if (parts.empty()) return 0;
  if (parts.size() == 1) return parts[0];
  return *std::max_element(parts.begin(), parts.end()) + 1;
}

namespace {

class CodeParser {
 public:
  explicit CodeParser(std::string_view t) : text_(t) {}

  Code parse_all() {
    Code c = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing input after code", pos_);
    return c;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool delim(std::size_t p) const {
    return p >= text_.size() || std::isspace(static_cast<unsigned char>(text_[p])) || text_[p] == '(' || text_[p] == ')';
  }
  std::string word() {
    std::size_t start = pos_;
    while (!delim(pos_)) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  void expect_close() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
  }
  bool at_close() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unterminated code expression", pos_);
    return text_[pos_] == ')';
  }

  Code expr() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("expected code", pos_);
    const std::size_t start = pos_;
    if (text_[pos_] != '(') {
      std::string w = word();
      if (w == "O") return Code::zero();
      if (w == "I") return Code::one();
      if (w == "V") return Code::atom(Atom::v());
      throw ParseError("unknown code token '" + w + "'", start);
    }
    ++pos_;
    skip();
    std::string head = word();
    if (head == "bar") {
      skip();
      HFSet s = parse_set_at(text_, pos_);
      expect_close();
      return bar(SetOrV::of(s));
    }
    if (head == "x") {
      Code acc = Code::one();
      while (!at_close()) {
        const std::size_t at = pos_;
        Code f = expr();
        if (!f.is_sum()) throw ParseError("factor of a product must be a sum", at);
        acc = nat_prod(acc, f);
      }
      ++pos_;
      return acc;
    }
    if (head == "+") {
      std::vector<Code> xs;
      while (!at_close()) xs.push_back(expr());
      ++pos_;
      return nat_sum(xs);
    }
    if (head == "w") {
      Code e = expr();
      const std::size_t at = pos_;
      Code b = expr();
      if (!b.is_sum()) throw ParseError("base of an exponential must be a sum", at);
      expect_close();
      return omega_pow(e, b);
    }
    throw ParseError("unknown code head '" + head + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Code parse_code(std::string_view text) { return CodeParser(text).parse_all(); }

std::vector<Code> pcodes(const Code& a) {
  std::vector<Code> out;
  for (const auto& g : a.groups())
    for (const auto& p : g.base) out.push_back(Code::from_groups({Code::Group{g.exp, Sum{p}}}));
  return out;
}

Code normalize(const RawCode& r) {
  using K = RawCode::Kind;
  switch (r.kind) {
    case K::Zero: return Code::zero();
    case K::One: return Code::one();
    case K::Leaf:
      if (r.atom.is_set()) return bar(SetOrV::of(r.atom.set));
      return Code::atom(r.atom);
    case K::Prod: {
      Code acc = Code::one();
      for (const auto& k : r.kids) acc = nat_prod(acc, normalize(k));
      return acc;
    }
    case K::Sum: {
      std::vector<Code> xs;
      for (const auto& k : r.kids) xs.push_back(normalize(k));
      return nat_sum(xs);
    }
    case K::Omega:
      if (r.kids.size() != 2) throw std::invalid_argument("raw exponential needs two children");
      return omega_pow(normalize(r.kids[0]), normalize(r.kids[1]));
  }
  throw std::logic_error("unreachable raw code kind");
}

RawCode to_raw(const Code& c) {
  using K = RawCode::Kind;
  auto prod_raw = [](const Prod& p) {
    if (p.empty()) return RawCode{K::One, {}, {}};
    RawCode r{K::Prod, {}, {}};
    for (const auto& a : p) r.kids.push_back(RawCode{K::Leaf, a, {}});
    return r;
  };
  RawCode out{K::Sum, {}, {}};
  for (const auto& g : c.groups()) {
    if (g.exp.is_zero()) {
      for (const auto& p : g.base) out.kids.push_back(prod_raw(p));
    } else {
      RawCode base{K::Sum, {}, {}};
      for (const auto& p : g.base) base.kids.push_back(prod_raw(p));
      out.kids.push_back(RawCode{K::Omega, {}, {to_raw(g.exp), std::move(base)}});
    }
  }
  if (out.kids.empty()) return RawCode{K::Zero, {}, {}};
  return out;
}

std::string to_string(LtResult r) {
  switch (r) {
    case LtResult::True: return "true";
    case LtResult::False: return "false";
    case LtResult::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

void add_unique(std::vector<Code>& out, std::vector<std::uint64_t>& seen, const Code& c) {
  if (std::find(seen.begin(), seen.end(), c.id()) != seen.end()) return;
  seen.push_back(c.id());
  out.push_back(c);
}

// Multisets of size lo..hi drawn from items (with repetition), as index lists.
void multisets(std::size_t n, std::size_t lo, std::size_t hi, std::vector<std::size_t>& cur, std::size_t from,
               std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() >= lo) out.push_back(cur);
  if (cur.size() == hi) return;
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    multisets(n, lo, hi, cur, i, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> multisets(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  multisets(n, lo, hi, cur, 0, out);
  return out;
}

}  // namespace

std::vector<Code> enumerate_codes(std::size_t max_length, std::size_t max_rank, std::size_t width) {
  const HFSet unit = HFSet::singleton(HFSet());
  std::vector<Atom> atoms{Atom::v()};
  for (const auto& s : enumerate_upto_rank(max_rank))
    if (!s.empty() && s != unit) atoms.push_back(Atom::of(s));

  // products of length <= 1
  std::vector<Code> prods;
  for (const auto& idx : multisets(atoms.size(), 0, std::max<std::size_t>(width, 1))) {
    Prod p;
    for (auto i : idx) p.push_back(atoms[i]);
    prods.push_back(Code::from_prod(p));
  }

  std::vector<Code> all;
  std::vector<std::uint64_t> seen;
  add_unique(all, seen, Code::zero());
  std::vector<Code> summands;  // PCodes of length <= current level
  for (std::size_t level = 0; level <= max_length; ++level) {
    std::vector<Code> next_summands;
    std::vector<std::uint64_t> sseen;
    for (const auto& p : prods)
      if (length(p) <= level) add_unique(next_summands, sseen, p);
    if (level >= 1) {
      std::vector<Code> exps, bases;
      for (const auto& c : all) {
        if (c.is_zero() || length(c) > level - 1) continue;
        exps.push_back(c);
        if (c.is_sum()) bases.push_back(c);
      }
      for (const auto& e : exps)
        for (const auto& b : bases) {
          Code c = omega_pow(e, b);
          if (length(c) <= level) add_unique(next_summands, sseen, c);
        }
    }
    for (const auto& s : next_summands) add_unique(all, seen, s);
    if (level >= 1) {
      for (const auto& idx : multisets(summands.size(), 2, width)) {
        std::vector<Code> xs;
        for (auto i : idx) xs.push_back(summands[i]);
        Code c = nat_sum(xs);
        if (length(c) <= level) add_unique(all, seen, c);
      }
    }
    summands = std::move(next_summands);
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace fixpoint
