#include "rig/expr.hpp"

#include <cctype>
#include <set>

#include "lexer.hpp"
#include "rig/error.hpp"

namespace rig {

struct ObjExpr::Node {
  Kind kind;
  std::string name;
  ObjExpr lhs{nullptr};
  ObjExpr rhs{nullptr};
};

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

ObjExpr ObjExpr::zero() {
  static const ObjExpr z(std::make_shared<const Node>(Node{Kind::Zero, "", ObjExpr(nullptr), ObjExpr(nullptr)}));
  return z;
}

ObjExpr ObjExpr::one() {
  static const ObjExpr o(std::make_shared<const Node>(Node{Kind::One, "", ObjExpr(nullptr), ObjExpr(nullptr)}));
  return o;
}

ObjExpr ObjExpr::gen(std::string name) {
  if (!is_identifier(name) || name == "O" || name == "I")
    throw Error(ErrorKind::Syntax, "invalid object generator name '" + name + "'");
  return ObjExpr(std::make_shared<const Node>(
      Node{Kind::Gen, std::move(name), ObjExpr(nullptr), ObjExpr(nullptr)}));
}

ObjExpr ObjExpr::sum(ObjExpr lhs, ObjExpr rhs) {
  return ObjExpr(std::make_shared<const Node>(Node{Kind::Sum, "", std::move(lhs), std::move(rhs)}));
}

ObjExpr ObjExpr::prod(ObjExpr lhs, ObjExpr rhs) {
  return ObjExpr(std::make_shared<const Node>(Node{Kind::Prod, "", std::move(lhs), std::move(rhs)}));
}

ObjExpr::Kind ObjExpr::kind() const { return node_->kind; }
const std::string& ObjExpr::name() const { return node_->name; }
const ObjExpr& ObjExpr::lhs() const { return node_->lhs; }
const ObjExpr& ObjExpr::rhs() const { return node_->rhs; }

bool operator==(const ObjExpr& a, const ObjExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ObjExpr::Kind::Zero:
    case ObjExpr::Kind::One: return true;
    case ObjExpr::Kind::Gen: return a.name() == b.name();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::string ObjExpr::to_string() const {
  switch (kind()) {
    case Kind::Zero: return "O";
    case Kind::One: return "I";
    case Kind::Gen: return name();
    case Kind::Sum: {
      std::string r = rhs().to_string();
      if (rhs().kind() == Kind::Sum) r = "(" + r + ")";
      return lhs().to_string() + " + " + r;
    }
    case Kind::Prod: {
      auto wrap = [](const ObjExpr& e, bool right) {
        std::string s = e.to_string();
        bool paren = e.kind() == Kind::Sum || (right && e.kind() == Kind::Prod);
        return paren ? "(" + s + ")" : s;
      };
      return wrap(lhs(), false) + "*" + wrap(rhs(), true);
    }
  }
  return {};
}

namespace {

ObjExpr parse_sum(detail::TokenStream& ts);

ObjExpr parse_atom(detail::TokenStream& ts) {
  if (ts.accept("(")) {
    ObjExpr e = parse_sum(ts);
    ts.expect(")");
    return e;
  }
  std::string id = ts.expect_ident();
  if (id == "O") return ObjExpr::zero();
  if (id == "I") return ObjExpr::one();
  return ObjExpr::gen(id);
}

ObjExpr parse_prod(detail::TokenStream& ts) {
  ObjExpr e = parse_atom(ts);
  while (ts.accept("*")) e = ObjExpr::prod(e, parse_atom(ts));
  return e;
}

ObjExpr parse_sum(detail::TokenStream& ts) {
  ObjExpr e = parse_prod(ts);
  while (ts.accept("+")) e = ObjExpr::sum(e, parse_prod(ts));
  return e;
}

void collect_generators(const ObjExpr& e, std::vector<std::string>& out,
                        std::set<std::string>& seen) {
  switch (e.kind()) {
    case ObjExpr::Kind::Gen:
      if (seen.insert(e.name()).second) out.push_back(e.name());
      break;
    case ObjExpr::Kind::Sum:
    case ObjExpr::Kind::Prod:
      collect_generators(e.lhs(), out, seen);
      collect_generators(e.rhs(), out, seen);
      break;
    default: break;
  }
}

}  // namespace

ObjExpr parse_obj_expr(std::string_view text) {
  detail::TokenStream ts(text);
  ObjExpr e = parse_sum(ts);
  if (!ts.at_end()) ts.fail("trailing input");
  return e;
}

NormalForm nf_product(const NormalForm& a, const NormalForm& b) {
  NormalForm out;
  out.summands.reserve(a.size() * b.size());
  for (const Word& x : a.summands)
    for (const Word& y : b.summands) {
      Word w = x;
      w.insert(w.end(), y.begin(), y.end());
      out.summands.push_back(std::move(w));
    }
  return out;
}

NormalForm nf_sum(const NormalForm& a, const NormalForm& b) {
  NormalForm out = a;
  out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
  return out;
}

NormalForm normalize(const ObjExpr& e) {
  switch (e.kind()) {
    case ObjExpr::Kind::Zero: return {};
    case ObjExpr::Kind::One: return NormalForm{Word{}};
    case ObjExpr::Kind::Gen: return NormalForm{Word{e.name()}};
    case ObjExpr::Kind::Sum: return nf_sum(normalize(e.lhs()), normalize(e.rhs()));
    case ObjExpr::Kind::Prod: return nf_product(normalize(e.lhs()), normalize(e.rhs()));
  }
  return {};
}

bool is_regular(const NormalForm& n) {
  std::set<Word> seen;
  for (const Word& w : n.summands) {
    if (!seen.insert(w).second) return false;
    std::set<std::string> factors(w.begin(), w.end());
    if (factors.size() != w.size()) return false;
  }
  return true;
}

ObjExpr embed(const Word& w) {
  if (w.empty()) return ObjExpr::one();
  ObjExpr e = ObjExpr::gen(w.back());
  for (auto it = w.rbegin() + 1; it != w.rend(); ++it) e = ObjExpr::prod(ObjExpr::gen(*it), e);
  return e;
}

ObjExpr embed(const NormalForm& n) {
  if (n.empty()) return ObjExpr::zero();
  ObjExpr e = embed(n.summands.back());
  for (auto it = n.summands.rbegin() + 1; it != n.summands.rend(); ++it)
    e = ObjExpr::sum(embed(*it), e);
  return e;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "I";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += w[i];
  }
  return s;
}

std::string to_string(const NormalForm& n) {
  if (n.empty()) return "O";
  std::string s;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) s += " + ";
    s += to_string(n[i]);
  }
  return s;
}

std::vector<std::string> generators_of(const ObjExpr& e) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_generators(e, out, seen);
  return out;
}

}  // namespace rig
