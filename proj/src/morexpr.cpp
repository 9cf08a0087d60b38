#include "rig/morexpr.hpp"

#include <map>

#include "lexer.hpp"
#include "rig/error.hpp"

namespace rig {

struct MorExpr::Node {
  Kind kind;
  std::string name;
  std::vector<ObjExpr> objects;
  std::vector<MorExpr> children;
};

namespace {

struct Keyword {
  MorExpr::Kind kind;
  std::size_t arity;
};

const std::map<std::string, Keyword>& keywords() {
  static const std::map<std::string, Keyword> table{
      {"id", {MorExpr::Kind::Id, 1}},
      {"sym", {MorExpr::Kind::Sym, 2}},
      {"dl", {MorExpr::Kind::DeltaL, 3}},
      {"dr", {MorExpr::Kind::DeltaR, 3}},
      {"lann", {MorExpr::Kind::LAnn, 1}},
      {"rann", {MorExpr::Kind::RAnn, 1}},
      {"assoc", {MorExpr::Kind::AssocMul, 3}},
      {"assoc_add", {MorExpr::Kind::AssocAdd, 3}},
      {"lunit", {MorExpr::Kind::UnitLMul, 1}},
      {"runit", {MorExpr::Kind::UnitRMul, 1}},
      {"lunit_add", {MorExpr::Kind::UnitLAdd, 1}},
      {"runit_add", {MorExpr::Kind::UnitRAdd, 1}},
  };
  return table;
}

std::string keyword_of(MorExpr::Kind k) {
  for (const auto& [name, kw] : keywords())
    if (kw.kind == k) return name;
  return "?";
}

}  // namespace

MorExpr MorExpr::gen(std::string name) {
  if (!is_identifier(name) || keywords().count(name) || name == "inv")
    throw Error(ErrorKind::Syntax, "invalid morphism name '" + name + "'");
  return MorExpr(std::make_shared<const Node>(Node{Kind::Gen, std::move(name), {}, {}}));
}

MorExpr MorExpr::id(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::Id, "", {std::move(a)}, {}}));
}

MorExpr MorExpr::compose(MorExpr after, MorExpr before) {
  return MorExpr(std::make_shared<const Node>(
      Node{Kind::Compose, "", {}, {std::move(after), std::move(before)}}));
}

MorExpr MorExpr::sum(MorExpr a, MorExpr b) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::Sum, "", {}, {std::move(a), std::move(b)}}));
}

MorExpr MorExpr::prod(MorExpr a, MorExpr b) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::Prod, "", {}, {std::move(a), std::move(b)}}));
}

MorExpr MorExpr::sym(ObjExpr a, ObjExpr b) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::Sym, "", {a, b}, {}}));
}
MorExpr MorExpr::delta_l(ObjExpr a, ObjExpr b, ObjExpr c) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::DeltaL, "", {a, b, c}, {}}));
}
MorExpr MorExpr::delta_r(ObjExpr a, ObjExpr b, ObjExpr c) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::DeltaR, "", {a, b, c}, {}}));
}
MorExpr MorExpr::lann(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::LAnn, "", {a}, {}}));
}
MorExpr MorExpr::rann(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::RAnn, "", {a}, {}}));
}
MorExpr MorExpr::assoc_mul(ObjExpr a, ObjExpr b, ObjExpr c) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::AssocMul, "", {a, b, c}, {}}));
}
MorExpr MorExpr::assoc_add(ObjExpr a, ObjExpr b, ObjExpr c) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::AssocAdd, "", {a, b, c}, {}}));
}
MorExpr MorExpr::unit_l_mul(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::UnitLMul, "", {a}, {}}));
}
MorExpr MorExpr::unit_r_mul(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::UnitRMul, "", {a}, {}}));
}
MorExpr MorExpr::unit_l_add(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::UnitLAdd, "", {a}, {}}));
}
MorExpr MorExpr::unit_r_add(ObjExpr a) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::UnitRAdd, "", {a}, {}}));
}

MorExpr MorExpr::inverse(MorExpr m) {
  return MorExpr(std::make_shared<const Node>(Node{Kind::Inverse, "", {}, {std::move(m)}}));
}

MorExpr::Kind MorExpr::kind() const { return node_->kind; }
const std::string& MorExpr::name() const { return node_->name; }
const std::vector<ObjExpr>& MorExpr::objects() const { return node_->objects; }
const std::vector<MorExpr>& MorExpr::children() const { return node_->children; }

bool MorExpr::is_structural() const {
  if (kind() == Kind::Gen) return false;
  for (const MorExpr& c : children())
    if (!c.is_structural()) return false;
  return true;
}

std::size_t MorExpr::size() const {
  std::size_t n = 1;
  for (const MorExpr& c : children()) n += c.size();
  return n;
}

bool operator==(const MorExpr& a, const MorExpr& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.objects() == b.objects() &&
         a.children() == b.children();
}

std::string MorExpr::to_string() const {
  // Levels: 0 = `;`, 1 = `+`, 2 = `*`, 3 = atom.
  auto level = [](const MorExpr& m) {
    switch (m.kind()) {
      case Kind::Compose: return 0;
      case Kind::Sum: return 1;
      case Kind::Prod: return 2;
      default: return 3;
    }
  };
  auto wrap = [&](const MorExpr& m, int min_level) {
    std::string s = m.to_string();
    return level(m) < min_level ? "(" + s + ")" : s;
  };
  switch (kind()) {
    case Kind::Gen: return name();
    case Kind::Compose:
      return wrap(children()[1], 0) + " ; " + wrap(children()[0], 1);
    case Kind::Sum: return wrap(children()[0], 1) + " + " + wrap(children()[1], 2);
    case Kind::Prod: return wrap(children()[0], 2) + " * " + wrap(children()[1], 3);
    case Kind::Inverse: return "inv(" + children()[0].to_string() + ")";
    default: {
      std::string s = keyword_of(kind()) + "(";
      for (std::size_t i = 0; i < objects().size(); ++i) {
        if (i) s += ", ";
        s += objects()[i].to_string();
      }
      return s + ")";
    }
  }
}

namespace {

ObjExpr parse_obj(detail::TokenStream& ts);

ObjExpr parse_obj_atom(detail::TokenStream& ts) {
  if (ts.accept("(")) {
    ObjExpr e = parse_obj(ts);
    ts.expect(")");
    return e;
  }
  std::string id = ts.expect_ident();
  if (id == "O") return ObjExpr::zero();
  if (id == "I") return ObjExpr::one();
  return ObjExpr::gen(id);
}

ObjExpr parse_obj_prod(detail::TokenStream& ts) {
  ObjExpr e = parse_obj_atom(ts);
  while (ts.accept("*")) e = ObjExpr::prod(e, parse_obj_atom(ts));
  return e;
}

ObjExpr parse_obj(detail::TokenStream& ts) {
  ObjExpr e = parse_obj_prod(ts);
  while (ts.accept("+")) e = ObjExpr::sum(e, parse_obj_prod(ts));
  return e;
}

MorExpr parse_seq(detail::TokenStream& ts);

MorExpr build(MorExpr::Kind k, const std::vector<ObjExpr>& a) {
  using K = MorExpr::Kind;
  switch (k) {
    case K::Id: return MorExpr::id(a[0]);
    case K::Sym: return MorExpr::sym(a[0], a[1]);
    case K::DeltaL: return MorExpr::delta_l(a[0], a[1], a[2]);
    case K::DeltaR: return MorExpr::delta_r(a[0], a[1], a[2]);
    case K::LAnn: return MorExpr::lann(a[0]);
    case K::RAnn: return MorExpr::rann(a[0]);
    case K::AssocMul: return MorExpr::assoc_mul(a[0], a[1], a[2]);
    case K::AssocAdd: return MorExpr::assoc_add(a[0], a[1], a[2]);
    case K::UnitLMul: return MorExpr::unit_l_mul(a[0]);
    case K::UnitRMul: return MorExpr::unit_r_mul(a[0]);
    case K::UnitLAdd: return MorExpr::unit_l_add(a[0]);
    case K::UnitRAdd: return MorExpr::unit_r_add(a[0]);
    default: throw Error(ErrorKind::Internal, "not a keyword constructor");
  }
}

MorExpr parse_atom(detail::TokenStream& ts) {
  if (ts.accept("(")) {
    MorExpr m = parse_seq(ts);
    ts.expect(")");
    return m;
  }
  std::string id = ts.expect_ident();
  if (id == "inv") {
    ts.expect("(");
    MorExpr m = parse_seq(ts);
    ts.expect(")");
    return MorExpr::inverse(m);
  }
  auto it = keywords().find(id);
  if (it == keywords().end()) return MorExpr::gen(id);
  ts.expect("(");
  std::vector<ObjExpr> args;
  args.push_back(parse_obj(ts));
  while (ts.accept(",")) args.push_back(parse_obj(ts));
  ts.expect(")");
  if (args.size() != it->second.arity)
    throw Error(ErrorKind::Syntax, "'" + id + "' takes " + std::to_string(it->second.arity) +
                                       " object argument(s), got " + std::to_string(args.size()));
  return build(it->second.kind, args);
}

MorExpr parse_prod(detail::TokenStream& ts) {
  MorExpr m = parse_atom(ts);
  while (ts.accept("*")) m = MorExpr::prod(m, parse_atom(ts));
  return m;
}

MorExpr parse_sum(detail::TokenStream& ts) {
  MorExpr m = parse_prod(ts);
  while (ts.accept("+")) m = MorExpr::sum(m, parse_prod(ts));
  return m;
}

MorExpr parse_seq(detail::TokenStream& ts) {
  MorExpr m = parse_sum(ts);
  while (ts.accept(";")) m = MorExpr::compose(parse_sum(ts), m);
  return m;
}

ObjExpr sum_of(const std::vector<Word>& words, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return ObjExpr::zero();
  ObjExpr e = embed(words[lo]);
  for (std::size_t i = lo + 1; i < hi; ++i) e = ObjExpr::sum(e, embed(words[i]));
  return e;
}

}  // namespace

MorExpr parse_mor_expr(std::string_view text) {
  detail::TokenStream ts(text);
  MorExpr m = parse_seq(ts);
  if (!ts.at_end()) ts.fail("trailing input");
  return m;
}

MorExpr delta_chain(std::size_t p, std::size_t q, const std::vector<Word>& left,
                    const std::vector<Word>& right) {
  if (left.size() != p || right.size() != q)
    throw Error(ErrorKind::Arity, "delta_chain: word lists do not match p, q");
  if (p == 0) return MorExpr::lann(sum_of(right, 0, q));
  if (p == 1) {
    const ObjExpr a = embed(left[0]);
    if (q == 0) return MorExpr::rann(a);
    if (q == 1) return MorExpr::id(ObjExpr::prod(a, embed(right[0])));
    std::vector<Word> init(right.begin(), right.end() - 1);
    MorExpr rest = delta_chain(1, q - 1, left, init);
    MorExpr last = MorExpr::id(ObjExpr::prod(a, embed(right.back())));
    return MorExpr::compose(MorExpr::sum(rest, last),
                            MorExpr::delta_l(a, sum_of(right, 0, q - 1), embed(right.back())));
  }
  std::vector<Word> init(left.begin(), left.end() - 1);
  MorExpr rest = delta_chain(p - 1, q, init, right);
  MorExpr last = delta_chain(1, q, {left.back()}, right);
  return MorExpr::compose(
      MorExpr::sum(rest, last),
      MorExpr::delta_r(sum_of(left, 0, p - 1), embed(left.back()), sum_of(right, 0, q)));
}

MorExpr normalization_morphism(const ObjExpr& e) {
  switch (e.kind()) {
    case ObjExpr::Kind::Zero:
    case ObjExpr::Kind::One:
    case ObjExpr::Kind::Gen: return MorExpr::id(e);
    case ObjExpr::Kind::Sum:
      return MorExpr::sum(normalization_morphism(e.lhs()), normalization_morphism(e.rhs()));
    case ObjExpr::Kind::Prod: {
      NormalForm a = normalize(e.lhs());
      NormalForm b = normalize(e.rhs());
      return MorExpr::compose(
          delta_chain(a.size(), b.size(), a.summands, b.summands),
          MorExpr::prod(normalization_morphism(e.lhs()), normalization_morphism(e.rhs())));
    }
  }
  return MorExpr::id(e);
}

std::size_t count_distributors(const MorExpr& m) {
  std::size_t n = (m.kind() == MorExpr::Kind::DeltaL || m.kind() == MorExpr::Kind::DeltaR) ? 1 : 0;
  for (const MorExpr& c : m.children()) n += count_distributors(c);
  return n;
}

}  // namespace rig
