#include "rig/algebra.hpp"

#include <numeric>

#include "rig/error.hpp"

namespace rig {

namespace {

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

/// Composition when the caller already knows the boundaries agree.
SheetDiagram stack(SheetDiagram d1, const SheetDiagram& d2) {
  d1.slices.insert(d1.slices.end(), d2.slices.begin(), d2.slices.end());
  return d1;
}

SheetDiagram with_inputs(SheetDiagram d, const NormalForm& nf) {
  d.inputs.clear();
  for (const Word& w : nf.summands) d.inputs.push_back({w.size(), w});
  return d;
}

}  // namespace

SheetDiagram identity(const NormalForm& nf) { return SheetDiagram::from_types(nf); }

SheetDiagram generator(const GammaGenerator& g, const NormalizedSignature& sig) {
  GammaGenerator c = GammaGenerator::canonical(g.entries);
  SheetDiagram d = SheetDiagram::from_types(gamma_dom(c, sig));
  if (c.entries.empty()) return d;
  d.slices.push_back(make_seam(c, sig, 0));
  return d;
}

SheetDiagram compose(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig) {
  NormalForm cod = validate(d1, sig).codomain();
  NormalForm dom = validate(d2, sig).domain();
  if (cod != dom)
    throw Error(ErrorKind::BoundaryMismatch,
                "codomain " + to_string(cod) + " of the first diagram differs from domain " +
                    to_string(dom) + " of the second");
  return stack(d1, d2);
}

SheetDiagram sum(const SheetDiagram& d1, const SheetDiagram& d2) {
  SheetDiagram d = d1;
  const std::size_t shift = output_sheet_count(d1);
  d.inputs.insert(d.inputs.end(), d2.inputs.begin(), d2.inputs.end());
  for (Slice s : d2.slices) {
    std::visit([&](auto& x) { x.offset += shift; }, s);
    d.slices.push_back(std::move(s));
  }
  return d;
}

SheetDiagram whisker_left(const Word& w, const SheetDiagram& d) {
  if (w.empty()) return d;
  SheetDiagram out = d;
  for (InputSheet& s : out.inputs) {
    s.wires += w.size();
    s.labels.insert(s.labels.begin(), w.begin(), w.end());
  }
  for (Slice& s : out.slices) {
    Seam* seam = std::get_if<Seam>(&s);
    if (!seam) continue;
    for (SeamNode& n : seam->nodes) n.offset += w.size();
    if (seam->inputs == 0) seam->passthrough.insert(seam->passthrough.begin(), w.begin(), w.end());
  }
  return out;
}

SheetDiagram whisker_right(const SheetDiagram& d, const Word& w) {
  if (w.empty()) return d;
  SheetDiagram out = d;
  for (InputSheet& s : out.inputs) {
    s.wires += w.size();
    s.labels.insert(s.labels.end(), w.begin(), w.end());
  }
  for (Slice& s : out.slices) {
    Seam* seam = std::get_if<Seam>(&s);
    if (seam && seam->inputs == 0) seam->passthrough.insert(seam->passthrough.end(), w.begin(), w.end());
  }
  return out;
}

SheetDiagram permutation_diagram(const std::vector<Word>& sheets, const std::vector<std::size_t>& target) {
  if (sheets.size() != target.size())
    throw Error(ErrorKind::Arity, "permutation size differs from the sheet count");
  SheetDiagram d = SheetDiagram::from_types(NormalForm(sheets));
  std::vector<std::size_t> order(sheets.size());
  std::iota(order.begin(), order.end(), 0);
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
      if (target[order[k]] > target[order[k + 1]]) {
        std::swap(order[k], order[k + 1]);
        d.slices.push_back(Swap{k});
        moved = true;
      }
  }
  return d;
}

SheetDiagram reorder(std::size_t p, std::size_t q, const std::vector<std::vector<Word>>& grid) {
  std::vector<Word> sheets;
  std::vector<std::size_t> target;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      sheets.push_back(grid.at(i).at(j));
      target.push_back(j * p + i);
    }
  return permutation_diagram(sheets, target);
}

namespace {

std::vector<std::vector<Word>> grid_of(const NormalForm& rows, const NormalForm& cols, bool row_first) {
  std::vector<std::vector<Word>> g;
  for (const Word& r : rows.summands) {
    g.emplace_back();
    for (const Word& c : cols.summands) g.back().push_back(row_first ? concat(r, c) : concat(c, r));
  }
  return g;
}

SheetDiagram sum_all(const std::vector<SheetDiagram>& parts) {
  SheetDiagram d;
  for (const SheetDiagram& p : parts) d = sum(d, p);
  return d;
}

}  // namespace

SheetDiagram tensor(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig) {
  TypedDiagram t1 = validate(d1, sig), t2 = validate(d2, sig);
  const NormalForm &A = t1.domain(), &B = t1.codomain(), &C = t2.domain(), &D = t2.codomain();
  std::vector<SheetDiagram> parts;
  for (const Word& a : A.summands) parts.push_back(whisker_left(a, d2));
  SheetDiagram first = with_inputs(sum_all(parts), nf_product(A, C));
  SheetDiagram e_ad = reorder(A.size(), D.size(), grid_of(A, D, true));
  parts.clear();
  for (const Word& l : D.summands) parts.push_back(whisker_right(d1, l));
  SheetDiagram middle = sum_all(parts);
  SheetDiagram e_bd = reorder(D.size(), B.size(), grid_of(D, B, false));
  return with_inputs(stack(stack(stack(first, e_ad), middle), e_bd), nf_product(A, C));
}

SheetDiagram tensor_f_first(const SheetDiagram& d1, const SheetDiagram& d2,
                            const NormalizedSignature& sig) {
  TypedDiagram t1 = validate(d1, sig), t2 = validate(d2, sig);
  const NormalForm &A = t1.domain(), &B = t1.codomain(), &C = t2.domain();
  SheetDiagram e_ac = reorder(A.size(), C.size(), grid_of(A, C, true));
  std::vector<SheetDiagram> parts;
  for (const Word& k : C.summands) parts.push_back(whisker_right(d1, k));
  SheetDiagram middle = sum_all(parts);
  SheetDiagram e_bc = reorder(C.size(), B.size(), grid_of(C, B, false));
  parts.clear();
  for (const Word& b : B.summands) parts.push_back(whisker_left(b, d2));
  SheetDiagram last = sum_all(parts);
  return with_inputs(stack(stack(stack(e_ac, middle), e_bc), last), nf_product(A, C));
}

GammaGenerator tensor_generators(const GammaGenerator& g1, const GammaGenerator& g2) {
  std::vector<GammaEntry> e = g1.entries;
  e.insert(e.end(), g2.entries.begin(), g2.entries.end());
  return GammaGenerator::canonical(std::move(e));
}

namespace {

using Type = std::pair<NormalForm, NormalForm>;

Type structural_type(const MorExpr& m) {
  const auto& o = m.objects();
  auto N = [](const ObjExpr& e) { return normalize(e); };
  using K = MorExpr::Kind;
  switch (m.kind()) {
    case K::Sym: return {nf_sum(N(o[0]), N(o[1])), nf_sum(N(o[1]), N(o[0]))};
    case K::DeltaL:
      return {N(ObjExpr::prod(o[0], ObjExpr::sum(o[1], o[2]))),
              N(ObjExpr::sum(ObjExpr::prod(o[0], o[1]), ObjExpr::prod(o[0], o[2])))};
    case K::DeltaR:
      return {N(ObjExpr::prod(ObjExpr::sum(o[0], o[1]), o[2])),
              N(ObjExpr::sum(ObjExpr::prod(o[0], o[2]), ObjExpr::prod(o[1], o[2])))};
    case K::LAnn:
    case K::RAnn: return {{}, {}};
    case K::AssocMul: {
      NormalForm n = N(ObjExpr::prod(o[0], ObjExpr::prod(o[1], o[2])));
      return {n, n};
    }
    case K::AssocAdd: {
      NormalForm n = N(ObjExpr::sum(o[0], ObjExpr::sum(o[1], o[2])));
      return {n, n};
    }
    case K::Id:
    case K::UnitLMul:
    case K::UnitRMul:
    case K::UnitLAdd:
    case K::UnitRAdd: return {N(o[0]), N(o[0])};
    default: break;
  }
  throw Error(ErrorKind::Internal, "not a structural constructor: " + m.to_string());
}

struct Compiled {
  SheetDiagram d;
  NormalForm dom, cod;
};

Compiled compile_rec(const MorExpr& m, const NormalizedSignature& sig, bool build);

SheetDiagram structural_leaf(const MorExpr& m) {
  const auto& o = m.objects();
  using K = MorExpr::Kind;
  auto [dom, cod] = structural_type(m);
  switch (m.kind()) {
    case K::Sym: {
      const std::size_t a = normalize(o[0]).size(), b = normalize(o[1]).size();
      std::vector<std::size_t> target;
      for (std::size_t i = 0; i < a; ++i) target.push_back(b + i);
      for (std::size_t j = 0; j < b; ++j) target.push_back(j);
      return permutation_diagram(dom.summands, target);
    }
    case K::DeltaL: {
      const std::size_t a = normalize(o[0]).size(), b = normalize(o[1]).size(), c = normalize(o[2]).size();
      std::vector<std::size_t> target;
      for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) target.push_back(i * b + j);
        for (std::size_t k = 0; k < c; ++k) target.push_back(a * b + i * c + k);
      }
      return permutation_diagram(dom.summands, target);
    }
    default: return identity(dom);
  }
}

Compiled compile_rec(const MorExpr& m, const NormalizedSignature& sig, bool build) {
  using K = MorExpr::Kind;
  const auto& ch = m.children();
  switch (m.kind()) {
    case K::Gen: {
      const NormalizedMorphism& f = sig.at(m.name());
      Compiled c{{}, f.dom, f.cod};
      if (build) c.d = generator(GammaGenerator{{GammaEntry::morphism(m.name())}}, sig);
      return c;
    }
    case K::Compose: {
      Compiled after = compile_rec(ch[0], sig, build);
      Compiled before = compile_rec(ch[1], sig, build);
      if (before.cod != after.dom)
        throw Error(ErrorKind::TypeError, "in " + m.to_string() + ": " + ch[1].to_string() +
                                              " has codomain " + to_string(before.cod) + " but " +
                                              ch[0].to_string() + " has domain " + to_string(after.dom));
      Compiled c{{}, before.dom, after.cod};
      if (build) c.d = stack(before.d, after.d);
      return c;
    }
    case K::Sum: {
      Compiled a = compile_rec(ch[0], sig, build), b = compile_rec(ch[1], sig, build);
      Compiled c{{}, nf_sum(a.dom, b.dom), nf_sum(a.cod, b.cod)};
      if (build) c.d = sum(a.d, b.d);
      return c;
    }
    case K::Prod: {
      Compiled a = compile_rec(ch[0], sig, build), b = compile_rec(ch[1], sig, build);
      Compiled c{{}, nf_product(a.dom, b.dom), nf_product(a.cod, b.cod)};
      if (build) c.d = tensor(a.d, b.d, sig);
      return c;
    }
    case K::Inverse: {
      if (!ch[0].is_structural())
        throw Error(ErrorKind::TypeError, "inverse of a non-structural morphism: " + ch[0].to_string());
      Compiled inner = compile_rec(ch[0], sig, build);
      Compiled c{{}, inner.cod, inner.dom};
      if (build) c.d = invert_permutation(inner.d, sig);
      return c;
    }
    default: {
      auto [dom, cod] = structural_type(m);
      Compiled c{{}, dom, cod};
      if (build) c.d = structural_leaf(m);
      return c;
    }
  }
}

}  // namespace

std::pair<NormalForm, NormalForm> mor_type(const MorExpr& m, const NormalizedSignature& sig) {
  Compiled c = compile_rec(m, sig, false);
  return {c.dom, c.cod};
}

SheetDiagram structural(const MorExpr& m, const NormalizedSignature& sig) {
  if (!m.is_structural())
    throw Error(ErrorKind::TypeError, "not a structural morphism: " + m.to_string());
  return compile_rec(m, sig, true).d;
}

SheetDiagram compile(const MorExpr& m, const NormalizedSignature& sig) {
  return compile_rec(m, sig, true).d;
}

SheetDiagram invert_permutation(const SheetDiagram& d, const NormalizedSignature& sig) {
  for (const Slice& s : d.slices)
    if (std::holds_alternative<Seam>(s))
      throw Error(ErrorKind::TypeError, "only diagrams made of swaps can be inverted");
  SheetDiagram out = SheetDiagram::from_types(validate(d, sig).codomain());
  out.slices.assign(d.slices.rbegin(), d.slices.rend());
  return out;
}

bool exchangeable(const SheetDiagram& d, std::size_t i) {
  if (i + 1 >= d.slices.size()) return false;
  const std::size_t lo = slice_offset(d.slices[i]), out = slice_arity(d.slices[i]).second;
  const std::size_t hi = slice_offset(d.slices[i + 1]), in = slice_arity(d.slices[i + 1]).first;
  return hi + in <= lo || hi >= lo + out;
}

SheetDiagram exchange(const SheetDiagram& d, std::size_t i) {
  if (!exchangeable(d, i))
    throw Error(ErrorKind::PatternMismatch,
                "slices " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not independent");
  SheetDiagram out = d;
  Slice first = d.slices[i], second = d.slices[i + 1];
  const std::size_t lo = slice_offset(first);
  auto [in1, out1] = slice_arity(first);
  auto [in2, out2] = slice_arity(second);
  const std::size_t hi = slice_offset(second);
  if (hi + in2 <= lo) {
    std::visit([&](auto& x) { x.offset = lo + out2 - in2; }, first);
  } else {
    std::visit([&](auto& x) { x.offset = hi + in1 - out1; }, second);
  }
  out.slices[i] = second;
  out.slices[i + 1] = first;
  return out;
}

}  // namespace rig
