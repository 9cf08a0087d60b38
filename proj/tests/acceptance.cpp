#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "figures.hpp"
#include "rig/algebra.hpp"
#include "rig/coherence.hpp"
#include "rig/equiv.hpp"
#include "rig/error.hpp"
#include "rig/eval.hpp"
#include "rig/io.hpp"
#include "rig/render.hpp"
#include "support.hpp"

using namespace rig;
using rig::testing::gen_of;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

SheetDiagram gen(const char* name, const NormalizedSignature& sig) {
  return generator(gen_of({GammaEntry::morphism(name)}), sig);
}

bool tables_agree(const SheetDiagram& a, const SheetDiagram& b, const NormalizedSignature& sig, std::uint64_t seed,
                  int models) {
  std::mt19937_64 seeds(seed);
  for (int k = 0; k < models; ++k)
    if (!rig::testing::same_semantics(a, b, sig, random_model(sig, seeds(), 3))) return false;
  return true;
}

// Monomials of an expression by brute-force distribution.
std::vector<Word> expand(const ObjExpr& e) {
  switch (e.kind()) {
    case ObjExpr::Kind::Zero: return {};
    case ObjExpr::Kind::One: return {Word{}};
    case ObjExpr::Kind::Gen: return {Word{e.name()}};
    case ObjExpr::Kind::Sum: {
      auto a = expand(e.lhs()), b = expand(e.rhs());
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case ObjExpr::Kind::Prod: {
      std::vector<Word> out;
      for (const Word& x : expand(e.lhs()))
        for (const Word& y : expand(e.rhs())) {
          Word w = x;
          w.insert(w.end(), y.begin(), y.end());
          out.push_back(w);
        }
      return out;
    }
  }
  return {};
}

ObjExpr random_expr(std::mt19937_64& rng, int depth) {
  const char* names[] = {"A", "B", "C", "D"};
  switch (depth <= 0 ? rng() % 3 : rng() % 5) {
    case 0: return ObjExpr::gen(names[rng() % 4]);
    case 1: return rng() % 3 ? ObjExpr::gen(names[rng() % 4]) : ObjExpr::one();
    case 2: return rng() % 4 ? ObjExpr::gen(names[rng() % 4]) : ObjExpr::zero();
    case 3: return ObjExpr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return ObjExpr::prod(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

Outcome ac1() {
  Outcome o;
  NormalForm want{{"A", "C"}, {"A", "D"}, {"B", "C"}, {"B", "D"}};
  if (normalize(parse_obj_expr("(A + B)*(C + D)")) != want) o.fail("worked example");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000 && o.pass; ++i) {
    ObjExpr a = random_expr(rng, 3), b = random_expr(rng, 3), c = random_expr(rng, 3);
    NormalForm lhs = normalize(ObjExpr::prod(a, embed(normalize(ObjExpr::prod(b, c)))));
    NormalForm rhs = normalize(ObjExpr::prod(embed(normalize(ObjExpr::prod(a, b))), c));
    if (lhs != rhs) o.fail("associativity at triple " + std::to_string(i));
    if (lhs.summands != expand(ObjExpr::prod(a, ObjExpr::prod(b, c)))) o.fail("expansion oracle at " + std::to_string(i));
  }
  if (o.pass) o.detail = "worked example and 10000 random triples";
  return o;
}

Outcome ac2() {
  Outcome o;
  NormalizedSignature sig = rig::testing::worked_signature();
  GammaGenerator g = gen_of({GammaEntry::morphism("f"), GammaEntry::identity({"C"}), GammaEntry::morphism("g")});
  NormalForm dom{{"A", "C", "B", "D"}, {"A", "B", "C", "B", "D"}};
  NormalForm cod{{"C", "C", "A"}, {"C", "C", "D"}};
  if (gamma_dom(g, sig) != dom) o.fail("domain " + to_string(gamma_dom(g, sig)));
  if (gamma_cod(g, sig) != cod) o.fail("codomain " + to_string(gamma_cod(g, sig)));
  if (o.pass) o.detail = to_string(dom) + " -> " + to_string(cod);
  return o;
}

Outcome ac3() {
  Outcome o;
  SheetDiagram d = parse_diagram(rig::testing::kSeamDocument);
  if (serialize_diagram(d) != rig::testing::kSeamDocument) o.fail("round trip");
  TypedDiagram t = validate(rig::testing::labeled_seam_document(), rig::testing::seam_signature());
  if (d.slices.size() != 2) o.fail("slice count");
  const Seam& s0 = std::get<Seam>(d.slices[0]);
  const Seam& s1 = std::get<Seam>(d.slices[1]);
  using V = std::vector<std::size_t>;
  if (s0.nodes.size() != 1 || s0.nodes[0].inputs != V{1} || s0.nodes[0].outputs != V{1, 1}) o.fail("first seam");
  if (s1.nodes.size() != 1 || s1.nodes[0].inputs != V{2, 2} || s1.nodes[0].outputs != V{1, 1}) o.fail("second seam");
  if (t.heights.size() != 3) o.fail("heights");
  if (o.pass) o.detail = "parse, validate, byte round trip, seam counts";
  return o;
}

// Random typed morphism expressions over the small signature's generators.
struct Typed {
  MorExpr m;
  ObjExpr dom, cod;
};

Typed random_mor(std::mt19937_64& rng, const NormalizedSignature& sig, int depth) {
  const auto& names = sig.morphism_names();
  auto leaf = [&]() -> Typed {
    if (rng() % 4 == 0) {
      ObjExpr x = ObjExpr::gen(sig.objects()[rng() % sig.objects().size()]);
      return {MorExpr::id(x), x, x};
    }
    const std::string& f = names[rng() % names.size()];
    return {MorExpr::gen(f), embed(sig.at(f).dom), embed(sig.at(f).cod)};
  };
  if (depth <= 0) return leaf();
  Typed a = random_mor(rng, sig, depth - 1), b = random_mor(rng, sig, depth - 1);
  switch (rng() % 3) {
    case 0: return {MorExpr::sum(a.m, b.m), ObjExpr::sum(a.dom, b.dom), ObjExpr::sum(a.cod, b.cod)};
    case 1: return {MorExpr::prod(a.m, b.m), ObjExpr::prod(a.dom, b.dom), ObjExpr::prod(a.cod, b.cod)};
    default: return leaf();
  }
}

Outcome ac4() {
  Outcome o;
  NormalizedSignature sig = rig::testing::small_signature();
  rig::testing::DiagramSampler sampler(sig, 4, 4);
  std::mt19937_64 rng(4);
  std::size_t equivalent = 0;
  for (int trial = 0; trial < 200 && o.pass; ++trial) {
    const std::string at = " (pair " + std::to_string(trial) + ")";
    SheetDiagram d1 = sampler.sample(rng, 1 + rng() % 3);
    TypedDiagram t1 = validate(d1, sig);
    SheetDiagram d2 = sampler.sample(rng, t1.codomain(), 1 + rng() % 3);
    TypedDiagram t2 = validate(d2, sig);
    SheetDiagram d3 = sampler.sample(rng, t2.codomain(), 1 + rng() % 2);
    SheetDiagram e = sampler.sample(rng, 1 + rng() % 2);

    if (compose(identity(t1.domain()), d1, sig) != d1 || compose(d1, identity(t1.codomain()), sig) != d1)
      o.fail("identity law" + at);
    if (compose(compose(d1, d2, sig), d3, sig) != compose(d1, compose(d2, d3, sig), sig)) o.fail("associativity" + at);
    if (sum(sum(d1, e), d2) != sum(d1, sum(e, d2)) || sum(d1, SheetDiagram{}) != d1 || sum(SheetDiagram{}, d1) != d1)
      o.fail("sum laws" + at);

    // Interpretation preserves composition, sum and tensor.
    EvalModel m = random_model(sig, rng(), 3);
    FunctionTable a = eval_diagram(t1, sig, m), b = eval_diagram(t2, sig, m);
    ObjectSpace mid(t1.codomain(), m);
    FunctionTable comp = eval_diagram(validate(compose(d1, d2, sig), sig), sig, m);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (comp[i] != b[mid.index(a[i])]) o.fail("interpretation of composition" + at);
    TypedDiagram te = validate(e, sig);
    FunctionTable c = eval_diagram(te, sig, m);
    FunctionTable s = eval_diagram(validate(sum(d1, e), sig), sig, m);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (s[i] != a[i]) o.fail("interpretation of sum" + at);
    for (std::size_t i = 0; i < c.size(); ++i) {
      Element want = c[i];
      want.summand += t1.codomain().size();
      if (s[a.size() + i] != want) o.fail("interpretation of sum" + at);
    }
    TypedDiagram tt = validate(tensor(d1, e, sig), sig);
    FunctionTable t = eval_diagram(tt, sig, m);
    ObjectSpace prod(tt.domain(), m), dom1(t1.domain(), m), de(te.domain(), m);
    const std::size_t nc = te.domain().size(), nd = te.codomain().size();
    for (std::size_t i = 0; i < prod.size(); ++i) {
      Element x = prod.element(i);
      std::size_t ia = x.summand / nc, ic = x.summand % nc, la = t1.domain()[ia].size();
      Element xa{ia, {x.tokens.begin(), x.tokens.begin() + la}}, xc{ic, {x.tokens.begin() + la, x.tokens.end()}};
      Element ya = a[dom1.index(xa)], yc = c[de.index(xc)];
      Element want{ya.summand * nd + yc.summand, ya.tokens};
      want.tokens.insert(want.tokens.end(), yc.tokens.begin(), yc.tokens.end());
      if (t[i] != want) o.fail("interpretation of tensor" + at);
    }

    // Compilation commutes with the operations.
    Typed m1 = random_mor(rng, sig, 2), m2 = random_mor(rng, sig, 2);
    if (compile(MorExpr::sum(m1.m, m2.m), sig) != sum(compile(m1.m, sig), compile(m2.m, sig)))
      o.fail("compile of sum" + at);
    if (compile(MorExpr::prod(m1.m, m2.m), sig) != tensor(compile(m1.m, sig), compile(m2.m, sig), sig))
      o.fail("compile of product" + at);
    MorExpr swapped = MorExpr::compose(MorExpr::sym(m1.cod, m2.cod), MorExpr::sum(m1.m, m2.m));
    if (compile(swapped, sig) !=
        compose(compile(MorExpr::sum(m1.m, m2.m), sig), compile(MorExpr::sym(m1.cod, m2.cod), sig), sig))
      o.fail("compile of composite" + at);

    // Both tensor orderings.
    SheetDiagram f = sampler.sample(rng, 1 + rng() % 2), g = sampler.sample(rng, 1 + rng() % 2);
    SheetDiagram lhs = tensor(f, g, sig), rhs = tensor_f_first(f, g, sig);
    if (!tables_agree(lhs, rhs, sig, rng(), 5)) o.fail("tensor orderings differ in a model" + at);
    EquivVerdict v = decide_equiv(lhs, rhs, sig);
    if (v.kind != EquivVerdict::Kind::Equivalent) {
      o.fail("tensor orderings not found equivalent: " + v.reason + at);
    } else {
      ++equivalent;
      if (!replay(v.trace, lhs, rhs, sig)) o.fail("trace does not replay" + at);
    }
  }
  if (o.pass) o.detail = "200 pairs, " + std::to_string(equivalent) + " tensor orderings Equivalent";
  return o;
}

Outcome ac5() {
  Outcome o;
  NormalizedSignature sig = rig::testing::small_signature();
  rig::testing::DiagramSampler sampler(sig, 4, 4);
  std::mt19937_64 rng(5);
  std::size_t done = 0;
  std::map<std::string, std::size_t> kinds;
  while (done < 1000 && o.pass) {
    SheetDiagram d = sampler.sample(rng, 2 + rng() % 6);
    TypedDiagram t = validate(d, sig);
    std::vector<std::function<SheetDiagram()>> moves;
    std::vector<const char*> names;
    for (std::size_t k = 0; k + 1 < d.slices.size(); ++k)
      if (exchangeable(d, k)) {
        moves.push_back([&, k] { return exchange(d, k); });
        names.push_back("exchange");
      }
    for (const Move& m : merge_sites(d, sig)) {
      moves.push_back([&, m] { return merge(d, m, sig); });
      names.push_back("merge");
    }
    for (std::size_t k = 0; k < d.slices.size(); ++k) {
      if (!t.seams[k]) continue;
      const auto& e = t.seams[k]->generator.entries;
      std::size_t seen = 0;
      for (std::size_t split = 1; split < e.size(); ++split) {
        seen += e[split - 1].is_morphism();
        bool after = false;
        for (std::size_t j = split; j < e.size(); ++j) after = after || e[j].is_morphism();
        if (seen == 0 || !after) continue;
        for (TensorOrder order : {TensorOrder::GFirst, TensorOrder::FFirst}) {
          moves.push_back([&, k, split, order] { return explode(d, k, split, sig, order); });
          names.push_back("explode");
        }
      }
    }
    if (moves.empty()) continue;
    std::size_t pick = rng() % moves.size();
    SheetDiagram after = moves[pick]();
    ++kinds[names[pick]];
    if (!tables_agree(d, after, sig, rng(), 3)) o.fail(std::string(names[pick]) + " changed evaluation");
    ++done;
  }
  if (o.pass) {
    o.detail = std::to_string(done) + " moves:";
    for (const auto& [k, n] : kinds) o.detail += " " + k + "=" + std::to_string(n);
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  NormalizedSignature sig = rig::testing::sig_from("objects: [A, B, C, D]\nmorphisms: {}\n");
  CoherenceReport r = check_all_axioms(sig, 500, 6);
  if (!r.ok()) o.fail("axiom failure:\n" + r.failures.front());
  std::size_t paths = 0;
  for (const char* text : {"A * (B + C)", "(A + B) * (C + D)", "A * (B * (C + D))", "(A + B + C) * D",
                           "((A + B) * C) * D", "A + B * (C + D)", "(A + O) * (B + I)", "I * (A + B) + O * C"}) {
    PathReport p = check_structural_paths(parse_obj_expr(text), 6, sig);
    paths += p.paths;
    if (!p.counterexamples.empty()) o.fail(std::string("structural paths from ") + text + ": " + p.counterexamples[0]);
  }
  if (o.pass) o.detail = std::to_string(r.checks) + " axiom instances, " + std::to_string(paths) + " structural paths";
  return o;
}

Outcome ac7() {
  Outcome o;
  NormalizedSignature empty;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 6 && o.pass; ++n) {
    // Reference diagram for every permutation, keyed by the oracle's image.
    std::map<std::vector<std::size_t>, SheetDiagram> refs;
    std::vector<std::pair<SheetDiagram, std::vector<std::size_t>>> all;
    std::function<void(SheetDiagram&, std::vector<std::size_t>&, std::size_t)> walk =
        [&](SheetDiagram& d, std::vector<std::size_t>& at, std::size_t left) {
          // at[k] is the original index of the sheet now in position k.
          std::vector<std::size_t> perm(n);
          for (std::size_t k = 0; k < n; ++k) perm[at[k]] = k;
          refs.try_emplace(perm, d);
          all.push_back({d, perm});
          if (left == 0) return;
          for (std::size_t k = 0; k + 1 < n; ++k) {
            d.slices.push_back(Swap{k});
            std::swap(at[k], at[k + 1]);
            walk(d, at, left - 1);
            std::swap(at[k], at[k + 1]);
            d.slices.pop_back();
          }
        };
    SheetDiagram d = identity(NormalForm(std::vector<Word>(n)));
    std::vector<std::size_t> at(n);
    for (std::size_t k = 0; k < n; ++k) at[k] = k;
    walk(d, at, 8);

    std::vector<std::vector<std::size_t>> keys;
    for (const auto& [p, _] : refs) keys.push_back(p);
    for (std::size_t i = 0; i < all.size() && o.pass; ++i) {
      const auto& [diagram, perm] = all[i];
      if (permutation_of(diagram, empty) != perm) o.fail("permutation_of disagrees with the oracle");
      auto same = decide_equiv(diagram, refs.at(perm), empty, {.models = 1, .extra_models = 0});
      if (same.kind != EquivVerdict::Kind::Equivalent) o.fail("equal permutations not Equivalent");
      if (keys.size() > 1) {
        std::size_t idx = std::find(keys.begin(), keys.end(), perm) - keys.begin();
        const auto& other = keys[(idx + 1 + i % (keys.size() - 1)) % keys.size()];
        auto diff = decide_equiv(diagram, refs.at(other), empty, {.models = 1, .extra_models = 0});
        if (diff.kind != EquivVerdict::Kind::Distinct) o.fail("different permutations not Distinct");
      }
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " swap words on up to 6 sheets";
  return o;
}

// Exhaustive closure of a graph under explosion and merge moves.
std::string closure_key(const OpenGraph& start, const NormalizedSignature& sig,
                        std::map<std::string, std::string>& memo) {
  std::string k0 = canonical_form(start);
  if (auto it = memo.find(k0); it != memo.end()) return it->second;
  std::map<std::string, OpenGraph> seen{{k0, canonicalize(start)}};
  std::vector<std::string> todo{k0};
  while (!todo.empty()) {
    OpenGraph g = seen.at(todo.back());
    todo.pop_back();
    std::vector<Move> moves = explosion_moves(g);
    for (Move& m : merge_moves(g, sig)) moves.push_back(m);
    for (const Move& m : moves) {
      OpenGraph h = canonicalize(apply_move(g, m, sig));
      std::string k = canonical_form(h);
      if (seen.emplace(k, h).second) todo.push_back(k);
    }
  }
  const std::string least = seen.begin()->first;
  for (const auto& [k, _] : seen) memo[k] = least;
  return least;
}

struct Family {
  const char* sig;
  const char* dom;
  std::size_t max_sheets;
};

Outcome ac8() {
  Outcome o;
  const Family families[] = {
      {"objects: [A]\nmorphisms:\n  f: { dom: \"A\", cod: \"A\" }\n  g: { dom: \"A\", cod: \"A + A\" }\n", "A", 3},
      {"objects: [A]\nmorphisms:\n  f: { dom: \"A\", cod: \"A\" }\n  g: { dom: \"A*A\", cod: \"A\" }\n", "A*A", 3},
      {"objects: [A]\nmorphisms:\n  f: { dom: \"A\", cod: \"A\" }\n  g: { dom: \"A\", cod: \"A + A\" }\n", "A*A", 1},
  };
  std::size_t diagrams = 0, classes = 0, equivalent = 0, distinct = 0, unknown = 0;
  for (const Family& fam : families) {
    NormalizedSignature sig = rig::testing::sig_from(fam.sig);
    rig::testing::DiagramSampler sampler(sig, fam.max_sheets, 4);
    std::vector<SheetDiagram> all;
    std::function<void(SheetDiagram&, const NormalForm&)> walk = [&](SheetDiagram& d, const NormalForm& cur) {
      all.push_back(d);
      if (d.slices.size() == 6) return;
      for (const Slice& s : sampler.candidates(cur)) {
        d.slices.push_back(s);
        walk(d, sampler.after(cur, s));
        d.slices.pop_back();
      }
    };
    NormalForm dom = normalize(parse_obj_expr(fam.dom));
    SheetDiagram root = SheetDiagram::from_types(dom);
    walk(root, dom);

    // Oracle classes, grouped by boundary.
    std::map<std::string, std::string> memo;
    std::map<NormalForm, std::map<std::string, std::size_t>> reps;
    std::vector<std::pair<NormalForm, std::string>> cls(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      TypedDiagram t = validate(all[i], sig);
      std::string key = closure_key(to_open_graph(t), sig, memo);
      cls[i] = {t.codomain(), key};
      reps[t.codomain()].try_emplace(key, i);
    }
    for (const auto& [_, m] : reps) classes += m.size();

    for (std::size_t i = 0; i < all.size() && o.pass; ++i) {
      const auto& [cod, key] = cls[i];
      const auto& group = reps.at(cod);
      std::vector<std::size_t> partners{group.at(key)};
      if (group.size() > 1) {
        auto it = group.find(key);
        std::size_t skip = 1 + i % (group.size() - 1);
        for (std::size_t s = 0; s < skip; ++s)
          if (++it == group.end()) it = group.begin();
        partners.push_back(it->second);
      }
      for (std::size_t j : partners) {
        bool same = cls[j].second == key;
        EquivVerdict v = decide_equiv(all[i], all[j], sig);
        const std::string at = " at diagram " + std::to_string(diagrams + i) + " vs " + std::to_string(diagrams + j);
        switch (v.kind) {
          case EquivVerdict::Kind::Equivalent:
            ++equivalent;
            if (!same) o.fail("false Equivalent" + at);
            break;
          case EquivVerdict::Kind::Distinct:
            ++distinct;
            if (same) o.fail("false Distinct" + at);
            if (v.witness && !check_witness(*v.witness, all[i], all[j], sig)) o.fail("bad witness" + at);
            break;
          case EquivVerdict::Kind::Unknown:
            ++unknown;
            o.fail("Unknown verdict (" + v.reason + ")" + at);
            break;
        }
      }
    }
    diagrams += all.size();
  }
  if (o.pass)
    o.detail = std::to_string(diagrams) + " diagrams in " + std::to_string(classes) + " classes; " +
               std::to_string(equivalent) + " Equivalent, " + std::to_string(distinct) + " Distinct, " +
               std::to_string(unknown) + " Unknown";
  return o;
}

std::size_t count_tag(const std::string& svg, const std::string& tag) {
  std::size_t n = 0;
  for (std::size_t at = svg.find("<" + tag + " "); at != std::string::npos; at = svg.find("<" + tag + " ", at + 1)) ++n;
  return n;
}

Outcome ac9() {
  Outcome o;
  for (const auto& fig : rig::testing::figures()) {
    std::ifstream in(std::string(RIG_GOLDEN_DIR) + "/" + fig.name + ".svg");
    std::stringstream buf;
    buf << in.rdbuf();
    for (int run = 0; run < 3; ++run)
      if (render_svg(validate(fig.diagram, fig.sig)) != buf.str()) o.fail("golden mismatch for " + fig.name);
  }
  NormalizedSignature sig = rig::testing::small_signature();
  rig::testing::DiagramSampler sampler(sig);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    SheetDiagram d = sampler.sample(rng, rng() % 10);
    TypedDiagram t = validate(d, sig);
    std::string svg = render_svg(t);
    std::size_t nodes = 0, seams = 0, sheets = 0, wires = 0;
    for (std::size_t s = 0; s < d.slices.size(); ++s) {
      for (const Word& w : t.heights[s].summands) wires += w.size();
      sheets += t.heights[s].size();
      if (const Seam* seam = std::get_if<Seam>(&d.slices[s])) {
        nodes += seam->nodes.size();
        seams += !(seam->inputs == 1 && seam->outputs == 1);
        sheets += seam->outputs;
        for (std::size_t k = 0; k < seam->outputs; ++k) wires += t.heights[s + 1][seam->offset + k].size();
      }
    }
    if (d.slices.empty()) {
      sheets = t.domain().size();
      for (const Word& w : t.domain().summands) wires += w.size();
    }
    if (count_tag(svg, "circle") != nodes || count_tag(svg, "line") != seams || count_tag(svg, "polygon") != sheets ||
        count_tag(svg, "polyline") != wires)
      o.fail("element counts on random diagram " + std::to_string(i));
  }
  if (o.pass) o.detail = "5 goldens stable over 3 runs, 100 random diagrams counted";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%.1fs) %s\n", name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
