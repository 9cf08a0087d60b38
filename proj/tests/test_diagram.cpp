#include <random>

#include "doctest.h"
#include "rig/error.hpp"
#include "figures.hpp"
#include "support.hpp"

using namespace rig;
using rig::testing::gen_of;
using rig::testing::kSeamDocument;
using rig::testing::seam_signature;
using rig::testing::labeled_seam_document;

namespace {

// Slow recomputation of the codomain: replay every seam from its wire
// counts, deriving sheet types from the signature only.
NormalForm slow_codomain(const SheetDiagram& d, const NormalizedSignature& sig) {
  NormalForm cur;
  for (const InputSheet& s : d.inputs) cur.summands.push_back(s.labels);
  for (const Slice& sl : d.slices) {
    if (const Swap* sw = std::get_if<Swap>(&sl)) {
      std::swap(cur.summands[sw->offset], cur.summands[sw->offset + 1]);
      continue;
    }
    const Seam& seam = std::get<Seam>(sl);
    std::vector<GammaEntry> e;
    Word pass;
    if (seam.inputs > 0) {
      const Word& w = cur[seam.offset];
      std::size_t pos = 0, passed = 0;
      for (const SeamNode& n : seam.nodes) {
        std::size_t gap = n.offset - passed;
        e.push_back(GammaEntry::identity(Word(w.begin() + pos, w.begin() + pos + gap)));
        pos += gap + n.inputs[0];
        passed = n.offset;
        e.push_back(GammaEntry::morphism(n.label));
      }
      e.push_back(GammaEntry::identity(Word(w.begin() + pos, w.end())));
    } else {
      std::size_t passed = 0;
      for (const SeamNode& n : seam.nodes) {
        e.push_back(GammaEntry::identity(Word(seam.passthrough.begin() + passed, seam.passthrough.begin() + n.offset)));
        passed = n.offset;
        e.push_back(GammaEntry::morphism(n.label));
      }
      e.push_back(GammaEntry::identity(Word(seam.passthrough.begin() + passed, seam.passthrough.end())));
    }
    NormalForm out = gamma_cod(gen_of(e), sig);
    cur.summands.erase(cur.summands.begin() + seam.offset, cur.summands.begin() + seam.offset + seam.inputs);
    cur.summands.insert(cur.summands.begin() + seam.offset, out.summands.begin(), out.summands.end());
  }
  return cur;
}

ErrorKind kind_of(const SheetDiagram& d, const NormalizedSignature& sig) {
  try {
    validate(d, sig);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("seam document parses with its wire counts") {
  SheetDiagram d = parse_diagram(kSeamDocument);
  REQUIRE(d.inputs.size() == 3);
  CHECK(d.inputs[0].wires == 1);
  CHECK(d.inputs[1].wires == 2);
  CHECK(d.inputs[2].wires == 2);
  REQUIRE(d.slices.size() == 2);
  const Seam& s0 = std::get<Seam>(d.slices[0]);
  const Seam& s1 = std::get<Seam>(d.slices[1]);
  CHECK(s0.offset == 1);
  CHECK(s0.inputs == 1);
  CHECK(s0.outputs == 2);
  CHECK(s0.nodes[0].inputs == std::vector<std::size_t>{1});
  CHECK(s0.nodes[0].outputs == std::vector<std::size_t>{1, 1});
  CHECK(s1.nodes[0].inputs == std::vector<std::size_t>{2, 2});
  CHECK(s1.nodes[0].outputs == std::vector<std::size_t>{1, 1});
  CHECK(serialize_diagram(d) == kSeamDocument);
  CHECK_FALSE(d.labeled());
}

TEST_CASE("seam document validates once labeled") {
  NormalizedSignature sig = seam_signature();
  SheetDiagram d = labeled_seam_document();
  TypedDiagram t = validate(d, sig);
  std::vector<std::size_t> sizes;
  for (const Word& w : t.codomain().summands) sizes.push_back(w.size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 1, 1});
  CHECK(t.seams[0]->generator.to_string() == "[p, 1_X]");
  CHECK(t.seams[1]->generator.to_string() == "[q]");
  CHECK(wire_counts(d).back() == sizes);
  CHECK(parse_diagram(serialize_diagram(d)) == d);
}

TEST_CASE("empty and identity diagrams") {
  NormalizedSignature sig = rig::testing::worked_signature();
  SheetDiagram empty = parse_diagram("inputs: []\n");
  TypedDiagram t = validate(empty, sig);
  CHECK(t.domain().empty());
  CHECK(t.codomain().empty());
  CHECK(serialize_diagram(empty) == "inputs: []\nslices: []\n");
  CHECK(skeleton(t).slices.empty());

  SheetDiagram id = identity(NormalForm{{"A", "B"}, {"C"}});
  CHECK(domain(validate(id, sig)) == NormalForm{{"A", "B"}, {"C"}});
  CHECK(codomain(validate(id, sig)) == NormalForm{{"A", "B"}, {"C"}});
}

TEST_CASE("generator diagrams and skeletons") {
  NormalizedSignature sig = rig::testing::worked_signature();
  SheetDiagram f = generator(gen_of({GammaEntry::morphism("f")}), sig);
  TypedDiagram tf = validate(f, sig);
  CHECK(tf.domain() == NormalForm{{"A"}, {"A", "B"}});
  CHECK(tf.codomain() == NormalForm{{"C"}});

  SheetDiagram fcg = generator(gen_of({GammaEntry::morphism("f"), GammaEntry::identity({"C"}), GammaEntry::morphism("g")}), sig);
  Skeleton sk = skeleton(validate(fcg, sig));
  REQUIRE(sk.slices.size() == 1);
  CHECK(sk.slices[0].kind == SkeletonSlice::Kind::Node);
  CHECK(sk.slices[0].dom.size() == 2);
  CHECK(sk.slices[0].cod.size() == 2);
  const Seam& s = std::get<Seam>(fcg.slices[0]);
  CHECK(s.nodes.size() == 2);
  CHECK(s.nodes[0].offset == 0);
  CHECK(s.nodes[1].offset == 1);
  CHECK(s.nodes[0].inputs == std::vector<std::size_t>{1, 2});
  CHECK(s.nodes[1].inputs == std::vector<std::size_t>{2, 2});
  CHECK(s.nodes[0].outputs == std::vector<std::size_t>{1, 1});
  CHECK(s.nodes[1].outputs == std::vector<std::size_t>{1, 1});

  SheetDiagram sw = identity(NormalForm{{"A"}, {"B"}});
  sw.slices.push_back(Swap{0});
  Skeleton sks = skeleton(validate(sw, sig));
  REQUIRE(sks.slices.size() == 1);
  CHECK(sks.slices[0].kind == SkeletonSlice::Kind::Symmetry);
  CHECK(validate(sw, sig).codomain() == NormalForm{{"B"}, {"A"}});
}

TEST_CASE("validation errors") {
  NormalizedSignature sig = seam_signature();
  SheetDiagram wide = parse_diagram(
      "inputs: [ 1 ]\nlabels: [ [ X ] ]\nslices:\n- offset: 0\n  inputs: 1\n  outputs: 2\n  nodes:\n"
      "  - offset: 0\n    label: p\n    inputs: [ 2 ]\n    outputs: [ 1, 1 ]\n");
  CHECK(kind_of(wide, sig) == ErrorKind::ArityMismatch);

  SheetDiagram off = labeled_seam_document();
  std::get<Seam>(off.slices[1]).offset = 3;
  CHECK(kind_of(off, sig) == ErrorKind::OffsetOutOfRange);

  SheetDiagram unknown = labeled_seam_document();
  std::get<Seam>(unknown.slices[0]).nodes[0].label = "nope";
  CHECK(kind_of(unknown, sig) == ErrorKind::UnknownMorphism);

  SheetDiagram missing = labeled_seam_document();
  std::get<Seam>(missing.slices[0]).nodes[0].label.clear();
  CHECK(kind_of(missing, sig) == ErrorKind::MissingLabel);
  CHECK(kind_of(parse_diagram(kSeamDocument), sig) == ErrorKind::MissingLabel);

  SheetDiagram typing = labeled_seam_document();
  std::get<Seam>(typing.slices[0]).nodes[0].label = "q";
  CHECK(kind_of(typing, sig) == ErrorKind::TypingViolation);

  NormalizedSignature ws = rig::testing::worked_signature();
  SheetDiagram fcg = generator(gen_of({GammaEntry::morphism("f"), GammaEntry::identity({"C"}), GammaEntry::morphism("g")}), ws);
  SheetDiagram inconsistent = fcg;
  inconsistent.inputs[1].labels = {"A", "B", "D", "B", "D"};
  CHECK(kind_of(inconsistent, ws) == ErrorKind::PassThroughInconsistent);

  SheetDiagram moved = fcg;
  std::get<Seam>(moved.slices[0]).nodes[0].inputs = {1, 1};
  std::get<Seam>(moved.slices[0]).nodes[1].inputs = {2, 3};
  CHECK(kind_of(moved, ws) == ErrorKind::PassThroughInconsistent);

  SheetDiagram split = parse_diagram(
      "inputs: [ 2 ]\nlabels: [ [ X, X ] ]\nslices:\n- offset: 0\n  inputs: 1\n  outputs: 4\n  nodes:\n"
      "  - offset: 0\n    label: p\n    inputs: [ 0 ]\n    outputs: [ 1, 1, 1, 1 ]\n"
      "  - offset: 0\n    label: p\n    inputs: [ 2 ]\n    outputs: [ 1, 1, 1, 1 ]\n");
  CHECK(kind_of(split, sig) == ErrorKind::TypingViolation);

  SheetDiagram bad_swap = identity(NormalForm{{"A"}});
  bad_swap.slices.push_back(Swap{0});
  CHECK(kind_of(bad_swap, ws) == ErrorKind::OffsetOutOfRange);

  SheetDiagram invisible = identity(NormalForm{Word{}});
  invisible.slices.push_back(Seam{0, 1, 1, {}, {}});
  CHECK(kind_of(invisible, ws) == ErrorKind::TypingViolation);
}

TEST_CASE("codomain agrees with a slow recomputation") {
  NormalizedSignature sig = rig::testing::small_signature();
  rig::testing::DiagramSampler sampler(sig);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    SheetDiagram d = sampler.sample(rng, 1 + rng() % 10);
    TypedDiagram t = validate(d, sig);
    CHECK(t.codomain() == slow_codomain(d, sig));
    TypedDiagram again = validate(d, sig);
    CHECK(again.heights == t.heights);
    for (std::size_t k = 0; k < t.seams.size(); ++k) {
      if (!t.seams[k]) continue;
      CHECK(gamma_dom(t.seams[k]->generator, sig) == t.seams[k]->dom.nf);
      CHECK(gamma_cod(t.seams[k]->generator, sig) == t.seams[k]->cod.nf);
    }
  }
}

TEST_CASE("serialization round trips") {
  NormalizedSignature sig = rig::testing::small_signature();
  rig::testing::DiagramSampler sampler(sig);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    SheetDiagram d = sampler.sample(rng, 50);
    std::string text = serialize_diagram(d);
    SheetDiagram back = parse_diagram(text);
    CHECK(back == d);
    CHECK(serialize_diagram(back) == text);
  }
}

TEST_CASE("parse errors name the field") {
  auto message = [](const char* text) {
    try {
      parse_diagram(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("inputs: [ 1, 2\n").find("SyntaxError") != std::string::npos);
  CHECK(message("inputs: [ 1, 2\n").find("line") != std::string::npos);
  CHECK(message("slices: []\n").find("inputs") != std::string::npos);
  CHECK(message("inputs: [ x ]\n").find("inputs[0]") != std::string::npos);
  CHECK(message("inputs: [ 1 ]\nslices:\n- offset: 0\n  inputs: 1\n  outputs: 1\n").find("slices[0].nodes") !=
        std::string::npos);
  CHECK(message("inputs: [ 1 ]\nslices:\n- kind: twist\n  offset: 0\n").find("kind") != std::string::npos);
  CHECK(message("inputs: [ 1 ]\nlabels: [ [ X, Y ] ]\n").find("labels[0]") != std::string::npos);
}
