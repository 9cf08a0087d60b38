#include "rig/diagram.hpp"

#include <algorithm>
#include <numeric>

#include "rig/error.hpp"

namespace rig {

SheetDiagram SheetDiagram::from_types(const NormalForm& nf) {
  SheetDiagram d;
  for (const Word& w : nf.summands) d.inputs.push_back({w.size(), w});
  return d;
}

bool SheetDiagram::labeled() const {
  for (const InputSheet& s : inputs)
    if (s.labels.size() != s.wires) return false;
  for (const Slice& s : slices)
    if (const Seam* seam = std::get_if<Seam>(&s))
      for (const SeamNode& n : seam->nodes)
        if (n.label.empty()) return false;
  return true;
}

std::size_t Skeleton::node_count() const {
  std::size_t n = 0;
  for (const SkeletonSlice& s : slices) n += s.kind == SkeletonSlice::Kind::Node;
  return n;
}

namespace {

std::string where(std::size_t slice) { return "slice " + std::to_string(slice); }

std::size_t total(const std::vector<SeamNode>& nodes, bool in, std::size_t sheet) {
  std::size_t n = 0;
  for (const SeamNode& node : nodes) n += in ? node.inputs[sheet] : node.outputs[sheet];
  return n;
}

std::size_t passthrough_count(const Seam& seam, const std::vector<std::size_t>& counts,
                              std::size_t slice) {
  if (seam.inputs == 0) return seam.passthrough.size();
  std::size_t first = counts[seam.offset];
  std::size_t used = total(seam.nodes, true, 0);
  if (used > first)
    throw Error(ErrorKind::ArityMismatch,
                where(slice) + ": nodes consume " + std::to_string(used) +
                    " wires from a sheet with " + std::to_string(first));
  return first - used;
}

void check_shapes(const Seam& seam, std::size_t sheet_count, std::size_t slice) {
  if (seam.offset + seam.inputs > sheet_count)
    throw Error(ErrorKind::OffsetOutOfRange,
                where(slice) + ": seam at offset " + std::to_string(seam.offset) + " consumes " +
                    std::to_string(seam.inputs) + " of " + std::to_string(sheet_count) + " sheets");
  std::size_t prev = 0;
  for (const SeamNode& n : seam.nodes) {
    if (n.inputs.size() != seam.inputs || n.outputs.size() != seam.outputs)
      throw Error(ErrorKind::ArityMismatch,
                  where(slice) + ": node wire lists do not match seam arities " +
                      std::to_string(seam.inputs) + "/" + std::to_string(seam.outputs));
    if (n.offset < prev)
      throw Error(ErrorKind::OffsetOutOfRange, where(slice) + ": node offsets decrease");
    prev = n.offset;
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> wire_counts(const SheetDiagram& d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  for (const InputSheet& s : d.inputs) cur.push_back(s.wires);
  out.push_back(cur);
  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    const Slice& s = d.slices[i];
    if (const Swap* sw = std::get_if<Swap>(&s)) {
      if (sw->offset + 2 > cur.size())
        throw Error(ErrorKind::OffsetOutOfRange, where(i) + ": swap out of range");
      std::swap(cur[sw->offset], cur[sw->offset + 1]);
    } else {
      const Seam& seam = std::get<Seam>(s);
      check_shapes(seam, cur.size(), i);
      std::size_t pass = passthrough_count(seam, cur, i);
      std::vector<std::size_t> outs;
      for (std::size_t k = 0; k < seam.outputs; ++k) outs.push_back(total(seam.nodes, false, k) + pass);
      cur.erase(cur.begin() + seam.offset, cur.begin() + seam.offset + seam.inputs);
      cur.insert(cur.begin() + seam.offset, outs.begin(), outs.end());
    }
    out.push_back(cur);
  }
  return out;
}

std::size_t output_sheet_count(const SheetDiagram& d) {
  std::size_t n = d.inputs.size();
  for (const Slice& s : d.slices) {
    auto [in, out] = slice_arity(s);
    n = n - in + out;
  }
  return n;
}

Seam make_seam(const GammaGenerator& g, const NormalizedSignature& sig, std::size_t offset) {
  GammaBoundary dom = gamma_boundary(g, sig, Side::Dom);
  GammaBoundary cod = gamma_boundary(g, sig, Side::Cod);
  Seam seam;
  seam.offset = offset;
  seam.inputs = dom.nf.size();
  seam.outputs = cod.nf.size();
  std::size_t pass = 0;
  for (std::size_t i = 0; i < g.entries.size(); ++i) {
    const GammaEntry& e = g.entries[i];
    if (!e.is_morphism()) {
      pass += e.word.size();
      if (seam.inputs == 0) seam.passthrough.insert(seam.passthrough.end(), e.word.begin(), e.word.end());
      continue;
    }
    const NormalizedMorphism& m = sig.at(e.name);
    SeamNode node;
    node.offset = pass;
    node.label = e.name;
    for (std::size_t s = 0; s < dom.nf.size(); ++s) node.inputs.push_back(m.dom[dom.choices[s][i]].size());
    for (std::size_t s = 0; s < cod.nf.size(); ++s) node.outputs.push_back(m.cod[cod.choices[s][i]].size());
    seam.nodes.push_back(std::move(node));
  }
  return seam;
}

TypedDiagram validate(const SheetDiagram& d, const NormalizedSignature& sig) {
  TypedDiagram t;
  t.diagram = d;
  NormalForm cur;
  for (std::size_t i = 0; i < d.inputs.size(); ++i) {
    const InputSheet& s = d.inputs[i];
    if (s.labels.size() != s.wires)
      throw Error(ErrorKind::MissingLabel, "input sheet " + std::to_string(i) + " lacks wire labels");
    for (const std::string& l : s.labels)
      if (!sig.has_object(l))
        throw Error(ErrorKind::UnknownObject, "wire label '" + l + "' is not a declared object");
    cur.summands.push_back(s.labels);
  }
  t.heights.push_back(cur);

  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    const Slice& slice = d.slices[i];
    if (const Swap* sw = std::get_if<Swap>(&slice)) {
      if (sw->offset + 2 > cur.size())
        throw Error(ErrorKind::OffsetOutOfRange,
                    where(i) + ": swap at offset " + std::to_string(sw->offset) + " with " +
                        std::to_string(cur.size()) + " sheets");
      std::swap(cur.summands[sw->offset], cur.summands[sw->offset + 1]);
      t.heights.push_back(cur);
      t.seams.emplace_back();
      continue;
    }
    const Seam& seam = std::get<Seam>(slice);
    check_shapes(seam, cur.size(), i);
    for (const SeamNode& n : seam.nodes) {
      if (n.label.empty()) throw Error(ErrorKind::MissingLabel, where(i) + ": unlabeled node");
      sig.at(n.label);
    }
    std::vector<std::size_t> counts;
    for (const Word& w : cur.summands) counts.push_back(w.size());
    const std::size_t pass = passthrough_count(seam, counts, i);
    for (std::size_t s = 0; s < seam.inputs; ++s)
      if (counts[seam.offset + s] != total(seam.nodes, true, s) + pass)
        throw Error(ErrorKind::ArityMismatch,
                    where(i) + ": input sheet " + std::to_string(s) + " has " +
                        std::to_string(counts[seam.offset + s]) + " wires, nodes and pass-throughs need " +
                        std::to_string(total(seam.nodes, true, s) + pass));
    if (!seam.nodes.empty() && seam.nodes.back().offset > pass)
      throw Error(ErrorKind::OffsetOutOfRange, where(i) + ": node offset exceeds pass-through count");
    if (seam.nodes.empty() && pass == 0)
      throw Error(ErrorKind::TypingViolation, where(i) + ": seam without nodes or wires");

    // Read the pass-through groups off the first input sheet and check they
    // sit at the same places with the same labels on every other one.
    std::vector<Word> groups(seam.nodes.size() + 1);
    {
      std::size_t prev = 0;
      for (std::size_t k = 0; k <= seam.nodes.size(); ++k) {
        std::size_t gsize = (k < seam.nodes.size() ? seam.nodes[k].offset : pass) - prev;
        if (k < seam.nodes.size()) prev = seam.nodes[k].offset;
        groups[k].resize(gsize);
      }
    }
    auto read_groups = [&](const Word& sheet, std::size_t s) {
      std::vector<Word> g(groups.size());
      std::size_t pos = 0;
      for (std::size_t k = 0; k < groups.size(); ++k) {
        g[k].assign(sheet.begin() + pos, sheet.begin() + pos + groups[k].size());
        pos += groups[k].size();
        if (k < seam.nodes.size()) pos += seam.nodes[k].inputs[s];
      }
      return g;
    };
    if (seam.inputs == 0) {
      std::size_t pos = 0;
      for (Word& g : groups) {
        std::copy(seam.passthrough.begin() + pos, seam.passthrough.begin() + pos + g.size(), g.begin());
        pos += g.size();
      }
    } else {
      groups = read_groups(cur[seam.offset], 0);
      for (std::size_t s = 1; s < seam.inputs; ++s)
        if (read_groups(cur[seam.offset + s], s) != groups)
          throw Error(ErrorKind::PassThroughInconsistent,
                      where(i) + ": pass-through wires differ between input sheets 0 and " +
                          std::to_string(s));
    }

    TypedSeam ts;
    std::vector<GammaEntry> entries;
    std::vector<std::optional<std::size_t>> owner;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (!groups[k].empty()) {
        entries.push_back(GammaEntry::identity(groups[k]));
        owner.push_back(std::nullopt);
      }
      if (k < seam.nodes.size()) {
        entries.push_back(GammaEntry::morphism(seam.nodes[k].label));
        owner.push_back(k);
      }
    }
    ts.generator.entries = std::move(entries);
    ts.node_of_entry = std::move(owner);
    ts.dom = gamma_boundary(ts.generator, sig, Side::Dom);
    ts.cod = gamma_boundary(ts.generator, sig, Side::Cod);

    NormalForm in(std::vector<Word>(cur.summands.begin() + seam.offset,
                                    cur.summands.begin() + seam.offset + seam.inputs));
    if (ts.dom.nf != in)
      throw Error(ErrorKind::TypingViolation,
                  where(i) + ": generator " + ts.generator.to_string() + " expects input sheets " +
                      to_string(ts.dom.nf) + ", found " + to_string(in));
    if (ts.cod.nf.size() != seam.outputs)
      throw Error(ErrorKind::ArityMismatch,
                  where(i) + ": generator " + ts.generator.to_string() + " produces " +
                      std::to_string(ts.cod.nf.size()) + " sheets, seam declares " +
                      std::to_string(seam.outputs));
    for (std::size_t e = 0; e < ts.generator.entries.size(); ++e) {
      if (!ts.node_of_entry[e]) continue;
      const SeamNode& node = seam.nodes[*ts.node_of_entry[e]];
      const NormalizedMorphism& m = sig.at(node.label);
      for (std::size_t s = 0; s < seam.inputs; ++s)
        if (node.inputs[s] != m.dom[ts.dom.choices[s][e]].size())
          throw Error(ErrorKind::TypingViolation,
                      where(i) + ": node '" + node.label + "' wires on input sheet " +
                          std::to_string(s) + " do not form a domain summand");
      for (std::size_t s = 0; s < seam.outputs; ++s)
        if (node.outputs[s] != m.cod[ts.cod.choices[s][e]].size())
          throw Error(ErrorKind::TypingViolation,
                      where(i) + ": node '" + node.label + "' wires on output sheet " +
                          std::to_string(s) + " do not form a codomain summand");
    }

    cur.summands.erase(cur.summands.begin() + seam.offset,
                       cur.summands.begin() + seam.offset + seam.inputs);
    cur.summands.insert(cur.summands.begin() + seam.offset, ts.cod.nf.summands.begin(),
                        ts.cod.nf.summands.end());
    t.heights.push_back(cur);
    t.seams.push_back(std::move(ts));
  }
  return t;
}

NormalForm domain(const TypedDiagram& d) { return d.domain(); }
NormalForm codomain(const TypedDiagram& d) { return d.codomain(); }

Skeleton skeleton(const TypedDiagram& d) {
  Skeleton sk;
  sk.dom = d.domain();
  for (std::size_t i = 0; i < d.diagram.slices.size(); ++i) {
    const Slice& s = d.diagram.slices[i];
    SkeletonSlice out;
    out.offset = slice_offset(s);
    auto [in, outs] = slice_arity(s);
    const NormalForm& before = d.heights[i];
    const NormalForm& after = d.heights[i + 1];
    out.dom.summands.assign(before.summands.begin() + out.offset, before.summands.begin() + out.offset + in);
    out.cod.summands.assign(after.summands.begin() + out.offset, after.summands.begin() + out.offset + outs);
    if (d.seams[i]) {
      out.kind = SkeletonSlice::Kind::Node;
      out.label = d.seams[i]->generator;
    } else {
      out.kind = SkeletonSlice::Kind::Symmetry;
    }
    sk.slices.push_back(std::move(out));
  }
  return sk;
}

}  // namespace rig
