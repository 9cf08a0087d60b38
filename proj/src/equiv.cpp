#include "rig/equiv.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <tuple>

#include "rig/algebra.hpp"
#include "rig/error.hpp"

namespace rig {

std::size_t OpenGraph::morphism_count() const {
  std::size_t n = 0;
  for (const Node& v : nodes) n += v.label.morphism_count();
  return n;
}

OpenGraph to_open_graph(const TypedDiagram& d) {
  OpenGraph g;
  g.dom = d.domain();
  g.cod = d.codomain();
  std::vector<Port> cur;
  for (std::size_t i = 0; i < g.dom.size(); ++i) cur.push_back(Port::input(i));
  for (std::size_t i = 0; i < d.diagram.slices.size(); ++i) {
    const Slice& s = d.diagram.slices[i];
    if (const Swap* sw = std::get_if<Swap>(&s)) {
      std::swap(cur[sw->offset], cur[sw->offset + 1]);
      continue;
    }
    const Seam& seam = std::get<Seam>(s);
    const TypedSeam& ts = *d.seams[i];
    if (ts.generator.morphism_count() == 0) continue;
    OpenGraph::Node node{ts.generator, ts.dom.nf, ts.cod.nf, {}};
    node.sources.assign(cur.begin() + seam.offset, cur.begin() + seam.offset + seam.inputs);
    const std::size_t id = g.nodes.size();
    g.nodes.push_back(std::move(node));
    std::vector<Port> outs;
    for (std::size_t p = 0; p < seam.outputs; ++p) outs.push_back(Port::of(id, p));
    cur.erase(cur.begin() + seam.offset, cur.begin() + seam.offset + seam.inputs);
    cur.insert(cur.begin() + seam.offset, outs.begin(), outs.end());
  }
  g.outputs = std::move(cur);
  return g;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// consumers[n][p] is who reads output p of node n; `boundary` there means
/// an output boundary port.
struct Consumers {
  std::vector<std::vector<Port>> of_node;
  std::vector<Port> of_input;
};

Consumers consumers(const OpenGraph& g) {
  Consumers c;
  c.of_input.resize(g.dom.size());
  c.of_node.resize(g.nodes.size());
  for (std::size_t n = 0; n < g.nodes.size(); ++n) c.of_node[n].resize(g.nodes[n].out.size());
  auto record = [&](const Port& src, Port reader) {
    if (src.boundary)
      c.of_input[src.port] = reader;
    else
      c.of_node[src.node][src.port] = reader;
  };
  for (std::size_t n = 0; n < g.nodes.size(); ++n)
    for (std::size_t q = 0; q < g.nodes[n].sources.size(); ++q) record(g.nodes[n].sources[q], Port::of(n, q));
  for (std::size_t j = 0; j < g.outputs.size(); ++j) record(g.outputs[j], Port::input(j));
  return c;
}

struct Numbering {
  std::vector<std::size_t> order;  // canonical position -> node
  std::vector<std::size_t> id;     // node -> canonical position
};

void expand(const OpenGraph& g, const Consumers& c, Numbering& num, std::size_t from) {
  auto visit = [&](std::size_t n) {
    if (num.id[n] != kNone) return;
    num.id[n] = num.order.size();
    num.order.push_back(n);
  };
  for (std::size_t h = from; h < num.order.size(); ++h) {
    const std::size_t n = num.order[h];
    for (const Port& s : g.nodes[n].sources)
      if (!s.boundary) visit(s.node);
    for (const Port& r : c.of_node[n])
      if (!r.boundary) visit(r.node);
  }
}

std::string encode_nodes(const OpenGraph& g, const Numbering& num, std::size_t from, std::size_t base) {
  std::string s;
  for (std::size_t h = from; h < num.order.size(); ++h) {
    const OpenGraph::Node& v = g.nodes[num.order[h]];
    s += v.label.to_string() + "|" + to_string(v.in) + ">" + to_string(v.out) + "|";
    for (const Port& p : v.sources) {
      if (p.boundary)
        s += "b" + std::to_string(p.port);
      else
        s += std::to_string(num.id[p.node] - base) + "." + std::to_string(p.port);
      s += ",";
    }
    s += ";";
  }
  return s;
}

struct Canonical {
  std::string key;
  Numbering num;
};

Canonical canonical(const OpenGraph& g) {
  const Consumers c = consumers(g);
  Numbering num;
  num.id.assign(g.nodes.size(), kNone);
  auto visit = [&](std::size_t n) {
    if (num.id[n] != kNone) return;
    num.id[n] = num.order.size();
    num.order.push_back(n);
  };
  for (const Port& r : c.of_input)
    if (!r.boundary) visit(r.node);
  for (const Port& p : g.outputs)
    if (!p.boundary) visit(p.node);
  expand(g, c, num, 0);

  std::string key = to_string(g.dom) + "=>" + to_string(g.cod) + "#" + encode_nodes(g, num, 0, 0) + "out:";
  for (const Port& p : g.outputs)
    key += (p.boundary ? "b" + std::to_string(p.port) : std::to_string(num.id[p.node]) + "." + std::to_string(p.port)) + ",";

  // Components that never touch the boundary: pick the start node giving
  // the smallest encoding, then sort the components by encoding.
  struct Floating {
    std::string key;
    std::vector<std::size_t> order;
  };
  std::vector<Floating> floating;
  std::vector<bool> done(g.nodes.size(), false);
  for (std::size_t n : num.order) done[n] = true;
  for (std::size_t start = 0; start < g.nodes.size(); ++start) {
    if (done[start]) continue;
    Numbering probe;
    probe.id.assign(g.nodes.size(), kNone);
    probe.id[start] = 0;
    probe.order.push_back(start);
    expand(g, c, probe, 0);
    Floating best;
    bool have = false;
    for (std::size_t s : probe.order) {
      Numbering local;
      local.id.assign(g.nodes.size(), kNone);
      local.id[s] = 0;
      local.order.push_back(s);
      expand(g, c, local, 0);
      std::string k = encode_nodes(g, local, 0, 0);
      if (!have || k < best.key) {
        best = {k, local.order};
        have = true;
      }
    }
    for (std::size_t s : probe.order) done[s] = true;
    floating.push_back(std::move(best));
  }
  std::sort(floating.begin(), floating.end(), [](const Floating& a, const Floating& b) { return a.key < b.key; });
  for (const Floating& f : floating) {
    key += "{" + f.key + "}";
    for (std::size_t n : f.order) {
      num.id[n] = num.order.size();
      num.order.push_back(n);
    }
  }
  return {key, num};
}

}  // namespace

std::string canonical_form(const OpenGraph& g) { return canonical(g).key; }

OpenGraph canonicalize(const OpenGraph& g) {
  const Numbering num = canonical(g).num;
  auto remap = [&](Port p) {
    if (!p.boundary) p.node = num.id[p.node];
    return p;
  };
  OpenGraph out;
  out.dom = g.dom;
  out.cod = g.cod;
  for (std::size_t n : num.order) {
    OpenGraph::Node v = g.nodes[n];
    for (Port& p : v.sources) p = remap(p);
    out.nodes.push_back(std::move(v));
  }
  for (const Port& p : g.outputs) out.outputs.push_back(remap(p));
  return out;
}

namespace {

/// Appends the adjacent swaps that carry the sheet at position i to
/// position target[i], in bubble-sort order.
void append_permutation(std::vector<Slice>& slices, std::vector<std::size_t> target) {
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t k = 0; k + 1 < target.size(); ++k)
      if (target[k] > target[k + 1]) {
        std::swap(target[k], target[k + 1]);
        slices.push_back(Swap{k});
        moved = true;
      }
  }
}

}  // namespace

SheetDiagram to_diagram(const OpenGraph& g, const NormalizedSignature& sig) {
  SheetDiagram d = SheetDiagram::from_types(g.dom);
  std::vector<Port> cur;
  for (std::size_t i = 0; i < g.dom.size(); ++i) cur.push_back(Port::input(i));
  std::vector<bool> placed(g.nodes.size(), false);
  for (std::size_t round = 0; round < g.nodes.size(); ++round) {
    std::size_t next = kNone;
    for (std::size_t n = 0; n < g.nodes.size() && next == kNone; ++n) {
      if (placed[n]) continue;
      bool ready = true;
      for (const Port& s : g.nodes[n].sources) ready = ready && (s.boundary || placed[s.node]);
      if (ready) next = n;
    }
    if (next == kNone) throw Error(ErrorKind::Internal, "open graph has a cycle");
    const OpenGraph::Node& v = g.nodes[next];
    std::vector<std::size_t> pos;
    for (const Port& s : v.sources) pos.push_back(std::find(cur.begin(), cur.end(), s) - cur.begin());
    std::vector<bool> is_input(cur.size(), false);
    for (std::size_t p : pos) is_input[p] = true;
    std::size_t at = 0;
    if (!pos.empty()) {
      const std::size_t first = *std::min_element(pos.begin(), pos.end());
      for (std::size_t k = 0; k < first; ++k) at += !is_input[k];
    }
    std::vector<std::size_t> target(cur.size());
    std::size_t left = 0;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (is_input[k]) continue;
      target[k] = left < at ? left : left + pos.size();
      ++left;
    }
    for (std::size_t q = 0; q < pos.size(); ++q) target[pos[q]] = at + q;
    append_permutation(d.slices, target);
    std::vector<Port> moved(cur.size());
    for (std::size_t k = 0; k < cur.size(); ++k) moved[target[k]] = cur[k];
    cur = std::move(moved);

    d.slices.push_back(make_seam(v.label, sig, at));
    std::vector<Port> outs;
    for (std::size_t p = 0; p < v.out.size(); ++p) outs.push_back(Port::of(next, p));
    cur.erase(cur.begin() + at, cur.begin() + at + pos.size());
    cur.insert(cur.begin() + at, outs.begin(), outs.end());
    placed[next] = true;
  }
  std::vector<std::size_t> target(cur.size());
  for (std::size_t k = 0; k < cur.size(); ++k)
    target[k] = std::find(g.outputs.begin(), g.outputs.end(), cur[k]) - g.outputs.begin();
  append_permutation(d.slices, target);
  return d;
}

bool skeleton_equal(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig) {
  return canonical_form(to_open_graph(validate(d1, sig))) == canonical_form(to_open_graph(validate(d2, sig)));
}

std::string Move::to_string() const {
  const char* ord = order == TensorOrder::GFirst ? "g-first" : "f-first";
  switch (kind) {
    case Kind::Exchange: return "exchange slice=" + std::to_string(slice);
    case Kind::Explode:
      return "explode node=" + std::to_string(node) + " slice=" + std::to_string(slice) +
             " split=" + std::to_string(split) + " order=" + ord;
    case Kind::Merge:
      return "merge lower=" + std::to_string(node) + " upper=" + std::to_string(upper) +
             " edge=" + std::to_string(out_port) + ">" + std::to_string(in_port) +
             " split=" + std::to_string(split) + " order=" + ord;
  }
  return "";
}

namespace {

/// Replaces the nodes flagged in `removed` by the graph `p`. The inputs of
/// `p` are fed by `in_sources` and its outputs go to `out_readers`.
OpenGraph splice(const OpenGraph& g, const std::vector<bool>& removed, const std::vector<Port>& in_sources,
                 const std::vector<Port>& out_readers, const OpenGraph& p) {
  std::vector<std::size_t> fresh(g.nodes.size(), kNone);
  std::size_t kept = 0;
  for (std::size_t n = 0; n < g.nodes.size(); ++n)
    if (!removed[n]) fresh[n] = kept++;
  std::map<Port, std::size_t> reader_index;
  for (std::size_t j = 0; j < out_readers.size(); ++j) reader_index[out_readers[j]] = j;

  auto from_g = [&](Port s) {
    if (!s.boundary) {
      if (removed[s.node]) throw Error(ErrorKind::Internal, "splice source inside the region");
      s.node = fresh[s.node];
    }
    return s;
  };
  auto from_p = [&](Port s) {
    if (s.boundary) return from_g(in_sources[s.port]);
    s.node += kept;
    return s;
  };

  OpenGraph out;
  out.dom = g.dom;
  out.cod = g.cod;
  auto feed = [&](const Port& s, const Port& reader) {
    if (!s.boundary && removed[s.node]) return from_p(p.outputs[reader_index.at(reader)]);
    return from_g(s);
  };
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    if (removed[n]) continue;
    OpenGraph::Node v = g.nodes[n];
    for (std::size_t q = 0; q < v.sources.size(); ++q) v.sources[q] = feed(g.nodes[n].sources[q], Port::of(n, q));
    out.nodes.push_back(std::move(v));
  }
  for (const OpenGraph::Node& v : p.nodes) {
    OpenGraph::Node w = v;
    for (Port& s : w.sources) s = from_p(s);
    out.nodes.push_back(std::move(w));
  }
  for (std::size_t j = 0; j < g.outputs.size(); ++j) out.outputs.push_back(feed(g.outputs[j], Port::input(j)));
  return out;
}

GammaGenerator slice_entries(const GammaGenerator& g, std::size_t from, std::size_t to) {
  return GammaGenerator::canonical({g.entries.begin() + from, g.entries.begin() + to});
}

SheetDiagram staircase(const GammaGenerator& g1, const GammaGenerator& g2, TensorOrder order,
                       const NormalizedSignature& sig) {
  SheetDiagram a = generator(g1, sig), b = generator(g2, sig);
  return order == TensorOrder::GFirst ? tensor(a, b, sig) : tensor_f_first(a, b, sig);
}

std::pair<GammaGenerator, GammaGenerator> split_label(const GammaGenerator& label, std::size_t split) {
  if (split == 0 || split >= label.entries.size())
    throw Error(ErrorKind::PatternMismatch, "split point " + std::to_string(split) + " outside " + label.to_string());
  GammaGenerator g1 = slice_entries(label, 0, split), g2 = slice_entries(label, split, label.entries.size());
  if (g1.morphism_count() == 0 || g2.morphism_count() == 0)
    throw Error(ErrorKind::PatternMismatch, "both halves of " + label.to_string() + " need a node");
  return {g1, g2};
}

OpenGraph explode_graph(const OpenGraph& g, const Move& m, const NormalizedSignature& sig) {
  if (m.node >= g.nodes.size()) throw Error(ErrorKind::PatternMismatch, "no node " + std::to_string(m.node));
  const OpenGraph::Node& v = g.nodes[m.node];
  auto [g1, g2] = split_label(v.label, m.split);
  OpenGraph p = to_open_graph(validate(staircase(g1, g2, m.order, sig), sig));
  const Consumers c = consumers(g);
  std::vector<bool> removed(g.nodes.size(), false);
  removed[m.node] = true;
  return canonicalize(splice(g, removed, v.sources, c.of_node[m.node], p));
}

std::optional<GammaGenerator> strip_prefix(const GammaGenerator& g, const Word& w) {
  if (w.empty()) return g;
  if (g.entries.empty() || g.entries.front().is_morphism()) return std::nullopt;
  const Word& id = g.entries.front().word;
  if (id.size() < w.size() || !std::equal(w.begin(), w.end(), id.begin())) return std::nullopt;
  std::vector<GammaEntry> e = g.entries;
  e.front().word.erase(e.front().word.begin(), e.front().word.begin() + w.size());
  return GammaGenerator::canonical(std::move(e));
}

std::optional<GammaGenerator> strip_suffix(const GammaGenerator& g, const Word& w) {
  if (w.empty()) return g;
  if (g.entries.empty() || g.entries.back().is_morphism()) return std::nullopt;
  const Word& id = g.entries.back().word;
  if (id.size() < w.size() || !std::equal(w.rbegin(), w.rend(), id.rbegin())) return std::nullopt;
  std::vector<GammaEntry> e = g.entries;
  e.back().word.resize(id.size() - w.size());
  return GammaGenerator::canonical(std::move(e));
}

std::optional<OpenGraph> try_merge(const OpenGraph& g, const Move& m, const NormalizedSignature& sig,
                                   std::string* why) {
  auto fail = [&](const std::string& reason) -> std::optional<OpenGraph> {
    if (why) *why = reason;
    return std::nullopt;
  };
  if (m.node >= g.nodes.size() || m.upper >= g.nodes.size()) return fail("node out of range");
  const OpenGraph::Node &lo = g.nodes[m.node], &hi = g.nodes[m.upper];
  if (m.out_port >= lo.out.size() || m.in_port >= hi.in.size() ||
      hi.sources[m.in_port] != Port::of(m.node, m.out_port))
    return fail("the anchor is not an edge");
  const Word& w = lo.out[m.out_port];
  if (m.split > w.size()) return fail("split beyond the edge word");
  const Word first(w.begin(), w.begin() + m.split), second(w.begin() + m.split, w.end());
  std::optional<GammaGenerator> g1, g2;
  if (m.order == TensorOrder::GFirst) {
    g2 = strip_prefix(lo.label, first);
    g1 = strip_suffix(hi.label, second);
  } else {
    g1 = strip_suffix(lo.label, second);
    g2 = strip_prefix(hi.label, first);
  }
  if (!g1 || !g2 || g1->morphism_count() == 0 || g2->morphism_count() == 0)
    return fail("labels are not whiskered halves");

  const OpenGraph p = to_open_graph(validate(staircase(*g1, *g2, m.order, sig), sig));
  const std::size_t split_nodes =
      (m.order == TensorOrder::GFirst ? gamma_dom(*g1, sig) : gamma_dom(*g2, sig)).size();
  const std::size_t bottom = m.in_port, top = split_nodes + m.out_port;
  if (bottom >= split_nodes || top >= p.nodes.size()) return fail("anchor outside the staircase");

  const Consumers pc = consumers(p), gc = consumers(g);
  std::vector<std::size_t> image(p.nodes.size(), kNone);
  std::vector<bool> used(g.nodes.size(), false);
  std::deque<std::size_t> queue;
  auto assign = [&](std::size_t pn, std::size_t gn) {
    if (image[pn] != kNone) return image[pn] == gn;
    if (used[gn]) return false;
    const OpenGraph::Node &a = p.nodes[pn], &b = g.nodes[gn];
    if (a.label != b.label || a.in != b.in || a.out != b.out) return false;
    image[pn] = gn;
    used[gn] = true;
    queue.push_back(pn);
    return true;
  };
  if (!assign(bottom, m.node) || !assign(top, m.upper)) return fail("anchor labels do not match");
  while (!queue.empty()) {
    const std::size_t pn = queue.front();
    queue.pop_front();
    const std::size_t gn = image[pn];
    for (std::size_t q = 0; q < p.nodes[pn].sources.size(); ++q) {
      const Port &ps = p.nodes[pn].sources[q], &gs = g.nodes[gn].sources[q];
      if (ps.boundary) continue;
      if (gs.boundary || gs.port != ps.port || !assign(ps.node, gs.node)) return fail("wiring differs");
    }
    for (std::size_t t = 0; t < p.nodes[pn].out.size(); ++t) {
      const Port &pr = pc.of_node[pn][t], &gr = gc.of_node[gn][t];
      if (pr.boundary) continue;
      if (gr.boundary || gr.port != pr.port || !assign(pr.node, gr.node)) return fail("wiring differs");
    }
  }
  for (std::size_t pn = 0; pn < p.nodes.size(); ++pn)
    if (image[pn] == kNone) return fail("staircase is not connected");

  std::vector<Port> in_sources, out_readers;
  for (std::size_t i = 0; i < p.dom.size(); ++i) {
    const Port& r = pc.of_input[i];
    if (r.boundary) return fail("staircase has a bare sheet");
    const Port& s = g.nodes[image[r.node]].sources[r.port];
    if (!s.boundary && used[s.node]) return fail("extra edge inside the match");
    in_sources.push_back(s);
  }
  for (std::size_t j = 0; j < p.cod.size(); ++j) {
    const Port& s = p.outputs[j];
    if (s.boundary) return fail("staircase has a bare sheet");
    const Port& r = gc.of_node[image[s.node]][s.port];
    if (!r.boundary && used[r.node]) return fail("extra edge inside the match");
    out_readers.push_back(r);
  }

  // Contracting the match must not create a cycle.
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<std::size_t> stack;
  for (const Port& r : out_readers)
    if (!r.boundary) stack.push_back(r.node);
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    if (used[n]) return fail("match is not convex");
    if (seen[n]) continue;
    seen[n] = true;
    for (const Port& r : gc.of_node[n])
      if (!r.boundary) stack.push_back(r.node);
  }

  OpenGraph merged;
  merged.dom = p.dom;
  merged.cod = p.cod;
  OpenGraph::Node node{tensor_generators(*g1, *g2), p.dom, p.cod, {}};
  for (std::size_t i = 0; i < p.dom.size(); ++i) node.sources.push_back(Port::input(i));
  merged.nodes.push_back(std::move(node));
  for (std::size_t j = 0; j < p.cod.size(); ++j) merged.outputs.push_back(Port::of(0, j));
  return canonicalize(splice(g, used, in_sources, out_readers, merged));
}

std::vector<std::pair<Move, OpenGraph>> merges_with_results(const OpenGraph& g, const NormalizedSignature& sig) {
  std::vector<std::pair<Move, OpenGraph>> out;
  for (std::size_t hi = 0; hi < g.nodes.size(); ++hi) {
    if (g.nodes[hi].sources.empty()) continue;
    const Port& s = g.nodes[hi].sources[0];
    if (s.boundary || s.port != 0) continue;
    const Word& w = g.nodes[s.node].out[0];
    for (TensorOrder order : {TensorOrder::GFirst, TensorOrder::FFirst})
      for (std::size_t k = 0; k <= w.size(); ++k) {
        Move m;
        m.kind = Move::Kind::Merge;
        m.order = order;
        m.node = s.node;
        m.upper = hi;
        m.split = k;
        if (auto r = try_merge(g, m, sig, nullptr)) out.emplace_back(m, std::move(*r));
      }
  }
  return out;
}

}  // namespace

std::vector<Move> explosion_moves(const OpenGraph& g) {
  std::vector<Move> out;
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    const auto& e = g.nodes[n].label.entries;
    std::size_t seen = 0;
    const std::size_t total = g.nodes[n].label.morphism_count();
    for (std::size_t k = 1; k < e.size(); ++k) {
      seen += e[k - 1].is_morphism();
      if (seen == 0 || seen == total) continue;
      for (TensorOrder order : {TensorOrder::GFirst, TensorOrder::FFirst}) {
        Move m;
        m.kind = Move::Kind::Explode;
        m.order = order;
        m.node = n;
        m.split = k;
        out.push_back(m);
      }
    }
  }
  return out;
}

std::vector<Move> merge_moves(const OpenGraph& g, const NormalizedSignature& sig) {
  std::vector<Move> out;
  for (auto& [m, r] : merges_with_results(g, sig)) out.push_back(m);
  return out;
}

OpenGraph apply_move(const OpenGraph& g, const Move& m, const NormalizedSignature& sig) {
  switch (m.kind) {
    case Move::Kind::Explode: return explode_graph(g, m, sig);
    case Move::Kind::Merge: {
      std::string why;
      if (auto r = try_merge(g, m, sig, &why)) return std::move(*r);
      throw Error(ErrorKind::PatternMismatch, m.to_string() + ": " + why);
    }
    case Move::Kind::Exchange: return canonicalize(g);
  }
  return g;
}

SheetDiagram explode(const SheetDiagram& d, std::size_t slice, std::size_t split, const NormalizedSignature& sig,
                     TensorOrder order) {
  TypedDiagram t = validate(d, sig);
  if (slice >= d.slices.size() || !t.seams[slice])
    throw Error(ErrorKind::PatternMismatch, "slice " + std::to_string(slice) + " is not a seam");
  const Seam& seam = std::get<Seam>(d.slices[slice]);
  auto [g1, g2] = split_label(t.seams[slice]->generator, split);
  SheetDiagram local = staircase(g1, g2, order, sig);
  SheetDiagram out = d;
  out.slices.erase(out.slices.begin() + slice);
  std::vector<Slice> inserted = local.slices;
  for (Slice& s : inserted) std::visit([&](auto& x) { x.offset += seam.offset; }, s);
  out.slices.insert(out.slices.begin() + slice, inserted.begin(), inserted.end());
  return out;
}

std::vector<Move> merge_sites(const SheetDiagram& d, const NormalizedSignature& sig) {
  return merge_moves(canonicalize(to_open_graph(validate(d, sig))), sig);
}

SheetDiagram merge(const SheetDiagram& d, const Move& site, const NormalizedSignature& sig) {
  if (site.kind != Move::Kind::Merge) throw Error(ErrorKind::PatternMismatch, "not a merge site");
  OpenGraph g = canonicalize(to_open_graph(validate(d, sig)));
  return to_diagram(apply_move(g, site, sig), sig);
}

SheetDiagram apply_move(const SheetDiagram& d, const Move& m, const NormalizedSignature& sig) {
  switch (m.kind) {
    case Move::Kind::Exchange: return exchange(d, m.slice);
    case Move::Kind::Explode: return explode(d, m.slice, m.split, sig, m.order);
    case Move::Kind::Merge: return merge(d, m, sig);
  }
  return d;
}

OpenGraph explode_maximally(const OpenGraph& g, const NormalizedSignature& sig, std::vector<Move>* trace) {
  OpenGraph cur = canonicalize(g);
  for (;;) {
    std::size_t n = 0;
    while (n < cur.nodes.size() && cur.nodes[n].label.morphism_count() < 2) ++n;
    if (n == cur.nodes.size()) return cur;
    const auto& e = cur.nodes[n].label.entries;
    std::size_t k = 0;
    while (!e[k].is_morphism()) ++k;
    Move m;
    m.kind = Move::Kind::Explode;
    m.node = n;
    m.split = k + 1;
    cur = explode_graph(cur, m, sig);
    if (trace) trace->push_back(m);
  }
}

namespace {

std::vector<std::pair<Move, OpenGraph>> neighbours(const OpenGraph& g, const NormalizedSignature& sig) {
  std::vector<std::pair<Move, OpenGraph>> out = merges_with_results(g, sig);
  for (const Move& m : explosion_moves(g)) out.emplace_back(m, explode_graph(g, m, sig));
  return out;
}

/// The step from `from` to `to`, where `to --m--> from` is known.
TraceStep reverse_step(const OpenGraph& from, const OpenGraph& to, const Move& m, const NormalizedSignature& sig) {
  const std::string goal = canonical_form(to);
  for (auto& [move, result] : neighbours(from, sig))
    if (canonical_form(result) == goal) return {move, std::nullopt};
  return {m, to};
}

/// Rewrites f-first staircases into g-first ones until none is left (or a
/// state repeats). Returns the visited states and the moves between them.
std::vector<OpenGraph> flip_normalize(const OpenGraph& start, const NormalizedSignature& sig,
                                      std::vector<Move>& moves) {
  std::vector<OpenGraph> states{start};
  std::set<std::string> visited{canonical_form(start)};
  for (std::size_t round = 0; round < 256; ++round) {
    const OpenGraph& cur = states.back();
    bool moved = false;
    for (auto& [m, mid] : merges_with_results(cur, sig)) {
      if (m.order != TensorOrder::FFirst) continue;
      const OpenGraph::Node &lo = cur.nodes[m.node], &hi = cur.nodes[m.upper];
      const Word& w = lo.out[m.out_port];
      const Word first(w.begin(), w.begin() + m.split), second(w.begin() + m.split, w.end());
      const GammaGenerator g1 = *strip_suffix(lo.label, second), g2 = *strip_prefix(hi.label, first);
      const GammaGenerator label = tensor_generators(g1, g2);
      std::size_t split = 0;
      for (std::size_t seen = 0; seen < g1.morphism_count(); ++split)
        if (label.entries[split].is_morphism()) ++seen;
      for (std::size_t n = 0; n < mid.nodes.size() && !moved; ++n) {
        if (mid.nodes[n].label != label) continue;
        Move e;
        e.kind = Move::Kind::Explode;
        e.order = TensorOrder::GFirst;
        e.node = n;
        e.split = split;
        OpenGraph next = explode_graph(mid, e, sig);
        if (!visited.insert(canonical_form(next)).second) continue;
        moves.push_back(m);
        moves.push_back(e);
        states.push_back(mid);
        states.push_back(std::move(next));
        moved = true;
      }
      if (moved) break;
    }
    if (!moved) break;
  }
  return states;
}

std::map<std::string, long> label_counts(const OpenGraph& g) {
  std::map<std::string, long> out;
  for (const OpenGraph::Node& n : g.nodes) ++out[n.label.to_string()];
  return out;
}

long label_distance(const std::map<std::string, long>& a, const std::map<std::string, long>& b) {
  long d = 0;
  for (const auto& [k, n] : a) {
    auto it = b.find(k);
    d += std::abs(n - (it == b.end() ? 0 : it->second));
  }
  for (const auto& [k, n] : b)
    if (!a.count(k)) d += n;
  return d;
}

bool has_empty_boundary(const NormalizedSignature& sig) {
  for (const std::string& name : sig.morphism_names()) {
    const NormalizedMorphism& m = sig.at(name);
    if (m.dom.empty() || m.cod.empty()) return true;
  }
  return false;
}

struct SearchNode {
  OpenGraph graph;
  std::string parent;
  Move move;
  bool root = false;
};

std::optional<Witness> refute(const TypedDiagram& t1, const TypedDiagram& t2, const NormalizedSignature& sig,
                              std::uint64_t seed, std::size_t models, std::size_t max_carrier) {
  std::mt19937_64 seeds(seed);
  for (std::size_t k = 0; k < models; ++k) {
    EvalModel model = random_model(sig, seeds(), max_carrier);
    ObjectSpace dom(t1.domain(), model);
    for (std::size_t i = 0; i < dom.size(); ++i) {
      Element x = dom.element(i);
      Element a = eval_element(t1, sig, model, x), b = eval_element(t2, sig, model, x);
      if (a != b) return Witness{std::move(model), std::move(x), std::move(a), std::move(b)};
    }
  }
  return std::nullopt;
}

}  // namespace

EquivVerdict decide_equiv(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig,
                          const EquivOptions& opts) {
  EquivVerdict v;
  const TypedDiagram t1 = validate(d1, sig), t2 = validate(d2, sig);
  if (t1.domain() != t2.domain() || t1.codomain() != t2.codomain()) {
    v.kind = EquivVerdict::Kind::Distinct;
    v.reason = "boundaries differ: " + to_string(t1.domain()) + " -> " + to_string(t1.codomain()) + " vs " +
               to_string(t2.domain()) + " -> " + to_string(t2.codomain());
    return v;
  }
  if (auto w = refute(t1, t2, sig, opts.seed, opts.models, opts.max_carrier)) {
    v.kind = EquivVerdict::Kind::Distinct;
    v.witness = std::move(w);
    v.reason = "evaluation differs";
    return v;
  }

  const OpenGraph s1 = canonicalize(to_open_graph(t1)), s2 = canonicalize(to_open_graph(t2));
  if (canonical_form(s1) == canonical_form(s2)) {
    v.kind = EquivVerdict::Kind::Equivalent;
    v.reason = "skeletons coincide";
    return v;
  }

  std::vector<Move> m1, m2;
  const OpenGraph e1 = explode_maximally(s1, sig, &m1), e2 = explode_maximally(s2, sig, &m2);
  std::vector<TraceStep> head;
  {
    OpenGraph cur = s1;
    for (const Move& m : m1) {
      head.push_back({m, std::nullopt});
      cur = explode_graph(cur, m, sig);
    }
  }
  // States along d2's explosion path, so the tail can walk back down it.
  std::vector<OpenGraph> path2{s2};
  for (const Move& m : m2) path2.push_back(explode_graph(path2.back(), m, sig));
  auto tail = [&]() {
    std::vector<TraceStep> t;
    for (std::size_t i = m2.size(); i-- > 0;) t.push_back(reverse_step(path2[i + 1], path2[i], m2[i], sig));
    return t;
  };

  const std::string k1 = canonical_form(e1), k2 = canonical_form(e2);
  if (k1 == k2) {
    v.kind = EquivVerdict::Kind::Equivalent;
    v.trace = head;
    for (TraceStep& s : tail()) v.trace.push_back(std::move(s));
    v.reason = "maximal explosions coincide";
    return v;
  }

  std::vector<Move> f1, f2;
  const std::vector<OpenGraph> n1 = flip_normalize(e1, sig, f1), n2 = flip_normalize(e2, sig, f2);
  for (const Move& m : f1) head.push_back({m, std::nullopt});
  auto full_tail = [&]() {
    std::vector<TraceStep> t;
    for (std::size_t i = f2.size(); i-- > 0;) t.push_back(reverse_step(n2[i + 1], n2[i], f2[i], sig));
    for (TraceStep& s : tail()) t.push_back(std::move(s));
    return t;
  };
  const std::string r1 = canonical_form(n1.back()), r2 = canonical_form(n2.back());
  if (r1 == r2) {
    v.kind = EquivVerdict::Kind::Equivalent;
    v.trace = head;
    for (TraceStep& s : full_tail()) v.trace.push_back(std::move(s));
    v.reason = "tensor orders normalize to the same graph";
    return v;
  }

  std::map<std::string, SearchNode> seen[2];
  seen[0][r1] = {n1.back(), "", {}, true};
  seen[1][r2] = {n2.back(), "", {}, true};
  // Each side expands first the states whose node labels are closest to the
  // other side's root.
  const std::map<std::string, long> goal[2] = {label_counts(n2.back()), label_counts(n1.back())};
  using Entry = std::tuple<long, std::size_t, std::string>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open[2];
  open[0].emplace(0, 0, r1);
  open[1].emplace(0, 0, r2);
  std::size_t states = 2;
  std::string meet;
  int side = 0;
  while (meet.empty() && states < opts.budget && !open[0].empty() && !open[1].empty()) {
    const std::string key = std::get<2>(open[side].top());
    open[side].pop();
    const OpenGraph here = seen[side].at(key).graph;
    for (auto& [move, graph] : neighbours(here, sig)) {
      std::string k = canonical_form(graph);
      if (seen[side].count(k)) continue;
      const long h = label_distance(label_counts(graph), goal[side]);
      seen[side][k] = {std::move(graph), key, move, false};
      ++states;
      if (seen[1 - side].count(k)) {
        meet = k;
        break;
      }
      open[side].emplace(h, states, k);
      if (states >= opts.budget) break;
    }
    side = 1 - side;
  }
  v.states = states;
  if (meet.empty()) {
    if (auto w = refute(t1, t2, sig, opts.seed ^ 0x9e3779b97f4a7c15ULL, opts.extra_models, opts.max_carrier)) {
      v.kind = EquivVerdict::Kind::Distinct;
      v.witness = std::move(w);
      v.reason = "evaluation differs on extended sampling";
      return v;
    }
    if (states < opts.budget && !has_empty_boundary(sig)) {
      v.kind = EquivVerdict::Kind::Distinct;
      v.reason = "move closure exhausted without meeting";
      return v;
    }
    v.kind = EquivVerdict::Kind::Unknown;
    v.reason = states >= opts.budget ? "budget exhausted" : "search space exhausted";
    return v;
  }

  v.kind = EquivVerdict::Kind::Equivalent;
  v.reason = "connected by moves";
  v.trace = head;
  std::vector<TraceStep> forward;
  for (std::string k = meet; !seen[0].at(k).root; k = seen[0].at(k).parent)
    forward.push_back({seen[0].at(k).move, std::nullopt});
  std::reverse(forward.begin(), forward.end());
  for (TraceStep& s : forward) v.trace.push_back(std::move(s));
  for (std::string k = meet; !seen[1].at(k).root; k = seen[1].at(k).parent) {
    const SearchNode& n = seen[1].at(k);
    v.trace.push_back(reverse_step(n.graph, seen[1].at(n.parent).graph, n.move, sig));
  }
  for (TraceStep& s : full_tail()) v.trace.push_back(std::move(s));
  return v;
}

bool replay(const std::vector<TraceStep>& trace, const SheetDiagram& d1, const SheetDiagram& d2,
            const NormalizedSignature& sig) {
  OpenGraph cur = canonicalize(to_open_graph(validate(d1, sig)));
  const std::string goal = canonical_form(to_open_graph(validate(d2, sig)));
  try {
    for (const TraceStep& s : trace) {
      if (!s.target) {
        cur = apply_move(cur, s.move, sig);
        continue;
      }
      if (canonical_form(apply_move(*s.target, s.move, sig)) != canonical_form(cur)) return false;
      cur = canonicalize(*s.target);
    }
  } catch (const Error&) {
    return false;
  }
  return canonical_form(cur) == goal;
}

bool check_witness(const Witness& w, const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig) {
  const TypedDiagram t1 = validate(d1, sig), t2 = validate(d2, sig);
  const Element a = eval_element(t1, sig, w.model, w.input), b = eval_element(t2, sig, w.model, w.input);
  return a == w.left && b == w.right && a != b;
}

std::vector<std::size_t> swap_permutation(const SheetDiagram& d) {
  std::vector<std::size_t> at(d.inputs.size());
  std::iota(at.begin(), at.end(), 0);
  for (const Slice& s : d.slices) {
    const Swap* sw = std::get_if<Swap>(&s);
    if (!sw) throw Error(ErrorKind::TypeError, "diagram contains a seam");
    if (sw->offset + 2 > at.size()) throw Error(ErrorKind::OffsetOutOfRange, "swap out of range");
    std::swap(at[sw->offset], at[sw->offset + 1]);
  }
  std::vector<std::size_t> perm(at.size());
  for (std::size_t k = 0; k < at.size(); ++k) perm[at[k]] = k;
  return perm;
}

std::vector<std::size_t> permutation_of(const SheetDiagram& d, const NormalizedSignature& sig) {
  if (!sig.empty()) throw Error(ErrorKind::NonEmptySignature, "permutations are defined over the empty signature");
  validate(d, sig);
  return swap_permutation(d);
}

}  // namespace rig
