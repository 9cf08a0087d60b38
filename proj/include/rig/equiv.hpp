#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rig/diagram.hpp"
#include "rig/eval.hpp"
#include "rig/signature.hpp"

namespace rig {

/// Where a wire starts: an input boundary port or an output port of a node.
struct Port {
  bool boundary = true;
  std::size_t node = 0;  // unused for boundary ports
  std::size_t port = 0;

  static Port input(std::size_t i) { return {true, 0, i}; }
  static Port of(std::size_t node, std::size_t port) { return {false, node, port}; }
  friend bool operator==(const Port&, const Port&) = default;
  friend auto operator<=>(const Port&, const Port&) = default;
};

/// The skeleton of a diagram as an anchored open graph over Γ. Sheet swaps
/// are absorbed into the wiring and seams without nodes disappear.
struct OpenGraph {
  struct Node {
    GammaGenerator label;
    NormalForm in, out;
    std::vector<Port> sources;  // producer feeding each input port
    friend bool operator==(const Node&, const Node&) = default;
  };

  NormalForm dom, cod;
  std::vector<Node> nodes;
  std::vector<Port> outputs;  // producer feeding each output boundary port

  std::size_t morphism_count() const;
  friend bool operator==(const OpenGraph&, const OpenGraph&) = default;
};

OpenGraph to_open_graph(const TypedDiagram& d);

/// Text that is equal for two graphs exactly when they are isomorphic
/// relative to their ordered boundaries.
std::string canonical_form(const OpenGraph& g);
/// The same graph with nodes renumbered into canonical order.
OpenGraph canonicalize(const OpenGraph& g);

/// A diagram whose skeleton is `g`: nodes in topological order, sheets
/// gathered by adjacent swaps.
SheetDiagram to_diagram(const OpenGraph& g, const NormalizedSignature& sig);

bool skeleton_equal(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig);

enum class TensorOrder { GFirst, FFirst };

struct Move {
  enum class Kind { Exchange, Merge, Explode };
  Kind kind = Kind::Exchange;
  TensorOrder order = TensorOrder::GFirst;
  /// Exchange: lower slice index. Explode on a diagram: the seam's slice.
  std::size_t slice = 0;
  /// Explode: the node. Merge: the lower node of the anchor edge.
  std::size_t node = 0;
  /// Explode: entries in the first half. Merge: length of the first part of
  /// the anchor edge's word.
  std::size_t split = 0;
  /// Merge anchor: lower node output `out_port` feeds `upper` input `in_port`.
  std::size_t upper = 0, out_port = 0, in_port = 0;

  std::string to_string() const;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Graph level moves. Graphs are expected in canonical numbering and the
/// results are returned canonicalized.
std::vector<Move> explosion_moves(const OpenGraph& g);
std::vector<Move> merge_moves(const OpenGraph& g, const NormalizedSignature& sig);
/// Throws PatternMismatch when the move does not apply.
OpenGraph apply_move(const OpenGraph& g, const Move& m, const NormalizedSignature& sig);

/// Diagram level moves.
SheetDiagram explode(const SheetDiagram& d, std::size_t slice, std::size_t split,
                     const NormalizedSignature& sig, TensorOrder order = TensorOrder::GFirst);
std::vector<Move> merge_sites(const SheetDiagram& d, const NormalizedSignature& sig);
SheetDiagram merge(const SheetDiagram& d, const Move& site, const NormalizedSignature& sig);
SheetDiagram apply_move(const SheetDiagram& d, const Move& m, const NormalizedSignature& sig);

/// Explodes every node until each carries a single morphism.
OpenGraph explode_maximally(const OpenGraph& g, const NormalizedSignature& sig,
                            std::vector<Move>* trace = nullptr);

struct TraceStep {
  Move move;
  /// When set, `move` applies to `target` and yields the state before this
  /// step (an inverse that could not be expressed as a forward move).
  std::optional<OpenGraph> target;
};

struct Witness {
  EvalModel model;
  Element input;
  Element left, right;
};

struct EquivVerdict {
  enum class Kind { Equivalent, Distinct, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<TraceStep> trace;  // Equivalent: from canonical graph of d1 to that of d2
  std::optional<Witness> witness;
  std::size_t states = 0;
  std::string reason;
};

struct EquivOptions {
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  std::size_t models = 5;
  std::size_t max_carrier = 3;
  /// Further models tried when the search ends without meeting.
  std::size_t extra_models = 60;
};

EquivVerdict decide_equiv(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig,
                          const EquivOptions& opts = {});

/// Replays an Equivalent trace; true when it leads from d1 to d2.
bool replay(const std::vector<TraceStep>& trace, const SheetDiagram& d1, const SheetDiagram& d2,
            const NormalizedSignature& sig);

/// Re-evaluates a Distinct witness.
bool check_witness(const Witness& w, const SheetDiagram& d1, const SheetDiagram& d2,
                   const NormalizedSignature& sig);

/// Final position of each input sheet of a diagram made only of swaps.
/// Throws TypeError when a seam is present.
std::vector<std::size_t> swap_permutation(const SheetDiagram& d);

/// Throws NonEmptySignature unless the signature is empty.
std::vector<std::size_t> permutation_of(const SheetDiagram& d, const NormalizedSignature& sig);

}  // namespace rig
