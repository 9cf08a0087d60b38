#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rig/expr.hpp"
#include "rig/signature.hpp"

namespace rig {

struct SeamNode {
  /// Pass-through wires strictly to the left of this node, counted from the
  /// seam's left edge.
  std::size_t offset = 0;
  std::string label;  // empty when unlabeled
  std::vector<std::size_t> inputs;   // wires consumed per input sheet
  std::vector<std::size_t> outputs;  // wires produced per output sheet

  friend bool operator==(const SeamNode&, const SeamNode&) = default;
};

struct Seam {
  std::size_t offset = 0;  // sheets to the left
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<SeamNode> nodes;
  /// Labels of the pass-through wires. Only stored for seams without input
  /// sheets; otherwise they are read off the input sheets.
  Word passthrough;

  friend bool operator==(const Seam&, const Seam&) = default;
};

struct Swap {
  std::size_t offset = 0;
  friend bool operator==(const Swap&, const Swap&) = default;
};

using Slice = std::variant<Seam, Swap>;

struct InputSheet {
  std::size_t wires = 0;
  Word labels;  // empty, or one label per wire

  friend bool operator==(const InputSheet&, const InputSheet&) = default;
};

/// Combinatorial sheet diagram: input sheets bottom, slices bottom to top.
struct SheetDiagram {
  std::vector<InputSheet> inputs;
  std::vector<Slice> slices;

  static SheetDiagram from_types(const NormalForm& nf);

  /// True when every wire and every node carries a label.
  bool labeled() const;

  friend bool operator==(const SheetDiagram&, const SheetDiagram&) = default;
};

inline std::size_t slice_offset(const Slice& s) {
  return std::visit([](const auto& x) { return x.offset; }, s);
}
inline std::pair<std::size_t, std::size_t> slice_arity(const Slice& s) {
  if (const Seam* seam = std::get_if<Seam>(&s)) return {seam->inputs, seam->outputs};
  return {2, 2};
}

/// Reconstructed Γ-structure of a validated seam.
struct TypedSeam {
  GammaGenerator generator;
  GammaBoundary dom;
  GammaBoundary cod;
  /// For each generator entry, the index of the node realizing it (nodes for
  /// morphisms, none for identities).
  std::vector<std::optional<std::size_t>> node_of_entry;
};

struct TypedDiagram {
  SheetDiagram diagram;
  /// heights[0] is the domain, heights[slices.size()] the codomain.
  std::vector<NormalForm> heights;
  std::vector<std::optional<TypedSeam>> seams;  // per slice, empty for swaps

  const NormalForm& domain() const { return heights.front(); }
  const NormalForm& codomain() const { return heights.back(); }
};

TypedDiagram validate(const SheetDiagram& d, const NormalizedSignature& sig);
NormalForm domain(const TypedDiagram& d);
NormalForm codomain(const TypedDiagram& d);

/// Wire counts per sheet at every height, without needing a signature.
std::vector<std::vector<std::size_t>> wire_counts(const SheetDiagram& d);
std::size_t output_sheet_count(const SheetDiagram& d);

/// Symmetric monoidal string diagram over Γ obtained by forgetting wires.
struct SkeletonSlice {
  enum class Kind { Node, Symmetry };
  Kind kind;
  std::size_t offset;
  GammaGenerator label;  // Node only
  NormalForm dom;
  NormalForm cod;
  friend bool operator==(const SkeletonSlice&, const SkeletonSlice&) = default;
};

struct Skeleton {
  NormalForm dom;
  std::vector<SkeletonSlice> slices;
  std::size_t node_count() const;
  friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

Skeleton skeleton(const TypedDiagram& d);

/// Seam for a Γ-generator placed at sheet offset `offset`. Identity factors
/// become pass-through wires.
Seam make_seam(const GammaGenerator& g, const NormalizedSignature& sig, std::size_t offset);

}  // namespace rig
