#pragma once

#include <string>
#include <vector>

#include "rig/diagram.hpp"

namespace rig {

struct RenderStyle {
  double skew_dx = 0.45;  // screen x per depth unit
  double skew_dy = 0.25;  // screen y per depth unit
  double scale = 40.0;    // pixels per unit
  double sheet_spacing = 1.6;
  double wire_pitch = 0.6;
  double slice_height = 1.5;
  double margin = 0.5;
};

struct Interval {
  double lo = 0;
  double hi = 0;
  double mid() const { return (lo + hi) / 2; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Geometry in diagram units. Heights are the levels between slices; sheet
/// i at height h occupies `sheets[h][i]` along x and carries its wires at
/// depths `tracks[h][i]`.
struct Layout {
  std::vector<std::vector<Interval>> sheets;
  std::vector<std::vector<std::vector<double>>> tracks;
  /// Per slice: x of the seam line, and the depth of each attachment point
  /// (pass-through wires and nodes, front to back). Empty for swaps.
  std::vector<double> seam_x;
  std::vector<std::vector<double>> attach_depth;
  std::vector<std::vector<double>> node_depth;
  double depth = 0;
  double skew_dx = 0;
  double skew_dy = 0;

  friend bool operator==(const Layout&, const Layout&) = default;
};

Layout layout(const SheetDiagram& d, const RenderStyle& style = {});
inline Layout layout(const TypedDiagram& d, const RenderStyle& style = {}) { return layout(d.diagram, style); }

/// Counts of drawn elements, computed from the combinatorial data alone.
struct RenderCounts {
  std::size_t sheets = 0;  // polygons
  std::size_t seams = 0;   // lines
  std::size_t nodes = 0;   // circles
  std::size_t wires = 0;   // polylines
};

RenderCounts expected_counts(const SheetDiagram& d);

std::string render_svg(const SheetDiagram& d, const RenderStyle& style = {});
inline std::string render_svg(const TypedDiagram& d, const RenderStyle& style = {}) {
  return render_svg(d.diagram, style);
}

}  // namespace rig
