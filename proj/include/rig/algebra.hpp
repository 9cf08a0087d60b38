#pragma once

#include <utility>
#include <vector>

#include "rig/diagram.hpp"
#include "rig/morexpr.hpp"
#include "rig/signature.hpp"

namespace rig {

SheetDiagram identity(const NormalForm& nf);

/// Single seam for a Γ-generator; identity factors become pass-through wires.
SheetDiagram generator(const GammaGenerator& g, const NormalizedSignature& sig);

/// `d1` runs first. Throws BoundaryMismatch unless cod(d1) = dom(d2).
SheetDiagram compose(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig);

SheetDiagram sum(const SheetDiagram& d1, const SheetDiagram& d2);

SheetDiagram whisker_left(const Word& w, const SheetDiagram& d);
SheetDiagram whisker_right(const SheetDiagram& d, const Word& w);

/// Swap-only diagram moving sheet i to position target[i], decomposed into
/// adjacent transpositions in bubble-sort order.
SheetDiagram permutation_diagram(const std::vector<Word>& sheets, const std::vector<std::size_t>& target);

/// E_{XY}: the p·q sheets grid[i][j] in row-major order, rearranged into
/// column-major order.
SheetDiagram reorder(std::size_t p, std::size_t q, const std::vector<std::vector<Word>>& grid);

/// g-first composite: E_BD^{-1} ∘ (⊕_l f·D_l) ∘ E_AD ∘ (⊕_i A_i·g).
SheetDiagram tensor(const SheetDiagram& d1, const SheetDiagram& d2, const NormalizedSignature& sig);
/// f-first composite: (⊕_j B_j·g) ∘ E ∘ (⊕_k f·C_k) ∘ E'.
SheetDiagram tensor_f_first(const SheetDiagram& d1, const SheetDiagram& d2,
                            const NormalizedSignature& sig);

GammaGenerator tensor_generators(const GammaGenerator& g1, const GammaGenerator& g2);

/// Normalized domain and codomain of a morphism expression. Throws TypeError.
std::pair<NormalForm, NormalForm> mor_type(const MorExpr& m, const NormalizedSignature& sig);

/// Diagram of a structural isomorphism (no signature generators needed).
SheetDiagram structural(const MorExpr& m, const NormalizedSignature& sig);

SheetDiagram compile(const MorExpr& m, const NormalizedSignature& sig);

/// Inverse of a diagram made of swaps only. Throws TypeError otherwise.
SheetDiagram invert_permutation(const SheetDiagram& d, const NormalizedSignature& sig);

/// True when slices i and i+1 touch disjoint sheet ranges.
bool exchangeable(const SheetDiagram& d, std::size_t i);
/// Swaps slices i and i+1, adjusting offsets. Throws PatternMismatch.
SheetDiagram exchange(const SheetDiagram& d, std::size_t i);

}  // namespace rig
