#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rig/expr.hpp"
#include "rig/morexpr.hpp"
#include "rig/signature.hpp"

namespace rig {

enum class AxiomId {
  I, III, IV, V, VI, VII, VIII, IX, X, XI, XII,
  XIII, XIV, XVI, XVII, XVIII, XIX, XX, XXI, XXII, XXIII, XXIV,
};

const std::vector<AxiomId>& all_axioms();
std::string_view to_string(AxiomId id);
std::optional<AxiomId> parse_axiom(std::string_view roman);

/// Number of object arguments the axiom takes.
std::size_t axiom_arity(AxiomId id);

/// The two paths of the axiom's diagram, as morphism expressions with equal
/// source and target. Throws Arity on a wrong number of objects.
std::pair<MorExpr, MorExpr> axiom_sides(AxiomId id, const std::vector<ObjExpr>& objects);

struct AxiomCheck {
  bool holds = false;
  NormalForm dom;
  NormalForm cod;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::string trace;
};

/// Compiles both sides, compares their sheet permutations and cross-checks
/// on one random model with carriers of size at most 2.
AxiomCheck check_axiom(AxiomId id, const std::vector<ObjExpr>& objects, const NormalizedSignature& sig,
                       std::uint64_t seed = 0);

/// Random instance: `arity` sums of at most three distinct products of
/// length at most three, no generator used twice. Fresh object names are
/// added to `sig` when it has too few.
std::vector<ObjExpr> random_instance(std::size_t arity, NormalizedSignature& sig, std::uint64_t seed);

struct CoherenceReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

CoherenceReport check_all_axioms(const NormalizedSignature& sig, std::size_t trials, std::uint64_t seed);

/// Whether two structural morphisms A -> B induce the same sheet
/// permutation. Throws Regularity unless N(A) is regular and TypeError when
/// either side is not structural or not of type A -> B.
bool check_regular_coherence(const ObjExpr& a, const ObjExpr& b, const MorExpr& f, const MorExpr& g,
                             const NormalizedSignature& sig);

/// One rewrite of an object expression by a structural isomorphism applied
/// at a subterm, whiskered by identities.
struct Rewrite {
  MorExpr step;
  ObjExpr target;
};

std::vector<Rewrite> structural_rewrites(const ObjExpr& e);

struct PathReport {
  std::size_t paths = 0;
  std::size_t targets = 0;
  std::vector<std::string> counterexamples;
};

/// Enumerates every path of at most `max_steps` rewrites from `a` and checks
/// that paths with the same target agree.
PathReport check_structural_paths(const ObjExpr& a, std::size_t max_steps, const NormalizedSignature& sig);

}  // namespace rig
