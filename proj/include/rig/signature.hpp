#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rig/expr.hpp"

namespace rig {

struct MorphismType {
  ObjExpr dom;
  ObjExpr cod;
};

struct BimonoidalSignature {
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, MorphismType>> morphisms;

  /// Throws on duplicate names or undeclared generators.
  void check() const;
};

struct NormalizedMorphism {
  NormalForm dom;
  NormalForm cod;
  friend bool operator==(const NormalizedMorphism&, const NormalizedMorphism&) = default;
};

class NormalizedSignature {
 public:
  NormalizedSignature() = default;

  void add_object(const std::string& name);
  void add_morphism(const std::string& name, NormalForm dom, NormalForm cod);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& morphism_names() const { return order_; }
  bool has_object(const std::string& name) const;
  bool has_morphism(const std::string& name) const { return morphisms_.count(name) != 0; }

  /// Throws UnknownMorphism.
  const NormalizedMorphism& at(const std::string& name) const;

  bool empty() const { return objects_.empty() && order_.empty(); }

  friend bool operator==(const NormalizedSignature&, const NormalizedSignature&) = default;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> order_;
  std::map<std::string, NormalizedMorphism> morphisms_;
};

NormalizedSignature normalize_signature(const BimonoidalSignature& s);

/// One factor of a Γ-generator: a signature morphism or an identity on a
/// nonempty word.
struct GammaEntry {
  enum class Kind { Morphism, Identity };
  Kind kind;
  std::string name;  // Morphism
  Word word;         // Identity

  static GammaEntry morphism(std::string n) { return {Kind::Morphism, std::move(n), {}}; }
  static GammaEntry identity(Word w) { return {Kind::Identity, {}, std::move(w)}; }
  bool is_morphism() const { return kind == Kind::Morphism; }

  friend bool operator==(const GammaEntry&, const GammaEntry&) = default;
  friend auto operator<=>(const GammaEntry&, const GammaEntry&) = default;
};

/// A morphism generator of the derived monoidal signature: an ordered list of
/// factors whose domain is the normalized product of the factors' domains.
struct GammaGenerator {
  std::vector<GammaEntry> entries;

  /// Merges adjacent identities and drops empty ones.
  static GammaGenerator canonical(std::vector<GammaEntry> entries);

  std::size_t morphism_count() const;
  std::string to_string() const;

  friend bool operator==(const GammaGenerator&, const GammaGenerator&) = default;
  friend auto operator<=>(const GammaGenerator&, const GammaGenerator&) = default;
};

enum class Side { Dom, Cod };

/// Normalized boundary of a Γ-generator with provenance. For summand j,
/// `choices[j][i]` is the summand of factor i's boundary that was picked and
/// `origins[j][k]` the factor that contributed wire k.
struct GammaBoundary {
  NormalForm nf;
  std::vector<std::vector<std::size_t>> choices;
  std::vector<std::vector<std::size_t>> origins;
  /// Summand count of each factor's boundary (1 for identities).
  std::vector<std::size_t> radix;
};

GammaBoundary gamma_boundary(const GammaGenerator& g, const NormalizedSignature& sig, Side side);
NormalForm gamma_dom(const GammaGenerator& g, const NormalizedSignature& sig);
NormalForm gamma_cod(const GammaGenerator& g, const NormalizedSignature& sig);
std::vector<std::vector<std::size_t>> origins(const GammaGenerator& g,
                                              const NormalizedSignature& sig, Side side);

/// Boundary of a single factor: the morphism's dom/cod, or [word] for identities.
NormalForm entry_boundary(const GammaEntry& e, const NormalizedSignature& sig, Side side);

}  // namespace rig
