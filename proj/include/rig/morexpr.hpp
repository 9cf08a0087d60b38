#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rig/expr.hpp"

namespace rig {

/// Morphism expressions of the free bimonoidal category: the compiler's
/// source language. `compose(a, b)` is a ∘ b (b runs first).
class MorExpr {
 public:
  enum class Kind {
    Gen,
    Id,
    Compose,
    Sum,
    Prod,
    Sym,       // A+B -> B+A
    DeltaL,    // A(B+C) -> AB+AC
    DeltaR,    // (A+B)C -> AC+BC
    LAnn,      // O*A -> O
    RAnn,      // A*O -> O
    AssocMul,  // A(BC) -> (AB)C
    AssocAdd,  // A+(B+C) -> (A+B)+C
    UnitLMul,  // I*A -> A
    UnitRMul,  // A*I -> A
    UnitLAdd,  // O+A -> A
    UnitRAdd,  // A+O -> A
    Inverse,   // inverse of a structural expression
  };

  static MorExpr gen(std::string name);
  static MorExpr id(ObjExpr a);
  static MorExpr compose(MorExpr after, MorExpr before);
  static MorExpr sum(MorExpr a, MorExpr b);
  static MorExpr prod(MorExpr a, MorExpr b);
  static MorExpr sym(ObjExpr a, ObjExpr b);
  static MorExpr delta_l(ObjExpr a, ObjExpr b, ObjExpr c);
  static MorExpr delta_r(ObjExpr a, ObjExpr b, ObjExpr c);
  static MorExpr lann(ObjExpr a);
  static MorExpr rann(ObjExpr a);
  static MorExpr assoc_mul(ObjExpr a, ObjExpr b, ObjExpr c);
  static MorExpr assoc_add(ObjExpr a, ObjExpr b, ObjExpr c);
  static MorExpr unit_l_mul(ObjExpr a);
  static MorExpr unit_r_mul(ObjExpr a);
  static MorExpr unit_l_add(ObjExpr a);
  static MorExpr unit_r_add(ObjExpr a);
  static MorExpr inverse(MorExpr m);

  Kind kind() const;
  const std::string& name() const;
  const std::vector<ObjExpr>& objects() const;
  const std::vector<MorExpr>& children() const;

  /// True when built only from identities, structural isomorphisms and the
  /// three operations (no signature generators).
  bool is_structural() const;

  /// Number of constructors in the tree (object arguments not counted).
  std::size_t size() const;

  std::string to_string() const;

  friend bool operator==(const MorExpr& a, const MorExpr& b);

 private:
  struct Node;
  explicit MorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar: `f`, `id(X)`, `m1 ; m2` (diagrammatic order), `m1 + m2`,
/// `m1 * m2`, `sym(A,B)`, `dl(A,B,C)`, `dr(A,B,C)`, `lann(A)`, `rann(A)`,
/// `assoc(A,B,C)`, `assoc_add(A,B,C)`, `lunit(A)`, `runit(A)`,
/// `lunit_add(A)`, `runit_add(A)`, `inv(m)`; precedence `;` < `+` < `*`.
MorExpr parse_mor_expr(std::string_view text);

/// Δ_{p,q} : (ΣA_i)(ΣB_j) -> Σ_i Σ_j A_i B_j, by repeated distribution.
MorExpr delta_chain(std::size_t p, std::size_t q, const std::vector<Word>& left,
                    const std::vector<Word>& right);

/// n_e : e -> N(e), built from structural constructors only.
MorExpr normalization_morphism(const ObjExpr& e);

/// Number of DeltaL/DeltaR nodes in an expression.
std::size_t count_distributors(const MorExpr& m);

}  // namespace rig
