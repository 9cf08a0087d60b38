#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace rig {

/// A product of object generators; the empty word is the unit I.
using Word = std::vector<std::string>;

/// Sum of products of generators. No summands denotes O.
struct NormalForm {
  std::vector<Word> summands;

  NormalForm() = default;
  NormalForm(std::vector<Word> s) : summands(std::move(s)) {}
  NormalForm(std::initializer_list<Word> s) : summands(s) {}

  std::size_t size() const { return summands.size(); }
  bool empty() const { return summands.empty(); }
  const Word& operator[](std::size_t i) const { return summands[i]; }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend auto operator<=>(const NormalForm&, const NormalForm&) = default;
};

bool is_identifier(std::string_view s);

/// Object expression tree over {O, I, generators, +, *}. Immutable, cheap to
/// copy (shared structure).
class ObjExpr {
 public:
  enum class Kind { Zero, One, Gen, Sum, Prod };

  static ObjExpr zero();
  static ObjExpr one();
  static ObjExpr gen(std::string name);
  static ObjExpr sum(ObjExpr lhs, ObjExpr rhs);
  static ObjExpr prod(ObjExpr lhs, ObjExpr rhs);

  Kind kind() const;
  const std::string& name() const;
  const ObjExpr& lhs() const;
  const ObjExpr& rhs() const;

  /// Renders in the text grammar; parse(to_string(e)) rebuilds the same tree.
  std::string to_string() const;

  friend bool operator==(const ObjExpr& a, const ObjExpr& b);

 private:
  struct Node;
  explicit ObjExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses `+` (lowest, left-assoc), `*` (left-assoc), parentheses,
/// identifiers, and the reserved `O` and `I`.
ObjExpr parse_obj_expr(std::string_view text);

NormalForm normalize(const ObjExpr& e);

/// Left-major pairwise concatenation of summands.
NormalForm nf_product(const NormalForm& a, const NormalForm& b);

NormalForm nf_sum(const NormalForm& a, const NormalForm& b);

bool is_regular(const NormalForm& n);

/// Re-embeds a normal form, right-associating sums and products.
ObjExpr embed(const NormalForm& n);
ObjExpr embed(const Word& w);

std::string to_string(const Word& w);
std::string to_string(const NormalForm& n);

/// Every generator name occurring in the expression, in first-occurrence order.
std::vector<std::string> generators_of(const ObjExpr& e);

}  // namespace rig
