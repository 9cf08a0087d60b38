#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rig/diagram.hpp"
#include "rig/expr.hpp"
#include "rig/signature.hpp"

namespace rig {

/// An element of a normalized object in the finite-set model: a summand
/// index and one carrier token index per wire of that summand.
struct Element {
  std::size_t summand = 0;
  std::vector<std::size_t> tokens;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Function table indexed by the domain's enumeration order.
using FunctionTable = std::vector<Element>;

struct EvalModel {
  std::map<std::string, std::vector<std::string>> carriers;
  std::map<std::string, FunctionTable> tables;

  friend bool operator==(const EvalModel&, const EvalModel&) = default;
};

/// Enumeration of the elements of a normal form: summands in order, tuples
/// row-major (last wire varies fastest).
class ObjectSpace {
 public:
  ObjectSpace() = default;
  ObjectSpace(const NormalForm& nf, const EvalModel& model);

  std::size_t size() const { return total_; }
  std::size_t index(const Element& e) const;
  Element element(std::size_t index) const;
  std::vector<Element> elements() const;
  const NormalForm& type() const { return nf_; }

 private:
  NormalForm nf_;
  std::vector<std::vector<std::size_t>> radix_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> count_;
  std::size_t total_ = 0;
};

/// Throws MissingCarrier.
ObjectSpace eval_object(const NormalForm& nf, const EvalModel& m);

/// Image of one element under the diagram.
Element eval_element(const TypedDiagram& d, const NormalizedSignature& sig, const EvalModel& m,
                     const Element& input);

/// Table of the diagram on eval_object(dom d). Throws MissingTable.
FunctionTable eval_diagram(const TypedDiagram& d, const NormalizedSignature& sig,
                           const EvalModel& m);

/// Deterministic in `seed`; carriers of size 1..max_carrier, uniformly
/// random total tables. Generators feeding a morphism into O get empty
/// carriers so that a total table exists.
EvalModel random_model(const NormalizedSignature& sig, std::uint64_t seed, std::size_t max_carrier);

/// Checks carriers and table shapes against the signature.
void check_model(const EvalModel& m, const NormalizedSignature& sig);

/// `j:(t1,t2,...)` using the carrier token names.
std::string format_element(const Element& e, const NormalForm& nf, const EvalModel& m);
Element parse_element(const std::string& text, const NormalForm& nf, const EvalModel& m);

}  // namespace rig
