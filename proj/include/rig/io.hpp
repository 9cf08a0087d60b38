#pragma once

#include <string>
#include <string_view>

#include "rig/diagram.hpp"
#include "rig/eval.hpp"
#include "rig/signature.hpp"

namespace rig {

/// Throws Syntax (with line and column) or Schema (naming the field).
SheetDiagram parse_diagram(std::string_view text);
/// Canonical form: two-space indent, fields in fixed order.
std::string serialize_diagram(const SheetDiagram& d);

BimonoidalSignature parse_signature(std::string_view text);
std::string serialize_signature(const BimonoidalSignature& s);

/// Tables are read against the signature so elements can be resolved.
EvalModel parse_model(std::string_view text, const NormalizedSignature& sig);
std::string serialize_model(const EvalModel& m, const NormalizedSignature& sig);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace rig
