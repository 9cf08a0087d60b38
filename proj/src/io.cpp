#include "rig/io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "rig/error.hpp"

namespace rig {

namespace {

YAML::Node load(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorKind::Syntax, "line " + std::to_string(e.mark.line + 1) + ", column " +
                                       std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
}

[[noreturn]] void schema(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::Schema, "field '" + field + "': " + why);
}

void only_keys(const YAML::Node& n, const std::string& where, std::set<std::string> allowed) {
  for (const auto& kv : n) {
    std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) schema(where + key, "unknown field");
  }
}

const YAML::Node require(const YAML::Node& parent, const std::string& key, const std::string& where) {
  if (!parent.IsMap()) schema(where, "expected a mapping");
  YAML::Node n = parent[key];
  if (!n) schema(where + key, "missing");
  return n;
}

std::size_t as_count(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) schema(field, "expected a non-negative integer");
  const std::string& s = n.Scalar();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    schema(field, "expected a non-negative integer, got '" + s + "'");
  return std::stoul(s);
}

std::string as_name(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar() || !is_identifier(n.Scalar())) schema(field, "expected an identifier");
  return n.Scalar();
}

std::vector<std::size_t> as_counts(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) schema(field, "expected a list of counts");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n.size(); ++i)
    out.push_back(as_count(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Word as_word(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) schema(field, "expected a list of labels");
  Word w;
  for (std::size_t i = 0; i < n.size(); ++i) w.push_back(as_name(n[i], field + "[" + std::to_string(i) + "]"));
  return w;
}

template <class T, class F>
std::string list(const std::vector<T>& xs, F show) {
  if (xs.empty()) return "[]";
  std::string s = "[ ";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += show(xs[i]);
  }
  return s + " ]";
}

std::string counts(const std::vector<std::size_t>& xs) {
  return list(xs, [](std::size_t x) { return std::to_string(x); });
}
std::string words(const Word& w) {
  return list(w, [](const std::string& x) { return x; });
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SheetDiagram parse_diagram(std::string_view text) {
  YAML::Node root = load(text);
  if (!root.IsMap()) schema("<document>", "expected a mapping");
  only_keys(root, "", {"inputs", "labels", "slices"});
  SheetDiagram d;
  for (std::size_t w : as_counts(require(root, "inputs", ""), "inputs")) d.inputs.push_back({w, {}});

  if (YAML::Node labels = root["labels"]) {
    if (!labels.IsSequence() || labels.size() != d.inputs.size())
      schema("labels", "expected one label list per input sheet");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::string field = "labels[" + std::to_string(i) + "]";
      Word w = as_word(labels[i], field);
      if (w.size() != d.inputs[i].wires) schema(field, "expected one label per wire");
      d.inputs[i].labels = std::move(w);
    }
  }

  YAML::Node slices = root["slices"];
  if (slices && !slices.IsNull()) {
    if (!slices.IsSequence()) schema("slices", "expected a list");
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const YAML::Node s = slices[i];
      const std::string where = "slices[" + std::to_string(i) + "].";
      if (!s.IsMap()) schema(where.substr(0, where.size() - 1), "expected a mapping");
      std::string kind = "seam";
      if (s["kind"]) kind = s["kind"].as<std::string>();
      if (kind == "swap") {
        only_keys(s, where, {"kind", "offset"});
        d.slices.push_back(Swap{as_count(require(s, "offset", where), where + "offset")});
        continue;
      }
      if (kind != "seam") schema(where + "kind", "expected 'seam' or 'swap'");
      only_keys(s, where, {"kind", "offset", "inputs", "outputs", "passthrough", "nodes"});
      Seam seam;
      seam.offset = as_count(require(s, "offset", where), where + "offset");
      seam.inputs = as_count(require(s, "inputs", where), where + "inputs");
      seam.outputs = as_count(require(s, "outputs", where), where + "outputs");
      if (s["passthrough"]) seam.passthrough = as_word(s["passthrough"], where + "passthrough");
      if (!seam.passthrough.empty() && seam.inputs != 0)
        schema(where + "passthrough", "only allowed on seams without input sheets");
      YAML::Node nodes = require(s, "nodes", where);
      if (!nodes.IsSequence()) schema(where + "nodes", "expected a list");
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const YAML::Node n = nodes[k];
        const std::string nw = where + "nodes[" + std::to_string(k) + "].";
        if (!n.IsMap()) schema(nw.substr(0, nw.size() - 1), "expected a mapping");
        only_keys(n, nw, {"offset", "label", "inputs", "outputs"});
        SeamNode node;
        node.offset = as_count(require(n, "offset", nw), nw + "offset");
        if (n["label"]) node.label = as_name(n["label"], nw + "label");
        node.inputs = as_counts(require(n, "inputs", nw), nw + "inputs");
        node.outputs = as_counts(require(n, "outputs", nw), nw + "outputs");
        if (node.inputs.size() != seam.inputs) schema(nw + "inputs", "length differs from the seam's inputs");
        if (node.outputs.size() != seam.outputs)
          schema(nw + "outputs", "length differs from the seam's outputs");
        seam.nodes.push_back(std::move(node));
      }
      d.slices.push_back(std::move(seam));
    }
  }
  return d;
}

std::string serialize_diagram(const SheetDiagram& d) {
  std::ostringstream out;
  std::vector<std::size_t> wires;
  bool labeled = true;
  std::size_t total = 0;
  for (const InputSheet& s : d.inputs) {
    wires.push_back(s.wires);
    total += s.wires;
    labeled = labeled && s.labels.size() == s.wires;
  }
  out << "inputs: " << counts(wires) << "\n";
  if (labeled && total > 0)
    out << "labels: " << list(d.inputs, [](const InputSheet& s) { return words(s.labels); }) << "\n";
  if (d.slices.empty()) {
    out << "slices: []\n";
    return out.str();
  }
  out << "slices:\n";
  for (const Slice& slice : d.slices) {
    if (const Swap* sw = std::get_if<Swap>(&slice)) {
      out << "- kind: swap\n  offset: " << sw->offset << "\n";
      continue;
    }
    const Seam& s = std::get<Seam>(slice);
    out << "- offset: " << s.offset << "\n";
    out << "  inputs: " << s.inputs << "\n";
    out << "  outputs: " << s.outputs << "\n";
    if (!s.passthrough.empty()) out << "  passthrough: " << words(s.passthrough) << "\n";
    if (s.nodes.empty()) {
      out << "  nodes: []\n";
      continue;
    }
    out << "  nodes:\n";
    for (const SeamNode& n : s.nodes) {
      out << "  - offset: " << n.offset << "\n";
      if (!n.label.empty()) out << "    label: " << n.label << "\n";
      out << "    inputs: " << counts(n.inputs) << "\n";
      out << "    outputs: " << counts(n.outputs) << "\n";
    }
  }
  return out.str();
}

BimonoidalSignature parse_signature(std::string_view text) {
  YAML::Node root = load(text);
  BimonoidalSignature s;
  if (root.IsNull()) return s;
  if (!root.IsMap()) schema("<document>", "expected a mapping");
  only_keys(root, "", {"objects", "morphisms"});
  if (YAML::Node objs = root["objects"]; objs && !objs.IsNull()) s.objects = as_word(objs, "objects");
  if (YAML::Node mors = root["morphisms"]; mors && !mors.IsNull()) {
    if (!mors.IsMap()) schema("morphisms", "expected a mapping");
    for (const auto& kv : mors) {
      std::string name = as_name(kv.first, "morphisms");
      const std::string where = "morphisms." + name + ".";
      only_keys(kv.second, where, {"dom", "cod"});
      auto expr = [&](const char* key) {
        YAML::Node n = require(kv.second, key, where);
        if (!n.IsScalar()) schema(where + key, "expected an object expression");
        try {
          return parse_obj_expr(n.Scalar());
        } catch (const Error& e) {
          throw Error(ErrorKind::Syntax, where + key + ": " + e.what());
        }
      };
      ObjExpr dom = expr("dom");
      ObjExpr cod = expr("cod");
      s.morphisms.push_back({name, {dom, cod}});
    }
  }
  s.check();
  return s;
}

std::string serialize_signature(const BimonoidalSignature& s) {
  std::ostringstream out;
  out << "objects: " << words(s.objects) << "\n";
  if (s.morphisms.empty()) {
    out << "morphisms: {}\n";
    return out.str();
  }
  out << "morphisms:\n";
  for (const auto& [name, t] : s.morphisms)
    out << "  " << name << ": { dom: " << quote(t.dom.to_string()) << ", cod: " << quote(t.cod.to_string())
        << " }\n";
  return out.str();
}

EvalModel parse_model(std::string_view text, const NormalizedSignature& sig) {
  YAML::Node root = load(text);
  EvalModel m;
  if (root.IsNull()) {
    check_model(m, sig);
    return m;
  }
  if (!root.IsMap()) schema("<document>", "expected a mapping");
  only_keys(root, "", {"carriers", "tables"});
  if (YAML::Node c = root["carriers"]; c && !c.IsNull()) {
    if (!c.IsMap()) schema("carriers", "expected a mapping");
    for (const auto& kv : c) {
      std::string obj = as_name(kv.first, "carriers");
      if (!kv.second.IsSequence()) schema("carriers." + obj, "expected a token list");
      std::vector<std::string> tokens;
      for (const auto& t : kv.second) {
        if (!t.IsScalar() || t.Scalar().empty()) schema("carriers." + obj, "expected token names");
        tokens.push_back(t.Scalar());
      }
      m.carriers[obj] = std::move(tokens);
    }
  }
  if (YAML::Node t = root["tables"]; t && !t.IsNull()) {
    if (!t.IsMap()) schema("tables", "expected a mapping");
    for (const auto& kv : t) {
      std::string name = as_name(kv.first, "tables");
      const NormalizedMorphism& f = sig.at(name);
      ObjectSpace dom(f.dom, m);
      FunctionTable table(dom.size());
      std::vector<bool> seen(dom.size(), false);
      if (!kv.second.IsMap() && !kv.second.IsNull()) schema("tables." + name, "expected a mapping");
      if (kv.second.IsMap())
        for (const auto& entry : kv.second) {
          Element in = parse_element(entry.first.as<std::string>(), f.dom, m);
          Element out = parse_element(entry.second.as<std::string>(), f.cod, m);
          std::size_t i = dom.index(in);
          if (seen[i]) schema("tables." + name, "duplicate entry for " + entry.first.as<std::string>());
          seen[i] = true;
          table[i] = std::move(out);
        }
      for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
          throw Error(ErrorKind::MissingTable,
                      "table for '" + name + "' misses " + format_element(dom.element(i), f.dom, m));
      m.tables[name] = std::move(table);
    }
  }
  check_model(m, sig);
  return m;
}

std::string serialize_model(const EvalModel& m, const NormalizedSignature& sig) {
  std::ostringstream out;
  if (m.carriers.empty()) {
    out << "carriers: {}\n";
  } else {
    out << "carriers:\n";
    for (const auto& [obj, tokens] : m.carriers) out << "  " << obj << ": " << words(tokens) << "\n";
  }
  if (m.tables.empty()) {
    out << "tables: {}\n";
    return out.str();
  }
  out << "tables:\n";
  for (const auto& [name, table] : m.tables) {
    const NormalizedMorphism& f = sig.at(name);
    ObjectSpace dom(f.dom, m);
    if (table.empty()) {
      out << "  " << name << ": {}\n";
      continue;
    }
    out << "  " << name << ":\n";
    for (std::size_t i = 0; i < table.size(); ++i)
      out << "    " << quote(format_element(dom.element(i), f.dom, m)) << ": "
          << quote(format_element(table[i], f.cod, m)) << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Schema, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Schema, "cannot write '" + path + "'");
  out << content;
}

}  // namespace rig
