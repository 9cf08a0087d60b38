#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <optional>
#include <sstream>

#include "rig/algebra.hpp"
#include "rig/coherence.hpp"
#include "rig/equiv.hpp"
#include "rig/error.hpp"
#include "rig/eval.hpp"
#include "rig/io.hpp"
#include "rig/render.hpp"

using namespace rig;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUnknown = 2, kUsage = 3 };

NormalizedSignature load_sig(const std::string& path) {
  if (path.empty()) return {};
  return normalize_signature(parse_signature(read_file(path)));
}

SheetDiagram load_diagram(const std::string& path) { return parse_diagram(read_file(path)); }

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file(out, text);
}

std::string perm_text(const std::vector<std::size_t>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

std::vector<ObjExpr> parse_objects(const std::string& list) {
  std::vector<ObjExpr> out;
  if (list.empty()) return out;
  // Commas inside parentheses belong to the expression.
  std::string cur;
  int depth = 0;
  for (char c : list) {
    if (c == ',' && depth == 0) {
      out.push_back(parse_obj_expr(cur));
      cur.clear();
      continue;
    }
    depth += (c == '(') - (c == ')');
    cur += c;
  }
  out.push_back(parse_obj_expr(cur));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigsheet: sheet diagrams for free bimonoidal categories"};
  app.require_subcommand(1);

  std::string sig_path, out, a_path, b_path, expr;

  auto* validate_cmd = app.add_subcommand("validate", "Type-check a diagram");
  validate_cmd->add_option("diagram", a_path)->required();
  validate_cmd->add_option("--sig", sig_path)->required();

  auto* compile_cmd = app.add_subcommand("compile", "Compile a morphism expression to a diagram");
  compile_cmd->add_option("expr", expr)->required();
  compile_cmd->add_option("--sig", sig_path)->required();
  compile_cmd->add_option("-o,--output", out);

  auto* compose_cmd = app.add_subcommand("compose", "Stack b on top of a");
  auto* sum_cmd = app.add_subcommand("sum", "Place b to the right of a");
  auto* tensor_cmd = app.add_subcommand("tensor", "Tensor product of a and b");
  for (auto* c : {compose_cmd, sum_cmd, tensor_cmd}) {
    c->add_option("a", a_path)->required();
    c->add_option("b", b_path)->required();
    c->add_option("-o,--output", out);
  }
  compose_cmd->add_option("--sig", sig_path)->required();
  tensor_cmd->add_option("--sig", sig_path)->required();

  bool show_regular = false;
  auto* normalize_cmd = app.add_subcommand("normalize", "Normal form of an object expression");
  normalize_cmd->add_option("--expr", expr)->required();
  normalize_cmd->add_flag("--regular", show_regular, "Also report regularity");

  EquivOptions eopts;
  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two diagrams");
  equiv_cmd->add_option("a", a_path)->required();
  equiv_cmd->add_option("b", b_path)->required();
  equiv_cmd->add_option("--sig", sig_path, "Signature (empty when omitted)");
  equiv_cmd->add_option("--budget", eopts.budget);
  equiv_cmd->add_option("--seed", eopts.seed);
  equiv_cmd->add_option("--models", eopts.models);

  std::string model_path, input_text;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a diagram in a finite-set model");
  eval_cmd->add_option("diagram", a_path)->required();
  eval_cmd->add_option("--sig", sig_path)->required();
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--input", input_text);

  std::string axiom, objects;
  bool all = false;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  auto* coherence_cmd = app.add_subcommand("coherence", "Check coherence axioms");
  coherence_cmd->add_option("sig", sig_path)->required();
  auto* axiom_opt = coherence_cmd->add_option("--axiom", axiom);
  coherence_cmd->add_option("--objects", objects);
  auto* all_opt = coherence_cmd->add_flag("--all", all);
  coherence_cmd->add_option("--trials", trials);
  coherence_cmd->add_option("--seed", seed);
  axiom_opt->excludes(all_opt);

  RenderStyle style;
  std::string skew;
  auto* render_cmd = app.add_subcommand("render", "Render a diagram as SVG");
  render_cmd->add_option("diagram", a_path)->required();
  render_cmd->add_option("-o,--output", out);
  render_cmd->add_option("--skew", skew, "dx,dy");
  render_cmd->add_option("--scale", style.scale);

  auto* baez_cmd = app.add_subcommand("baez", "Permutation induced by a diagram on the empty signature");
  baez_cmd->add_option("diagram", a_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) {
      NormalizedSignature sig = load_sig(sig_path);
      try {
        TypedDiagram t = validate(load_diagram(a_path), sig);
        std::cout << "valid: " << to_string(t.domain()) << " -> " << to_string(t.codomain()) << "\n";
        return kOk;
      } catch (const Error& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kNegative;
      }
    }
    if (*compile_cmd) {
      NormalizedSignature sig = load_sig(sig_path);
      emit(out, serialize_diagram(compile(parse_mor_expr(expr), sig)));
      return kOk;
    }
    if (*compose_cmd) {
      emit(out, serialize_diagram(compose(load_diagram(a_path), load_diagram(b_path), load_sig(sig_path))));
      return kOk;
    }
    if (*sum_cmd) {
      emit(out, serialize_diagram(sum(load_diagram(a_path), load_diagram(b_path))));
      return kOk;
    }
    if (*tensor_cmd) {
      emit(out, serialize_diagram(tensor(load_diagram(a_path), load_diagram(b_path), load_sig(sig_path))));
      return kOk;
    }
    if (*normalize_cmd) {
      NormalForm nf = normalize(parse_obj_expr(expr));
      std::cout << to_string(nf) << "\n";
      if (show_regular) std::cout << "regular: " << (is_regular(nf) ? "yes" : "no") << "\n";
      return kOk;
    }
    if (*equiv_cmd) {
      NormalizedSignature sig = load_sig(sig_path);
      SheetDiagram a = load_diagram(a_path), b = load_diagram(b_path);
      EquivVerdict v = decide_equiv(a, b, sig, eopts);
      switch (v.kind) {
        case EquivVerdict::Kind::Equivalent:
          std::cout << "Equivalent (" << v.trace.size() << " moves, " << v.states << " states)\n";
          for (const TraceStep& s : v.trace)
            std::cout << "  " << (s.target ? "undo " : "") << s.move.to_string() << "\n";
          return kOk;
        case EquivVerdict::Kind::Distinct:
          std::cout << "Distinct";
          if (!v.reason.empty()) std::cout << ": " << v.reason;
          std::cout << "\n";
          if (v.witness) {
            TypedDiagram ta = validate(a, sig), tb = validate(b, sig);
            const EvalModel& m = v.witness->model;
            std::cout << "  input " << format_element(v.witness->input, ta.domain(), m) << "\n";
            std::cout << "  left  " << format_element(v.witness->left, ta.codomain(), m) << "\n";
            std::cout << "  right " << format_element(v.witness->right, tb.codomain(), m) << "\n";
            std::cout << "  model:\n" << serialize_model(m, sig);
          }
          return kNegative;
        case EquivVerdict::Kind::Unknown:
          std::cout << "Unknown (" << v.states << " states)";
          if (!v.reason.empty()) std::cout << ": " << v.reason;
          std::cout << "\n";
          return kUnknown;
      }
    }
    if (*eval_cmd) {
      NormalizedSignature sig = load_sig(sig_path);
      TypedDiagram t = validate(load_diagram(a_path), sig);
      EvalModel m = parse_model(read_file(model_path), sig);
      if (!input_text.empty()) {
        Element in = parse_element(input_text, t.domain(), m);
        std::cout << format_element(eval_element(t, sig, m, in), t.codomain(), m) << "\n";
        return kOk;
      }
      ObjectSpace dom = eval_object(t.domain(), m);
      FunctionTable table = eval_diagram(t, sig, m);
      for (std::size_t i = 0; i < table.size(); ++i)
        std::cout << format_element(dom.element(i), t.domain(), m) << " -> "
                  << format_element(table[i], t.codomain(), m) << "\n";
      return kOk;
    }
    if (*coherence_cmd) {
      NormalizedSignature sig = load_sig(sig_path);
      if (all) {
        CoherenceReport r = check_all_axioms(sig, trials, seed);
        std::cout << r.checks << " checks, " << r.failures.size() << " failures\n";
        for (const std::string& f : r.failures) std::cout << f;
        return r.ok() ? kOk : kNegative;
      }
      if (axiom.empty()) {
        std::cerr << "coherence: give --axiom or --all\n";
        return kUsage;
      }
      std::optional<AxiomId> id = parse_axiom(axiom);
      if (!id) {
        std::cerr << "coherence: unknown axiom " << axiom << "\n";
        return kUsage;
      }
      AxiomCheck c = check_axiom(*id, parse_objects(objects), sig, seed);
      std::cout << c.trace << (c.holds ? "holds\n" : "fails\n");
      return c.holds ? kOk : kNegative;
    }
    if (*render_cmd) {
      if (!skew.empty()) {
        std::size_t comma = skew.find(',');
        if (comma == std::string::npos) {
          std::cerr << "render: --skew expects dx,dy\n";
          return kUsage;
        }
        style.skew_dx = std::stod(skew.substr(0, comma));
        style.skew_dy = std::stod(skew.substr(comma + 1));
      }
      emit(out, render_svg(load_diagram(a_path), style));
      return kOk;
    }
    if (*baez_cmd) {
      SheetDiagram d = load_diagram(a_path);
      std::cout << perm_text(permutation_of(d, NormalizedSignature{})) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}
