#include "rig/coherence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rig/algebra.hpp"
#include "rig/equiv.hpp"
#include "rig/error.hpp"
#include "rig/eval.hpp"

namespace rig {

namespace {

using M = MorExpr;
using Ob = ObjExpr;

Ob add(const Ob& a, const Ob& b) { return Ob::sum(a, b); }
Ob mul(const Ob& a, const Ob& b) { return Ob::prod(a, b); }
M after(const M& g, const M& f) { return M::compose(g, f); }
M after(const M& h, const M& g, const M& f) { return M::compose(h, M::compose(g, f)); }
M after(const M& k, const M& h, const M& g, const M& f) { return M::compose(k, after(h, g, f)); }

struct AxiomInfo {
  AxiomId id;
  const char* name;
  std::size_t arity;
};

constexpr AxiomInfo kAxioms[] = {
    {AxiomId::I, "I", 3},       {AxiomId::III, "III", 3},   {AxiomId::IV, "IV", 4},
    {AxiomId::V, "V", 4},       {AxiomId::VI, "VI", 4},     {AxiomId::VII, "VII", 4},
    {AxiomId::VIII, "VIII", 4}, {AxiomId::IX, "IX", 4},     {AxiomId::X, "X", 0},
    {AxiomId::XI, "XI", 2},     {AxiomId::XII, "XII", 2},   {AxiomId::XIII, "XIII", 0},
    {AxiomId::XIV, "XIV", 0},   {AxiomId::XVI, "XVI", 2},   {AxiomId::XVII, "XVII", 2},
    {AxiomId::XVIII, "XVIII", 2}, {AxiomId::XIX, "XIX", 2}, {AxiomId::XX, "XX", 2},
    {AxiomId::XXI, "XXI", 2},   {AxiomId::XXII, "XXII", 2}, {AxiomId::XXIII, "XXIII", 2},
    {AxiomId::XXIV, "XXIV", 2},
};

const AxiomInfo& info(AxiomId id) {
  for (const auto& a : kAxioms)
    if (a.id == id) return a;
  throw Error(ErrorKind::Internal, "unknown axiom");
}

std::string perm_string(const std::vector<std::size_t>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

std::vector<std::size_t> then(const std::vector<std::size_t>& first, const std::vector<std::size_t>& second) {
  std::vector<std::size_t> r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
  return r;
}

std::vector<std::size_t> structural_permutation(const MorExpr& m, const NormalizedSignature& sig) {
  if (!m.is_structural()) throw Error(ErrorKind::TypeError, "not structural: " + m.to_string());
  return swap_permutation(compile(m, sig));
}

}  // namespace

const std::vector<AxiomId>& all_axioms() {
  static const std::vector<AxiomId> ids = [] {
    std::vector<AxiomId> v;
    for (const auto& a : kAxioms) v.push_back(a.id);
    return v;
  }();
  return ids;
}

std::string_view to_string(AxiomId id) { return info(id).name; }

std::optional<AxiomId> parse_axiom(std::string_view roman) {
  for (const auto& a : kAxioms)
    if (roman == a.name) return a.id;
  return std::nullopt;
}

std::size_t axiom_arity(AxiomId id) { return info(id).arity; }

std::pair<MorExpr, MorExpr> axiom_sides(AxiomId id, const std::vector<ObjExpr>& objects) {
  const AxiomInfo& ax = info(id);
  if (objects.size() != ax.arity)
    throw Error(ErrorKind::Arity, "axiom " + std::string(ax.name) + " takes " + std::to_string(ax.arity) +
                                      " objects, got " + std::to_string(objects.size()));
  const Ob O = Ob::zero(), I = Ob::one();
  auto at = [&](std::size_t i) { return objects.at(i); };
  auto id_ = [](const Ob& x) { return M::id(x); };

  switch (id) {
    case AxiomId::I: {
      Ob A = at(0), B = at(1), C = at(2);
      return {after(M::sym(mul(A, B), mul(A, C)), M::delta_l(A, B, C)),
              after(M::delta_l(A, C, B), M::prod(id_(A), M::sym(B, C)))};
    }
    case AxiomId::III: {
      Ob A = at(0), B = at(1), C = at(2);
      return {after(M::sym(mul(A, C), mul(B, C)), M::delta_r(A, B, C)),
              after(M::delta_r(B, A, C), M::prod(M::sym(A, B), id_(C)))};
    }
    case AxiomId::IV: {
      Ob A = at(0), B = at(1), C = at(2), D = at(3);
      return {after(M::assoc_add(mul(A, D), mul(B, D), mul(C, D)), M::sum(id_(mul(A, D)), M::delta_r(B, C, D)),
                    M::delta_r(A, add(B, C), D)),
              after(M::sum(M::delta_r(A, B, D), id_(mul(C, D))), M::delta_r(add(A, B), C, D),
                    M::prod(M::assoc_add(A, B, C), id_(D)))};
    }
    case AxiomId::V: {
      Ob A = at(0), B = at(1), C = at(2), D = at(3);
      return {after(M::assoc_add(mul(A, B), mul(A, C), mul(A, D)), M::sum(id_(mul(A, B)), M::delta_l(A, C, D)),
                    M::delta_l(A, B, add(C, D))),
              after(M::sum(M::delta_l(A, B, C), id_(mul(A, D))), M::delta_l(A, add(B, C), D),
                    M::prod(id_(A), M::assoc_add(B, C, D)))};
    }
    case AxiomId::VI: {
      Ob A = at(0), B = at(1), C = at(2), D = at(3);
      return {after(M::sum(M::assoc_mul(A, B, C), M::assoc_mul(A, B, D)), M::delta_l(A, mul(B, C), mul(B, D)),
                    M::prod(id_(A), M::delta_l(B, C, D))),
              after(M::delta_l(mul(A, B), C, D), M::assoc_mul(A, B, add(C, D)))};
    }
    case AxiomId::VII: {
      Ob A = at(0), B = at(1), C = at(2), D = at(3);
      return {after(M::sum(M::assoc_mul(A, C, D), M::assoc_mul(B, C, D)), M::delta_r(A, B, mul(C, D))),
              after(M::delta_r(mul(A, C), mul(B, C), D), M::prod(M::delta_r(A, B, C), id_(D)),
                    M::assoc_mul(add(A, B), C, D))};
    }
    case AxiomId::VIII: {
      Ob A = at(0), B = at(1), C = at(2), D = at(3);
      return {after(M::sum(M::assoc_mul(A, B, D), M::assoc_mul(A, C, D)), M::delta_l(A, mul(B, D), mul(C, D)),
                    M::prod(id_(A), M::delta_r(B, C, D))),
              after(M::delta_r(mul(A, B), mul(A, C), D), M::prod(M::delta_l(A, B, C), id_(D)),
                    M::assoc_mul(A, add(B, C), D))};
    }
    case AxiomId::IX: {
      Ob A = at(0), B = at(1), C = at(2), D = at(3);
      Ob AC = mul(A, C), AD = mul(A, D), BC = mul(B, C), BD = mul(B, D);
      M top = after(M::sum(M::sum(id_(AC), M::sym(AD, BC)), id_(BD)),
                    M::sum(M::inverse(M::assoc_add(AC, AD, BC)), id_(BD)),
                    M::assoc_add(add(AC, AD), BC, BD),
                    after(M::sum(M::delta_l(A, C, D), M::delta_l(B, C, D)), M::delta_r(A, B, add(C, D))));
      M bottom = after(M::sum(M::inverse(M::assoc_add(AC, BC, AD)), id_(BD)),
                       M::assoc_add(add(AC, BC), AD, BD),
                       M::sum(M::delta_r(A, B, C), M::delta_r(A, B, D)), M::delta_l(add(A, B), C, D));
      return {top, bottom};
    }
    case AxiomId::X:
      return {M::lann(O), M::rann(O)};
    case AxiomId::XI: {
      Ob A = at(0), B = at(1);
      return {after(M::unit_l_add(O), M::sum(M::lann(A), M::lann(B)), M::delta_l(O, A, B)), M::lann(add(A, B))};
    }
    case AxiomId::XII: {
      Ob A = at(0), B = at(1);
      return {after(M::unit_l_add(O), M::sum(M::rann(A), M::rann(B)), M::delta_r(A, B, O)), M::rann(add(A, B))};
    }
    case AxiomId::XIII:
      return {M::unit_r_mul(O), M::lann(I)};
    case AxiomId::XIV:
      return {M::unit_l_mul(O), M::rann(I)};
    case AxiomId::XVI: {
      Ob A = at(0), B = at(1);
      return {after(M::lann(B), M::prod(M::lann(A), id_(B)), M::assoc_mul(O, A, B)), M::lann(mul(A, B))};
    }
    case AxiomId::XVII: {
      Ob A = at(0), B = at(1);
      return {after(M::lann(B), M::prod(M::rann(A), id_(B)), M::assoc_mul(A, O, B)),
              after(M::rann(A), M::prod(id_(A), M::lann(B)))};
    }
    case AxiomId::XVIII: {
      Ob A = at(0), B = at(1);
      return {after(M::rann(A), M::prod(id_(A), M::rann(B))), after(M::rann(mul(A, B)), M::assoc_mul(A, B, O))};
    }
    case AxiomId::XIX: {
      Ob A = at(0), B = at(1);
      return {after(M::unit_l_add(mul(A, B)), M::sum(M::rann(A), id_(mul(A, B))), M::delta_l(A, O, B)),
              M::prod(id_(A), M::unit_l_add(B))};
    }
    case AxiomId::XX: {
      Ob A = at(0), B = at(1);
      return {after(M::unit_l_add(mul(B, A)), M::sum(M::lann(A), id_(mul(B, A))), M::delta_r(O, B, A)),
              M::prod(M::unit_l_add(B), id_(A))};
    }
    case AxiomId::XXI: {
      Ob A = at(0), B = at(1);
      return {after(M::unit_r_add(mul(A, B)), M::sum(id_(mul(A, B)), M::rann(A)), M::delta_l(A, B, O)),
              M::prod(id_(A), M::unit_r_add(B))};
    }
    case AxiomId::XXII: {
      Ob A = at(0), B = at(1);
      return {after(M::unit_r_add(mul(A, B)), M::sum(id_(mul(A, B)), M::lann(B)), M::delta_r(A, O, B)),
              M::prod(M::unit_r_add(A), id_(B))};
    }
    case AxiomId::XXIII: {
      Ob A = at(0), B = at(1);
      return {after(M::sum(M::unit_l_mul(A), M::unit_l_mul(B)), M::delta_l(I, A, B)), M::unit_l_mul(add(A, B))};
    }
    case AxiomId::XXIV: {
      Ob A = at(0), B = at(1);
      return {after(M::sum(M::unit_r_mul(A), M::unit_r_mul(B)), M::delta_r(A, B, I)), M::unit_r_mul(add(A, B))};
    }
  }
  throw Error(ErrorKind::Internal, "unknown axiom");
}

AxiomCheck check_axiom(AxiomId id, const std::vector<ObjExpr>& objects, const NormalizedSignature& sig,
                       std::uint64_t seed) {
  auto [lhs, rhs] = axiom_sides(id, objects);
  auto [ldom, lcod] = mor_type(lhs, sig);
  auto [rdom, rcod] = mor_type(rhs, sig);
  if (ldom != rdom || lcod != rcod)
    throw Error(ErrorKind::Internal, "axiom " + std::string(to_string(id)) + " sides have different types");

  AxiomCheck r;
  r.dom = ldom;
  r.cod = lcod;
  SheetDiagram dl = compile(lhs, sig), dr = compile(rhs, sig);
  r.left = swap_permutation(dl);
  r.right = swap_permutation(dr);
  bool semantic = eval_diagram(validate(dl, sig), sig, random_model(sig, seed, 2)) ==
                  eval_diagram(validate(dr, sig), sig, random_model(sig, seed, 2));
  r.holds = r.left == r.right && semantic;

  std::ostringstream t;
  t << "axiom " << to_string(id) << ": " << to_string(r.dom) << " -> " << to_string(r.cod) << "\n";
  t << "  left:  " << lhs.to_string() << "\n         " << perm_string(r.left) << "\n";
  t << "  right: " << rhs.to_string() << "\n         " << perm_string(r.right) << "\n";
  t << "  model: " << (semantic ? "agree" : "differ") << "\n";
  r.trace = t.str();
  return r;
}

std::vector<ObjExpr> random_instance(std::size_t arity, NormalizedSignature& sig, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::vector<std::string> pool = sig.objects();
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t next = 0, fresh = 0;
  auto take = [&]() {
    if (next < pool.size()) return pool[next++];
    std::string name;
    do name = "X" + std::to_string(fresh++);
    while (sig.has_object(name));
    sig.add_object(name);
    return name;
  };

  // Random bracketing of a nonempty list under a binary operation.
  std::function<Ob(const std::vector<Ob>&, std::size_t, std::size_t, bool)> tree =
      [&](const std::vector<Ob>& xs, std::size_t lo, std::size_t hi, bool is_sum) -> Ob {
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + 1 + below(hi - lo - 1);
    Ob l = tree(xs, lo, mid, is_sum), r = tree(xs, mid, hi, is_sum);
    return is_sum ? add(l, r) : mul(l, r);
  };

  std::vector<ObjExpr> out;
  for (std::size_t k = 0; k < arity; ++k) {
    std::size_t summands = below(10) == 0 ? 0 : 1 + below(3);
    if (summands == 0) {
      out.push_back(Ob::zero());
      continue;
    }
    std::vector<Ob> terms;
    bool used_unit = false;
    for (std::size_t s = 0; s < summands; ++s) {
      std::size_t len = (!used_unit && below(10) == 0) ? 0 : 1 + below(3);
      if (len == 0) {
        used_unit = true;
        terms.push_back(Ob::one());
        continue;
      }
      std::vector<Ob> factors;
      for (std::size_t i = 0; i < len; ++i) factors.push_back(Ob::gen(take()));
      terms.push_back(tree(factors, 0, factors.size(), false));
    }
    out.push_back(tree(terms, 0, terms.size(), true));
  }
  return out;
}

CoherenceReport check_all_axioms(const NormalizedSignature& sig, std::size_t trials, std::uint64_t seed) {
  CoherenceReport report;
  NormalizedSignature work = sig;
  std::mt19937_64 seeds(seed);
  for (AxiomId id : all_axioms()) {
    for (std::size_t t = 0; t < trials; ++t) {
      std::uint64_t s = seeds();
      std::vector<ObjExpr> objs = random_instance(axiom_arity(id), work, s);
      AxiomCheck c = check_axiom(id, objs, work, s);
      ++report.checks;
      if (!c.holds) report.failures.push_back(c.trace);
      if (axiom_arity(id) == 0) break;
    }
  }
  return report;
}

bool check_regular_coherence(const ObjExpr& a, const ObjExpr& b, const MorExpr& f, const MorExpr& g,
                             const NormalizedSignature& sig) {
  NormalForm na = normalize(a), nb = normalize(b);
  if (!is_regular(na)) throw Error(ErrorKind::Regularity, "not a regular object: " + to_string(na));
  for (const MorExpr* m : {&f, &g}) {
    if (!m->is_structural()) throw Error(ErrorKind::TypeError, "not structural: " + m->to_string());
    auto [dom, cod] = mor_type(*m, sig);
    if (dom != na || cod != nb)
      throw Error(ErrorKind::TypeError, m->to_string() + " is not a morphism " + a.to_string() + " -> " +
                                            b.to_string());
  }
  return structural_permutation(f, sig) == structural_permutation(g, sig);
}

std::vector<Rewrite> structural_rewrites(const ObjExpr& e) {
  std::vector<Rewrite> out;
  if (e.kind() == Ob::Kind::Sum) {
    const Ob &x = e.lhs(), &y = e.rhs();
    out.push_back({M::sym(x, y), add(y, x)});
    if (y.kind() == Ob::Kind::Sum) out.push_back({M::assoc_add(x, y.lhs(), y.rhs()), add(add(x, y.lhs()), y.rhs())});
    if (x.kind() == Ob::Kind::Sum)
      out.push_back({M::inverse(M::assoc_add(x.lhs(), x.rhs(), y)), add(x.lhs(), add(x.rhs(), y))});
    if (x.kind() == Ob::Kind::Zero) out.push_back({M::unit_l_add(y), y});
    if (y.kind() == Ob::Kind::Zero) out.push_back({M::unit_r_add(x), x});
    if (x.kind() == Ob::Kind::Prod && y.kind() == Ob::Kind::Prod) {
      if (x.lhs() == y.lhs())
        out.push_back({M::inverse(M::delta_l(x.lhs(), x.rhs(), y.rhs())), mul(x.lhs(), add(x.rhs(), y.rhs()))});
      if (x.rhs() == y.rhs())
        out.push_back({M::inverse(M::delta_r(x.lhs(), y.lhs(), x.rhs())), mul(add(x.lhs(), y.lhs()), x.rhs())});
    }
    for (Rewrite& r : structural_rewrites(x)) out.push_back({M::sum(r.step, M::id(y)), add(r.target, y)});
    for (Rewrite& r : structural_rewrites(y)) out.push_back({M::sum(M::id(x), r.step), add(x, r.target)});
  } else if (e.kind() == Ob::Kind::Prod) {
    const Ob &x = e.lhs(), &y = e.rhs();
    if (y.kind() == Ob::Kind::Sum)
      out.push_back({M::delta_l(x, y.lhs(), y.rhs()), add(mul(x, y.lhs()), mul(x, y.rhs()))});
    if (x.kind() == Ob::Kind::Sum)
      out.push_back({M::delta_r(x.lhs(), x.rhs(), y), add(mul(x.lhs(), y), mul(x.rhs(), y))});
    if (y.kind() == Ob::Kind::Prod) out.push_back({M::assoc_mul(x, y.lhs(), y.rhs()), mul(mul(x, y.lhs()), y.rhs())});
    if (x.kind() == Ob::Kind::Prod)
      out.push_back({M::inverse(M::assoc_mul(x.lhs(), x.rhs(), y)), mul(x.lhs(), mul(x.rhs(), y))});
    if (x.kind() == Ob::Kind::One) out.push_back({M::unit_l_mul(y), y});
    if (y.kind() == Ob::Kind::One) out.push_back({M::unit_r_mul(x), x});
    if (x.kind() == Ob::Kind::Zero) out.push_back({M::lann(y), Ob::zero()});
    if (y.kind() == Ob::Kind::Zero) out.push_back({M::rann(x), Ob::zero()});
    for (Rewrite& r : structural_rewrites(x)) out.push_back({M::prod(r.step, M::id(y)), mul(r.target, y)});
    for (Rewrite& r : structural_rewrites(y)) out.push_back({M::prod(M::id(x), r.step), mul(x, r.target)});
  }
  return out;
}

PathReport check_structural_paths(const ObjExpr& a, std::size_t max_steps, const NormalizedSignature& sig) {
  NormalForm na = normalize(a);
  if (!is_regular(na)) throw Error(ErrorKind::Regularity, "not a regular object: " + to_string(na));

  struct Target {
    std::vector<std::size_t> perm;
    MorExpr first;
    MorExpr last;
  };
  struct Expansion {
    std::vector<Rewrite> rewrites;
    std::vector<std::vector<std::size_t>> perms;
  };
  std::map<std::string, Expansion> expansions;
  std::map<std::string, Target> targets;
  PathReport report;

  auto expand = [&](const Ob& e) -> const Expansion& {
    auto [it, inserted] = expansions.try_emplace(e.to_string());
    if (inserted) {
      it->second.rewrites = structural_rewrites(e);
      for (const Rewrite& r : it->second.rewrites) it->second.perms.push_back(structural_permutation(r.step, sig));
    }
    return it->second;
  };

  std::vector<std::size_t> start(na.size());
  for (std::size_t i = 0; i < start.size(); ++i) start[i] = i;

  std::function<void(const Ob&, const MorExpr&, const std::vector<std::size_t>&, std::size_t)> walk =
      [&](const Ob& e, const MorExpr& path, const std::vector<std::size_t>& perm, std::size_t depth) {
        ++report.paths;
        auto [it, inserted] = targets.try_emplace(e.to_string(), Target{perm, path, path});
        if (!inserted) {
          it->second.last = path;
          if (it->second.perm != perm)
            report.counterexamples.push_back(it->second.first.to_string() + "  vs  " + path.to_string());
        }
        if (depth == max_steps) return;
        const Expansion& ex = expand(e);
        for (std::size_t i = 0; i < ex.rewrites.size(); ++i)
          walk(ex.rewrites[i].target, M::compose(ex.rewrites[i].step, path), then(perm, ex.perms[i]), depth + 1);
      };
  walk(a, M::id(a), start, 0);

  report.targets = targets.size();
  for (const auto& [key, t] : targets) {
    if (!check_regular_coherence(a, parse_obj_expr(key), t.first, t.last, sig))
      report.counterexamples.push_back(t.first.to_string() + "  vs  " + t.last.to_string());
  }
  return report;
}

}  // namespace rig
