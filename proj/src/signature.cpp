#include "rig/signature.hpp"

#include <algorithm>
#include <set>

#include "rig/error.hpp"

namespace rig {

void BimonoidalSignature::check() const {
  std::set<std::string> objs;
  for (const std::string& o : objects) {
    if (!is_identifier(o) || o == "O" || o == "I")
      throw Error(ErrorKind::Schema, "invalid object name '" + o + "'");
    if (!objs.insert(o).second) throw Error(ErrorKind::Schema, "duplicate object '" + o + "'");
  }
  std::set<std::string> mors;
  for (const auto& [name, type] : morphisms) {
    if (!mors.insert(name).second)
      throw Error(ErrorKind::Schema, "duplicate morphism '" + name + "'");
    for (const ObjExpr* e : {&type.dom, &type.cod})
      for (const std::string& g : generators_of(*e))
        if (!objs.count(g))
          throw Error(ErrorKind::UnknownObject,
                      "morphism '" + name + "' uses undeclared object '" + g + "'");
  }
}

void NormalizedSignature::add_object(const std::string& name) {
  if (has_object(name)) throw Error(ErrorKind::Schema, "duplicate object '" + name + "'");
  objects_.push_back(name);
}

void NormalizedSignature::add_morphism(const std::string& name, NormalForm dom, NormalForm cod) {
  if (has_morphism(name)) throw Error(ErrorKind::Schema, "duplicate morphism '" + name + "'");
  for (const NormalForm* nf : {&dom, &cod})
    for (const Word& w : nf->summands)
      for (const std::string& g : w)
        if (!has_object(g))
          throw Error(ErrorKind::UnknownObject,
                      "morphism '" + name + "' uses undeclared object '" + g + "'");
  order_.push_back(name);
  morphisms_.emplace(name, NormalizedMorphism{std::move(dom), std::move(cod)});
}

bool NormalizedSignature::has_object(const std::string& name) const {
  return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
}

const NormalizedMorphism& NormalizedSignature::at(const std::string& name) const {
  auto it = morphisms_.find(name);
  if (it == morphisms_.end()) throw Error(ErrorKind::UnknownMorphism, "'" + name + "'");
  return it->second;
}

NormalizedSignature normalize_signature(const BimonoidalSignature& s) {
  s.check();
  NormalizedSignature out;
  for (const std::string& o : s.objects) out.add_object(o);
  for (const auto& [name, type] : s.morphisms)
    out.add_morphism(name, normalize(type.dom), normalize(type.cod));
  return out;
}

GammaGenerator GammaGenerator::canonical(std::vector<GammaEntry> entries) {
  GammaGenerator g;
  for (GammaEntry& e : entries) {
    if (!e.is_morphism()) {
      if (e.word.empty()) continue;
      if (!g.entries.empty() && !g.entries.back().is_morphism()) {
        Word& w = g.entries.back().word;
        w.insert(w.end(), e.word.begin(), e.word.end());
        continue;
      }
    }
    g.entries.push_back(std::move(e));
  }
  return g;
}

std::size_t GammaGenerator::morphism_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const GammaEntry& e) { return e.is_morphism(); }));
}

std::string GammaGenerator::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ", ";
    const GammaEntry& e = entries[i];
    s += e.is_morphism() ? e.name : "1_" + rig::to_string(e.word);
  }
  return s + "]";
}

NormalForm entry_boundary(const GammaEntry& e, const NormalizedSignature& sig, Side side) {
  if (!e.is_morphism()) return NormalForm{e.word};
  const NormalizedMorphism& m = sig.at(e.name);
  return side == Side::Dom ? m.dom : m.cod;
}

GammaBoundary gamma_boundary(const GammaGenerator& g, const NormalizedSignature& sig, Side side) {
  // Start from the unit I and multiply in each factor, carrying provenance.
  GammaBoundary b;
  b.nf = NormalForm{Word{}};
  b.choices = {{}};
  b.origins = {{}};
  for (std::size_t i = 0; i < g.entries.size(); ++i) {
    NormalForm f = entry_boundary(g.entries[i], sig, side);
    b.radix.push_back(f.size());
    GammaBoundary next;
    next.radix = b.radix;
    for (std::size_t j = 0; j < b.nf.size(); ++j)
      for (std::size_t k = 0; k < f.size(); ++k) {
        Word w = b.nf[j];
        w.insert(w.end(), f[k].begin(), f[k].end());
        next.nf.summands.push_back(std::move(w));
        auto c = b.choices[j];
        c.push_back(k);
        next.choices.push_back(std::move(c));
        auto o = b.origins[j];
        o.insert(o.end(), f[k].size(), i);
        next.origins.push_back(std::move(o));
      }
    b.nf = std::move(next.nf);
    b.choices = std::move(next.choices);
    b.origins = std::move(next.origins);
  }
  return b;
}

NormalForm gamma_dom(const GammaGenerator& g, const NormalizedSignature& sig) {
  return gamma_boundary(g, sig, Side::Dom).nf;
}

NormalForm gamma_cod(const GammaGenerator& g, const NormalizedSignature& sig) {
  return gamma_boundary(g, sig, Side::Cod).nf;
}

std::vector<std::vector<std::size_t>> origins(const GammaGenerator& g,
                                              const NormalizedSignature& sig, Side side) {
  return gamma_boundary(g, sig, Side(side)).origins;
}

}  // namespace rig
