#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rig/algebra.hpp"
#include "rig/diagram.hpp"
#include "rig/eval.hpp"
#include "rig/io.hpp"
#include "rig/signature.hpp"

namespace rig::testing {

inline NormalizedSignature sig_from(const std::string& yaml) {
  return normalize_signature(parse_signature(yaml));
}

/// f : A + A*B -> C and g : B*D -> A + D.
inline NormalizedSignature worked_signature() {
  return sig_from(
      "objects: [A, B, C, D, E]\n"
      "morphisms:\n"
      "  f: { dom: \"A + A*B\", cod: \"C\" }\n"
      "  g: { dom: \"B*D\", cod: \"A + D\" }\n");
}

/// Two generators with morphisms touching one or two sheets, units and
/// products.
inline NormalizedSignature small_signature() {
  return sig_from(
      "objects: [A, B]\n"
      "morphisms:\n"
      "  f: { dom: \"A\", cod: \"B\" }\n"
      "  g: { dom: \"B\", cod: \"A + B\" }\n"
      "  h: { dom: \"A*B\", cod: \"A\" }\n"
      "  k: { dom: \"A + B\", cod: \"B\" }\n"
      "  z: { dom: \"I\", cod: \"A\" }\n");
}

inline GammaGenerator gen_of(std::vector<GammaEntry> e) { return GammaGenerator::canonical(std::move(e)); }

/// Random valid diagrams built slice by slice: each step is a swap or a
/// whiskered seam whose domain matches a window of the current sheets.
class DiagramSampler {
 public:
  explicit DiagramSampler(const NormalizedSignature& sig, std::size_t max_sheets = 5, std::size_t max_wires = 5)
      : sig_(sig), max_sheets_(max_sheets), max_wires_(max_wires) {
    std::vector<GammaGenerator> cores;
    for (const std::string& f : sig.morphism_names()) {
      cores.push_back(gen_of({GammaEntry::morphism(f)}));
      for (const std::string& g : sig.morphism_names()) {
        cores.push_back(gen_of({GammaEntry::morphism(f), GammaEntry::morphism(g)}));
        for (const std::string& o : sig.objects())
          cores.push_back(gen_of({GammaEntry::morphism(f), GammaEntry::identity({o}), GammaEntry::morphism(g)}));
      }
    }
    for (const GammaGenerator& c : cores) by_dom_[gamma_dom(c, sig)].push_back(c);
  }

  NormalForm random_object(std::mt19937_64& rng, std::size_t max_summands = 3, std::size_t max_len = 2) const {
    NormalForm nf;
    const std::size_t n = 1 + rng() % max_summands;
    for (std::size_t i = 0; i < n; ++i) {
      Word w;
      const std::size_t len = rng() % (max_len + 1);
      for (std::size_t k = 0; k < len; ++k) w.push_back(sig_.objects()[rng() % sig_.objects().size()]);
      nf.summands.push_back(w);
    }
    return nf;
  }

  /// Candidate next slices on top of the sheets `cur`.
  std::vector<Slice> candidates(const NormalForm& cur) const {
    std::vector<Slice> out;
    for (std::size_t k = 0; k + 1 < cur.size(); ++k) out.push_back(Swap{k});
    for (std::size_t s = 0; s <= cur.size(); ++s) {
      for (std::size_t n = 0; n <= 3 && s + n <= cur.size(); ++n) {
        if (n == 0) {
          auto it = by_dom_.find(NormalForm{});
          if (it != by_dom_.end())
            for (const GammaGenerator& g : it->second) consider(out, cur, g, s);
          continue;
        }
        std::vector<Word> win(cur.summands.begin() + s, cur.summands.begin() + s + n);
        std::size_t shortest = win[0].size();
        for (const Word& w : win) shortest = std::min(shortest, w.size());
        std::size_t cp = 0, cs = 0;
        while (cp < shortest && std::all_of(win.begin(), win.end(), [&](const Word& w) { return w[cp] == win[0][cp]; }))
          ++cp;
        while (cs < shortest && std::all_of(win.begin(), win.end(), [&](const Word& w) {
                 return w[w.size() - 1 - cs] == win[0][win[0].size() - 1 - cs];
               }))
          ++cs;
        for (std::size_t a = 0; a <= cp; ++a)
          for (std::size_t b = 0; b <= cs && a + b <= shortest; ++b) {
            NormalForm core;
            for (const Word& w : win) core.summands.emplace_back(w.begin() + a, w.end() - b);
            auto it = by_dom_.find(core);
            if (it == by_dom_.end()) continue;
            const Word pre(win[0].begin(), win[0].begin() + a), post(win[0].end() - b, win[0].end());
            for (const GammaGenerator& c : it->second) {
              std::vector<GammaEntry> e;
              if (!pre.empty()) e.push_back(GammaEntry::identity(pre));
              e.insert(e.end(), c.entries.begin(), c.entries.end());
              if (!post.empty()) e.push_back(GammaEntry::identity(post));
              consider(out, cur, gen_of(std::move(e)), s);
            }
          }
      }
    }
    return out;
  }

  NormalForm after(const NormalForm& cur, const Slice& s) const {
    SheetDiagram d = SheetDiagram::from_types(cur);
    d.slices.push_back(s);
    return validate(d, sig_).codomain();
  }

  SheetDiagram sample(std::mt19937_64& rng, const NormalForm& dom, std::size_t slices) const {
    SheetDiagram d = SheetDiagram::from_types(dom);
    NormalForm cur = dom;
    for (std::size_t i = 0; i < slices; ++i) {
      std::vector<Slice> c = candidates(cur);
      if (c.empty()) break;
      std::vector<Slice> seams;
      for (const Slice& s : c)
        if (std::holds_alternative<Seam>(s)) seams.push_back(s);
      const Slice& pick = (!seams.empty() && rng() % 4 != 0) ? seams[rng() % seams.size()] : c[rng() % c.size()];
      cur = after(cur, pick);
      d.slices.push_back(pick);
    }
    return d;
  }

  SheetDiagram sample(std::mt19937_64& rng, std::size_t slices) const {
    return sample(rng, random_object(rng), slices);
  }

 private:
  void consider(std::vector<Slice>& out, const NormalForm& cur, const GammaGenerator& g, std::size_t s) const {
    const NormalForm cod = gamma_cod(g, sig_);
    const std::size_t n = gamma_dom(g, sig_).size();
    if (cur.size() - n + cod.size() > max_sheets_) return;
    for (const Word& w : cod.summands)
      if (w.size() > max_wires_) return;
    out.push_back(make_seam(g, sig_, s));
  }

  const NormalizedSignature& sig_;
  std::size_t max_sheets_, max_wires_;
  std::map<NormalForm, std::vector<GammaGenerator>> by_dom_;
};

/// All elements mapped equally by both diagrams?
inline bool same_semantics(const SheetDiagram& a, const SheetDiagram& b, const NormalizedSignature& sig,
                           const EvalModel& m) {
  return eval_diagram(validate(a, sig), sig, m) == eval_diagram(validate(b, sig), sig, m);
}

}  // namespace rig::testing
