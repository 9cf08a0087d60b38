#include "rig/eval.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "rig/error.hpp"

namespace rig {

ObjectSpace::ObjectSpace(const NormalForm& nf, const EvalModel& model) : nf_(nf) {
  for (const Word& w : nf.summands) {
    std::vector<std::size_t> radix;
    std::size_t count = 1;
    for (const std::string& g : w) {
      auto it = model.carriers.find(g);
      if (it == model.carriers.end())
        throw Error(ErrorKind::MissingCarrier, "no carrier for object '" + g + "'");
      radix.push_back(it->second.size());
      count *= it->second.size();
    }
    radix_.push_back(std::move(radix));
    start_.push_back(total_);
    count_.push_back(count);
    total_ += count;
  }
}

std::size_t ObjectSpace::index(const Element& e) const {
  if (e.summand >= radix_.size() || e.tokens.size() != radix_[e.summand].size())
    throw Error(ErrorKind::Internal, "element does not belong to " + to_string(nf_));
  std::size_t idx = 0;
  for (std::size_t k = 0; k < e.tokens.size(); ++k) {
    if (e.tokens[k] >= radix_[e.summand][k])
      throw Error(ErrorKind::Internal, "token out of range for " + to_string(nf_));
    idx = idx * radix_[e.summand][k] + e.tokens[k];
  }
  return start_[e.summand] + idx;
}

Element ObjectSpace::element(std::size_t index) const {
  if (index >= total_) throw Error(ErrorKind::Internal, "element index out of range");
  std::size_t j = std::upper_bound(start_.begin(), start_.end(), index) - start_.begin() - 1;
  while (count_[j] == 0) --j;
  Element e;
  e.summand = j;
  std::size_t rest = index - start_[j];
  e.tokens.resize(radix_[j].size());
  for (std::size_t k = radix_[j].size(); k-- > 0;) {
    e.tokens[k] = rest % radix_[j][k];
    rest /= radix_[j][k];
  }
  return e;
}

std::vector<Element> ObjectSpace::elements() const {
  std::vector<Element> out;
  out.reserve(total_);
  for (std::size_t i = 0; i < total_; ++i) out.push_back(element(i));
  return out;
}

ObjectSpace eval_object(const NormalForm& nf, const EvalModel& m) { return ObjectSpace(nf, m); }

namespace {

const FunctionTable& table_of(const EvalModel& m, const std::string& name) {
  auto it = m.tables.find(name);
  if (it == m.tables.end()) throw Error(ErrorKind::MissingTable, "no table for morphism '" + name + "'");
  return it->second;
}

Element apply_seam(const Seam& seam, const TypedSeam& ts, const NormalizedSignature& sig,
                   const EvalModel& m, const Element& in) {
  const std::size_t local = in.summand - seam.offset;
  const auto& entries = ts.generator.entries;
  std::vector<std::size_t> out_choice(entries.size(), 0);
  std::vector<std::size_t> tokens;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::size_t len = 0;
    for (std::size_t o : ts.dom.origins[local]) len += o == i;
    std::vector<std::size_t> part(in.tokens.begin() + pos, in.tokens.begin() + pos + len);
    pos += len;
    if (!entries[i].is_morphism()) {
      tokens.insert(tokens.end(), part.begin(), part.end());
      continue;
    }
    const NormalizedMorphism& f = sig.at(entries[i].name);
    ObjectSpace dom(f.dom, m);
    const FunctionTable& table = table_of(m, entries[i].name);
    std::size_t idx = dom.index({ts.dom.choices[local][i], part});
    if (idx >= table.size())
      throw Error(ErrorKind::MissingTable, "table for '" + entries[i].name + "' is not total");
    const Element& r = table[idx];
    out_choice[i] = r.summand;
    tokens.insert(tokens.end(), r.tokens.begin(), r.tokens.end());
  }
  if (pos != in.tokens.size()) throw Error(ErrorKind::Internal, "seam routing lost wires");
  std::size_t sheet = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) sheet = sheet * ts.cod.radix[i] + out_choice[i];
  return {seam.offset + sheet, std::move(tokens)};
}

}  // namespace

Element eval_element(const TypedDiagram& d, const NormalizedSignature& sig, const EvalModel& m,
                     const Element& input) {
  Element e = input;
  for (std::size_t i = 0; i < d.diagram.slices.size(); ++i) {
    const Slice& s = d.diagram.slices[i];
    if (const Swap* sw = std::get_if<Swap>(&s)) {
      if (e.summand == sw->offset)
        ++e.summand;
      else if (e.summand == sw->offset + 1)
        --e.summand;
      continue;
    }
    const Seam& seam = std::get<Seam>(s);
    if (e.summand < seam.offset) continue;
    if (e.summand >= seam.offset + seam.inputs) {
      e.summand = e.summand - seam.inputs + seam.outputs;
      continue;
    }
    e = apply_seam(seam, *d.seams[i], sig, m, e);
  }
  return e;
}

FunctionTable eval_diagram(const TypedDiagram& d, const NormalizedSignature& sig,
                           const EvalModel& m) {
  ObjectSpace dom(d.domain(), m);
  FunctionTable out;
  out.reserve(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) out.push_back(eval_element(d, sig, m, dom.element(i)));
  return out;
}

namespace {

std::string token_name(const std::string& object, std::size_t k) {
  std::string s = object;
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s + std::to_string(k);
}

}  // namespace

EvalModel random_model(const NormalizedSignature& sig, std::uint64_t seed, std::size_t max_carrier) {
  if (max_carrier == 0) throw Error(ErrorKind::Internal, "max_carrier must be positive");
  std::mt19937_64 rng(seed);
  std::map<std::string, std::size_t> size;
  for (const std::string& o : sig.objects()) size[o] = 1 + rng() % max_carrier;

  auto count = [&](const Word& w) {
    std::size_t n = 1;
    for (const std::string& g : w) n *= size[g];
    return n;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const std::string& name : sig.morphism_names()) {
      const NormalizedMorphism& f = sig.at(name);
      bool cod_empty = true;
      for (const Word& w : f.cod.summands) cod_empty = cod_empty && count(w) == 0;
      if (!cod_empty) continue;
      for (const Word& w : f.dom.summands) {
        if (count(w) == 0) continue;
        size[w.front()] = 0;
        changed = true;
      }
    }
  }

  EvalModel m;
  for (const std::string& o : sig.objects())
    for (std::size_t k = 0; k < size[o]; ++k) m.carriers[o].push_back(token_name(o, k));
  for (const std::string& o : sig.objects()) m.carriers.try_emplace(o);
  for (const std::string& name : sig.morphism_names()) {
    const NormalizedMorphism& f = sig.at(name);
    ObjectSpace dom(f.dom, m), cod(f.cod, m);
    FunctionTable t;
    for (std::size_t i = 0; i < dom.size(); ++i) t.push_back(cod.element(rng() % cod.size()));
    m.tables[name] = std::move(t);
  }
  return m;
}

void check_model(const EvalModel& m, const NormalizedSignature& sig) {
  for (const std::string& o : sig.objects()) {
    if (!m.carriers.count(o)) throw Error(ErrorKind::MissingCarrier, "no carrier for object '" + o + "'");
    std::vector<std::string> tokens = m.carriers.at(o);
    std::sort(tokens.begin(), tokens.end());
    if (std::adjacent_find(tokens.begin(), tokens.end()) != tokens.end())
      throw Error(ErrorKind::Schema, "carrier of '" + o + "' repeats a token");
  }
  for (const std::string& name : sig.morphism_names()) {
    const NormalizedMorphism& f = sig.at(name);
    ObjectSpace dom(f.dom, m), cod(f.cod, m);
    const FunctionTable& t = table_of(m, name);
    if (t.size() != dom.size())
      throw Error(ErrorKind::MissingTable, "table for '" + name + "' has " + std::to_string(t.size()) +
                                               " entries, domain has " + std::to_string(dom.size()));
    for (const Element& e : t) {
      try {
        cod.index(e);
      } catch (const Error&) {
        throw Error(ErrorKind::Schema, "table for '" + name + "' leaves its codomain");
      }
    }
  }
}

std::string format_element(const Element& e, const NormalForm& nf, const EvalModel& m) {
  std::string s = std::to_string(e.summand) + ":(";
  for (std::size_t k = 0; k < e.tokens.size(); ++k) {
    if (k) s += ",";
    s += m.carriers.at(nf[e.summand][k])[e.tokens[k]];
  }
  return s + ")";
}

Element parse_element(const std::string& raw, const NormalForm& nf, const EvalModel& m) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::Syntax, "element '" + raw + "': " + why);
  };
  std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || text.size() < colon + 3 || text[colon + 1] != '(' ||
      text.back() != ')')
    throw bad("expected j:(t1,...)");
  Element e;
  for (char c : text.substr(0, colon))
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad("summand index is not a number");
  e.summand = std::stoul(text.substr(0, colon));
  if (e.summand >= nf.size()) throw bad("summand index out of range");
  std::string body = text.substr(colon + 2, text.size() - colon - 3);
  std::vector<std::string> parts;
  if (!body.empty()) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i)
      if (i == body.size() || body[i] == ',') {
        parts.push_back(body.substr(start, i - start));
        start = i + 1;
      }
  }
  const Word& w = nf[e.summand];
  if (parts.size() != w.size()) throw bad("expected " + std::to_string(w.size()) + " tokens");
  for (std::size_t k = 0; k < w.size(); ++k) {
    auto it = m.carriers.find(w[k]);
    if (it == m.carriers.end()) throw Error(ErrorKind::MissingCarrier, "no carrier for '" + w[k] + "'");
    auto pos = std::find(it->second.begin(), it->second.end(), parts[k]);
    if (pos == it->second.end()) throw bad("'" + parts[k] + "' is not a token of " + w[k]);
    e.tokens.push_back(static_cast<std::size_t>(pos - it->second.begin()));
  }
  return e;
}

}  // namespace rig
