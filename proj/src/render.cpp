#include "rig/render.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>

namespace rig {

namespace {

struct Attachments {
  std::size_t passes = 0;
  // Item index of each node and of each pass-through wire.
  std::vector<std::size_t> node_item;
  std::vector<std::size_t> pass_item;
  std::size_t items() const { return node_item.size() + pass_item.size(); }
};

std::size_t sum(const std::vector<std::size_t>& v) {
  std::size_t s = 0;
  for (std::size_t x : v) s += x;
  return s;
}

std::size_t node_wires(const Seam& seam, bool input, std::size_t sheet) {
  std::size_t s = 0;
  for (const SeamNode& n : seam.nodes) {
    const auto& v = input ? n.inputs : n.outputs;
    if (sheet < v.size()) s += v[sheet];
  }
  return s;
}

Attachments attachments(const Seam& seam, const std::vector<std::size_t>& below,
                        const std::vector<std::size_t>& above) {
  Attachments a;
  if (seam.inputs > 0 && seam.offset < below.size()) {
    std::size_t used = node_wires(seam, true, 0);
    a.passes = below[seam.offset] > used ? below[seam.offset] - used : 0;
  } else if (seam.outputs > 0 && seam.offset < above.size()) {
    std::size_t used = node_wires(seam, false, 0);
    a.passes = above[seam.offset] > used ? above[seam.offset] - used : 0;
  }
  std::size_t item = 0, pass = 0;
  for (const SeamNode& n : seam.nodes) {
    while (pass < std::min(n.offset, a.passes)) {
      a.pass_item.push_back(item++);
      ++pass;
    }
    a.node_item.push_back(item++);
  }
  while (pass < a.passes) {
    a.pass_item.push_back(item++);
    ++pass;
  }
  return a;
}

/// Attachment item of each wire on one side sheet of the seam.
std::vector<std::size_t> wire_items(const Seam& seam, const Attachments& a, bool input, std::size_t sheet) {
  std::vector<std::size_t> out;
  std::size_t pass = 0;
  for (std::size_t j = 0; j < seam.nodes.size(); ++j) {
    const SeamNode& n = seam.nodes[j];
    while (pass < std::min(n.offset, a.passes)) out.push_back(a.pass_item[pass++]);
    const auto& v = input ? n.inputs : n.outputs;
    std::size_t k = sheet < v.size() ? v[sheet] : 0;
    for (std::size_t w = 0; w < k; ++w) out.push_back(a.node_item[j]);
  }
  while (pass < a.passes) out.push_back(a.pass_item[pass++]);
  return out;
}

std::vector<double> spread(std::size_t n, double depth) {
  std::vector<double> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = depth * static_cast<double>(j + 1) / static_cast<double>(n + 1);
  return z;
}

struct Point3 {
  double x, y, z;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::string s = fmt::format("{:.2f}", v);
  return s == "-0.00" ? "0.00" : s;
}

}  // namespace

Layout layout(const SheetDiagram& d, const RenderStyle& style) {
  Layout L;
  L.skew_dx = style.skew_dx;
  L.skew_dy = style.skew_dy;
  std::vector<std::vector<std::size_t>> counts = wire_counts(d);

  std::size_t widest = 1;
  for (const auto& h : counts)
    for (std::size_t c : h) widest = std::max(widest, c);
  std::vector<Attachments> att(d.slices.size());
  for (std::size_t s = 0; s < d.slices.size(); ++s)
    if (const Seam* seam = std::get_if<Seam>(&d.slices[s])) {
      att[s] = attachments(*seam, counts[s], counts[s + 1]);
      widest = std::max(widest, att[s].items());
    }
  L.depth = style.wire_pitch * static_cast<double>(widest + 1);
  double pitch = style.skew_dx * L.depth + style.sheet_spacing;

  for (const auto& h : counts) {
    std::vector<Interval> xs;
    std::vector<std::vector<double>> tracks;
    double first = -(static_cast<double>(h.size()) - 1) / 2;
    for (std::size_t i = 0; i < h.size(); ++i) {
      double x = (first + static_cast<double>(i)) * pitch;
      xs.push_back({x, x + style.skew_dx * L.depth});
      tracks.push_back(spread(h[i], L.depth));
    }
    L.sheets.push_back(std::move(xs));
    L.tracks.push_back(std::move(tracks));
  }

  for (std::size_t s = 0; s < d.slices.size(); ++s) {
    const Seam* seam = std::get_if<Seam>(&d.slices[s]);
    if (!seam) {
      L.seam_x.push_back(0);
      L.attach_depth.emplace_back();
      L.node_depth.emplace_back();
      continue;
    }
    double total = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < seam->inputs && seam->offset + k < L.sheets[s].size(); ++k, ++n)
      total += L.sheets[s][seam->offset + k].lo;
    for (std::size_t k = 0; k < seam->outputs && seam->offset + k < L.sheets[s + 1].size(); ++k, ++n)
      total += L.sheets[s + 1][seam->offset + k].lo;
    double x;
    if (n > 0) {
      x = total / static_cast<double>(n);
    } else {
      double first = -(static_cast<double>(L.sheets[s].size()) - 1) / 2;
      x = (first + static_cast<double>(seam->offset) - 0.5) * pitch;
    }
    L.seam_x.push_back(x);
    std::vector<double> z = spread(att[s].items(), L.depth);
    L.attach_depth.push_back(z);
    std::vector<double> nz;
    for (std::size_t item : att[s].node_item) nz.push_back(z[item]);
    L.node_depth.push_back(nz);
  }
  return L;
}

RenderCounts expected_counts(const SheetDiagram& d) {
  RenderCounts c;
  std::vector<std::vector<std::size_t>> counts = wire_counts(d);
  if (d.slices.empty()) {
    c.sheets = counts[0].size();
    c.wires = sum(counts[0]);
    return c;
  }
  for (std::size_t s = 0; s < d.slices.size(); ++s) {
    c.wires += sum(counts[s]);
    const Seam* seam = std::get_if<Seam>(&d.slices[s]);
    if (!seam) {
      c.sheets += counts[s].size();
      continue;
    }
    c.sheets += counts[s].size() + seam->outputs;
    for (std::size_t k = 0; k < seam->outputs; ++k) c.wires += counts[s + 1][seam->offset + k];
    c.nodes += seam->nodes.size();
    if (!(seam->inputs == 1 && seam->outputs == 1)) ++c.seams;
  }
  return c;
}

std::string render_svg(const SheetDiagram& d, const RenderStyle& style) {
  Layout L = layout(d, style);
  std::vector<std::vector<std::size_t>> counts = wire_counts(d);
  const double H = style.slice_height;

  auto px = [&](const Point3& p) { return p.x + L.skew_dx * p.z; };
  auto py = [&](const Point3& p) { return -(p.y + L.skew_dy * p.z); };

  std::vector<std::vector<Point3>> sheets;  // quadrilaterals
  std::vector<std::pair<Point3, Point3>> seams;
  std::vector<std::pair<Point3, Point3>> wires;
  std::vector<Point3> nodes;
  std::vector<std::pair<Point3, std::string>> labels;

  auto sheet_quad = [&](double xa, double ya, double xb, double yb) {
    sheets.push_back({{xa, ya, 0}, {xa, ya, L.depth}, {xb, yb, L.depth}, {xb, yb, 0}});
  };
  auto straight = [&](std::size_t h0, std::size_t i0, std::size_t h1, std::size_t i1, double y0, double y1) {
    double xa = L.sheets[h0][i0].lo, xb = L.sheets[h1][i1].lo;
    sheet_quad(xa, y0, xb, y1);
    const auto& za = L.tracks[h0][i0];
    const auto& zb = L.tracks[h1][i1];
    for (std::size_t j = 0; j < za.size() && j < zb.size(); ++j) wires.push_back({{xa, y0, za[j]}, {xb, y1, zb[j]}});
  };

  if (d.slices.empty()) {
    for (std::size_t i = 0; i < L.sheets[0].size(); ++i) straight(0, i, 0, i, 0, H);
  }
  for (std::size_t s = 0; s < d.slices.size(); ++s) {
    double y0 = static_cast<double>(s) * H, y1 = y0 + H, ym = y0 + H / 2;
    auto [in, out] = slice_arity(d.slices[s]);
    std::size_t o = slice_offset(d.slices[s]);
    std::size_t n = counts[s].size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= o && i < o + in) continue;
      std::size_t j = i < o ? i : i - in + out;
      straight(s, i, s + 1, j, y0, y1);
    }
    if (std::get_if<Swap>(&d.slices[s])) {
      straight(s, o, s + 1, o + 1, y0, y1);
      straight(s, o + 1, s + 1, o, y0, y1);
      continue;
    }
    const Seam& seam = std::get<Seam>(d.slices[s]);
    Attachments a = attachments(seam, counts[s], counts[s + 1]);
    double xs = L.seam_x[s];
    const auto& z = L.attach_depth[s];
    for (std::size_t k = 0; k < in; ++k) {
      double xa = L.sheets[s][o + k].lo;
      sheet_quad(xa, y0, xs, ym);
      std::vector<std::size_t> items = wire_items(seam, a, true, k);
      const auto& tz = L.tracks[s][o + k];
      for (std::size_t w = 0; w < tz.size() && w < items.size(); ++w)
        wires.push_back({{xa, y0, tz[w]}, {xs, ym, z[items[w]]}});
    }
    for (std::size_t k = 0; k < out; ++k) {
      double xb = L.sheets[s + 1][o + k].lo;
      sheet_quad(xs, ym, xb, y1);
      std::vector<std::size_t> items = wire_items(seam, a, false, k);
      const auto& tz = L.tracks[s + 1][o + k];
      for (std::size_t w = 0; w < tz.size() && w < items.size(); ++w)
        wires.push_back({{xs, ym, z[items[w]]}, {xb, y1, tz[w]}});
    }
    if (!(in == 1 && out == 1)) seams.push_back({{xs, ym, 0}, {xs, ym, L.depth}});
    for (std::size_t j = 0; j < seam.nodes.size(); ++j) {
      Point3 p{xs, ym, L.node_depth[s][j]};
      nodes.push_back(p);
      if (!seam.nodes[j].label.empty()) labels.push_back({p, seam.nodes[j].label});
    }
  }
  for (std::size_t i = 0; i < d.inputs.size(); ++i) {
    const InputSheet& sh = d.inputs[i];
    for (std::size_t w = 0; w < sh.labels.size() && w < L.tracks[0][i].size(); ++w)
      labels.push_back({{L.sheets[0][i].lo, 0, L.tracks[0][i][w]}, sh.labels[w]});
  }

  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  auto extend = [&](const Point3& p) {
    minx = std::min(minx, px(p));
    maxx = std::max(maxx, px(p));
    miny = std::min(miny, py(p));
    maxy = std::max(maxy, py(p));
  };
  for (const auto& q : sheets)
    for (const Point3& p : q) extend(p);
  for (const Point3& p : nodes) extend(p);
  if (sheets.empty() && nodes.empty()) minx = maxx = miny = maxy = 0;

  const double u = style.scale, m = style.margin;
  auto X = [&](const Point3& p) { return num((px(p) - minx + m) * u); };
  auto Y = [&](const Point3& p) { return num((py(p) - miny + m) * u); };
  double width = (maxx - minx + 2 * m) * u, height = (maxy - miny + 2 * m) * u;

  std::string out;
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
      num(width), num(height));
  out += "<g class=\"canvas\">\n";
  out += "<g class=\"sheets\" fill=\"#9ecae1\" fill-opacity=\"0.35\" stroke=\"#3182bd\" stroke-width=\"1\">\n";
  for (auto it = sheets.rbegin(); it != sheets.rend(); ++it) {
    out += "<polygon points=\"";
    for (std::size_t k = 0; k < it->size(); ++k) out += (k ? " " : "") + X((*it)[k]) + "," + Y((*it)[k]);
    out += "\"/>\n";
  }
  out += "</g>\n<g class=\"seams\" stroke=\"#08519c\" stroke-width=\"3\">\n";
  for (const auto& [a, b] : seams)
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", X(a), Y(a), X(b), Y(b));
  out += "</g>\n<g class=\"wires\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">\n";
  for (const auto& [a, b] : wires)
    out += fmt::format("<polyline points=\"{},{} {},{}\"/>\n", X(a), Y(a), X(b), Y(b));
  out += "</g>\n<g class=\"nodes\" fill=\"#222222\">\n";
  for (const Point3& p : nodes) out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"5\"/>\n", X(p), Y(p));
  out += "</g>\n<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (const auto& [p, text] : labels)
    out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num((px(p) - minx + m) * u + 6),
                       num((py(p) - miny + m) * u - 6), escape(text));
  out += "</g>\n</g>\n</svg>\n";
  return out;
}

}  // namespace rig
