// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "sea/error.hpp"
#include "sea/sweeps.hpp"

namespace sea {
namespace {

constexpr const char* kLineColors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                       "#66a61e", "#e6ab02", "#a6761d", "#666666"};

unsigned char lerp(unsigned char a, unsigned char b, double t) {
  return static_cast<unsigned char>(std::lround(a + (b - a) * t));
}

std::string hex(Rgb c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

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

std::string header(double w, double h) {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      w, h);
}

// Axis box with ticks at the given data values mapped through sx/sy.
template <typename SX, typename SY>
void axes(std::string& out, double x0, double y0, double w, double h, SX sx, SY sy,
          const std::vector<double>& xt, const std::vector<double>& yt, const std::string& xl,
          const std::string& yl) {
  out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                     "fill=\"none\" stroke=\"black\"/>\n",
                     x0, y0, w, h);
  for (double t : xt) {
    const double x = sx(t);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
                       "stroke=\"black\"/><text x=\"{0:.2f}\" y=\"{3:.2f}\" "
                       "text-anchor=\"middle\">{4:g}</text>\n",
                       x, y0 + h, y0 + h + 4, y0 + h + 15, t);
  }
  for (double t : yt) {
    const double y = sy(t);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
                       "stroke=\"black\"/><text x=\"{3:.2f}\" y=\"{4:.2f}\" "
                       "text-anchor=\"end\">{5:g}</text>\n",
                       x0 - 4, y, x0, x0 - 6, y + 4, t);
  }
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     x0 + w / 2, y0 + h + 30, escape(xl));
  out += fmt::format("<text x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"middle\" "
                     "transform=\"rotate(-90 {0:.2f} {1:.2f})\">{2}</text>\n",
                     x0 - 32, y0 + h / 2, escape(yl));
}

std::vector<double> ticks(double lo, double hi, int n) {
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) {
    t.push_back(std::round((lo + (hi - lo) * i / n) * 100.0) / 100.0);
  }
  return t;
}

}  // namespace

Rgb DivergingPalette::at(double value) const {
  double x = std::clamp(value, -1.0, 1.0);
  if (levels > 1) {
    const double q = (levels - 1) / 2.0;
    x = std::round(x * q) / q;
  }
  if (x < 0.0) {
    const double t = x + 1.0;
    return {lerp(negative.r, zero.r, t), lerp(negative.g, zero.g, t), lerp(negative.b, zero.b, t)};
  }
  return {lerp(zero.r, positive.r, x), lerp(zero.g, positive.g, x), lerp(zero.b, positive.b, x)};
}

std::string render_sweep_svg(const std::vector<SweepPoint>& rows, const SvgStyle& style) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "cannot render an empty sweep");

  std::map<double, std::vector<std::pair<double, double>>> curves;
  double vmin = rows.front().v, vmax = rows.front().v;
  for (const auto& r : rows) {
    curves[r.p_level].emplace_back(r.v, r.sea);
    vmin = std::min(vmin, r.v);
    vmax = std::max(vmax, r.v);
  }
  if (vmax == vmin) {
    vmin -= 0.05;
    vmax += 0.05;
  }

  const double left = 60, top = 30, w = 2 * style.panel_width, h = 1.5 * style.panel_height;
  const double total_w = left + w + 130, total_h = top + h + 50;
  auto sx = [&](double v) { return left + (v - vmin) / (vmax - vmin) * w; };
  auto sy = [&](double s) { return top + (1.0 - s) / 2.0 * h; };

  std::string out = header(total_w, total_h);
  if (!style.title.empty()) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"18\" text-anchor=\"middle\" "
                       "font-size=\"13\">{}</text>\n",
                       left + w / 2, escape(style.title));
  }
  out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                     "stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n",
                     left, sy(0.0), left + w, sy(0.0));
  axes(out, left, top, w, h, sx, sy, ticks(vmin, vmax, 5), {-1.0, -0.5, 0.0, 0.5, 1.0},
       "visual ratio v", "SEA");

  std::size_t idx = 0;
  for (const auto& [p, pts] : curves) {
    const char* color = kLineColors[idx % std::size(kLineColors)];
    std::string path;
    for (const auto& [v, s] : pts) path += fmt::format("{:.2f},{:.2f} ", sx(v), sy(s));
    if (pts.size() == 1) {
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n",
                         sx(pts[0].first), sy(pts[0].second), color);
    } else {
      out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\" "
                         "points=\"{}\"/>\n",
                         color, path);
    }
    const double ly = top + 14 + 18 * static_cast<double>(idx);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
                       "stroke=\"{3}\" stroke-width=\"2\"/><text x=\"{4:.2f}\" "
                       "y=\"{5:.2f}\">P = {6:g}</text>\n",
                       left + w + 15, ly, left + w + 40, color, left + w + 46, ly + 4, p);
    ++idx;
  }
  out += "</svg>\n";
  return out;
}

std::string render_heatmap_svg(const HeatmapResult& result, const SvgStyle& style) {
  if (result.panels.empty() || result.v.n == 0 || result.p.n == 0) {
    throw Error(ErrorCode::InvalidArgument, "cannot render an empty heatmap");
  }
  const std::size_t cols = std::max<std::size_t>(1, result.columns);
  const std::size_t rows = (result.panels.size() + cols - 1) / cols;
  const double pw = style.panel_width, ph = style.panel_height;
  const double margin_l = 70, margin_t = 40, gap_x = 60, gap_y = 65, bar_w = 90;
  const double total_w = margin_l + cols * pw + (cols - 1) * gap_x + bar_w + 20;
  const double total_h = margin_t + rows * ph + (rows - 1) * gap_y + 50;

  std::string out = header(total_w, total_h);
  if (!style.title.empty()) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"20\" text-anchor=\"middle\" "
                       "font-size=\"13\">{}</text>\n",
                       total_w / 2, escape(style.title));
  }

  const double cell_w = pw / static_cast<double>(result.v.n);
  const double cell_h = ph / static_cast<double>(result.p.n);
  for (std::size_t k = 0; k < result.panels.size(); ++k) {
    const auto& panel = result.panels[k];
    const double x0 = margin_l + static_cast<double>(k % cols) * (pw + gap_x);
    const double y0 = margin_t + static_cast<double>(k / cols) * (ph + gap_y);
    out += fmt::format("<g><title>{} / {}</title>\n", escape(panel.row), escape(panel.column));
    // Merge horizontal runs of equal quantized color into one rect.
    for (std::size_t ip = 0; ip < result.p.n; ++ip) {
      const double y = y0 + ph - static_cast<double>(ip + 1) * cell_h;
      std::size_t start = 0;
      std::string run_color = hex(style.palette.at(panel.values[ip * result.v.n]));
      for (std::size_t iv = 1; iv <= result.v.n; ++iv) {
        std::string c;
        if (iv < result.v.n) c = hex(style.palette.at(panel.values[ip * result.v.n + iv]));
        if (iv == result.v.n || c != run_color) {
          out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                             "fill=\"{}\"/>\n",
                             x0 + static_cast<double>(start) * cell_w, y,
                             static_cast<double>(iv - start) * cell_w + 0.05, cell_h + 0.05,
                             run_color);
          start = iv;
          run_color = c;
        }
      }
    }
    out += "</g>\n";
    auto sx = [&](double v) { return x0 + (v - result.v.lo) / (result.v.hi - result.v.lo) * pw; };
    auto sy = [&](double p) {
      return y0 + ph - (p - result.p.lo) / (result.p.hi - result.p.lo) * ph;
    };
    axes(out, x0, y0, pw, ph, sx, sy, ticks(result.v.lo, result.v.hi, 4),
         ticks(result.p.lo, result.p.hi, 4), "v", "P");
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{} ({})</text>\n",
                       x0 + pw / 2, y0 - 6, escape(panel.row), escape(panel.column));
  }

  // Colorbar.
  const double bx = total_w - bar_w, by = margin_t, bh = std::min(300.0, total_h - 90);
  const int steps = 100;
  for (int i = 0; i < steps; ++i) {
    const double value = 1.0 - 2.0 * (i + 0.5) / steps;
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"18\" height=\"{:.2f}\" "
                       "fill=\"{}\"/>\n",
                       bx, by + i * bh / steps, bh / steps + 0.05, hex(style.palette.at(value)));
  }
  out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"18\" height=\"{:.2f}\" "
                     "fill=\"none\" stroke=\"black\"/>\n",
                     bx, by, bh);
  for (double t : {1.0, 0.5, 0.0, -0.5, -1.0}) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{:g}</text>\n", bx + 24,
                       by + (1.0 - t) / 2.0 * bh + 4, t);
  }
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">SEA</text>\n", bx, by - 8);
  out += "</svg>\n";
  return out;
}

}  // namespace sea
