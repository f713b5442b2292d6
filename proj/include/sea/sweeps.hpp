// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sea/analysis.hpp"
#include "sea/metric.hpp"

namespace sea {

struct SweepSpec {
  Axis v{0.05, 1.0, 0.005};
  std::vector<double> p_levels{0.3, 0.5, 0.8};
  std::int64_t element_count = 10;
  Hyperparams hp;

  void validate() const;
};

struct SweepPoint {
  double p_level = 0.0;
  double v = 0.0;
  double sea = 0.0;
};

/// Rows ordered by P level (spec order), then ascending v.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

/// Keys: v_axis {lo, hi, step}, P_levels, E. Missing keys keep defaults;
/// unknown keys are Error(Parse).
SweepSpec sweep_spec_from_json(const nlohmann::json& j, const Hyperparams& hp);

/// "P_level,v,sea" CSV.
std::string sweep_csv(const std::vector<SweepPoint>& rows);

/// n evenly spaced samples from lo to hi inclusive.
struct LinAxis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 200;

  double at(std::size_t i) const;
};

struct AblationRow {
  std::string name;
  Hyperparams low;
  Hyperparams mid;
  Hyperparams high;
};

struct HeatmapSpec {
  LinAxis v{0.02, 1.0, 200};
  LinAxis p{0.02, 0.98, 200};
  std::int64_t element_count = 10;
  std::vector<AblationRow> rows;
  std::size_t threads = 0;

  void validate() const;
};

/// The five parameter groups alpha | beta | (lambda, eta, k) | (tau, r) |
/// gamma, each scaled by low_factor / high_factor around `base`.
std::vector<AblationRow> default_ablation_rows(const Hyperparams& base, double low_factor = 0.5,
                                               double high_factor = 2.0);

/// Spec with default axes and default_ablation_rows(base).
HeatmapSpec default_heatmap_spec(const Hyperparams& base = {});

/// Reads axes, E and per-row overrides from a config object shaped like
/// config/heatmap_ablation.json. Missing keys keep their defaults.
HeatmapSpec heatmap_spec_from_json(const nlohmann::json& config, const Hyperparams& base);

struct HeatmapPanel {
  std::string row;
  std::string column;  ///< "low", "default" or "high"
  Hyperparams hp;
  /// values[ip * v.n + iv] = score at (v.at(iv), p.at(ip)).
  std::vector<double> values;
};

struct HeatmapResult {
  LinAxis v;
  LinAxis p;
  std::int64_t element_count = 10;
  std::size_t rows = 0;
  std::size_t columns = 3;
  std::vector<HeatmapPanel> panels;  ///< row-major
};

HeatmapResult run_heatmap(const HeatmapSpec& spec);

nlohmann::json heatmap_json(const HeatmapResult& result);

/// Fraction of cells with |score| > threshold.
double saturation_fraction(const HeatmapPanel& panel, double threshold = 0.99);

/// Arc length of {|score| < threshold} along the line through (v, P) =
/// (center, center) with direction (1, -1) / sqrt(2), sampled every `step`.
double near_zero_band_width(const Hyperparams& hp, double center = 0.5, double threshold = 0.2,
                            double step = 1e-4);

// Rendering

struct Rgb {
  unsigned char r = 0, g = 0, b = 0;
};

/// Three-stop diverging palette anchored at 0: -1 blue, 0 white, +1 red.
struct DivergingPalette {
  Rgb negative{33, 102, 172};
  Rgb zero{247, 247, 247};
  Rgb positive{178, 24, 43};
  int levels = 41;  ///< quantization used when merging cells into runs

  Rgb at(double value) const;
};

struct SvgStyle {
  double panel_width = 240.0;
  double panel_height = 200.0;
  std::string title;
  DivergingPalette palette;
};

/// Line chart, one polyline per P level with a legend.
std::string render_sweep_svg(const std::vector<SweepPoint>& rows, const SvgStyle& style = {});

/// Optional "palette" object of a heatmap config: negative/zero/positive as
/// [r, g, b] and an integer "levels". Absent keys keep the defaults.
DivergingPalette palette_from_json(const nlohmann::json& config);

/// Colored-cell panels (one per ablation setting) plus a shared colorbar.
std::string render_heatmap_svg(const HeatmapResult& result, const SvgStyle& style = {});

}  // namespace sea
