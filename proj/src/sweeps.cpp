// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/sweeps.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "sea/error.hpp"
#include "sea/parallel.hpp"
#include "sea/serialize.hpp"

namespace sea {

void SweepSpec::validate() const {
  if (!(v.lo > 0.0) || !(v.hi <= 1.0) || !(v.step > 0.0) || v.hi < v.lo) {
    throw Error(ErrorCode::InvalidArgument, "sweep v range needs 0 < lo <= hi <= 1 and step > 0");
  }
  if (p_levels.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one P level");
  for (double p : p_levels) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("P level {} outside (0, 1)", p));
    }
  }
  if (element_count < 1) throw Error(ErrorCode::InvalidCapacity, "sweep E must be >= 1");
  hp.validate();
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepPoint> rows;
  const std::size_t n = spec.v.size();
  rows.reserve(n * spec.p_levels.size());
  const double e = static_cast<double>(spec.element_count);
  for (double p : spec.p_levels) {
    for (std::size_t i = 0; i < n; ++i) {
      Signals s;
      s.element_count = spec.element_count;
      s.visible_count = spec.v.at(i) * e;
      s.probability = p;
      rows.push_back({p, spec.v.at(i), sea::sea(s, spec.hp).sea});
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepPoint>& rows) {
  std::string out = "P_level,v,sea\n";
  for (const auto& r : rows) out += fmt::format("{},{},{}\n", r.p_level, r.v, round_sig(r.sea));
  return out;
}

double LinAxis::at(std::size_t i) const {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void HeatmapSpec::validate() const {
  if (v.n == 0 || p.n == 0) throw Error(ErrorCode::InvalidArgument, "heatmap axes need n >= 1");
  if (!(v.lo > 0.0) || !(v.hi <= 1.0) || v.hi < v.lo) {
    throw Error(ErrorCode::InvalidArgument, "heatmap v axis must lie in (0, 1]");
  }
  if (!(p.lo > 0.0) || !(p.hi < 1.0) || p.hi < p.lo) {
    throw Error(ErrorCode::InvalidArgument, "heatmap P axis must lie in (0, 1)");
  }
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "heatmap needs at least one row");
  if (element_count < 1) throw Error(ErrorCode::InvalidCapacity, "heatmap E must be >= 1");
  for (const auto& r : rows) {
    r.low.validate();
    r.mid.validate();
    r.high.validate();
  }
}

std::vector<AblationRow> default_ablation_rows(const Hyperparams& base, double low_factor,
                                               double high_factor) {
  auto scaled = [&](double f, auto&& mutate) {
    Hyperparams h = base;
    mutate(h, f);
    return h;
  };
  auto row = [&](std::string name, auto mutate) {
    return AblationRow{std::move(name), scaled(low_factor, mutate), base,
                       scaled(high_factor, mutate)};
  };
  return {
      row("alpha", [](Hyperparams& h, double f) { h.alpha *= f; }),
      row("beta", [](Hyperparams& h, double f) { h.beta *= f; }),
      row("lambda_eta_k",
          [](Hyperparams& h, double f) {
            h.lambda *= f;
            h.eta *= f;
            h.k *= f;
          }),
      row("tau_r",
          [](Hyperparams& h, double f) {
            h.tau *= f;
            h.r *= f;
          }),
      row("gamma", [](Hyperparams& h, double f) { h.gamma *= f; }),
  };
}

HeatmapSpec default_heatmap_spec(const Hyperparams& base) {
  HeatmapSpec spec;
  spec.rows = default_ablation_rows(base);
  return spec;
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j, const Hyperparams& hp) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "sweep spec must be a JSON object");
  SweepSpec spec;
  spec.hp = hp;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "v_axis") {
        spec.v.lo = value.value("lo", spec.v.lo);
        spec.v.hi = value.value("hi", spec.v.hi);
        spec.v.step = value.value("step", spec.v.step);
      } else if (key == "P_levels") {
        spec.p_levels = value.get<std::vector<double>>();
      } else if (key == "E") {
        spec.element_count = value.get<std::int64_t>();
      } else {
        throw Error(ErrorCode::Parse, "unknown sweep spec key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("sweep spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

HeatmapSpec heatmap_spec_from_json(const nlohmann::json& config, const Hyperparams& base) {
  HeatmapSpec spec;
  try {
    auto axis = [&](const char* key, LinAxis& a) {
      if (!config.contains(key)) return;
      const auto& j = config.at(key);
      a.lo = j.value("lo", a.lo);
      a.hi = j.value("hi", a.hi);
      a.n = j.value("n", a.n);
    };
    static const std::set<std::string> kKeys = {"v_axis",      "P_axis", "E",       "low_factor",
                                                "high_factor", "rows",   "palette", "description"};
    for (const auto& [key, value] : config.items()) {
      if (!kKeys.count(key)) {
        throw Error(ErrorCode::Parse, "unknown heatmap config key '" + key + "'");
      }
    }
    axis("v_axis", spec.v);
    axis("P_axis", spec.p);
    spec.element_count = config.value("E", spec.element_count);
    const double low = config.value("low_factor", 0.5);
    const double high = config.value("high_factor", 2.0);
    spec.rows = default_ablation_rows(base, low, high);
    if (config.contains("rows")) {
      spec.rows.clear();
      for (const auto& r : config.at("rows")) {
        AblationRow row;
        row.name = r.at("name").get<std::string>();
        row.mid = apply_overrides(base, r.value("default", nlohmann::json::object()));
        row.low = apply_overrides(row.mid, r.at("low"));
        row.high = apply_overrides(row.mid, r.at("high"));
        spec.rows.push_back(std::move(row));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("heatmap config: ") + e.what());
  }
  spec.validate();
  return spec;
}

DivergingPalette palette_from_json(const nlohmann::json& config) {
  DivergingPalette palette;
  if (!config.is_object() || !config.contains("palette")) return palette;
  try {
    const auto& j = config.at("palette");
    auto stop = [&](const char* key, Rgb& c) {
      if (!j.contains(key)) return;
      const auto rgb = j.at(key).get<std::vector<int>>();
      const std::string where = std::string("palette.") + key;
      if (rgb.size() != 3) throw Error(ErrorCode::Parse, where + " needs 3 channels");
      for (int ch : rgb) {
        if (ch < 0 || ch > 255) throw Error(ErrorCode::Parse, where + " channel out of range");
      }
      c = {static_cast<unsigned char>(rgb[0]), static_cast<unsigned char>(rgb[1]),
           static_cast<unsigned char>(rgb[2])};
    };
    stop("negative", palette.negative);
    stop("zero", palette.zero);
    stop("positive", palette.positive);
    palette.levels = j.value("levels", palette.levels);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("palette: ") + e.what());
  }
  if (palette.levels < 3) throw Error(ErrorCode::Parse, "palette.levels must be at least 3");
  return palette;
}

HeatmapResult run_heatmap(const HeatmapSpec& spec) {
  spec.validate();
  HeatmapResult out;
  out.v = spec.v;
  out.p = spec.p;
  out.element_count = spec.element_count;
  out.rows = spec.rows.size();
  for (const auto& row : spec.rows) {
    out.panels.push_back({row.name, "low", row.low, {}});
    out.panels.push_back({row.name, "default", row.mid, {}});
    out.panels.push_back({row.name, "high", row.high, {}});
  }
  const double e = static_cast<double>(spec.element_count);
  for (auto& panel : out.panels) {
    panel.values.assign(spec.v.n * spec.p.n, 0.0);
    parallel_for(spec.p.n, spec.threads, [&](std::size_t ip) {
      for (std::size_t iv = 0; iv < spec.v.n; ++iv) {
        Signals s;
        s.element_count = spec.element_count;
        s.visible_count = spec.v.at(iv) * e;
        s.probability = spec.p.at(ip);
        panel.values[ip * spec.v.n + iv] = sea::sea(s, panel.hp).sea;
      }
    });
  }
  return out;
}

nlohmann::json heatmap_json(const HeatmapResult& result) {
  nlohmann::json panels = nlohmann::json::array();
  for (const auto& panel : result.panels) {
    nlohmann::json grid = nlohmann::json::array();
    for (std::size_t ip = 0; ip < result.p.n; ++ip) {
      nlohmann::json line = nlohmann::json::array();
      for (std::size_t iv = 0; iv < result.v.n; ++iv) {
        line.push_back(round_sig(panel.values[ip * result.v.n + iv]));
      }
      grid.push_back(std::move(line));
    }
    panels.push_back({{"row", panel.row},
                      {"column", panel.column},
                      {"hyperparams", panel.hp},
                      {"saturation_fraction", round_sig(saturation_fraction(panel))},
                      {"sea", std::move(grid)}});
  }
  return {{"v_axis", {{"lo", result.v.lo}, {"hi", result.v.hi}, {"n", result.v.n}}},
          {"P_axis", {{"lo", result.p.lo}, {"hi", result.p.hi}, {"n", result.p.n}}},
          {"E", result.element_count},
          {"layout", {{"rows", result.rows}, {"columns", result.columns}}},
          {"indexing", "sea[i][j] is the score at P_axis[i], v_axis[j]"},
          {"panels", std::move(panels)}};
}

double saturation_fraction(const HeatmapPanel& panel, double threshold) {
  if (panel.values.empty()) return 0.0;
  std::size_t hits = 0;
  for (double x : panel.values) {
    if (std::fabs(x) > threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(panel.values.size());
}

double near_zero_band_width(const Hyperparams& hp, double center, double threshold, double step) {
  // Parametrize by arc length s along (1, -1)/sqrt(2); stay inside the domain.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double reach = std::min(center, 1.0 - center) / inv_sqrt2;
  const auto n = static_cast<long>(std::floor(reach / step));
  std::size_t inside = 0;
  for (long i = -n; i <= n; ++i) {
    const double s = static_cast<double>(i) * step;
    const double v = center + s * inv_sqrt2;
    const double p = center - s * inv_sqrt2;
    if (v <= 0.0 || p <= 0.0 || p >= 1.0 || v > 1.0) continue;
    if (std::fabs(score_point(p, v, hp).sea) < threshold) ++inside;
  }
  return static_cast<double>(inside) * step;
}

}  // namespace sea
