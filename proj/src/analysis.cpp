// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "sea/error.hpp"
#include "sea/parallel.hpp"

namespace sea {
namespace {

struct ZS {
  double z;
  double s;
};

// Unclamped tanh so finite differences see the true surface.
ZS eval_zs(double p, double v, const Hyperparams& hp) {
  const double z = reward(p, v, hp) - penalty(p, v, hp);
  return {z, std::tanh(hp.alpha * z)};
}

double z_at(double p, double v, const Hyperparams& hp) {
  return reward(p, v, hp) - penalty(p, v, hp);
}

}  // namespace

DerivativePair analytic_derivatives(double p, double v, const Hyperparams& hp) {
  const double eps = hp.epsilon_clip;
  if (!(p > eps && p < 1.0 - eps) || !(v > eps && v <= 1.0)) {
    throw Error(ErrorCode::Boundary,
                fmt::format("analytic derivatives need P in (eps, 1-eps) and v in (eps, 1]; got "
                            "P={} v={}",
                            p, v));
  }
  const double a = p + hp.delta;
  const double b = v + hp.delta;
  const double g = std::tanh(0.5 * hp.beta * std::log(a / b));
  const double sech2 = 1.0 - g * g;
  const double u = std::log((1.0 + hp.delta) / b);
  const double pg = std::pow(p, hp.gamma);
  const double q = 1.0 - p;

  const double du_dv = -1.0 / b;
  const double dg_dp = sech2 * 0.5 * hp.beta / a;
  const double dg_dv = -sech2 * 0.5 * hp.beta / b;

  const double dr_dp = hp.gamma * std::pow(p, hp.gamma - 1.0) * u * g + pg * u * dg_dp;
  const double dr_dv = pg * (du_dv * g + u * dg_dv);

  const double dpen_dp = -hp.lambda * hp.k * std::pow(v, hp.eta) * std::pow(q, hp.k - 1.0) -
                         hp.tau * hp.r * std::pow(q, hp.r - 1.0);
  const double dpen_dv = hp.lambda * hp.eta * std::pow(v, hp.eta - 1.0) * std::pow(q, hp.k);

  DerivativePair d;
  d.dz_dp = dr_dp - dpen_dp;
  d.dz_dv = dr_dv - dpen_dv;
  const double s = std::tanh(hp.alpha * (pg * u * g - penalty(p, v, hp)));
  const double outer = hp.alpha * (1.0 - s * s);
  d.ds_dp = outer * d.dz_dp;
  d.ds_dv = outer * d.dz_dv;
  return d;
}

DerivativePair fd_derivatives(double p, double v, const Hyperparams& hp, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidArgument, "finite-difference step h must be positive");
  }
  const double p_lo = hp.epsilon_clip;
  const double p_hi = 1.0 - hp.epsilon_clip;
  DerivativePair d;

  // Picks the widest admissible stencil around x in [lo, hi].
  auto stencil = [h](double x, double lo, double hi, bool& one_sided) {
    double minus = x - h;
    double plus = x + h;
    one_sided = false;
    if (minus < lo) {
      minus = x;
      one_sided = true;
    }
    if (plus > hi) {
      plus = x;
      one_sided = true;
    }
    return std::pair{minus, plus};
  };

  {
    const auto [lo, hi] = stencil(p, p_lo, p_hi, d.one_sided_p);
    const ZS f_hi = eval_zs(hi, v, hp);
    const ZS f_lo = eval_zs(lo, v, hp);
    d.dz_dp = (f_hi.z - f_lo.z) / (hi - lo);
    d.ds_dp = (f_hi.s - f_lo.s) / (hi - lo);
  }
  {
    const auto [lo, hi] = stencil(v, 0.0, 1.0, d.one_sided_v);
    const ZS f_hi = eval_zs(p, hi, hp);
    const ZS f_lo = eval_zs(p, lo, hp);
    d.dz_dv = (f_hi.z - f_lo.z) / (hi - lo);
    d.ds_dv = (f_hi.s - f_lo.s) / (hi - lo);
  }
  return d;
}

std::size_t Axis::size() const {
  if (!(step > 0.0) || hi < lo) return 0;
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double Axis::at(std::size_t i) const {
  // Rounded to 12 decimals so 0.1 + 5 * 0.01 prints and compares as 0.15.
  const double x = lo + static_cast<double>(i) * step;
  return std::round(x * 1e12) / 1e12;
}

void GridSpec::validate() const {
  auto check = [](const Axis& a, const char* name, double lo, double hi, bool hi_inclusive) {
    if (!(a.step > 0.0) || !std::isfinite(a.step)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("{} step must be positive", name));
    }
    if (!(a.lo <= a.hi)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("{} range is empty", name));
    }
    const bool hi_ok = hi_inclusive ? a.hi <= hi : a.hi < hi;
    if (!(a.lo > lo) || !hi_ok) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("{} range [{}, {}] leaves the admissible domain", name, a.lo, a.hi));
    }
  };
  check(p, "P", 0.0, 1.0, false);
  check(v, "v", 0.0, 1.0, true);
  if (element_counts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least one element count E");
  }
  for (auto e : element_counts) {
    if (e < 1) throw Error(ErrorCode::InvalidCapacity, "grid element counts must be >= 1");
  }
}

std::size_t count_sign_changes(const std::vector<double>& values) {
  std::size_t changes = 0;
  int last = 0;
  for (double x : values) {
    const int s = (x > 0.0) - (x < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

GridMax grid_golden_max(const std::function<double(double)>& f, std::size_t n, double step,
                        double tol) {
  if (n == 0 || !(step > 0.0) || !(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid search needs n >= 1, step > 0 and tol > 0");
  }
  std::size_t best = 1;
  double best_f = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= n; ++i) {
    const double y = f(static_cast<double>(i) * step);
    if (y > best_f) {
      best_f = y;
      best = i;
    }
  }
  GridMax out;
  if (best == 1 || best == n) {
    out.x = static_cast<double>(best) * step;
    out.value = best_f;
    out.location = best == 1 ? OptimumLocation::LeftBoundary : OptimumLocation::RightBoundary;
    return out;
  }

  double lo = static_cast<double>(best - 1) * step;
  double hi = static_cast<double>(best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  out.x = 0.5 * (lo + hi);
  out.value = f(out.x);
  // Refinement never loses to the coarse winner.
  if (out.value < best_f) {
    out.x = static_cast<double>(best) * step;
    out.value = best_f;
  }
  return out;
}

VStar find_v_star(std::int64_t element_count, double p, const Hyperparams& hp) {
  if (element_count < 1) {
    throw Error(ErrorCode::InvalidCapacity, "element count E must be at least 1");
  }
  if (!(p > hp.epsilon_clip && p < 1.0 - hp.epsilon_clip)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("P={} outside (eps, 1-eps)", p));
  }
  // tanh is monotone, so maximizing Z maximizes the score without the
  // plateaus tanh saturation would introduce.
  const auto n = static_cast<std::size_t>(std::llround(1.0 / kVStarGridStep));
  const GridMax m =
      grid_golden_max([&](double v) { return z_at(p, v, hp); }, n, kVStarGridStep, kVStarTolerance);
  VStar out;
  out.v_star = m.x;
  out.location = m.location;
  out.sea_star = score_point(p, m.x, hp).sea;
  return out;
}

std::vector<ContourPoint> zero_contour(const GridSpec& grid, const Hyperparams& hp) {
  grid.validate();
  const std::size_t nv = grid.v.size();
  const std::size_t np = grid.p.size();
  std::vector<std::vector<ContourPoint>> columns(nv);
  parallel_for(nv, grid.threads, [&](std::size_t iv) {
    const double v = grid.v.at(iv);
    double prev_p = grid.p.at(0);
    double prev_s = score_point(prev_p, v, hp).sea;
    for (std::size_t ip = 1; ip < np; ++ip) {
      const double p = grid.p.at(ip);
      const double s = score_point(p, v, hp).sea;
      if (prev_s == 0.0) {
        columns[iv].push_back({prev_p, v});
      } else if ((prev_s < 0.0 && s > 0.0) || (prev_s > 0.0 && s < 0.0)) {
        const double t = prev_s / (prev_s - s);
        columns[iv].push_back({prev_p + t * (p - prev_p), v});
      }
      prev_p = p;
      prev_s = s;
    }
    if (prev_s == 0.0) columns[iv].push_back({prev_p, v});
  });
  std::vector<ContourPoint> out;
  for (auto& c : columns) out.insert(out.end(), c.begin(), c.end());
  return out;
}

RegionReport verify_monotonicity_p(const GridSpec& grid, const Hyperparams& hp) {
  grid.validate();
  hp.validate();
  const std::size_t np = grid.p.size();
  const std::size_t nv = grid.v.size();

  struct Row {
    std::size_t mono = 0;
    std::size_t low = 0;
    double min_dz_dp = std::numeric_limits<double>::infinity();
    double min_v = 0.0;
    std::vector<OptimumEntry> optima;
  };
  std::vector<Row> rows(np);

  parallel_for(np, grid.threads, [&](std::size_t ip) {
    Row& row = rows[ip];
    const double p = grid.p.at(ip);
    for (const auto e : grid.element_counts) {
      for (std::size_t iv = 0; iv < nv; ++iv) {
        // Route through (E, V) so the capacity takes part in normalization.
        Signals s;
        s.element_count = e;
        s.visible_count = grid.v.at(iv) * static_cast<double>(e);
        s.probability = p;
        const Signals c = clip_signals(s, hp);
        const double v = visual_ratio(c);
        const DerivativePair d = analytic_derivatives(c.probability, v, hp);
        if (d.dz_dp < -kViolationTolerance) ++row.mono;
        if (p <= grid.low_p_max + 1e-12 && d.dz_dv > kViolationTolerance) ++row.low;
        if (d.dz_dp < row.min_dz_dp) {
          row.min_dz_dp = d.dz_dp;
          row.min_v = v;
        }
      }
      const VStar vs = find_v_star(e, p, hp);
      row.optima.push_back(
          {e, p, vs.v_star, vs.sea_star, vs.location != OptimumLocation::Interior});
    }
  });

  RegionReport report;
  report.grid = grid;
  report.points = np * nv * grid.element_counts.size();
  report.min_dz_dp = std::numeric_limits<double>::infinity();
  for (std::size_t ip = 0; ip < np; ++ip) {
    const Row& row = rows[ip];
    report.monotone_p_violations += row.mono;
    report.low_p_monotone_v_violations += row.low;
    if (row.min_dz_dp < report.min_dz_dp) {
      report.min_dz_dp = row.min_dz_dp;
      report.min_dz_dp_at_p = grid.p.at(ip);
      report.min_dz_dp_at_v = row.min_v;
    }
    report.optimum_map.insert(report.optimum_map.end(), row.optima.begin(), row.optima.end());
  }
  report.zero_contour = zero_contour(grid, hp);
  return report;
}

bool InvariantSuite::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

InvariantSuite run_invariant_suite(const GridSpec& grid, const Hyperparams& hp,
                                   std::uint64_t seed, std::size_t derivative_points,
                                   std::size_t bounded_samples) {
  InvariantSuite suite;
  suite.region = verify_monotonicity_p(grid, hp);
  const RegionReport& region = suite.region;

  suite.checks.push_back({"monotone_in_p", region.monotone_p_violations == 0,
                          fmt::format("{} violations over {} points (min dZ/dP = {:.6g})",
                                      region.monotone_p_violations, region.points,
                                      region.min_dz_dp)});
  suite.checks.push_back({"low_p_nonincreasing_in_v", region.low_p_monotone_v_violations == 0,
                          fmt::format("{} points with P <= {} and dZ/dv > 0",
                                      region.low_p_monotone_v_violations, grid.low_p_max)});

  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < derivative_points; ++i) {
      const double p = unit(rng);
      const double v = unit(rng);
      const DerivativePair a = analytic_derivatives(p, v, hp);
      const DerivativePair f = fd_derivatives(p, v, hp, 1e-6);
      for (auto [x, y] : {std::pair{a.dz_dp, f.dz_dp}, std::pair{a.dz_dv, f.dz_dv},
                          std::pair{a.ds_dp, f.ds_dp}, std::pair{a.ds_dv, f.ds_dv}}) {
        const double rel = std::fabs(x - y) / std::max(1.0, std::fabs(x));
        worst = std::max(worst, rel);
        if (rel > 1e-5) ++bad;
      }
    }
    suite.checks.push_back(
        {"derivative_agreement", bad == 0,
         fmt::format("{} of {} partials off by > 1e-5 (worst {:.3g})", bad, 4 * derivative_points,
                     worst)});
  }

  {
    const Axis v_axis{0.05, 1.0, 0.01};
    std::size_t rises = 0;
    double prev = score_point(0.3, v_axis.at(0), hp).sea;
    for (std::size_t i = 1; i < v_axis.size(); ++i) {
      const double s = score_point(0.3, v_axis.at(i), hp).sea;
      if (!(s < prev)) ++rises;
      prev = s;
    }
    suite.checks.push_back({"low_p_strictly_decreasing", rises == 0,
                            fmt::format("P=0.3: {} non-decreasing steps over v in [0.05, 1]",
                                        rises)});
  }

  {
    std::vector<double> slopes;
    for (int i = 21; i <= 999; ++i) {
      slopes.push_back(analytic_derivatives(0.8, i * 1e-3, hp).dz_dv);
    }
    const std::size_t changes = count_sign_changes(slopes);
    suite.checks.push_back({"high_p_single_slope_sign_change", changes == 1,
                            fmt::format("P=0.8: dZ/dv changes sign {} time(s) over (0.02, 1)",
                                        changes)});
  }

  {
    double worst = 0.0;
    const double p = hp.epsilon_clip;
    for (double v : {0.1, 0.5, 0.9}) {
      const double limit = hp.lambda * std::pow(v, hp.eta) + hp.tau;
      worst = std::max(worst, std::fabs(score_point(p, v, hp).z + limit));
    }
    suite.checks.push_back({"limit_p_to_eps", worst <= 1e-3,
                            fmt::format("max |Z + (lambda v^eta + tau)| = {:.3g}", worst)});
  }

  {
    double worst = 0.0;
    const Axis p_axis{0.01, 0.99, 0.01};
    for (std::size_t i = 0; i < p_axis.size(); ++i) {
      worst = std::max(worst, std::fabs(reward(p_axis.at(i), 1.0, hp)));
    }
    suite.checks.push_back({"limit_v_to_one", worst <= 1e-5,
                            fmt::format("max |reward(P, 1)| = {:.3g}", worst)});
  }

  {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::int64_t> e_dist(1, 64);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t out_of_range = 0;
    for (std::size_t i = 0; i < bounded_samples; ++i) {
      Signals s;
      s.element_count = e_dist(rng);
      s.visible_count = unit(rng) * static_cast<double>(s.element_count);
      s.probability = unit(rng);
      const double x = sea(s, hp).sea;
      if (!(x > -1.0 && x < 1.0)) ++out_of_range;
    }
    suite.checks.push_back({"bounded", out_of_range == 0,
                            fmt::format("{} of {} random scores outside (-1, 1)", out_of_range,
                                        bounded_samples)});
  }
  return suite;
}

void to_json(nlohmann::json& j, const GridSpec& g) {
  j = nlohmann::json{{"P", {{"lo", g.p.lo}, {"hi", g.p.hi}, {"step", g.p.step}}},
                     {"v", {{"lo", g.v.lo}, {"hi", g.v.hi}, {"step", g.v.step}}},
                     {"E", g.element_counts},
                     {"low_p_max", g.low_p_max}};
}

GridSpec grid_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "grid spec must be a JSON object");
  GridSpec g;
  try {
    auto axis = [](const nlohmann::json& a, Axis& out) {
      for (const auto& [key, value] : a.items()) {
        if (key == "lo") {
          out.lo = value.get<double>();
        } else if (key == "hi") {
          out.hi = value.get<double>();
        } else if (key == "step") {
          out.step = value.get<double>();
        } else {
          throw Error(ErrorCode::Parse, "unknown axis key '" + key + "'");
        }
      }
    };
    for (const auto& [key, value] : j.items()) {
      if (key == "P") {
        axis(value, g.p);
      } else if (key == "v") {
        axis(value, g.v);
      } else if (key == "E") {
        g.element_counts = value.get<std::vector<std::int64_t>>();
      } else if (key == "low_p_max") {
        g.low_p_max = value.get<double>();
      } else if (key == "threads") {
        g.threads = value.get<std::size_t>();
      } else {
        throw Error(ErrorCode::Parse, "unknown grid spec key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("grid spec: ") + e.what());
  }
  g.validate();
  return g;
}

void to_json(nlohmann::json& j, const RegionReport& r) {
  nlohmann::json optima = nlohmann::json::array();
  for (const auto& o : r.optimum_map) {
    optima.push_back({{"E", o.element_count},
                      {"P", o.p},
                      {"v_star", o.v_star},
                      {"sea_at_v_star", o.sea_at_v_star},
                      {"at_boundary", o.at_boundary}});
  }
  nlohmann::json contour = nlohmann::json::array();
  for (const auto& c : r.zero_contour) contour.push_back({{"P", c.p}, {"v", c.v}});
  j = nlohmann::json{{"grid_spec", r.grid},
                     {"points", r.points},
                     {"monotone_P_violations", r.monotone_p_violations},
                     {"low_P_monotone_v_violations", r.low_p_monotone_v_violations},
                     {"min_dZ_dP", {{"value", r.min_dz_dp}, {"P", r.min_dz_dp_at_p},
                                    {"v", r.min_dz_dp_at_v}}},
                     {"optimum_map", std::move(optima)},
                     {"zero_contour", std::move(contour)}};
}

void to_json(nlohmann::json& j, const InvariantSuite& s) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : s.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j = nlohmann::json{{"passed", s.all_passed()}, {"checks", std::move(checks)},
                     {"region", s.region}};
}

std::string contour_csv(const std::vector<ContourPoint>& points) {
  std::string out = "P,v\n";
  for (const auto& c : points) out += fmt::format("{},{}\n", c.p, c.v);
  return out;
}

}  // namespace sea
