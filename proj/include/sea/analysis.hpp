// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sea/metric.hpp"

namespace sea {

/// Partials of Z and S = tanh(alpha Z) with E held fixed.
struct DerivativePair {
  double dz_dp = 0.0;
  double dz_dv = 0.0;
  double ds_dp = 0.0;
  double ds_dv = 0.0;
  /// Set by fd_derivatives when a stencil had to fall back to a one-sided
  /// difference at the domain edge.
  bool one_sided_p = false;
  bool one_sided_v = false;
};

/// Closed-form partials. With A = P + d, B = v + d, g = tanh(beta/2 ln(A/B)):
///   du/dv = -1/B,  dg/dP = (1 - g^2) beta / (2A),  dg/dv = -(1 - g^2) beta / (2B)
///   dR/dP = gamma P^(gamma-1) u g + P^gamma u dg/dP
///   dR/dv = P^gamma (g du/dv + u dg/dv)
///   dpen/dP = -lambda k v^eta (1-P)^(k-1) - tau r (1-P)^(r-1)
///   dpen/dv = lambda eta v^(eta-1) (1-P)^k
/// Requires P in (eps, 1 - eps) and v in (eps, 1]; otherwise throws
/// Error(Boundary) and the caller should use fd_derivatives.
DerivativePair analytic_derivatives(double p, double v, const Hyperparams& hp);

/// Central differences with step h; degrades to one-sided differences when
/// the stencil would leave P in [eps, 1 - eps] or v in [0, 1].
DerivativePair fd_derivatives(double p, double v, const Hyperparams& hp, double h);

/// Inclusive arithmetic grid lo, lo + step, ..., <= hi.
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.01;

  std::size_t size() const;
  double at(std::size_t i) const;
};

struct GridSpec {
  Axis p{0.10, 0.99, 0.01};
  Axis v{0.05, 1.00, 0.01};
  std::vector<std::int64_t> element_counts{4, 8, 16, 32};
  double low_p_max = 0.3;      ///< rows with P <= this are checked for dZ/dv <= 0
  std::size_t threads = 0;     ///< 0 = hardware concurrency

  /// Throws Error(InvalidArgument) for empty or out-of-domain axes.
  void validate() const;
};

struct OptimumEntry {
  std::int64_t element_count = 0;
  double p = 0.0;
  double v_star = 0.0;
  double sea_at_v_star = 0.0;
  bool at_boundary = false;
};

struct ContourPoint {
  double p = 0.0;
  double v = 0.0;
};

struct RegionReport {
  GridSpec grid;
  std::size_t points = 0;
  std::size_t monotone_p_violations = 0;
  std::size_t low_p_monotone_v_violations = 0;
  double min_dz_dp = 0.0;
  double min_dz_dp_at_p = 0.0;
  double min_dz_dp_at_v = 0.0;
  std::vector<OptimumEntry> optimum_map;
  std::vector<ContourPoint> zero_contour;
};

inline constexpr double kViolationTolerance = 1e-9;

RegionReport verify_monotonicity_p(const GridSpec& grid, const Hyperparams& hp);

enum class OptimumLocation { Interior, LeftBoundary, RightBoundary };

struct VStar {
  double v_star = 0.0;
  double sea_star = 0.0;
  OptimumLocation location = OptimumLocation::Interior;
};

/// Search range for v*: coarse grid step and golden-section tolerance.
inline constexpr double kVStarGridStep = 1e-3;
inline constexpr double kVStarTolerance = 1e-6;

struct GridMax {
  double x = 0.0;
  double value = 0.0;
  OptimumLocation location = OptimumLocation::Interior;
};

/// Maximizes f over x = step, 2 step, ..., n step: coarse scan, then
/// golden-section refinement inside the winning cell's neighbours until the
/// bracket is narrower than `tol`. Edge winners are returned at the edge.
GridMax grid_golden_max(const std::function<double(double)>& f, std::size_t n, double step,
                        double tol);

/// argmax over v in [1e-3, 1] of the score at fixed (E, P): coarse grid
/// then golden-section refinement. Edge maxima are reported at the edge.
VStar find_v_star(std::int64_t element_count, double p, const Hyperparams& hp);

/// Crossings of sea = 0 along each v column of the grid (P varies),
/// linearly interpolated between neighbouring P samples.
std::vector<ContourPoint> zero_contour(const GridSpec& grid, const Hyperparams& hp);

/// Number of strict sign changes in a sequence, zeros skipped.
std::size_t count_sign_changes(const std::vector<double>& values);

/// Named pass/fail check produced by the invariant suite.
struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InvariantSuite {
  RegionReport region;
  std::vector<InvariantCheck> checks;

  bool all_passed() const;
};

/// Every analysis invariant: monotonicity grid, derivative agreement on
/// `derivative_points` seeded points, low-P decrease, high-P single sign
/// change, P -> eps and v -> 1 limits, and boundedness on random inputs.
InvariantSuite run_invariant_suite(const GridSpec& grid, const Hyperparams& hp,
                                   std::uint64_t seed, std::size_t derivative_points = 1000,
                                   std::size_t bounded_samples = 100000);

void to_json(nlohmann::json& j, const GridSpec& g);
/// Inverse of to_json; missing keys keep their defaults, unknown keys and
/// wrong types are Error(Parse). Also accepts "threads".
GridSpec grid_spec_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const RegionReport& r);
void to_json(nlohmann::json& j, const InvariantSuite& s);

/// "P,v" header then one crossing per line.
std::string contour_csv(const std::vector<ContourPoint>& points);

}  // namespace sea
