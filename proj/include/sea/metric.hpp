// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace sea {

/// Constants of the abstraction-efficiency score. Defaults are the fixed
/// experimental setting; every field must be strictly positive.
struct Hyperparams {
  double alpha = 2.2;         ///< tanh scale
  double beta = 8.0;          ///< gate sharpness
  double lambda = 1.0;        ///< visual-complexity penalty scale
  double eta = 0.8;           ///< penalty curvature in v (> 1 allowed for ablations)
  double k = 2.3;             ///< penalty sensitivity to 1 - P
  double tau = 0.4;           ///< base low-P penalty scale
  double r = 1.7;             ///< base penalty decay
  double gamma = 1.7;         ///< recognizability guidance exponent
  double delta = 1e-6;        ///< log/ratio stabilizer
  double epsilon_clip = 1e-6; ///< P clipping margin

  /// Throws Error(InvalidArgument) naming the first non-positive field.
  void validate() const;

  bool operator==(const Hyperparams&) const = default;
};

/// Where one signal value came from: "fixture", "mock" or a provider id.
struct Provenance {
  std::string element_count = "fixture";
  std::string visible_count = "fixture";
  std::string probability = "fixture";

  bool operator==(const Provenance&) const = default;
};

/// One sketch's (E, V, P) triple. V is real-valued so averaged detections
/// are representable.
struct Signals {
  std::int64_t element_count = 1;
  double visible_count = 0.0;
  double probability = 0.5;
  Provenance provenance;

  bool operator==(const Signals&) const = default;
};

struct ScoreBreakdown {
  double v = 0.0;        ///< visual ratio V/E
  double u = 0.0;        ///< economy of expression
  double g = 0.0;        ///< centered gate
  double reward = 0.0;
  double penalty = 0.0;
  double z = 0.0;        ///< reward - penalty
  double sea = 0.0;      ///< tanh(alpha * z)

  bool operator==(const ScoreBreakdown&) const = default;
};

/// Clamps V into [0, E] and P into [eps, 1 - eps]. Throws
/// Error(InvalidCapacity) when E < 1.
Signals clip_signals(const Signals& raw, const Hyperparams& hp);

/// V / E of already-clipped signals.
double visual_ratio(const Signals& s);

/// ln((1 + delta) / (v + delta)); exactly zero at v = 1.
double economy(double v, const Hyperparams& hp);

/// tanh((beta / 2) ln((P + delta) / (v + delta))); zero on v == P.
double gate(double p, double v, const Hyperparams& hp);

double reward(double p, double v, const Hyperparams& hp);

double penalty(double p, double v, const Hyperparams& hp);

/// Full breakdown at an already-normalized (P, v) point. No clipping.
ScoreBreakdown score_point(double p, double v, const Hyperparams& hp);

/// Clips internally, then scores.
ScoreBreakdown sea(const Signals& signals, const Hyperparams& hp);

}  // namespace sea
