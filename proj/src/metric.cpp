// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sea/error.hpp"

namespace sea {

void Hyperparams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"alpha", alpha}, {"beta", beta},   {"lambda", lambda},
      {"eta", eta},     {"k", k},         {"tau", tau},
      {"r", r},         {"gamma", gamma}, {"delta", delta},
      {"epsilon_clip", epsilon_clip},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("hyperparameter ") + name + " must be a positive finite number");
    }
  }
  if (epsilon_clip >= 0.5) {
    throw Error(ErrorCode::InvalidArgument, "epsilon_clip must be below 0.5");
  }
}

Signals clip_signals(const Signals& raw, const Hyperparams& hp) {
  if (raw.element_count < 1) {
    throw Error(ErrorCode::InvalidCapacity,
                "element count E must be at least 1, got " + std::to_string(raw.element_count));
  }
  Signals out = raw;
  const double e = static_cast<double>(raw.element_count);
  // NaN inputs collapse to the lower bound.
  out.visible_count = std::isnan(raw.visible_count) ? 0.0 : std::clamp(raw.visible_count, 0.0, e);
  const double p = std::isnan(raw.probability) ? 0.0 : raw.probability;
  out.probability = std::clamp(p, hp.epsilon_clip, 1.0 - hp.epsilon_clip);
  return out;
}

double visual_ratio(const Signals& s) {
  return s.visible_count / static_cast<double>(s.element_count);
}

double economy(double v, const Hyperparams& hp) {
  return std::log((1.0 + hp.delta) / (v + hp.delta));
}

double gate(double p, double v, const Hyperparams& hp) {
  return std::tanh(0.5 * hp.beta * std::log((p + hp.delta) / (v + hp.delta)));
}

double reward(double p, double v, const Hyperparams& hp) {
  return std::pow(p, hp.gamma) * economy(v, hp) * gate(p, v, hp);
}

double penalty(double p, double v, const Hyperparams& hp) {
  const double q = 1.0 - p;
  return hp.lambda * std::pow(v, hp.eta) * std::pow(q, hp.k) + hp.tau * std::pow(q, hp.r);
}

ScoreBreakdown score_point(double p, double v, const Hyperparams& hp) {
  ScoreBreakdown b;
  b.v = v;
  b.u = economy(v, hp);
  b.g = gate(p, v, hp);
  b.reward = std::pow(p, hp.gamma) * b.u * b.g;
  b.penalty = penalty(p, v, hp);
  b.z = b.reward - b.penalty;
  // tanh rounds to exactly +-1 once |alpha z| exceeds ~19 (v -> 0 at high P);
  // keep the score strictly inside the open interval, one ulp from the bound.
  b.sea = std::tanh(hp.alpha * b.z);
  if (std::fabs(b.sea) >= 1.0) b.sea = std::copysign(std::nextafter(1.0, 0.0), b.sea);
  return b;
}

ScoreBreakdown sea(const Signals& signals, const Hyperparams& hp) {
  const Signals s = clip_signals(signals, hp);
  return score_point(s.probability, visual_ratio(s), hp);
}

}  // namespace sea
