// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/serialize.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "sea/error.hpp"

namespace sea {

void to_json(nlohmann::json& j, const Hyperparams& hp) {
  j = nlohmann::json{{"alpha", hp.alpha}, {"beta", hp.beta}, {"lambda", hp.lambda},
                     {"eta", hp.eta},     {"k", hp.k},       {"tau", hp.tau},
                     {"r", hp.r},         {"gamma", hp.gamma}, {"delta", hp.delta},
                     {"epsilon_clip", hp.epsilon_clip}};
}

void to_json(nlohmann::json& j, const ScoreBreakdown& b) {
  j = nlohmann::json{{"v", b.v},           {"u", b.u}, {"g", b.g},    {"reward", b.reward},
                     {"penalty", b.penalty}, {"z", b.z}, {"sea", b.sea}};
}

Hyperparams apply_overrides(Hyperparams hp, const nlohmann::json& overrides) {
  if (overrides.is_null()) return hp;
  if (!overrides.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "hyperparameter overrides must be a JSON object");
  }
  for (const auto& [key, value] : overrides.items()) {
    if (!value.is_number()) {
      throw Error(ErrorCode::InvalidArgument, "hyperparameter " + key + " must be a number");
    }
    const double x = value.get<double>();
    if (key == "alpha") hp.alpha = x;
    else if (key == "beta") hp.beta = x;
    else if (key == "lambda") hp.lambda = x;
    else if (key == "eta") hp.eta = x;
    else if (key == "k") hp.k = x;
    else if (key == "tau") hp.tau = x;
    else if (key == "r") hp.r = x;
    else if (key == "gamma") hp.gamma = x;
    else if (key == "delta") hp.delta = x;
    else if (key == "epsilon_clip") hp.epsilon_clip = x;
    else throw Error(ErrorCode::InvalidArgument, "unknown hyperparameter '" + key + "'");
  }
  return hp;
}

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  return std::strtod(fmt::format("{:.{}g}", x, digits).c_str(), nullptr);
}

}  // namespace sea
