// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "sea/metric.hpp"

namespace sea {

void to_json(nlohmann::json& j, const Hyperparams& hp);
void to_json(nlohmann::json& j, const ScoreBreakdown& b);

/// Overwrites the fields named in `overrides` (alpha, beta, lambda, eta, k,
/// tau, r, gamma, delta, epsilon_clip). Unknown keys or non-numeric values
/// throw Error(InvalidArgument).
Hyperparams apply_overrides(Hyperparams hp, const nlohmann::json& overrides);

/// Rounds to 12 significant digits so emitted data files do not depend on
/// last-ulp differences between math libraries.
double round_sig(double x, int digits = 12);

}  // namespace sea
