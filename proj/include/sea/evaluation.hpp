// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sea/dataset.hpp"
#include "sea/metric.hpp"
#include "sea/vqa.hpp"

namespace sea {

// Undefined statistics (a zero denominator or zero variance) are empty
// optionals throughout. They serialize as JSON null.

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o);
  bool operator==(const ConfusionCounts&) const = default;
};

struct VqaMetrics {
  ConfusionCounts counts;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> accuracy;
  std::optional<double> specificity;
};

VqaMetrics metrics_from_counts(const ConfusionCounts& counts);

struct VqaReport {
  VqaMetrics overall;
  std::map<std::string, VqaMetrics> per_category;  // empty without a DB
};

/// Aligns predictions and truth by sketch_id. Both sides must cover the same
/// sketches, and each prediction the same element ids as its truth record;
/// otherwise Error(Alignment). With a DB, counts are also grouped by the
/// category of each sketch's class.
VqaReport score_vqa(const std::vector<VqaResult>& predictions,
                    const std::vector<SketchRecord>& truth,
                    const CommonsenseDB* db = nullptr);

struct AgreementReport {
  std::size_t n = 0;
  std::optional<double> spearman;
  std::optional<double> pearson;
  std::optional<double> kendall;  // tau-b
  std::optional<double> ccc;
};

/// Error(InvalidArgument) on length mismatch, fewer than two points or
/// non-finite input.
AgreementReport agreement(const std::vector<double>& x, const std::vector<double>& y);

/// 1-based ranks, ties get their average rank.
std::vector<double> average_ranks(const std::vector<double>& x);

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> concordance(const std::vector<double>& x, const std::vector<double>& y);

enum class StdKind { Population, Sample };

struct DistributionSummary {
  std::size_t n = 0;
  double lo = 0.0;
  double hi = 0.0;
  double mean = 0.0;
  double std = 0.0;
  double mode = 0.0;                    // midpoint of the fullest of 100 bins
  std::array<double, 4> quartile_bins{};  // proportions in 4 equal-width bins
};

inline constexpr int kModeBins = 100;

/// Scores must lie in [lo, hi]; the top edge belongs to the last bin.
DistributionSummary summarize_distribution(const std::vector<double>& scores, double lo,
                                           double hi, StdKind kind = StdKind::Population);

/// Gaussian KDE with Silverman's rule of thumb, evaluated at `points`
/// equally spaced positions over [lo, hi].
std::vector<double> kde_silverman(const std::vector<double>& scores, double lo, double hi,
                                  int points);

struct LevelScore {
  int level = 0;
  double probability = 0.0;
  ScoreBreakdown breakdown;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct LevelRow {
  int level = 0;
  std::size_t n = 0;
  MeanStd sea;
  MeanStd reward;
  MeanStd penalty;
  MeanStd v;
  MeanStd p;
};

/// Per-level aggregation, levels ascending. A label outside `levels` is an
/// Error(InvalidArgument).
std::vector<LevelRow> level_table(const std::vector<LevelScore>& scored,
                                       const std::vector<int>& levels = {4, 8, 16, 32});

/// Similarity in [0, 1]: 1 - levenshtein / max length (1 for two empties).
double normalized_levenshtein(const std::string& a, const std::string& b);

/// Greedy one-to-one matching of element names by normalized Levenshtein
/// similarity; precision and recall are summed similarities over each side's
/// size. Empty on both sides scores 1.
struct SoftF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
SoftF1 soft_f1(const std::vector<std::string>& predicted,
               const std::vector<std::string>& reference);

void to_json(nlohmann::json& j, const ConfusionCounts& c);
void to_json(nlohmann::json& j, const VqaMetrics& m);
void to_json(nlohmann::json& j, const VqaReport& r);
void to_json(nlohmann::json& j, const AgreementReport& r);
void to_json(nlohmann::json& j, const DistributionSummary& s);
void to_json(nlohmann::json& j, const LevelRow& r);

}  // namespace sea
