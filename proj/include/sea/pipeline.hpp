// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end steps shared by the C API and the command-line tool.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sea/dataset.hpp"
#include "sea/evaluation.hpp"
#include "sea/metric.hpp"
#include "sea/providers.hpp"

namespace sea {

struct ScoreRow {
  std::string sketch_id;
  std::string class_name;
  Signals signals;
  ScoreBreakdown breakdown;
};

std::vector<ScoreRow> score_signals(const std::vector<SketchSignals>& signals,
                                    const Hyperparams& hp);

/// V taken from VQA predictions instead of ground truth; classes still come
/// from `records`. Predictions must cover exactly the annotated sketches.
std::vector<SketchSignals> prediction_signals(const std::vector<SketchRecord>& records,
                                              const std::vector<VqaResult>& predictions,
                                              const CommonsenseDB& db,
                                              const std::map<std::string, double>& probabilities,
                                              const std::string& provenance);

/// One JSON object per line, fixed key order, reals rounded to 12
/// significant digits so the text is stable across platforms.
std::string score_rows_jsonl(const std::vector<ScoreRow>& rows);

nlohmann::ordered_json score_summary(const std::vector<ScoreRow>& rows, const Hyperparams& hp);

/// sketch_id -> sea from a score JSONL file. Error(Parse) names the line.
std::map<std::string, double> read_scores(const std::filesystem::path& path);

/// Both files must hold the same sketch ids (Error(Alignment) otherwise).
AgreementReport compare_scores(const std::map<std::string, double>& a,
                               const std::map<std::string, double>& b);

std::vector<VqaResult> load_predictions(const std::filesystem::path& path);

struct BenchRow {
  std::string model;  // prediction file stem
  VqaReport report;
  std::size_t failed = 0;  // predictions with parse_status failed
};

std::vector<BenchRow> bench_vqa(const std::vector<std::filesystem::path>& prediction_files,
                                const std::vector<SketchRecord>& truth,
                                const CommonsenseDB& db);

std::string bench_csv(const std::vector<BenchRow>& rows);
nlohmann::ordered_json bench_json(const std::vector<BenchRow>& rows);

}  // namespace sea
