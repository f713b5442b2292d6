// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "sea/error.hpp"
#include "sea/io.hpp"
#include "sea/serialize.hpp"

namespace sea {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<ScoreRow> score_signals(const std::vector<SketchSignals>& signals,
                                    const Hyperparams& hp) {
  hp.validate();
  std::vector<ScoreRow> rows;
  rows.reserve(signals.size());
  for (const auto& s : signals) {
    try {
      rows.push_back({s.sketch_id, s.class_name, s.signals, sea(s.signals, hp)});
    } catch (const Error& e) {
      throw Error(e.code(), "sketch '" + s.sketch_id + "': " + e.what());
    }
  }
  return rows;
}

std::vector<SketchSignals> prediction_signals(const std::vector<SketchRecord>& records,
                                              const std::vector<VqaResult>& predictions,
                                              const CommonsenseDB& db,
                                              const std::map<std::string, double>& probabilities,
                                              const std::string& provenance) {
  std::map<std::string, const VqaResult*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.sketch_id, &p).second) {
      throw Error(ErrorCode::Alignment, "duplicate prediction for sketch '" + p.sketch_id + "'");
    }
  }
  if (by_id.size() != records.size()) {
    throw Error(ErrorCode::Alignment, fmt::format("{} predictions for {} annotated sketches",
                                                  by_id.size(), records.size()));
  }
  auto out = fixture_signals(records, db, probabilities);
  for (auto& s : out) {
    const auto it = by_id.find(s.sketch_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::Alignment, "no prediction for sketch '" + s.sketch_id + "'");
    }
    std::int64_t v = 0;
    for (const auto& [id, present] : it->second->presence) {
      if (!db.has_element(s.class_name, id)) {
        throw Error(ErrorCode::Validation, fmt::format("sketch '{}': unknown element id '{}'",
                                                       s.sketch_id, id));
      }
      v += present ? 1 : 0;
    }
    s.signals.visible_count = static_cast<double>(v);
    s.signals.provenance.visible_count = provenance;
  }
  return out;
}

std::string score_rows_jsonl(const std::vector<ScoreRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    const auto& b = r.breakdown;
    ordered_json j;
    j["sketch_id"] = r.sketch_id;
    j["class"] = r.class_name;
    j["E"] = r.signals.element_count;
    j["V"] = round_sig(r.signals.visible_count);
    j["P"] = round_sig(r.signals.probability);
    j["v"] = round_sig(b.v);
    j["u"] = round_sig(b.u);
    j["g"] = round_sig(b.g);
    j["reward"] = round_sig(b.reward);
    j["penalty"] = round_sig(b.penalty);
    j["Z"] = round_sig(b.z);
    j["sea"] = round_sig(b.sea);
    j["provenance"] = {{"E", r.signals.provenance.element_count},
                       {"V", r.signals.provenance.visible_count},
                       {"P", r.signals.provenance.probability}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

ordered_json score_summary(const std::vector<ScoreRow>& rows, const Hyperparams& hp) {
  ordered_json j;
  j["n"] = rows.size();
  json hp_json = hp;
  j["hyperparams"] = hp_json;
  if (rows.empty()) {
    j["distribution"] = nullptr;
    return j;
  }
  std::vector<double> scores;
  for (const auto& r : rows) scores.push_back(r.breakdown.sea);
  const auto d = summarize_distribution(scores, -1.0, 1.0);
  ordered_json dist;
  dist["range"] = {d.lo, d.hi};
  dist["mean"] = round_sig(d.mean);
  dist["std"] = round_sig(d.std);
  dist["mode"] = round_sig(d.mode);
  dist["quartile_bins"] = ordered_json::array();
  for (double b : d.quartile_bins) dist["quartile_bins"].push_back(round_sig(b));
  j["distribution"] = dist;
  return j;
}

std::map<std::string, double> read_scores(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::map<std::string, double> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::Parse, fmt::format("{} line {}: {}", path.string(), n, e.what()));
    }
    if (!j.is_object() || !j.contains("sketch_id") || !j["sketch_id"].is_string() ||
        !j.contains("sea") || !j["sea"].is_number()) {
      throw Error(ErrorCode::Parse,
                  fmt::format("{} line {}: needs string sketch_id and numeric sea", path.string(),
                              n));
    }
    const auto id = j["sketch_id"].get<std::string>();
    if (!out.emplace(id, j["sea"].get<double>()).second) {
      throw Error(ErrorCode::Validation,
                  fmt::format("{} line {}: duplicate sketch_id '{}'", path.string(), n, id));
    }
  }
  return out;
}

AgreementReport compare_scores(const std::map<std::string, double>& a,
                               const std::map<std::string, double>& b) {
  std::vector<double> x, y;
  for (const auto& [id, s] : a) {
    const auto it = b.find(id);
    if (it == b.end()) {
      throw Error(ErrorCode::Alignment, "sketch '" + id + "' is missing from the second file");
    }
    x.push_back(s);
    y.push_back(it->second);
  }
  if (a.size() != b.size()) {
    for (const auto& [id, s] : b) {
      if (!a.count(id)) {
        throw Error(ErrorCode::Alignment, "sketch '" + id + "' is missing from the first file");
      }
    }
  }
  return agreement(x, y);
}

std::vector<VqaResult> load_predictions(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<VqaResult> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      out.push_back(vqa_result_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::Parse, fmt::format("{} line {}: {}", path.string(), n, e.what()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{} line {}: {}", path.string(), n, e.what()));
    }
  }
  return out;
}

std::vector<BenchRow> bench_vqa(const std::vector<std::filesystem::path>& prediction_files,
                                const std::vector<SketchRecord>& truth,
                                const CommonsenseDB& db) {
  std::vector<BenchRow> rows;
  for (const auto& file : prediction_files) {
    const auto preds = load_predictions(file);
    BenchRow row;
    row.model = file.stem().string();
    try {
      row.report = score_vqa(preds, truth, &db);
    } catch (const Error& e) {
      throw Error(e.code(), file.string() + ": " + e.what());
    }
    row.failed = static_cast<std::size_t>(std::count_if(
        preds.begin(), preds.end(),
        [](const VqaResult& r) { return r.parse_status == ParseStatus::Failed; }));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const BenchRow& a, const BenchRow& b) { return a.model < b.model; });
  return rows;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? fmt::format("{}", round_sig(*v)) : std::string();
}

ordered_json metrics_json(const VqaMetrics& m) {
  auto opt = [](const std::optional<double>& v) {
    return v ? ordered_json(round_sig(*v)) : ordered_json(nullptr);
  };
  ordered_json j;
  j["tp"] = m.counts.tp;
  j["fp"] = m.counts.fp;
  j["tn"] = m.counts.tn;
  j["fn"] = m.counts.fn;
  j["precision"] = opt(m.precision);
  j["recall"] = opt(m.recall);
  j["f1"] = opt(m.f1);
  j["accuracy"] = opt(m.accuracy);
  j["specificity"] = opt(m.specificity);
  return j;
}

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "model,tp,fp,tn,fn,precision,recall,f1,accuracy,specificity,failed\n";
  for (const auto& r : rows) {
    const auto& m = r.report.overall;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.model, m.counts.tp, m.counts.fp,
                       m.counts.tn, m.counts.fn, cell(m.precision), cell(m.recall), cell(m.f1),
                       cell(m.accuracy), cell(m.specificity), r.failed);
  }
  return out;
}

ordered_json bench_json(const std::vector<BenchRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["model"] = r.model;
    j["failed_parses"] = r.failed;
    j["overall"] = metrics_json(r.report.overall);
    j["per_category"] = ordered_json::object();
    for (const auto& [cat, m] : r.report.per_category) j["per_category"][cat] = metrics_json(m);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace sea
