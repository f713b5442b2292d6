// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include <doctest.h>

#include "sea/error.hpp"
#include "sea/io.hpp"
#include "sea/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kFixtures = SEA_FIXTURE_DIR;
const fs::path kGolden = SEA_GOLDEN_DIR;

struct Bundle {
  sea::CommonsenseDB db =
      sea::load_db(kFixtures / "commonsense_db.json", kFixtures / "categories.json");
  std::vector<sea::SketchRecord> records =
      sea::load_annotations(kFixtures / "annotations.jsonl", db);
  std::map<std::string, double> probs =
      sea::load_probabilities(kFixtures / "probabilities.json");
};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sea_pipe_" + name + "_" +
                                                  std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("fixture scores match the golden JSONL byte for byte") {
  Bundle b;
  const auto rows = sea::score_signals(sea::fixture_signals(b.records, b.db, b.probs), {});
  CHECK(sea::score_rows_jsonl(rows) == sea::read_file(kGolden / "scores.jsonl"));
}

TEST_CASE("delta override moves fixture scores by less than 1e-3") {
  Bundle b;
  const auto sig = sea::fixture_signals(b.records, b.db, b.probs);
  sea::Hyperparams hp7;
  hp7.delta = 1e-7;
  const auto a = sea::score_signals(sig, {});
  const auto c = sea::score_signals(sig, hp7);
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i].breakdown.sea - c[i].breakdown.sea));
  }
  CHECK(worst < 1e-3);
  CHECK(worst == doctest::Approx(6.66e-7).epsilon(0.01));
}

TEST_CASE("score summary") {
  Bundle b;
  const auto rows = sea::score_signals(sea::fixture_signals(b.records, b.db, b.probs), {});
  const auto s = sea::score_summary(rows, {});
  CHECK(s["n"] == 3);
  CHECK(s["distribution"]["quartile_bins"].size() == 4);
  CHECK(s["hyperparams"]["alpha"] == 2.2);
  CHECK(sea::score_summary({}, {})["distribution"].is_null());
}

TEST_CASE("predictions supply V") {
  Bundle b;
  std::vector<sea::VqaResult> preds;
  for (const auto& r : b.records) {
    sea::VqaResult p{r.sketch_id, r.presence, "", sea::ParseStatus::Ok};
    for (auto& [id, v] : p.presence) v = true;
    preds.push_back(p);
  }
  const auto sig = sea::prediction_signals(b.records, preds, b.db, b.probs, "mock-vlm");
  CHECK(sig[0].signals.visible_count == 12.0);
  CHECK(sig[0].signals.provenance.visible_count == "mock-vlm");
  preds.pop_back();
  CHECK_THROWS_AS(sea::prediction_signals(b.records, preds, b.db, b.probs, "m"), sea::Error);
}

TEST_CASE("compare") {
  const auto dir = scratch("compare");
  const auto golden = kGolden / "scores.jsonl";
  const auto self = sea::compare_scores(sea::read_scores(golden), sea::read_scores(golden));
  CHECK(*self.spearman == doctest::Approx(1.0));
  CHECK(*self.ccc == doctest::Approx(1.0));

  sea::write_file_atomic(dir / "other.jsonl",
                         "{\"sketch_id\":\"zzz\",\"sea\":0.1}\n{\"sketch_id\":\"yyy\",\"sea\":0.2}\n"
                         "{\"sketch_id\":\"xxx\",\"sea\":0.3}\n");
  try {
    sea::compare_scores(sea::read_scores(golden), sea::read_scores(dir / "other.jsonl"));
    FAIL("expected an alignment error");
  } catch (const sea::Error& e) {
    CHECK(e.code() == sea::ErrorCode::Alignment);
  }
  sea::write_file_atomic(dir / "bad.jsonl", "{\"sketch_id\":\"a\"}\n");
  CHECK_THROWS_AS(sea::read_scores(dir / "bad.jsonl"), sea::Error);
  fs::remove_all(dir);
}

TEST_CASE("bench over prediction files") {
  Bundle b;
  const auto dir = scratch("bench");
  std::string perfect, all_true;
  for (const auto& r : b.records) {
    sea::VqaResult p{r.sketch_id, r.presence, "", sea::ParseStatus::Ok};
    perfect += json(p).dump() + "\n";
    for (auto& [id, v] : p.presence) v = true;
    all_true += json(p).dump() + "\n";
  }
  sea::write_file_atomic(dir / "perfect.jsonl", perfect);
  sea::write_file_atomic(dir / "always_yes.jsonl", all_true);
  const auto rows = sea::bench_vqa({dir / "perfect.jsonl", dir / "always_yes.jsonl"}, b.records, b.db);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].model == "always_yes");
  CHECK(*rows[0].report.overall.recall == 1.0);
  CHECK(*rows[0].report.overall.specificity == 0.0);
  CHECK(*rows[1].report.overall.f1 == 1.0);
  CHECK(rows[1].report.per_category.size() == 3);
  const auto csv = sea::bench_csv(rows);
  CHECK(csv.find("perfect,15,0,15,0,1,1,1,1,1,0\n") != std::string::npos);
  CHECK(sea::bench_json(rows)[1]["overall"]["precision"] == 1.0);
  fs::remove_all(dir);
}
