// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "sea/error.hpp"
#include "sea/evaluation.hpp"

using doctest::Approx;

namespace {

// tp=3, fp=1, fn=2, tn=4 spread over two sketches.
void confusion_fixture(std::vector<sea::VqaResult>& pred, std::vector<sea::SketchRecord>& truth) {
  sea::SketchRecord a{"s1", "zebra", std::nullopt, {}};
  sea::VqaResult pa{"s1", {}, "", sea::ParseStatus::Ok};
  // truth / prediction pairs
  const std::vector<std::pair<bool, bool>> first{{true, true}, {true, true}, {true, false},
                                                 {false, true}, {false, false}};
  const std::vector<std::pair<bool, bool>> second{{true, true}, {true, false}, {false, false},
                                                  {false, false}, {false, false}};
  for (std::size_t i = 0; i < first.size(); ++i) {
    const std::string id = "zebra.e" + std::to_string(i);
    a.presence[id] = first[i].first;
    pa.presence[id] = first[i].second;
  }
  sea::SketchRecord b{"s2", "teapot", std::nullopt, {}};
  sea::VqaResult pb{"s2", {}, "", sea::ParseStatus::Ok};
  for (std::size_t i = 0; i < second.size(); ++i) {
    const std::string id = "teapot.e" + std::to_string(i);
    b.presence[id] = second[i].first;
    pb.presence[id] = second[i].second;
  }
  truth = {a, b};
  pred = {pb, pa};  // order must not matter
}

const std::vector<double> kX20{0.12, -0.40, 0.33, 0.91, -0.75, 0.05, 0.66, -0.18, 0.47, 0.29,
                               -0.52, 0.80, 0.14, -0.05, 0.58, -0.91, 0.21, 0.37, -0.27, 0.73};
const std::vector<double> kY20{0.10, -0.35, 0.40, 0.85, -0.60, 0.00, 0.70, -0.20, 0.40, 0.25,
                               -0.45, 0.90, 0.20, -0.10, 0.55, -0.80, 0.20, 0.30, -0.30, 0.65};

}  // namespace

TEST_CASE("score_vqa confusion arithmetic") {
  std::vector<sea::VqaResult> pred;
  std::vector<sea::SketchRecord> truth;
  confusion_fixture(pred, truth);
  const auto r = sea::score_vqa(pred, truth);
  CHECK(r.overall.counts == sea::ConfusionCounts{3, 1, 4, 2});
  CHECK(*r.overall.precision == Approx(0.75).epsilon(1e-15));
  CHECK(*r.overall.recall == Approx(0.6).epsilon(1e-15));
  CHECK(*r.overall.f1 == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(*r.overall.accuracy == Approx(0.7).epsilon(1e-15));
  CHECK(*r.overall.specificity == Approx(0.8).epsilon(1e-15));
  CHECK(r.per_category.empty());

  sea::CommonsenseDB db;
  db.add_class("zebra", {});
  db.add_class("teapot", {});
  db.set_category("zebra", "animal");
  db.set_category("teapot", "household");
  const auto grouped = sea::score_vqa(pred, truth, &db);
  REQUIRE(grouped.per_category.size() == 2);
  CHECK(grouped.per_category.at("animal").counts == sea::ConfusionCounts{2, 1, 1, 1});
  CHECK(grouped.per_category.at("household").counts == sea::ConfusionCounts{1, 0, 3, 1});
}

TEST_CASE("score_vqa perfect and all-true predictors") {
  sea::SketchRecord t{"s", "c", std::nullopt, {}};
  for (int i = 0; i < 10; ++i) t.presence["c.e" + std::to_string(i)] = i < 6;
  sea::VqaResult perfect{"s", t.presence, "", sea::ParseStatus::Ok};
  const auto p = sea::score_vqa({perfect}, {t}).overall;
  CHECK(*p.precision == 1.0);
  CHECK(*p.recall == 1.0);
  CHECK(*p.f1 == 1.0);
  CHECK(*p.accuracy == 1.0);
  CHECK(*p.specificity == 1.0);

  sea::VqaResult all_true = perfect;
  for (auto& [id, v] : all_true.presence) v = true;
  const auto a = sea::score_vqa({all_true}, {t}).overall;
  CHECK(*a.recall == 1.0);
  CHECK(*a.precision == Approx(0.6));
  CHECK(*a.specificity == 0.0);

  // All-negative truth and predictions: precision/recall undefined, not NaN.
  for (auto& [id, v] : t.presence) v = false;
  sea::VqaResult none{"s", t.presence, "", sea::ParseStatus::Ok};
  const auto n = sea::score_vqa({none}, {t}).overall;
  CHECK_FALSE(n.precision.has_value());
  CHECK_FALSE(n.recall.has_value());
  CHECK_FALSE(n.f1.has_value());
  CHECK(*n.accuracy == 1.0);
  const nlohmann::json j = n;
  CHECK(j["precision"].is_null());
}

TEST_CASE("score_vqa alignment errors") {
  std::vector<sea::VqaResult> pred;
  std::vector<sea::SketchRecord> truth;
  confusion_fixture(pred, truth);
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const sea::Error& e) {
      return e.code();
    }
    return sea::ErrorCode::Internal;
  };
  auto renamed = pred;
  renamed[0].sketch_id = "other";
  CHECK(code([&] { sea::score_vqa(renamed, truth); }) == sea::ErrorCode::Alignment);
  CHECK(code([&] { sea::score_vqa({pred[0]}, truth); }) == sea::ErrorCode::Alignment);
  auto missing = pred;
  missing[0].presence.erase(missing[0].presence.begin());
  CHECK(code([&] { sea::score_vqa(missing, truth); }) == sea::ErrorCode::Alignment);
  auto swapped = pred;
  auto node = swapped[0].presence.extract(swapped[0].presence.begin());
  node.key() = "teapot.other";
  swapped[0].presence.insert(std::move(node));
  CHECK(code([&] { sea::score_vqa(swapped, truth); }) == sea::ErrorCode::Alignment);
}

TEST_CASE("f1 is the harmonic mean whenever defined") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> d(0, 50);
  for (int i = 0; i < 2000; ++i) {
    const auto m = sea::metrics_from_counts({d(rng), d(rng), d(rng), d(rng)});
    if (m.precision && m.recall && *m.precision + *m.recall > 0) {
      CHECK(*m.f1 == Approx(2 * *m.precision * *m.recall / (*m.precision + *m.recall)));
    }
  }
}

TEST_CASE("agreement oracles") {
  SUBCASE("identical") {
    const auto r = sea::agreement(kX20, kX20);
    CHECK(*r.spearman == Approx(1.0).epsilon(1e-15));
    CHECK(*r.pearson == Approx(1.0).epsilon(1e-15));
    CHECK(*r.kendall == Approx(1.0).epsilon(1e-15));
    CHECK(*r.ccc == Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("reversed") {
    std::vector<double> x{1, 2, 3, 4, 5, 6}, y{6, 5, 4, 3, 2, 1};
    const auto r = sea::agreement(x, y);
    CHECK(*r.spearman == -1.0);
    CHECK(*r.kendall == -1.0);
  }
  SUBCASE("rank versus linear") {
    const auto r = sea::agreement({1, 2, 3, 4}, {1, 2, 3, 100});
    CHECK(*r.spearman == Approx(1.0).epsilon(1e-15));
    CHECK(*r.pearson == Approx(0.78502642096301).epsilon(1e-12));
    CHECK(*r.kendall == Approx(1.0).epsilon(1e-15));
    CHECK(*r.ccc == Approx(0.03132226192978768).epsilon(1e-12));
  }
  SUBCASE("20-point pair") {
    const auto r = sea::agreement(kX20, kY20);
    CHECK(std::abs(*r.spearman - 0.9939807178014944) < 1e-12);
    CHECK(std::abs(*r.pearson - 0.9923368925164023) < 1e-12);
    CHECK(std::abs(*r.kendall - 0.9629764421934137) < 1e-12);
    CHECK(std::abs(*r.ccc - 0.9903098304220326) < 1e-9);
  }
  SUBCASE("ties") {
    const auto r = sea::agreement({1, 1, 2, 3, 3, 4}, {2, 1, 2, 3, 4, 4});
    CHECK(std::abs(*r.spearman - 0.909090909090909) < 1e-12);
    CHECK(std::abs(*r.pearson - 0.9090909090909092) < 1e-12);
    CHECK(std::abs(*r.kendall - 0.8461538461538463) < 1e-12);
    CHECK(std::abs(*r.ccc - 0.8695652173913044) < 1e-12);
  }
}

TEST_CASE("agreement degenerate input") {
  const auto r = sea::agreement({0.5, 0.5, 0.5}, {0.1, 0.2, 0.3});
  CHECK_FALSE(r.pearson.has_value());
  CHECK_FALSE(r.spearman.has_value());
  CHECK_FALSE(r.kendall.has_value());
  REQUIRE(r.ccc.has_value());  // denominator still positive
  CHECK(*r.ccc == 0.0);
  const nlohmann::json j = r;
  CHECK(j["defined"]["pearson"] == false);
  CHECK(j["pearson"].is_null());

  CHECK_FALSE(sea::agreement({1, 1}, {1, 1}).ccc.has_value());
  CHECK_THROWS_AS(sea::agreement({1, 2}, {1}), sea::Error);
  CHECK_THROWS_AS(sea::agreement({1}, {1}), sea::Error);
  CHECK_THROWS_AS(sea::agreement({1, NAN}, {1, 2}), sea::Error);
}

TEST_CASE("agreement properties") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(40), y(40), fx(40), fy(40);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = n(rng);
      y[i] = x[i] + 0.5 * n(rng);
      fx[i] = std::exp(x[i]);
      fy[i] = y[i] * y[i] * y[i];
    }
    CHECK(*sea::spearman(x, y) == Approx(*sea::spearman(fx, fy)).epsilon(1e-12));

    // Equal means and variances make CCC coincide with Pearson.
    auto standardize = [](std::vector<double> v) {
      double m = 0, s = 0;
      for (double a : v) m += a;
      m /= v.size();
      for (double a : v) s += (a - m) * (a - m);
      s = std::sqrt(s / v.size());
      for (double& a : v) a = (a - m) / s;
      return v;
    };
    const auto sx = standardize(x), sy = standardize(y);
    CHECK(*sea::concordance(sx, sy) == Approx(*sea::pearson(sx, sy)).epsilon(1e-12));
    const auto r = sea::agreement(x, y);
    for (const auto& c : {r.spearman, r.pearson, r.kendall, r.ccc}) {
      CHECK(*c >= -1.0);
      CHECK(*c <= 1.0);
    }
  }
}

TEST_CASE("average ranks") {
  CHECK(sea::average_ranks({10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("distribution summary") {
  const auto c = sea::summarize_distribution(std::vector<double>(10, 0.5), 0, 1);
  CHECK(c.mean == Approx(0.5));
  CHECK(c.std == Approx(0.0));
  CHECK(c.mode == Approx(0.505));
  CHECK(c.quartile_bins == std::array<double, 4>{0, 0, 1, 0});

  CHECK(sea::summarize_distribution({0.2, 0.8}, 0, 1).mean == Approx(0.5));
  CHECK(sea::summarize_distribution({0.2, 0.8}, 0, 1).std == Approx(0.3));
  CHECK(sea::summarize_distribution({0.2, 0.8}, 0, 1, sea::StdKind::Sample).std ==
        Approx(0.3 * std::sqrt(2.0)));

  // 400 bin-centred points on (-1, 1): exactly 100 per quarter.
  std::vector<double> grid;
  for (int i = 0; i < 400; ++i) grid.push_back(-1.0 + (i + 0.5) * 2.0 / 400);
  const auto u = sea::summarize_distribution(grid, -1, 1);
  for (double b : u.quartile_bins) CHECK(b == 0.25);
  CHECK(std::abs(u.mean) < 1e-15);

  const auto top = sea::summarize_distribution({1.0, 1.0, 0.0}, 0, 1);
  CHECK(top.mode == Approx(0.995));
  CHECK(top.quartile_bins[3] == Approx(2.0 / 3.0));
  double sum = 0;
  for (double b : top.quartile_bins) sum += b;
  CHECK(sum == Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(sea::summarize_distribution({}, 0, 1), sea::Error);
  CHECK_THROWS_AS(sea::summarize_distribution({1.5}, 0, 1), sea::Error);
  CHECK_THROWS_AS(sea::summarize_distribution({0.5}, 1, 0), sea::Error);
}

TEST_CASE("KDE integrates to about one") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n(0, 0.2);
  std::vector<double> s(500);
  for (double& x : s) x = std::clamp(n(rng), -1.0, 1.0);
  const auto d = sea::kde_silverman(s, -2, 2, 801);
  double area = 0;
  for (std::size_t i = 1; i < d.size(); ++i) area += 0.5 * (d[i] + d[i - 1]) * (4.0 / 800);
  CHECK(area == Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(sea::kde_silverman({0.1}, 0, 1, 10), sea::Error);
}

TEST_CASE("level table") {
  sea::ScoreBreakdown a, b, c;
  a.sea = 0.2; a.reward = 1; a.penalty = 0.5; a.v = 0.3;
  b.sea = 0.4; b.reward = 3; b.penalty = 0.1; b.v = 0.5;
  c.sea = -0.5; c.reward = 0; c.penalty = 1; c.v = 0.2;
  const auto rows = sea::level_table({{16, 0.7, a}, {16, 0.9, b}, {4, 0.1, c}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].level == 4);
  CHECK(rows[0].sea.std == 0.0);
  CHECK(rows[1].level == 16);
  CHECK(rows[1].n == 2);
  CHECK(rows[1].sea.mean == Approx(0.3));
  CHECK(rows[1].sea.std == Approx(0.1));
  CHECK(rows[1].reward.mean == Approx(2.0));
  CHECK(rows[1].p.mean == Approx(0.8));
  CHECK_THROWS_AS(sea::level_table({{5, 0.5, a}}), sea::Error);
}

TEST_CASE("synthetic cohort around level means keeps the ordering") {
  const std::vector<std::pair<double, double>> means{
      {0.22, 0.17}, {0.31, 0.37}, {0.40, 0.64}, {0.45, 0.75}};
  const std::vector<int> levels{4, 8, 16, 32};
  std::mt19937_64 rng(42);
  std::normal_distribution<double> jitter(0.0, 0.01);
  const sea::Hyperparams hp;
  std::vector<sea::LevelScore> cohort;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (int i = 0; i < 200; ++i) {
      const double v = std::clamp(means[l].first + jitter(rng), 0.01, 1.0);
      const double p = std::clamp(means[l].second + jitter(rng), 0.01, 0.99);
      cohort.push_back({levels[l], p, sea::score_point(p, v, hp)});
    }
  }
  const auto rows = sea::level_table(cohort);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].sea.mean > rows[i - 1].sea.mean);
}

TEST_CASE("soft F1") {
  CHECK(sea::normalized_levenshtein("kitten", "sitting") == Approx(1.0 - 3.0 / 7.0));
  CHECK(sea::normalized_levenshtein("", "") == 1.0);
  const auto exact = sea::soft_f1({"head", "tail"}, {"tail", "head"});
  CHECK(exact.f1 == Approx(1.0));
  const auto partial = sea::soft_f1({"heads"}, {"head", "tail"});
  CHECK(partial.precision == Approx(0.8));
  CHECK(partial.recall == Approx(0.4));
  CHECK(partial.f1 == Approx(2 * 0.8 * 0.4 / 1.2));
  CHECK(sea::soft_f1({}, {}).f1 == 1.0);
  CHECK(sea::soft_f1({"a"}, {}).f1 == 0.0);
}
