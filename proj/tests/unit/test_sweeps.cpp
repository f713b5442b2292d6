// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <string>

#include <doctest.h>

#include "sea/error.hpp"
#include "sea/sweeps.hpp"

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::vector<double> curve(const std::vector<sea::SweepPoint>& rows, double p) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.p_level == p) out.push_back(r.sea);
  }
  return out;
}

}  // namespace

TEST_CASE("default sweep shapes") {
  const auto rows = sea::run_sweep(sea::SweepSpec{});
  CHECK(rows.size() == 3 * 191);

  const auto low = curve(rows, 0.3);
  for (std::size_t i = 1; i < low.size(); ++i) REQUIRE(low[i] < low[i - 1]);

  // P = 0.8: the score falls from the sparse end, bottoms out past v = P and
  // recovers slightly towards v = 1 (one slope sign change).
  const auto high = curve(rows, 0.8);
  const auto max_it = std::max_element(high.begin(), high.end());
  CHECK(max_it == high.begin());
  std::vector<double> diffs;
  for (std::size_t i = 1; i < high.size(); ++i) diffs.push_back(high[i] - high[i - 1]);
  CHECK(sea::count_sign_changes(diffs) == 1);

  CHECK(sea::sweep_csv(rows).rfind("P_level,v,sea\n0.3,0.05,", 0) == 0);
}

TEST_CASE("sweep edge cases") {
  sea::SweepSpec spec;
  spec.v = {0.5, 0.5, 0.01};
  const auto rows = sea::run_sweep(spec);
  CHECK(rows.size() == 3);
  CHECK(sea::run_sweep(spec).size() == rows.size());

  spec.v = {0.0, 1.0, 0.01};
  CHECK_THROWS_AS(sea::run_sweep(spec), sea::Error);
  spec = {};
  spec.p_levels.clear();
  CHECK_THROWS_AS(sea::run_sweep(spec), sea::Error);
}

TEST_CASE("sweeps are byte-stable") {
  const auto a = sea::sweep_csv(sea::run_sweep(sea::SweepSpec{}));
  const auto b = sea::sweep_csv(sea::run_sweep(sea::SweepSpec{}));
  CHECK(a == b);
}

TEST_CASE("heatmap ablations") {
  sea::HeatmapSpec spec = sea::default_heatmap_spec();
  spec.v.n = 60;
  spec.p.n = 60;
  const auto result = sea::run_heatmap(spec);
  REQUIRE(result.panels.size() == 15);
  CHECK(result.rows == 5);
  for (const auto& panel : result.panels) {
    for (double x : panel.values) REQUIRE((x > -1.0 && x < 1.0));
  }

  SUBCASE("alpha row saturation ordering") {
    const double lo = sea::saturation_fraction(result.panels[0]);
    const double mid = sea::saturation_fraction(result.panels[1]);
    const double hi = sea::saturation_fraction(result.panels[2]);
    CHECK(lo < mid);
    CHECK(mid < hi);
  }
  SUBCASE("beta row band ordering") {
    const auto& row = spec.rows[1];
    CHECK(row.name == "beta");
    const double lo = sea::near_zero_band_width(row.low);
    const double mid = sea::near_zero_band_width(row.mid);
    const double hi = sea::near_zero_band_width(row.high);
    CHECK(hi < mid);
    CHECK(mid < lo);
  }
  SUBCASE("identical settings give identical grids") {
    sea::HeatmapSpec flat = spec;
    flat.rows = {{"none", {}, {}, {}}};
    const auto r = sea::run_heatmap(flat);
    CHECK(r.panels[0].values == r.panels[1].values);
    CHECK(r.panels[1].values == r.panels[2].values);
  }
  SUBCASE("json layout") {
    const auto j = sea::heatmap_json(result);
    CHECK(j["panels"].size() == 15);
    CHECK(j["panels"][0]["sea"].size() == 60);
    CHECK(j["panels"][0]["sea"][0].size() == 60);
    CHECK(j["panels"][4]["row"] == "beta");
    CHECK(j["panels"][4]["column"] == "default");
  }
  SUBCASE("thread partitioning is invisible") {
    sea::HeatmapSpec s1 = spec;
    s1.threads = 1;
    sea::HeatmapSpec s4 = spec;
    s4.threads = 4;
    CHECK(sea::heatmap_json(sea::run_heatmap(s1)).dump() ==
          sea::heatmap_json(sea::run_heatmap(s4)).dump());
  }
}

TEST_CASE("ablation defaults") {
  const sea::Hyperparams base;
  const auto rows = sea::default_ablation_rows(base);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].low.alpha == 1.1);
  CHECK(rows[0].high.alpha == 4.4);
  CHECK(rows[2].high.eta == 1.6);
  CHECK(rows[2].low.k == 1.15);
  CHECK(rows[3].high.r == 3.4);
  CHECK(rows[4].low.gamma == 0.85);
  CHECK(rows[1].mid == base);
}

TEST_CASE("heatmap config overrides") {
  const auto config = nlohmann::json::parse(R"({
    "v_axis": {"lo": 0.1, "hi": 0.9, "n": 5},
    "rows": [{"name": "alpha", "low": {"alpha": 1.0}, "high": {"alpha": 3.0}}]
  })");
  const auto spec = sea::heatmap_spec_from_json(config, {});
  CHECK(spec.v.n == 5);
  CHECK(spec.p.n == 200);
  REQUIRE(spec.rows.size() == 1);
  CHECK(spec.rows[0].low.alpha == 1.0);
  CHECK(spec.rows[0].mid.alpha == 2.2);

  const auto bad = nlohmann::json::parse(R"({"rows": [{"name": "x", "low": {"zeta": 1}, "high": {}}]})");
  CHECK_THROWS_AS(sea::heatmap_spec_from_json(bad, {}), sea::Error);
}

TEST_CASE("svg rendering") {
  SUBCASE("sweep chart") {
    const auto svg = sea::render_sweep_svg(sea::run_sweep(sea::SweepSpec{}));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<polyline") == 3);
    CHECK(svg.find("P = 0.8") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
  SUBCASE("heatmap composite") {
    sea::HeatmapSpec spec = sea::default_heatmap_spec();
    spec.v.n = 20;
    spec.p.n = 20;
    const auto svg = sea::render_heatmap_svg(sea::run_heatmap(spec));
    CHECK(count(svg, "<g><title>") == 15);
    CHECK(svg.find("SEA</text>") != std::string::npos);
  }
  SUBCASE("palette is anchored at zero") {
    const sea::DivergingPalette pal;
    CHECK(pal.at(0.0).r == 247);
    CHECK(pal.at(-1.0).b == 172);
    CHECK(pal.at(1.0).r == 178);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(sea::render_sweep_svg({}), sea::Error);
    CHECK_THROWS_AS(sea::render_heatmap_svg(sea::HeatmapResult{}), sea::Error);
  }
}

TEST_CASE("sweep spec from JSON") {
  const auto s = sea::sweep_spec_from_json(
      {{"v_axis", {{"lo", 0.1}, {"hi", 0.5}, {"step", 0.1}}}, {"P_levels", {0.4}}, {"E", 8}}, {});
  CHECK(s.v.size() == 5);
  CHECK(s.p_levels == std::vector<double>{0.4});
  CHECK(s.element_count == 8);
  CHECK_THROWS_AS(sea::sweep_spec_from_json({{"levels", {0.4}}}, {}), sea::Error);
  CHECK_THROWS_AS(sea::sweep_spec_from_json({{"E", 0}}, {}), sea::Error);
}

TEST_CASE("heatmap config keys and palette") {
  const auto typo = nlohmann::json::parse(R"({"v_axs": {"n": 4}})");
  CHECK_THROWS_AS(sea::heatmap_spec_from_json(typo, {}), sea::Error);

  CHECK(sea::palette_from_json(nlohmann::json::object()).zero.g == 247);
  const auto config = nlohmann::json::parse(
      R"({"description": "x", "palette": {"negative": [0, 0, 255], "levels": 11}})");
  CHECK_NOTHROW(sea::heatmap_spec_from_json(config, {}));
  const auto palette = sea::palette_from_json(config);
  CHECK(palette.negative.b == 255);
  CHECK(palette.negative.r == 0);
  CHECK(palette.positive.r == 178);
  CHECK(palette.levels == 11);

  for (const char* bad :
       {R"({"palette": {"zero": [1, 2]}})", R"({"palette": {"zero": [0, 0, 256]}})",
        R"({"palette": {"levels": 2}})", R"({"palette": {"zero": "white"}})"}) {
    CAPTURE(bad);
    try {
      sea::palette_from_json(nlohmann::json::parse(bad));
      FAIL("expected a parse error");
    } catch (const sea::Error& e) {
      CHECK(e.code() == sea::ErrorCode::Parse);
    }
  }
}

TEST_CASE("shipped ablation config matches the built-in defaults") {
  std::ifstream in(SEA_CONFIG_DIR "/heatmap_ablation.json");
  REQUIRE(in.good());
  const auto config = nlohmann::json::parse(in);
  const auto shipped = sea::run_heatmap(sea::heatmap_spec_from_json(config, {}));
  const auto builtin = sea::run_heatmap(sea::default_heatmap_spec());
  CHECK(sea::heatmap_json(shipped) == sea::heatmap_json(builtin));
}
