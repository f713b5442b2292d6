// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

// `sea` command-line tool. Talks to the library only through sea/sea.h so it
// doubles as a consumer test of the C interface.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sea/sea.h"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

// Carries an exit code up to main; the message is printed once there.
struct Failure : std::runtime_error {
  int exit_code;
  Failure(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

[[noreturn]] void fail(const std::string& what) { throw Failure(kExitError, what); }

void check(sea_status status, const std::string& context) {
  if (status == SEA_OK) return;
  std::string msg = context + ": " + sea_status_name(status);
  const std::string detail = sea_last_error();
  if (!detail.empty()) msg += ": " + detail;
  throw Failure(kExitError, msg);
}

void log_line(const std::string& line) { std::cerr << "sea: " << line << "\n"; }

struct TextFree {
  void operator()(sea_text* t) const { sea_text_free(t); }
};
using Text = std::unique_ptr<sea_text, TextFree>;

std::string take(sea_text* raw) {
  Text t(raw);
  return {sea_text_data(t.get()), sea_text_size(t.get())};
}

struct DbFree {
  void operator()(sea_db* d) const { sea_db_free(d); }
};
using Db = std::unique_ptr<sea_db, DbFree>;

struct ProviderFree {
  void operator()(sea_provider* p) const { sea_provider_free(p); }
};
using Provider = std::unique_ptr<sea_provider, ProviderFree>;

std::string read_file(const std::string& path) {
  sea_text* out = nullptr;
  check(sea_read_file(path.c_str(), &out), "reading " + path);
  return take(out);
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
}

std::string sha256_file(const std::string& path) {
  sea_text* hex = nullptr;
  check(sea_sha256_file(path.c_str(), &hex), "hashing " + path);
  return take(hex);
}

std::string sha256(const std::string& data) {
  sea_text* hex = nullptr;
  check(sea_sha256(data.data(), data.size(), &hex), "hashing output");
  return take(hex);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ------------------------------------------------------------------ config

// Flags that every subcommand understands. Optionals distinguish "not given"
// from a value so the config file can fill the gaps.
struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> cache_dir;
  std::optional<std::size_t> threads;
  std::map<std::string, std::optional<double>> hp_flags{
      {"alpha", {}}, {"beta", {}}, {"lambda", {}}, {"eta", {}},   {"k", {}},
      {"tau", {}},   {"r", {}},    {"gamma", {}},  {"delta", {}}, {"epsilon_clip", {}}};
};

// Effective settings after flag > config file > default resolution.
struct Settings {
  json file = json::object();
  std::uint64_t seed = 42;
  std::string out = "out";
  std::optional<std::string> cache_dir;
  std::size_t threads = 0;
  sea_hyperparams hp{};
  json hp_json;

  // Config-file section for a subcommand, or null.
  json section(const std::string& name) const {
    return file.contains(name) ? file.at(name) : json();
  }
};

const std::vector<std::string> kConfigKeys = {
    "hyperparams", "seed", "out", "cache_dir", "threads", "provider",
    "verify",      "sweep", "heatmap", "lift"};

Settings resolve(const Globals& g) {
  Settings s;
  if (!g.config_path.empty()) {
    s.file = read_json(g.config_path);
    if (!s.file.is_object()) fail(g.config_path + ": config must be a JSON object");
    for (const auto& [key, value] : s.file.items()) {
      if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
        fail(g.config_path + ": unknown config key '" + key + "'");
      }
    }
  }
  try {
    if (s.file.contains("seed")) s.seed = s.file.at("seed").get<std::uint64_t>();
    if (s.file.contains("out")) s.out = s.file.at("out").get<std::string>();
    if (s.file.contains("cache_dir")) s.cache_dir = s.file.at("cache_dir").get<std::string>();
    if (s.file.contains("threads")) s.threads = s.file.at("threads").get<std::size_t>();
  } catch (const json::exception& e) {
    fail(g.config_path + ": " + e.what());
  }
  if (g.seed) s.seed = *g.seed;
  if (g.out) s.out = *g.out;
  if (g.cache_dir) s.cache_dir = *g.cache_dir;
  if (g.threads) s.threads = *g.threads;

  sea_hyperparams_default(&s.hp);
  if (s.file.contains("hyperparams")) {
    check(sea_hyperparams_override(&s.hp, s.file.at("hyperparams").dump().c_str()),
          g.config_path + ": hyperparams");
  }
  json flags = json::object();
  for (const auto& [name, value] : g.hp_flags) {
    if (value) flags[name] = *value;
  }
  check(sea_hyperparams_override(&s.hp, flags.dump().c_str()), "hyperparameter flags");
  sea_text* hp_text = nullptr;
  check(sea_hyperparams_to_json(&s.hp, &hp_text), "hyperparams");
  s.hp_json = json::parse(take(hp_text));
  return s;
}

// Overlays `over` onto `base` key by key (one level deep for objects).
json overlay(json base, const json& over) {
  if (base.is_null()) base = json::object();
  for (const auto& [key, value] : over.items()) {
    if (value.is_object() && base.contains(key) && base[key].is_object()) {
      for (const auto& [k, v] : value.items()) base[key][k] = v;
    } else {
      base[key] = value;
    }
  }
  return base;
}

// ---------------------------------------------------------------- manifest

// Collects inputs and outputs of one run and writes them plus a manifest into
// the output directory. Data files are written first so a failed run never
// leaves a manifest describing outputs that do not exist.
class Run {
 public:
  Run(std::string command, const Settings& settings)
      : command_(std::move(command)), settings_(settings), dir_(settings.out) {}

  void input(const std::string& role, const std::string& path) {
    inputs_[role] = {{"path", path}, {"sha256", sha256_file(path)}};
  }

  void config(const std::string& key, json value) { config_[key] = std::move(value); }

  const fs::path& dir() const { return dir_; }

  void write(const std::string& relative, const std::string& data) {
    const fs::path path = dir_ / relative;
    check(sea_write_file(path.c_str(), data.data(), data.size()), "writing " + path.string());
    outputs_.push_back({{"path", relative}, {"sha256", sha256(data)}, {"bytes", data.size()}});
    log_line("wrote " + path.string());
  }

  void finish() {
    ordered_json m;
    m["command"] = command_;
    m["tool_version"] = sea_version();
    m["timestamp"] = utc_timestamp();
    ordered_json cfg;
    cfg["seed"] = settings_.seed;
    cfg["threads"] = settings_.threads;
    cfg["hyperparams"] = settings_.hp_json;
    if (!settings_.file.empty()) cfg["config_file"] = settings_.file;
    for (const auto& [k, v] : config_.items()) cfg[k] = v;
    m["config"] = std::move(cfg);
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    const std::string data = m.dump(2) + "\n";
    const fs::path path = dir_ / "manifest.json";
    check(sea_write_file(path.c_str(), data.data(), data.size()), "writing " + path.string());
  }

 private:
  std::string command_;
  const Settings& settings_;
  fs::path dir_;
  json inputs_ = json::object();
  json config_ = json::object();
  json outputs_ = json::array();
};

// --------------------------------------------------------------- providers

Db load_db(const std::string& path, const std::string& categories) {
  sea_db* raw = nullptr;
  check(sea_db_load(path.c_str(), categories.empty() ? nullptr : categories.c_str(), &raw),
        "loading " + path);
  return Db(raw);
}

json provider_config(const Settings& s, const std::string& flag_path, Run& run) {
  json cfg = s.section("provider");
  if (cfg.is_string()) {
    run.input("provider_config", cfg.get<std::string>());
    cfg = read_json(cfg.get<std::string>());
  }
  if (!flag_path.empty()) {
    run.input("provider_config", flag_path);
    cfg = read_json(flag_path);
  }
  if (cfg.is_null()) fail("no provider configured (use --provider or a \"provider\" section)");
  return cfg;
}

Provider make_provider(const json& cfg, const Settings& s) {
  sea_provider* raw = nullptr;
  const std::string cache = s.cache_dir.value_or("");
  check(sea_provider_create(cfg.dump().c_str(), cache.empty() ? nullptr : cache.c_str(), &raw),
        "provider config");
  return Provider(raw);
}

struct SketchRef {
  std::string sketch_id;
  std::string class_name;
};

std::vector<SketchRef> read_sketch_refs(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<SketchRef> refs;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      refs.push_back({j.at("sketch_id").get<std::string>(), j.at("class").get<std::string>()});
    } catch (const json::exception& e) {
      fail(path + " line " + std::to_string(number) + ": " + e.what());
    }
  }
  return refs;
}

std::string find_image(const std::string& dir, const std::string& sketch_id) {
  for (const char* ext : {".png", ".jpg", ".jpeg", ".svg"}) {
    const fs::path p = fs::path(dir) / (sketch_id + ext);
    if (fs::is_regular_file(p)) return p.string();
  }
  fail("no image for sketch '" + sketch_id + "' in " + dir + " (png, jpg, jpeg or svg)");
}

std::vector<std::string> class_names(const sea_db* db) {
  sea_text* raw = nullptr;
  check(sea_db_to_json(db, &raw), "commonsense db");
  std::vector<std::string> names;
  for (const auto& entry : json::parse(take(raw))) names.push_back(entry.at("class"));
  return names;
}

// Classifies every sketch and returns {sketch_id: P} in sketch_id order.
json classify_all(sea_provider* provider, const sea_db* db, const std::vector<SketchRef>& refs,
                  const std::string& images, Run& run) {
  const auto labels = class_names(db);
  std::vector<const char*> label_ptrs;
  for (const auto& l : labels) label_ptrs.push_back(l.c_str());
  json probs = json::object();
  for (const auto& ref : refs) {
    const auto path = find_image(images, ref.sketch_id);
    run.input("image:" + ref.sketch_id, path);
    const auto bytes = read_file(path);
    double p = 0.0;
    check(sea_provider_classify(provider, ref.sketch_id.c_str(), bytes.data(), bytes.size(),
                                label_ptrs.data(), label_ptrs.size(), ref.class_name.c_str(), &p,
                                nullptr),
          "classifying " + ref.sketch_id);
    probs[ref.sketch_id] = p;
  }
  return probs;
}

// ---------------------------------------------------------------- commands

struct ScoreArgs {
  std::string db, categories, annotations, probs, predictions, provider, images;
};

int cmd_score(const Settings& s, const ScoreArgs& a) {
  Run run("score", s);
  run.input("db", a.db);
  if (!a.categories.empty()) run.input("categories", a.categories);
  run.input("annotations", a.annotations);
  if (!a.predictions.empty()) run.input("predictions", a.predictions);
  auto db = load_db(a.db, a.categories);

  std::string probs_path = a.probs;
  if (probs_path.empty()) {
    if (a.images.empty()) fail("score needs --probs, or --images with a provider");
    auto cfg = provider_config(s, a.provider, run);
    run.config("provider", cfg);
    auto provider = make_provider(cfg, s);
    const auto probs = classify_all(provider.get(), db.get(), read_sketch_refs(a.annotations),
                                    a.images, run);
    run.write("probabilities.json", probs.dump(2) + "\n");
    probs_path = (run.dir() / "probabilities.json").string();
  } else {
    run.input("probabilities", probs_path);
  }

  sea_text *jsonl = nullptr, *summary = nullptr;
  check(sea_score_bundle(db.get(), a.annotations.c_str(),
                         a.predictions.empty() ? nullptr : a.predictions.c_str(),
                         probs_path.c_str(), &s.hp, &jsonl, &summary),
        "score");
  const auto rows = take(jsonl);
  const auto summary_text = take(summary);
  run.write("scores.jsonl", rows);
  run.write("summary.json", summary_text);
  run.finish();
  log_line("scored " + std::to_string(std::count(rows.begin(), rows.end(), '\n')) + " sketches");
  return kExitOk;
}

struct VerifyArgs {
  std::string grid;
  std::optional<double> p_lo, p_hi, p_step, v_lo, v_hi, v_step, low_p_max;
  std::vector<std::int64_t> element_counts;
  bool explore = false;
};

int cmd_verify(const Settings& s, const VerifyArgs& a) {
  Run run("verify", s);
  json grid = s.section("verify");
  if (!a.grid.empty()) {
    run.input("grid", a.grid);
    grid = overlay(grid, read_json(a.grid));
  }
  json flags = json::object();
  auto axis = [&](const char* name, const char* key, const std::optional<double>& v) {
    if (v) flags[name][key] = *v;
  };
  axis("P", "lo", a.p_lo);
  axis("P", "hi", a.p_hi);
  axis("P", "step", a.p_step);
  axis("v", "lo", a.v_lo);
  axis("v", "hi", a.v_hi);
  axis("v", "step", a.v_step);
  if (!a.element_counts.empty()) flags["E"] = a.element_counts;
  if (a.low_p_max) flags["low_p_max"] = *a.low_p_max;
  grid = overlay(grid, flags);
  grid["threads"] = s.threads;
  run.config("grid", grid);
  run.config("explore", a.explore);

  int passed = 0;
  sea_text *report = nullptr, *contour = nullptr;
  check(sea_verify(grid.dump().c_str(), &s.hp, s.seed, &passed, &report, &contour), "verify");
  const auto report_text = take(report);
  run.write("region_report.json", report_text);
  run.write("zero_contour.csv", take(contour));
  run.finish();

  const auto r = json::parse(report_text);
  std::size_t failed = 0;
  for (const auto& c : r.at("checks")) {
    const bool ok = c.at("passed").get<bool>();
    if (!ok) ++failed;
    std::cout << (ok ? "ok    " : "FAIL  ") << c.at("name").get<std::string>() << "  "
              << c.at("detail").get<std::string>() << "\n";
  }
  const auto& region = r.at("region");
  std::cout << "monotone_P_violations=" << region.at("monotone_P_violations")
            << " low_P_monotone_v_violations=" << region.at("low_P_monotone_v_violations")
            << " failed_checks=" << failed << "\n";
  if (passed) return kExitOk;
  if (a.explore) {
    log_line("violations found; exploration mode keeps exit status 0");
    return kExitOk;
  }
  throw Failure(kExitVerifyFailed, "verification failed: " + std::to_string(failed) + " check(s)");
}

struct SweepArgs {
  std::string spec;
  std::vector<double> p_levels;
  std::optional<std::int64_t> element_count;
  std::optional<double> v_lo, v_hi, v_step;
};

int cmd_sweep(const Settings& s, const SweepArgs& a) {
  Run run("sweep", s);
  json spec = s.section("sweep");
  if (!a.spec.empty()) {
    run.input("spec", a.spec);
    spec = overlay(spec, read_json(a.spec));
  }
  json flags = json::object();
  if (!a.p_levels.empty()) flags["P_levels"] = a.p_levels;
  if (a.element_count) flags["E"] = *a.element_count;
  if (a.v_lo) flags["v_axis"]["lo"] = *a.v_lo;
  if (a.v_hi) flags["v_axis"]["hi"] = *a.v_hi;
  if (a.v_step) flags["v_axis"]["step"] = *a.v_step;
  spec = overlay(spec, flags);
  run.config("sweep", spec);

  sea_text *csv = nullptr, *svg = nullptr;
  check(sea_sweep(spec.dump().c_str(), &s.hp, &csv, &svg), "sweep");
  run.write("sweep.csv", take(csv));
  run.write("sweep.svg", take(svg));
  run.finish();
  return kExitOk;
}

struct HeatmapArgs {
  std::string spec;
  std::optional<std::int64_t> element_count;
};

int cmd_heatmap(const Settings& s, const HeatmapArgs& a) {
  Run run("heatmap", s);
  json spec = s.section("heatmap");
  if (spec.is_string()) {
    run.input("spec", spec.get<std::string>());
    spec = read_json(spec.get<std::string>());
  }
  if (!a.spec.empty()) {
    run.input("spec", a.spec);
    spec = read_json(a.spec);
  }
  if (spec.is_null()) spec = json::object();
  if (a.element_count) spec["E"] = *a.element_count;
  run.config("heatmap", spec);

  sea_text *data = nullptr, *svg = nullptr;
  check(sea_heatmap(spec.dump().c_str(), &s.hp, s.threads, &data, &svg), "heatmap");
  run.write("heatmap.json", take(data));
  run.write("heatmap.svg", take(svg));
  run.finish();
  return kExitOk;
}

struct LiftArgs {
  std::string db, categories;
  std::optional<std::int64_t> min_support;
};

int cmd_lift(const Settings& s, const LiftArgs& a) {
  Run run("lift", s);
  run.input("db", a.db);
  if (!a.categories.empty()) run.input("categories", a.categories);
  std::int64_t min_support = 3;
  const auto section = s.section("lift");
  if (section.is_object() && section.contains("min_support")) {
    min_support = section.at("min_support").get<std::int64_t>();
  }
  if (a.min_support) min_support = *a.min_support;
  run.config("min_support", min_support);

  auto db = load_db(a.db, a.categories);
  sea_text *lift = nullptr, *freq = nullptr;
  check(sea_lift(db.get(), min_support, &lift, &freq), "lift");
  run.write("lift.csv", take(lift));
  run.write("frequency.csv", take(freq));
  run.finish();
  return kExitOk;
}

struct BenchArgs {
  std::string predictions, truth, db, categories;
};

int cmd_bench(const Settings& s, const BenchArgs& a) {
  Run run("bench-vqa", s);
  run.input("db", a.db);
  if (!a.categories.empty()) run.input("categories", a.categories);
  run.input("truth", a.truth);

  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(a.predictions, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path().string());
    }
  }
  if (ec) fail("reading " + a.predictions + ": " + ec.message());
  if (files.empty()) fail("no *.jsonl prediction files in " + a.predictions);
  std::sort(files.begin(), files.end());
  std::vector<const char*> ptrs;
  for (const auto& f : files) {
    run.input("predictions:" + fs::path(f).stem().string(), f);
    ptrs.push_back(f.c_str());
  }

  auto db = load_db(a.db, a.categories);
  sea_text *csv = nullptr, *report = nullptr;
  check(sea_bench_vqa(db.get(), a.truth.c_str(), ptrs.data(), ptrs.size(), &csv, &report),
        "bench-vqa");
  const auto table = take(csv);
  run.write("bench.csv", table);
  run.write("bench.json", take(report));
  run.finish();
  std::cout << table;
  return kExitOk;
}

int cmd_compare(const Settings& s, const std::string& a, const std::string& b) {
  Run run("compare", s);
  run.input("scores_a", a);
  run.input("scores_b", b);
  sea_text* report = nullptr;
  check(sea_compare(a.c_str(), b.c_str(), &report), "compare");
  const auto text = take(report);
  run.write("agreement.json", text);
  run.finish();
  std::cout << text;
  return kExitOk;
}

struct ExtractArgs {
  std::string provider, classes_file;
  std::vector<std::string> classes;
};

int cmd_extract(const Settings& s, const ExtractArgs& a) {
  Run run("extract", s);
  auto classes = a.classes;
  if (!a.classes_file.empty()) {
    run.input("classes", a.classes_file);
    std::istringstream in(read_file(a.classes_file));
    for (std::string line; std::getline(in, line);) {
      line.erase(line.find_last_not_of(" \t\r") + 1);
      line.erase(0, line.find_first_not_of(" \t"));
      if (!line.empty()) classes.push_back(line);
    }
  }
  if (classes.empty()) fail("extract needs --class or --classes-file");
  const auto cfg = provider_config(s, a.provider, run);
  run.config("provider", cfg);
  run.config("classes", classes);
  auto provider = make_provider(cfg, s);

  json entries = json::array();
  for (const auto& name : classes) {
    sea_text* entry = nullptr;
    check(sea_provider_extract(provider.get(), name.c_str(), &entry), "extracting " + name);
    entries.push_back(json::parse(take(entry)));
    log_line("extracted " + name + " (" +
             std::to_string(entries.back().at("total_elements").get<long>()) + " elements)");
  }
  // Round-trip through the DB parser so duplicates are caught before writing.
  sea_db* raw = nullptr;
  check(sea_db_parse(entries.dump().c_str(), &raw), "commonsense db");
  Db db(raw);
  sea_text* text = nullptr;
  check(sea_db_to_json(db.get(), &text), "commonsense db");
  run.write("commonsense_db.json", json::parse(take(text)).dump(2) + "\n");
  run.finish();
  return kExitOk;
}

struct AnnotateArgs {
  std::string provider, db, categories, annotations, images;
  bool classify = false;
};

int cmd_annotate(const Settings& s, const AnnotateArgs& a) {
  Run run("annotate", s);
  run.input("db", a.db);
  if (!a.categories.empty()) run.input("categories", a.categories);
  run.input("annotations", a.annotations);
  const auto cfg = provider_config(s, a.provider, run);
  run.config("provider", cfg);
  run.config("classify", a.classify);
  auto provider = make_provider(cfg, s);
  auto db = load_db(a.db, a.categories);
  const auto refs = read_sketch_refs(a.annotations);

  std::string rows;
  std::size_t failed = 0;
  for (const auto& ref : refs) {
    const auto path = find_image(a.images, ref.sketch_id);
    run.input("image:" + ref.sketch_id, path);
    const auto bytes = read_file(path);
    sea_text* pred = nullptr;
    check(sea_provider_annotate(provider.get(), db.get(), ref.sketch_id.c_str(),
                                ref.class_name.c_str(), bytes.data(), bytes.size(), &pred),
          "annotating " + ref.sketch_id);
    const auto row = json::parse(take(pred));
    if (row.at("parse_status") == "failed") ++failed;
    rows += row.dump() + "\n";
  }
  const std::string model = cfg.value("model_name", "model");
  run.write("predictions/" + model + ".jsonl", rows);
  if (a.classify) {
    const auto probs = classify_all(provider.get(), db.get(), refs, a.images, run);
    run.write("probabilities.json", probs.dump(2) + "\n");
  }
  run.finish();
  log_line("annotated " + std::to_string(refs.size()) + " sketches, " + std::to_string(failed) +
           " unparseable");
  return kExitOk;
}

void add_hp_flags(CLI::App& app, Globals& g) {
  for (auto& [name, value] : g.hp_flags) {
    std::string flag = "--" + name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app.add_option(flag, value, "override hyperparameter " + name)->group("Hyperparameters");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sketch abstraction-efficiency scoring and analysis"};
  app.set_version_flag("--version", std::string(sea_version()));
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "JSON config file (flags take precedence)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "seed for every random draw (default 42)");
  app.add_option("--out", g.out, "output directory (default ./out)");
  app.add_option("--cache-dir", g.cache_dir, "provider response cache directory");
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores");
  add_hp_flags(app, g);

  ScoreArgs score;
  auto* sc = app.add_subcommand("score", "score annotated sketches");
  sc->add_option("--db", score.db, "commonsense DB JSON")->required()->check(CLI::ExistingFile);
  sc->add_option("--categories", score.categories, "class -> category JSON");
  sc->add_option("--annotations", score.annotations, "annotations JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  auto* probs_opt = sc->add_option("--probs", score.probs, "{sketch_id: P} JSON");
  sc->add_option("--predictions", score.predictions, "VQA predictions JSONL used for V");
  sc->add_option("--provider", score.provider, "provider config JSON for P");
  sc->add_option("--images", score.images, "directory of <sketch_id>.<png|jpg|jpeg|svg>")
      ->excludes(probs_opt);

  VerifyArgs verify;
  auto* vc = app.add_subcommand("verify", "check the analytical invariants on a grid");
  vc->add_option("--grid", verify.grid, "grid spec JSON")->check(CLI::ExistingFile);
  vc->add_option("--p-lo", verify.p_lo)->check(CLI::Range(0.0, 1.0));
  vc->add_option("--p-hi", verify.p_hi)->check(CLI::Range(0.0, 1.0));
  vc->add_option("--p-step", verify.p_step)->check(CLI::PositiveNumber);
  vc->add_option("--v-lo", verify.v_lo)->check(CLI::Range(0.0, 1.0));
  vc->add_option("--v-hi", verify.v_hi)->check(CLI::Range(0.0, 1.0));
  vc->add_option("--v-step", verify.v_step)->check(CLI::PositiveNumber);
  vc->add_option("--E", verify.element_counts, "element counts")->delimiter(',');
  vc->add_option("--low-p-max", verify.low_p_max)->check(CLI::Range(0.0, 1.0));
  vc->add_flag("--explore", verify.explore, "report violations without failing");

  SweepArgs sweep;
  auto* swc = app.add_subcommand("sweep", "1-D sweeps of the score over v");
  swc->add_option("--spec", sweep.spec, "sweep spec JSON")->check(CLI::ExistingFile);
  swc->add_option("--P-levels", sweep.p_levels)->delimiter(',');
  swc->add_option("--E", sweep.element_count)->check(CLI::PositiveNumber);
  swc->add_option("--v-lo", sweep.v_lo);
  swc->add_option("--v-hi", sweep.v_hi);
  swc->add_option("--v-step", sweep.v_step)->check(CLI::PositiveNumber);

  HeatmapArgs heat;
  auto* hc = app.add_subcommand("heatmap", "hyperparameter ablation heatmaps");
  hc->add_option("--spec", heat.spec, "ablation config JSON")->check(CLI::ExistingFile);
  hc->add_option("--E", heat.element_count)->check(CLI::PositiveNumber);

  LiftArgs lift;
  auto* lc = app.add_subcommand("lift", "element lift per category");
  lc->add_option("--db", lift.db)->required()->check(CLI::ExistingFile);
  lc->add_option("--categories", lift.categories)->required()->check(CLI::ExistingFile);
  lc->add_option("--min-support", lift.min_support, "minimum n(e,c), default 3")
      ->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench-vqa", "element VQA metrics per prediction file");
  bc->add_option("--predictions", bench.predictions, "directory of <model>.jsonl")
      ->required()
      ->check(CLI::ExistingDirectory);
  bc->add_option("--truth", bench.truth, "annotations JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  bc->add_option("--db", bench.db)->required()->check(CLI::ExistingFile);
  bc->add_option("--categories", bench.categories);

  std::string cmp_a, cmp_b;
  auto* cc = app.add_subcommand("compare", "agreement between two score files");
  cc->add_option("scores_a", cmp_a)->required()->check(CLI::ExistingFile);
  cc->add_option("scores_b", cmp_b)->required()->check(CLI::ExistingFile);

  ExtractArgs extract;
  auto* ec = app.add_subcommand("extract", "build a commonsense DB with a language model");
  ec->add_option("--provider", extract.provider, "provider config JSON");
  ec->add_option("--class", extract.classes, "class name (repeatable)");
  ec->add_option("--classes-file", extract.classes_file, "one class name per line")
      ->check(CLI::ExistingFile);

  AnnotateArgs annotate;
  auto* ac = app.add_subcommand("annotate", "element presence predictions with a VLM");
  ac->add_option("--provider", annotate.provider, "provider config JSON");
  ac->add_option("--db", annotate.db)->required()->check(CLI::ExistingFile);
  ac->add_option("--categories", annotate.categories);
  ac->add_option("--annotations", annotate.annotations, "sketch list JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  ac->add_option("--images", annotate.images)->required()->check(CLI::ExistingDirectory);
  ac->add_flag("--classify", annotate.classify, "also write probabilities.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    const Settings s = resolve(g);
    if (sc->parsed()) return cmd_score(s, score);
    if (vc->parsed()) return cmd_verify(s, verify);
    if (swc->parsed()) return cmd_sweep(s, sweep);
    if (hc->parsed()) return cmd_heatmap(s, heat);
    if (lc->parsed()) return cmd_lift(s, lift);
    if (bc->parsed()) return cmd_bench(s, bench);
    if (cc->parsed()) return cmd_compare(s, cmp_a, cmp_b);
    if (ec->parsed()) return cmd_extract(s, extract);
    if (ac->parsed()) return cmd_annotate(s, annotate);
  } catch (const Failure& f) {
    std::cerr << "sea: error: " << f.what() << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "sea: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
