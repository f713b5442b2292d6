// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

// extern "C" boundary: translates exceptions to status codes and owns the
// opaque handle types. No logic lives here beyond marshalling.

#include "sea/sea.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "sea/analysis.hpp"
#include "sea/dataset.hpp"
#include "sea/error.hpp"
#include "sea/evaluation.hpp"
#include "sea/io.hpp"
#include "sea/pipeline.hpp"
#include "sea/providers.hpp"
#include "sea/serialize.hpp"
#include "sea/sweeps.hpp"

struct sea_text {
  std::string value;
};

struct sea_db {
  sea::CommonsenseDB db;
};

struct sea_provider {
  sea::ProviderConfig config;
  std::shared_ptr<sea::ChatClient> chat;
  std::shared_ptr<sea::LabelScorer> scorer;
};

namespace {

thread_local std::string g_last_error;

sea_status to_status(sea::ErrorCode code) {
  switch (code) {
    case sea::ErrorCode::InvalidArgument: return SEA_ERR_INVALID_ARGUMENT;
    case sea::ErrorCode::InvalidCapacity: return SEA_ERR_INVALID_CAPACITY;
    case sea::ErrorCode::Boundary: return SEA_ERR_BOUNDARY;
    case sea::ErrorCode::Parse: return SEA_ERR_PARSE;
    case sea::ErrorCode::Validation: return SEA_ERR_VALIDATION;
    case sea::ErrorCode::Io: return SEA_ERR_IO;
    case sea::ErrorCode::Network: return SEA_ERR_NETWORK;
    case sea::ErrorCode::Extraction: return SEA_ERR_EXTRACTION;
    case sea::ErrorCode::Alignment: return SEA_ERR_ALIGNMENT;
    case sea::ErrorCode::Internal: return SEA_ERR_INTERNAL;
  }
  return SEA_ERR_INTERNAL;
}

template <typename Fn>
sea_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SEA_OK;
  } catch (const sea::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return SEA_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SEA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SEA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SEA_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw sea::Error(sea::ErrorCode::InvalidArgument, what);
}

sea::Hyperparams to_cpp(const sea_hyperparams* hp) {
  sea::Hyperparams out;
  if (hp == nullptr) return out;
  out.alpha = hp->alpha;
  out.beta = hp->beta;
  out.lambda = hp->lambda;
  out.eta = hp->eta;
  out.k = hp->k;
  out.tau = hp->tau;
  out.r = hp->r;
  out.gamma = hp->gamma;
  out.delta = hp->delta;
  out.epsilon_clip = hp->epsilon_clip;
  out.validate();
  return out;
}

void from_cpp(const sea::Hyperparams& in, sea_hyperparams* out) {
  *out = {in.alpha, in.beta, in.lambda, in.eta, in.k,
          in.tau,   in.r,    in.gamma,  in.delta, in.epsilon_clip};
}

void from_cpp(const sea::ScoreBreakdown& b, sea_breakdown* out) {
  *out = {b.v, b.u, b.g, b.reward, b.penalty, b.z, b.sea};
}

void from_cpp(const sea::DerivativePair& d, sea_derivatives* out) {
  *out = {d.dz_dp, d.dz_dv, d.ds_dp, d.ds_dv, d.one_sided_p ? 1 : 0, d.one_sided_v ? 1 : 0};
}

nlohmann::json parse_or_empty(const char* text) {
  if (text == nullptr || *text == '\0') return nlohmann::json::object();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw sea::Error(sea::ErrorCode::Parse, e.what());
  }
}

void emit(sea_text** out, std::string value) {
  if (out != nullptr) *out = new sea_text{std::move(value)};
}

}  // namespace

extern "C" {

const char* sea_version(void) { return SEA_VERSION; }

const char* sea_status_name(sea_status status) {
  switch (status) {
    case SEA_OK: return "ok";
    case SEA_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SEA_ERR_INVALID_CAPACITY: return "invalid-capacity";
    case SEA_ERR_BOUNDARY: return "boundary";
    case SEA_ERR_PARSE: return "parse";
    case SEA_ERR_VALIDATION: return "validation";
    case SEA_ERR_IO: return "io";
    case SEA_ERR_NETWORK: return "network";
    case SEA_ERR_EXTRACTION: return "extraction";
    case SEA_ERR_ALIGNMENT: return "alignment";
    case SEA_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* sea_last_error(void) { return g_last_error.c_str(); }

const char* sea_text_data(const sea_text* text) { return text ? text->value.c_str() : ""; }
size_t sea_text_size(const sea_text* text) { return text ? text->value.size() : 0; }
void sea_text_free(sea_text* text) { delete text; }

void sea_hyperparams_default(sea_hyperparams* hp) {
  if (hp) from_cpp(sea::Hyperparams{}, hp);
}

sea_status sea_hyperparams_override(sea_hyperparams* hp, const char* json_object) {
  return guarded([&] {
    require(hp != nullptr, "hp is NULL");
    sea::Hyperparams base = to_cpp(hp);
    const auto updated = sea::apply_overrides(base, parse_or_empty(json_object));
    updated.validate();
    from_cpp(updated, hp);
  });
}

sea_status sea_hyperparams_to_json(const sea_hyperparams* hp, sea_text** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    const nlohmann::json j = to_cpp(hp);
    emit(out, j.dump());
  });
}

sea_status sea_score(const sea_signals* signals, const sea_hyperparams* hp, sea_breakdown* out) {
  return guarded([&] {
    require(signals != nullptr && out != nullptr, "signals and out must be non-NULL");
    sea::Signals s;
    s.element_count = signals->element_count;
    s.visible_count = signals->visible_count;
    s.probability = signals->probability;
    from_cpp(sea::sea(s, to_cpp(hp)), out);
  });
}

sea_status sea_score_point(double p, double v, const sea_hyperparams* hp, sea_breakdown* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    from_cpp(sea::score_point(p, v, to_cpp(hp)), out);
  });
}

sea_status sea_analytic_derivatives(double p, double v, const sea_hyperparams* hp,
                                    sea_derivatives* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    from_cpp(sea::analytic_derivatives(p, v, to_cpp(hp)), out);
  });
}

sea_status sea_fd_derivatives(double p, double v, double h, const sea_hyperparams* hp,
                              sea_derivatives* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    from_cpp(sea::fd_derivatives(p, v, to_cpp(hp), h), out);
  });
}

sea_status sea_find_v_star(int64_t element_count, double p, const sea_hyperparams* hp,
                           sea_optimum* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    const auto r = sea::find_v_star(element_count, p, to_cpp(hp));
    out->v_star = r.v_star;
    out->sea_star = r.sea_star;
    out->location = r.location == sea::OptimumLocation::Interior       ? SEA_INTERIOR
                    : r.location == sea::OptimumLocation::LeftBoundary ? SEA_LEFT_BOUNDARY
                                                                       : SEA_RIGHT_BOUNDARY;
  });
}

sea_status sea_verify(const char* grid_json, const sea_hyperparams* hp, uint64_t seed,
                      int* passed, sea_text** report_json, sea_text** contour_csv) {
  return guarded([&] {
    require(passed != nullptr, "passed is NULL");
    const auto grid = sea::grid_spec_from_json(parse_or_empty(grid_json));
    const auto suite = sea::run_invariant_suite(grid, to_cpp(hp), seed);
    *passed = suite.all_passed() ? 1 : 0;
    const nlohmann::json j = suite;
    emit(report_json, j.dump(2) + "\n");
    emit(contour_csv, sea::contour_csv(suite.region.zero_contour));
  });
}

sea_status sea_sweep(const char* spec_json, const sea_hyperparams* hp, sea_text** csv,
                     sea_text** svg) {
  return guarded([&] {
    const auto spec = sea::sweep_spec_from_json(parse_or_empty(spec_json), to_cpp(hp));
    const auto rows = sea::run_sweep(spec);
    emit(csv, sea::sweep_csv(rows));
    emit(svg, sea::render_sweep_svg(rows));
  });
}

sea_status sea_heatmap(const char* config_json, const sea_hyperparams* hp, size_t threads,
                       sea_text** json, sea_text** svg) {
  return guarded([&] {
    const auto config = parse_or_empty(config_json);
    auto spec = sea::heatmap_spec_from_json(config, to_cpp(hp));
    spec.threads = threads;
    sea::SvgStyle style;
    style.palette = sea::palette_from_json(config);
    const auto result = sea::run_heatmap(spec);
    emit(json, sea::heatmap_json(result).dump() + "\n");
    emit(svg, sea::render_heatmap_svg(result, style));
  });
}

sea_status sea_db_load(const char* db_path, const char* categories_path, sea_db** out) {
  return guarded([&] {
    require(db_path != nullptr && out != nullptr, "db_path and out must be non-NULL");
    std::optional<std::filesystem::path> cats;
    if (categories_path) cats = categories_path;
    *out = new sea_db{sea::load_db(db_path, cats)};
  });
}

sea_status sea_db_parse(const char* json_array, sea_db** out) {
  return guarded([&] {
    require(json_array != nullptr && out != nullptr, "json and out must be non-NULL");
    *out = new sea_db{sea::parse_db(parse_or_empty(json_array))};
  });
}

void sea_db_free(sea_db* db) { delete db; }

size_t sea_db_class_count(const sea_db* db) { return db ? db->db.size() : 0; }

sea_status sea_db_element_count(const sea_db* db, const char* class_name, int64_t* out) {
  return guarded([&] {
    require(db && class_name && out, "db, class_name and out must be non-NULL");
    *out = db->db.element_count(class_name);
  });
}

sea_status sea_db_to_json(const sea_db* db, sea_text** out) {
  return guarded([&] {
    require(db && out, "db and out must be non-NULL");
    emit(out, sea::db_to_json(db->db).dump(2) + "\n");
  });
}

sea_status sea_lift(const sea_db* db, int64_t min_support, sea_text** lift_csv,
                    sea_text** frequency_csv) {
  return guarded([&] {
    require(db != nullptr, "db is NULL");
    require(min_support >= 1, "min_support must be >= 1");
    const auto rows = sea::compute_lift(db->db, min_support);
    const auto freq = sea::global_frequency(db->db);
    emit(lift_csv, sea::lift_csv(rows));
    emit(frequency_csv, sea::frequency_csv(freq));
  });
}

int sea_validate_caption(const char* caption, const char* class_name) {
  if (caption == nullptr || class_name == nullptr) return 0;
  return sea::validate_caption(caption, class_name) ? 1 : 0;
}

sea_status sea_score_bundle(const sea_db* db, const char* annotations_path,
                            const char* predictions_path, const char* probs_path,
                            const sea_hyperparams* hp, sea_text** scores_jsonl,
                            sea_text** summary_json) {
  return guarded([&] {
    require(db && annotations_path && probs_path,
            "db, annotations_path and probs_path must be non-NULL");
    const auto params = to_cpp(hp);
    const auto records = sea::load_annotations(annotations_path, db->db);
    const auto probs = sea::load_probabilities(probs_path);
    const auto signals =
        predictions_path
            ? sea::prediction_signals(records, sea::load_predictions(predictions_path), db->db,
                                      probs, "vqa")
            : sea::fixture_signals(records, db->db, probs);
    const auto rows = sea::score_signals(signals, params);
    emit(scores_jsonl, sea::score_rows_jsonl(rows));
    emit(summary_json, sea::score_summary(rows, params).dump(2) + "\n");
  });
}

sea_status sea_bench_vqa(const sea_db* db, const char* truth_path,
                         const char* const* prediction_paths, size_t count, sea_text** csv,
                         sea_text** json) {
  return guarded([&] {
    require(db && truth_path, "db and truth_path must be non-NULL");
    require(count == 0 || prediction_paths != nullptr, "prediction_paths is NULL");
    std::vector<std::filesystem::path> files;
    for (size_t i = 0; i < count; ++i) files.emplace_back(prediction_paths[i]);
    const auto truth = sea::load_annotations(truth_path, db->db);
    const auto rows = sea::bench_vqa(files, truth, db->db);
    emit(csv, sea::bench_csv(rows));
    emit(json, sea::bench_json(rows).dump(2) + "\n");
  });
}

sea_status sea_compare(const char* scores_a_path, const char* scores_b_path,
                       sea_text** report_json) {
  return guarded([&] {
    require(scores_a_path && scores_b_path, "both score paths are required");
    const auto r =
        sea::compare_scores(sea::read_scores(scores_a_path), sea::read_scores(scores_b_path));
    const nlohmann::json j = r;
    emit(report_json, j.dump(2) + "\n");
  });
}

sea_status sea_agreement_compute(const double* x, const double* y, size_t n,
                                 sea_agreement* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(n == 0 || (x && y), "x and y must be non-NULL");
    const auto r = sea::agreement(std::vector<double>(x, x + n), std::vector<double>(y, y + n));
    *out = {r.n,
            r.spearman.value_or(0.0),
            r.pearson.value_or(0.0),
            r.kendall.value_or(0.0),
            r.ccc.value_or(0.0),
            r.spearman.has_value(),
            r.pearson.has_value(),
            r.kendall.has_value(),
            r.ccc.has_value()};
  });
}

sea_status sea_summarize(const double* scores, size_t n, double lo, double hi,
                         sea_summary* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(n == 0 || scores, "scores is NULL");
    const auto s = sea::summarize_distribution(std::vector<double>(scores, scores + n), lo, hi);
    out->n = s.n;
    out->mean = s.mean;
    out->std = s.std;
    out->mode = s.mode;
    for (int i = 0; i < 4; ++i) out->quartile_bins[i] = s.quartile_bins[static_cast<size_t>(i)];
  });
}

sea_status sea_provider_create(const char* config_json, const char* cache_dir,
                               sea_provider** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    auto p = std::make_unique<sea_provider>();
    p->config = sea::provider_config_from_json(parse_or_empty(config_json));
    p->chat = std::make_shared<sea::HttpChatClient>(p->config);
    p->scorer = std::make_shared<sea::HttpLabelScorer>(p->config);
    if (cache_dir != nullptr && *cache_dir != '\0') {
      auto cache = std::make_shared<sea::ResponseCache>(cache_dir);
      p->chat = std::make_shared<sea::CachedChatClient>(p->chat, cache);
      p->scorer = std::make_shared<sea::CachedLabelScorer>(p->scorer, cache);
    }
    *out = p.release();
  });
}

void sea_provider_free(sea_provider* provider) { delete provider; }

sea_status sea_provider_extract(sea_provider* provider, const char* class_name,
                                sea_text** class_entry_json) {
  return guarded([&] {
    require(provider && class_name && class_entry_json,
            "provider, class_name and out must be non-NULL");
    auto elements = sea::extract_commonsense(class_name, *provider->chat, provider->config);
    sea::CommonsenseDB one;
    one.add_class(class_name, std::move(elements));
    emit(class_entry_json, sea::db_to_json(one).at(0).dump());
  });
}

sea_status sea_provider_annotate(sea_provider* provider, const sea_db* db, const char* sketch_id,
                                 const char* class_name, const void* image, size_t image_size,
                                 sea_text** prediction_json) {
  return guarded([&] {
    require(provider && db && sketch_id && class_name && prediction_json,
            "provider, db, sketch_id, class_name and out must be non-NULL");
    require(image_size == 0 || image != nullptr, "image is NULL");
    const std::string bytes(static_cast<const char*>(image), image_size);
    const auto r = sea::annotate_elements(sketch_id, bytes, class_name,
                                          db->db.elements(class_name), *provider->chat,
                                          provider->config);
    const nlohmann::json j = r;
    emit(prediction_json, j.dump());
  });
}

sea_status sea_provider_classify(sea_provider* provider, const char* sketch_id,
                                 const void* image, size_t image_size,
                                 const char* const* labels, size_t label_count,
                                 const char* ground_truth, double* ground_truth_prob,
                                 sea_text** result_json) {
  return guarded([&] {
    require(provider && sketch_id && ground_truth, "provider, sketch_id, ground_truth required");
    require(label_count == 0 || labels != nullptr, "labels is NULL");
    require(image_size == 0 || image != nullptr, "image is NULL");
    std::vector<std::string> candidates(labels, labels + label_count);
    const std::string bytes(static_cast<const char*>(image), image_size);
    const auto r = sea::classify(sketch_id, bytes, candidates, ground_truth, *provider->scorer,
                                 provider->config);
    if (ground_truth_prob) *ground_truth_prob = r.ground_truth_prob;
    const nlohmann::json j = r;
    emit(result_json, j.dump());
  });
}

sea_status sea_sha256_file(const char* path, sea_text** hex) {
  return guarded([&] {
    require(path && hex, "path and out must be non-NULL");
    emit(hex, sea::sha256_hex(sea::read_file(path)));
  });
}

sea_status sea_sha256(const void* data, size_t size, sea_text** hex) {
  return guarded([&] {
    require(hex != nullptr && (size == 0 || data != nullptr), "data and out must be non-NULL");
    emit(hex, sea::sha256_hex(std::string_view(static_cast<const char*>(data), size)));
  });
}

sea_status sea_write_file(const char* path, const void* data, size_t size) {
  return guarded([&] {
    require(path != nullptr && (size == 0 || data != nullptr), "path and data must be non-NULL");
    sea::write_file_atomic(path, std::string_view(static_cast<const char*>(data), size));
  });
}

sea_status sea_read_file(const char* path, sea_text** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-NULL");
    emit(out, sea::read_file(path));
  });
}

}  // extern "C"
