// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sea {

struct Element {
  std::string id;    ///< "<class>.<name>"
  std::string name;  ///< verbatim model output, whitespace-trimmed
  bool optional = false;
  /// Any further fields of the source object (importance_score, shape, ...),
  /// kept so a load/save cycle is lossless.
  nlohmann::json extra = nlohmann::json::object();

  bool operator==(const Element&) const = default;
};

using ElementList = std::vector<Element>;

/// Per-class commonsense element lists plus the class -> category map.
/// Classes keep their insertion order.
class CommonsenseDB {
 public:
  /// Validates ids, uniqueness and the optional declared total. Throws
  /// Error(Validation).
  void add_class(const std::string& name, ElementList elements,
                 std::optional<std::int64_t> declared_total = std::nullopt);
  void set_category(const std::string& class_name, const std::string& category);

  bool has_class(const std::string& name) const;
  const ElementList& elements(const std::string& class_name) const;
  std::int64_t element_count(const std::string& class_name) const;
  bool has_element(const std::string& class_name, const std::string& element_id) const;
  std::optional<std::string> category_of(const std::string& class_name) const;

  const std::vector<std::string>& class_names() const { return order_; }
  const std::map<std::string, std::string>& categories() const { return categories_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  bool operator==(const CommonsenseDB&) const = default;

 private:
  std::vector<std::string> order_;
  std::map<std::string, ElementList> classes_;
  std::map<std::string, std::string> categories_;
};

/// Parses one {class, total_elements, elements: [...]} object. Throws
/// Error(Parse) for schema violations and Error(Validation) for id/count
/// inconsistencies; messages name the class and element.
std::pair<std::string, ElementList> parse_class_entry(const nlohmann::json& entry);

/// Builds a DB from the JSON array form.
CommonsenseDB parse_db(const nlohmann::json& classes);

/// Loads the DB file and, when given, the {class: category} sidecar.
CommonsenseDB load_db(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& categories_path = std::nullopt);

/// Inverse of parse_db; categories are written separately.
nlohmann::json db_to_json(const CommonsenseDB& db);
nlohmann::json categories_to_json(const CommonsenseDB& db);

struct SketchRecord {
  std::string sketch_id;
  std::string class_name;
  std::optional<std::string> caption;
  std::map<std::string, bool> presence;

  /// Number of elements annotated present.
  std::int64_t visible_count() const;
};

/// One JSONL line. `line_number` is only used in error messages.
SketchRecord parse_annotation(const std::string& line, std::size_t line_number,
                              const CommonsenseDB& db);

/// JSONL with one record per line; blank lines are skipped. Errors cite the
/// 1-based line number.
std::vector<SketchRecord> load_annotations(const std::filesystem::path& path,
                                           const CommonsenseDB& db);

nlohmann::json record_to_json(const SketchRecord& record);

struct LiftRow {
  std::string element;
  std::string category;
  std::int64_t n_element_category = 0;  ///< classes of the category containing the element
  std::int64_t n_category = 0;          ///< classes in the category
  std::int64_t n_element = 0;           ///< classes containing the element
  std::int64_t n_total = 0;             ///< all classes
  double p_category = 0.0;
  double lift = 0.0;
};

/// lift(e, c) = (n(e,c) / n(c)) / (n(e) / N), elements keyed by name.
/// Rows with n(e,c) < min_support are dropped. Categories ascend; within a
/// category rows sort by lift desc, n(e,c) desc, name asc. Every class must
/// have a category (Error(Validation) otherwise).
std::vector<LiftRow> compute_lift(const CommonsenseDB& db, std::int64_t min_support = 3);

std::string lift_csv(const std::vector<LiftRow>& rows);

struct FrequencyRow {
  std::string element;
  std::int64_t n_classes = 0;
  std::int64_t rank = 0;
};

/// Element names by number of classes containing them, desc; ties by name.
std::vector<FrequencyRow> global_frequency(const CommonsenseDB& db);

std::string frequency_csv(const std::vector<FrequencyRow>& rows);

/// True iff the class label (underscores read as spaces) occurs in the
/// caption, case-insensitively, bounded by non-alphanumeric characters.
bool validate_caption(const std::string& caption, const std::string& class_name);

/// Trims ASCII whitespace at both ends.
std::string trim(const std::string& s);

}  // namespace sea
