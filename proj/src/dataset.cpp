// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "sea/error.hpp"
#include "sea/io.hpp"
#include "sea/serialize.hpp"

namespace sea {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

void CommonsenseDB::add_class(const std::string& name, ElementList elements,
                              std::optional<std::int64_t> declared_total) {
  if (name.empty()) throw Error(ErrorCode::Validation, "class name must not be empty");
  if (classes_.count(name)) throw Error(ErrorCode::Validation, "duplicate class '" + name + "'");
  if (declared_total && *declared_total != static_cast<std::int64_t>(elements.size())) {
    throw Error(ErrorCode::Validation,
                fmt::format("class '{}': total_elements is {} but {} elements are listed", name,
                            *declared_total, elements.size()));
  }
  std::set<std::string> ids;
  std::set<std::string> names;
  for (const auto& e : elements) {
    if (e.name.empty()) {
      throw Error(ErrorCode::Validation, fmt::format("class '{}': element with empty name", name));
    }
    const std::string expected = name + "." + e.name;
    if (e.id != expected) {
      throw Error(ErrorCode::Validation,
                  fmt::format("class '{}': element id '{}' must be '{}'", name, e.id, expected));
    }
    if (!ids.insert(e.id).second) {
      throw Error(ErrorCode::Validation, fmt::format("class '{}': duplicate id '{}'", name, e.id));
    }
    if (!names.insert(e.name).second) {
      throw Error(ErrorCode::Validation,
                  fmt::format("class '{}': duplicate element name '{}'", name, e.name));
    }
  }
  order_.push_back(name);
  classes_.emplace(name, std::move(elements));
}

void CommonsenseDB::set_category(const std::string& class_name, const std::string& category) {
  categories_[class_name] = category;
}

bool CommonsenseDB::has_class(const std::string& name) const { return classes_.count(name) > 0; }

const ElementList& CommonsenseDB::elements(const std::string& class_name) const {
  const auto it = classes_.find(class_name);
  if (it == classes_.end()) {
    throw Error(ErrorCode::Validation, "class '" + class_name + "' is not in the commonsense DB");
  }
  return it->second;
}

std::int64_t CommonsenseDB::element_count(const std::string& class_name) const {
  return static_cast<std::int64_t>(elements(class_name).size());
}

bool CommonsenseDB::has_element(const std::string& class_name,
                                const std::string& element_id) const {
  const auto it = classes_.find(class_name);
  if (it == classes_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Element& e) { return e.id == element_id; });
}

std::optional<std::string> CommonsenseDB::category_of(const std::string& class_name) const {
  const auto it = categories_.find(class_name);
  if (it == categories_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::string, ElementList> parse_class_entry(const nlohmann::json& entry) {
  if (!entry.is_object()) throw Error(ErrorCode::Parse, "class entry must be a JSON object");
  if (!entry.contains("class") || !entry["class"].is_string()) {
    throw Error(ErrorCode::Parse, "class entry needs a string \"class\" field");
  }
  const std::string name = trim(entry["class"].get<std::string>());
  if (!entry.contains("elements") || !entry["elements"].is_array()) {
    throw Error(ErrorCode::Parse, fmt::format("class '{}': \"elements\" must be an array", name));
  }
  std::optional<std::int64_t> total;
  if (entry.contains("total_elements")) {
    if (!entry["total_elements"].is_number_integer()) {
      throw Error(ErrorCode::Parse,
                  fmt::format("class '{}': total_elements must be an integer", name));
    }
    total = entry["total_elements"].get<std::int64_t>();
    if (*total != static_cast<std::int64_t>(entry["elements"].size())) {
      throw Error(ErrorCode::Validation,
                  fmt::format("class '{}': total_elements is {} but {} elements are listed", name,
                              *total, entry["elements"].size()));
    }
  }

  ElementList list;
  std::size_t index = 0;
  for (const auto& el : entry["elements"]) {
    if (!el.is_object()) {
      throw Error(ErrorCode::Parse, fmt::format("class '{}': element #{} is not an object", name,
                                                index));
    }
    Element e;
    for (const char* key : {"id", "name"}) {
      if (!el.contains(key) || !el[key].is_string()) {
        throw Error(ErrorCode::Parse, fmt::format("class '{}': element #{} needs a string \"{}\"",
                                                  name, index, key));
      }
    }
    e.id = trim(el["id"].get<std::string>());
    e.name = trim(el["name"].get<std::string>());
    if (el.contains("optional")) {
      if (!el["optional"].is_boolean()) {
        throw Error(ErrorCode::Parse,
                    fmt::format("class '{}': element '{}' has a non-boolean \"optional\"", name,
                                e.id));
      }
      e.optional = el["optional"].get<bool>();
    }
    for (const auto& [key, value] : el.items()) {
      if (key != "id" && key != "name" && key != "optional") e.extra[key] = value;
    }
    list.push_back(std::move(e));
    ++index;
  }
  return {name, std::move(list)};
}

CommonsenseDB parse_db(const nlohmann::json& classes) {
  if (!classes.is_array()) throw Error(ErrorCode::Parse, "commonsense DB must be a JSON array");
  CommonsenseDB db;
  for (const auto& entry : classes) {
    auto [name, elements] = parse_class_entry(entry);
    std::optional<std::int64_t> total;
    if (entry.contains("total_elements")) total = entry["total_elements"].get<std::int64_t>();
    db.add_class(name, std::move(elements), total);
  }
  return db;
}

namespace {

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

}  // namespace

CommonsenseDB load_db(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& categories_path) {
  CommonsenseDB db = parse_db(parse_json_file(path));
  if (categories_path) {
    const auto cats = parse_json_file(*categories_path);
    if (!cats.is_object()) {
      throw Error(ErrorCode::Parse, categories_path->string() + ": expected {class: category}");
    }
    for (const auto& [cls, cat] : cats.items()) {
      if (!cat.is_string()) {
        throw Error(ErrorCode::Parse, "category of '" + cls + "' must be a string");
      }
      // Sidecars may cover more classes than this DB; extra entries are ignored.
      if (db.has_class(cls)) db.set_category(cls, cat.get<std::string>());
    }
  }
  return db;
}

nlohmann::json db_to_json(const CommonsenseDB& db) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& cls : db.class_names()) {
    nlohmann::json elements = nlohmann::json::array();
    for (const auto& e : db.elements(cls)) {
      nlohmann::json j = e.extra;
      j["id"] = e.id;
      j["name"] = e.name;
      j["optional"] = e.optional;
      elements.push_back(std::move(j));
    }
    out.push_back({{"class", cls},
                   {"total_elements", db.element_count(cls)},
                   {"elements", std::move(elements)}});
  }
  return out;
}

nlohmann::json categories_to_json(const CommonsenseDB& db) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [cls, cat] : db.categories()) out[cls] = cat;
  return out;
}

std::int64_t SketchRecord::visible_count() const {
  return std::count_if(presence.begin(), presence.end(), [](const auto& kv) { return kv.second; });
}

SketchRecord parse_annotation(const std::string& line, std::size_t line_number,
                              const CommonsenseDB& db) {
  auto fail = [&](ErrorCode code, const std::string& what) {
    return Error(code, fmt::format("annotations line {}: {}", line_number, what));
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw fail(ErrorCode::Parse, e.what());
  }
  if (!j.is_object()) throw fail(ErrorCode::Parse, "record must be a JSON object");
  for (const char* key : {"sketch_id", "class"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw fail(ErrorCode::Parse, fmt::format("missing string field \"{}\"", key));
    }
  }
  SketchRecord r;
  r.sketch_id = j["sketch_id"].get<std::string>();
  r.class_name = j["class"].get<std::string>();
  if (j.contains("caption") && !j["caption"].is_null()) {
    if (!j["caption"].is_string()) throw fail(ErrorCode::Parse, "caption must be a string");
    r.caption = j["caption"].get<std::string>();
  }
  if (!db.has_class(r.class_name)) {
    throw fail(ErrorCode::Validation, "unknown class '" + r.class_name + "'");
  }
  if (!j.contains("presence") || !j["presence"].is_object()) {
    throw fail(ErrorCode::Parse, "\"presence\" must be an object of element id -> bool");
  }
  for (const auto& [id, value] : j["presence"].items()) {
    if (!value.is_boolean()) {
      throw fail(ErrorCode::Parse, "presence of '" + id + "' must be true or false");
    }
    if (!db.has_element(r.class_name, id)) {
      throw fail(ErrorCode::Validation,
                 fmt::format("unknown element id '{}' for class '{}'", id, r.class_name));
    }
    r.presence[id] = value.get<bool>();
  }
  return r;
}

std::vector<SketchRecord> load_annotations(const std::filesystem::path& path,
                                           const CommonsenseDB& db) {
  std::istringstream in(read_file(path));
  std::vector<SketchRecord> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    SketchRecord r = parse_annotation(line, number, db);
    if (!seen.insert(r.sketch_id).second) {
      throw Error(ErrorCode::Validation,
                  fmt::format("annotations line {}: duplicate sketch_id '{}'", number,
                              r.sketch_id));
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json record_to_json(const SketchRecord& record) {
  nlohmann::json j{{"sketch_id", record.sketch_id}, {"class", record.class_name}};
  j["caption"] = record.caption ? nlohmann::json(*record.caption) : nlohmann::json(nullptr);
  j["presence"] = record.presence;
  return j;
}

std::vector<LiftRow> compute_lift(const CommonsenseDB& db, std::int64_t min_support) {
  const auto n_total = static_cast<std::int64_t>(db.size());
  std::map<std::string, std::int64_t> n_category;
  std::map<std::string, std::int64_t> n_element;
  std::map<std::pair<std::string, std::string>, std::int64_t> n_joint;  // (category, element)

  for (const auto& cls : db.class_names()) {
    const auto cat = db.category_of(cls);
    if (!cat) throw Error(ErrorCode::Validation, "class '" + cls + "' has no category");
    ++n_category[*cat];
    for (const auto& e : db.elements(cls)) {
      ++n_element[e.name];
      ++n_joint[{*cat, e.name}];
    }
  }

  std::vector<LiftRow> rows;
  for (const auto& [key, joint] : n_joint) {
    if (joint < min_support) continue;
    LiftRow r;
    r.category = key.first;
    r.element = key.second;
    r.n_element_category = joint;
    r.n_category = n_category[key.first];
    r.n_element = n_element[key.second];
    r.n_total = n_total;
    r.p_category = static_cast<double>(joint) / static_cast<double>(r.n_category);
    r.lift = r.p_category / (static_cast<double>(r.n_element) / static_cast<double>(n_total));
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const LiftRow& a, const LiftRow& b) {
    if (a.category != b.category) return a.category < b.category;
    if (a.lift != b.lift) return a.lift > b.lift;
    if (a.n_element_category != b.n_element_category) {
      return a.n_element_category > b.n_element_category;
    }
    return a.element < b.element;
  });
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string lift_csv(const std::vector<LiftRow>& rows) {
  std::string out = "category,rank,element,n_e_c,n_c,n_e,N,p_cat,lift\n";
  std::string current;
  int rank = 0;
  for (const auto& r : rows) {
    rank = r.category == current ? rank + 1 : 1;
    current = r.category;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_field(r.category), rank,
                       csv_field(r.element), r.n_element_category, r.n_category, r.n_element,
                       r.n_total, round_sig(r.p_category), round_sig(r.lift));
  }
  return out;
}

std::vector<FrequencyRow> global_frequency(const CommonsenseDB& db) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& cls : db.class_names()) {
    for (const auto& e : db.elements(cls)) ++counts[e.name];
  }
  std::vector<FrequencyRow> rows;
  for (const auto& [name, n] : counts) rows.push_back({name, n, 0});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.n_classes > b.n_classes; });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<std::int64_t>(i + 1);
  return rows;
}

std::string frequency_csv(const std::vector<FrequencyRow>& rows) {
  std::string out = "element,n_classes,rank\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{}\n", csv_field(r.element), r.n_classes, r.rank);
  }
  return out;
}

bool validate_caption(const std::string& caption, const std::string& class_name) {
  auto lower = [](std::string s) {
    for (char& c : s) {
      c = c == '_' ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
  };
  const std::string label = trim(lower(class_name));
  if (label.empty()) return false;
  std::string text;
  for (char c : caption) text += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  for (auto pos = text.find(label); pos != std::string::npos; pos = text.find(label, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word(text[pos - 1]);
    const std::size_t end = pos + label.size();
    const bool right_ok = end == text.size() || !is_word(text[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

}  // namespace sea
