// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "sea/providers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <regex>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "sea/error.hpp"
#include "sea/io.hpp"
#include "sea/parallel.hpp"

namespace sea {

using nlohmann::json;

const char* to_string(PromptStyle s) {
  switch (s) {
    case PromptStyle::StructuredJson: return "structured_json";
    case PromptStyle::PerElementYesNo: return "per_element_yes_no";
    case PromptStyle::MolmoJson: return "molmo_json";
  }
  return "structured_json";
}

PromptStyle prompt_style_from_string(const std::string& s) {
  if (s == "structured_json") return PromptStyle::StructuredJson;
  if (s == "per_element_yes_no") return PromptStyle::PerElementYesNo;
  if (s == "molmo_json") return PromptStyle::MolmoJson;
  throw Error(ErrorCode::InvalidArgument,
              "prompt_style must be structured_json, per_element_yes_no or molmo_json");
}

void ProviderConfig::validate() const {
  if (max_parallel < 1) throw Error(ErrorCode::InvalidArgument, "max_parallel must be >= 1");
  if (timeout.count() <= 0) throw Error(ErrorCode::InvalidArgument, "timeout must be > 0");
  if (max_retries < 0) throw Error(ErrorCode::InvalidArgument, "max_retries must be >= 0");
  if (retry_backoff.count() < 0) {
    throw Error(ErrorCode::InvalidArgument, "retry_backoff must be >= 0");
  }
  if (label_template.find("{class}") == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "label_template needs a {class} placeholder");
  }
}

namespace {

std::chrono::milliseconds seconds_field(const json& v, const char* name) {
  if (!v.is_number()) throw Error(ErrorCode::Parse, fmt::format("{} must be a number", name));
  return std::chrono::milliseconds(std::llround(v.get<double>() * 1000.0));
}

std::string string_field(const json& v, const char* name) {
  if (!v.is_string()) throw Error(ErrorCode::Parse, fmt::format("{} must be a string", name));
  return v.get<std::string>();
}

int int_field(const json& v, const char* name) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::Parse, fmt::format("{} must be an integer", name));
  }
  return v.get<int>();
}

}  // namespace

ProviderConfig provider_config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "provider config must be a JSON object");
  ProviderConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "endpoint_url") {
      c.endpoint_url = string_field(v, "endpoint_url");
    } else if (key == "classifier_url") {
      c.classifier_url = string_field(v, "classifier_url");
    } else if (key == "model_name") {
      c.model_name = string_field(v, "model_name");
    } else if (key == "api_key_env") {
      c.api_key_env = string_field(v, "api_key_env");
    } else if (key == "timeout") {
      c.timeout = seconds_field(v, "timeout");
    } else if (key == "max_retries") {
      c.max_retries = int_field(v, "max_retries");
    } else if (key == "max_parallel") {
      c.max_parallel = int_field(v, "max_parallel");
    } else if (key == "retry_backoff") {
      c.retry_backoff = seconds_field(v, "retry_backoff");
    } else if (key == "prompt_style") {
      c.prompt_style = prompt_style_from_string(string_field(v, "prompt_style"));
    } else if (key == "extraction_template") {
      c.extraction_template =
          extraction_template_from_string(string_field(v, "extraction_template"));
    } else if (key == "yes_no_template") {
      c.yes_no_template = yes_no_template_from_string(string_field(v, "yes_no_template"));
    } else if (key == "label_template") {
      c.label_template = string_field(v, "label_template");
    } else if (key == "temperature") {
      if (!v.is_number()) throw Error(ErrorCode::Parse, "temperature must be a number");
      c.temperature = v.get<double>();
    } else {
      throw Error(ErrorCode::Parse, "unknown provider config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

json provider_config_to_json(const ProviderConfig& c) {
  return {{"endpoint_url", c.endpoint_url},
          {"classifier_url", c.classifier_url},
          {"model_name", c.model_name},
          {"api_key_env", c.api_key_env},
          {"timeout", static_cast<double>(c.timeout.count()) / 1000.0},
          {"max_retries", c.max_retries},
          {"max_parallel", c.max_parallel},
          {"retry_backoff", static_cast<double>(c.retry_backoff.count()) / 1000.0},
          {"prompt_style", to_string(c.prompt_style)},
          {"extraction_template", to_string(c.extraction_template)},
          {"yes_no_template", to_string(c.yes_no_template)},
          {"label_template", c.label_template},
          {"temperature", c.temperature}};
}

// ---------------------------------------------------------------- transport

namespace {

std::string image_mime(const std::string& bytes) {
  if (bytes.rfind("\x89PNG", 0) == 0) return "image/png";
  if (bytes.rfind("\xFF\xD8", 0) == 0) return "image/jpeg";
  if (bytes.rfind("<svg", 0) == 0 || bytes.rfind("<?xml", 0) == 0) return "image/svg+xml";
  return "application/octet-stream";
}

struct Url {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "endpoint URL needs a scheme: '" + url + "'");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

// Thrown inside an attempt for failures that retrying cannot fix.
struct Permanent {
  std::string message;
};

std::string post_json(const ProviderConfig& config, const std::string& url, const json& body,
                      std::atomic<std::int64_t>* counter) {
  const Url u = split_url(url);
  httplib::Headers headers;
  if (!config.api_key_env.empty()) {
    const char* key = std::getenv(config.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::InvalidArgument,
                  "environment variable " + config.api_key_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string payload = body.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0 && config.retry_backoff.count() > 0) {
      std::this_thread::sleep_for(config.retry_backoff * (1LL << std::min(attempt - 1, 10)));
    }
    httplib::Client client(u.base);
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);
    client.set_write_timeout(config.timeout);
    if (counter) ++*counter;
    const auto res = client.Post(u.path, headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return res->body;
    if (res->status == 429 || res->status >= 500) {
      last_error = fmt::format("HTTP {}", res->status);
      continue;
    }
    throw Error(ErrorCode::Network, fmt::format("{} answered HTTP {}", url, res->status));
  }
  throw Error(ErrorCode::Network, fmt::format("{} failed after {} attempt(s): {}", url,
                                              config.max_retries + 1, last_error));
}

json parse_body(const std::string& body, const std::string& url) {
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::Network, url + " returned a non-JSON body");
  }
}

}  // namespace

json chat_request_body(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    if (!m.image) {
      messages.push_back({{"role", m.role}, {"content", m.text}});
      continue;
    }
    const std::string url = "data:" + image_mime(*m.image) + ";base64," + base64_encode(*m.image);
    messages.push_back(
        {{"role", m.role},
         {"content",
          json::array({json{{"type", "text"}, {"text", m.text}},
                       json{{"type", "image_url"}, {"image_url", {{"url", url}}}}})}});
  }
  return {{"model", request.model},
          {"temperature", request.temperature},
          {"messages", std::move(messages)}};
}

json score_request_body(const ScoreRequest& request) {
  return {{"model", request.model},
          {"image", base64_encode(request.image)},
          {"labels", request.labels}};
}

HttpChatClient::HttpChatClient(ProviderConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  const std::string body =
      post_json(config_, config_.endpoint_url, chat_request_body(request), &sent_);
  const json j = parse_body(body, config_.endpoint_url);
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::Network,
                config_.endpoint_url + " response lacks choices[0].message.content");
  }
}

HttpLabelScorer::HttpLabelScorer(ProviderConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::vector<double> HttpLabelScorer::score(const ScoreRequest& request) {
  const std::string& url =
      config_.classifier_url.empty() ? config_.endpoint_url : config_.classifier_url;
  const json j = parse_body(post_json(config_, url, score_request_body(request), nullptr), url);
  if (!j.contains("scores") || !j["scores"].is_array()) {
    throw Error(ErrorCode::Network, url + " response lacks a scores array");
  }
  std::vector<double> out;
  for (const auto& s : j["scores"]) {
    if (!s.is_number()) throw Error(ErrorCode::Network, url + " returned a non-numeric score");
    out.push_back(s.get<double>());
  }
  return out;
}

// -------------------------------------------------------------------- cache

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResponseCache::entry_path(const std::string& hash) const {
  return dir_ / hash.substr(0, 2) / (hash + ".json");
}

std::optional<json> ResponseCache::get(const std::string& hash) const {
  const auto path = entry_path(hash);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    const json j = json::parse(read_file(path));
    if (!j.is_object() || j.value("request_hash", "") != hash || !j.contains("response")) {
      return std::nullopt;
    }
    return j["response"];
  } catch (const std::exception&) {
    return std::nullopt;  // corrupt or vanished: recompute
  }
}

void ResponseCache::put(const std::string& hash, const std::string& model,
                        const json& response) {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  const json entry{
      {"request_hash", hash}, {"model", model}, {"created_at", stamp}, {"response", response}};
  write_file_atomic(entry_path(hash), entry.dump(2) + "\n");
}

json ResponseCache::get_or_compute(const std::string& hash, const std::string& model,
                                   const std::function<json()>& compute) {
  std::promise<json> promise;
  {
    std::unique_lock lock(mu_);
    const auto it = inflight_.find(hash);
    if (it != inflight_.end()) {
      auto shared = it->second;
      lock.unlock();
      return shared.get();
    }
    inflight_.emplace(hash, promise.get_future().share());
  }
  auto finish = [&] {
    std::lock_guard lock(mu_);
    inflight_.erase(hash);
  };
  try {
    json value;
    if (auto hit = get(hash)) {
      value = std::move(*hit);
    } else {
      value = compute();
      put(hash, model, value);
    }
    promise.set_value(value);
    finish();
    return value;
  } catch (...) {
    promise.set_exception(std::current_exception());
    finish();
    throw;
  }
}

std::string chat_request_hash(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", m.role},
                        {"text", m.text},
                        {"image_sha256", m.image ? sha256_hex(*m.image) : ""}});
  }
  const json key{{"kind", "chat"},
                 {"model", request.model},
                 {"temperature", request.temperature},
                 {"messages", messages}};
  return sha256_hex(key.dump());
}

std::string score_request_hash(const ScoreRequest& request) {
  const json key{{"kind", "score"},
                 {"model", request.model},
                 {"image_sha256", sha256_hex(request.image)},
                 {"labels", request.labels}};
  return sha256_hex(key.dump());
}

CachedChatClient::CachedChatClient(std::shared_ptr<ChatClient> inner,
                                   std::shared_ptr<ResponseCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::string CachedChatClient::complete(const ChatRequest& request) {
  const json r = cache_->get_or_compute(chat_request_hash(request), request.model,
                                        [&] { return json(inner_->complete(request)); });
  if (!r.is_string()) throw Error(ErrorCode::Internal, "cached chat response is not a string");
  return r.get<std::string>();
}

CachedLabelScorer::CachedLabelScorer(std::shared_ptr<LabelScorer> inner,
                                     std::shared_ptr<ResponseCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::vector<double> CachedLabelScorer::score(const ScoreRequest& request) {
  const json r = cache_->get_or_compute(score_request_hash(request), request.model,
                                        [&] { return json(inner_->score(request)); });
  return r.get<std::vector<double>>();
}

// ------------------------------------------------------------------ parsing

std::optional<ModelJson> parse_model_json(const std::string& text) {
  try {
    return ModelJson{json::parse(text), false};
  } catch (const json::parse_error&) {
  }
  std::string body = text;
  const auto fence = body.find("```");
  if (fence != std::string::npos) {
    const auto line_end = body.find('\n', fence);
    const auto start = line_end == std::string::npos ? fence + 3 : line_end + 1;
    const auto close = body.find("```", start);
    body = body.substr(start, close == std::string::npos ? std::string::npos : close - start);
  }
  const auto open = body.find('{');
  const auto last = body.rfind('}');
  if (open == std::string::npos || last == std::string::npos || last < open) return std::nullopt;
  try {
    return ModelJson{json::parse(body.substr(open, last - open + 1)), true};
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

std::optional<bool> parse_yes_no(const std::string& answer) {
  std::string word;
  for (char c : answer) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc)) {
      word += static_cast<char>(std::tolower(uc));
    } else if (!word.empty()) {
      break;
    }
  }
  if (word == "yes") return true;
  if (word == "no") return false;
  return std::nullopt;
}

bool is_snake_case(const std::string& s) {
  static const std::regex pattern("^[a-z0-9]+(_[a-z0-9]+)*$");
  return std::regex_match(s, pattern);
}

ElementList parse_extraction_response(const std::string& raw, const std::string& class_name) {
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::Extraction,
                 fmt::format("extraction for '{}': {}; raw response: {}", class_name, what, raw));
  };
  const auto parsed = parse_model_json(raw);
  if (!parsed) throw fail("response is not valid JSON after one repair pass");
  const json& j = parsed->value;
  if (!j.is_object()) throw fail("response is not a JSON object");
  if (!j.contains("total_elements")) throw fail("missing total_elements");
  if (j.contains("class") && j["class"].is_string() &&
      trim(j["class"].get<std::string>()) != class_name) {
    throw fail("class is '" + j["class"].get<std::string>() + "'");
  }
  json entry = j;
  entry["class"] = class_name;
  ElementList elements;
  try {
    elements = parse_class_entry(entry).second;
  } catch (const Error& e) {
    throw fail(e.what());
  }
  std::set<std::string> seen;
  for (const auto& e : elements) {
    if (!is_snake_case(e.name)) throw fail("element name '" + e.name + "' is not snake_case");
    if (e.id != class_name + "." + e.name) {
      throw fail("element id '" + e.id + "' does not match '" + class_name + "." + e.name + "'");
    }
    if (!seen.insert(e.id).second) throw fail("duplicate element id '" + e.id + "'");
  }
  return elements;
}

VqaResult parse_presence_response(const std::string& sketch_id, const std::string& raw,
                                  const ElementList& elements, PromptStyle style) {
  VqaResult r{sketch_id, {}, raw, ParseStatus::Ok};
  for (const auto& e : elements) r.presence[e.id] = false;

  const auto parsed = parse_model_json(raw);
  if (!parsed || !parsed->value.is_object()) {
    r.parse_status = ParseStatus::Failed;
    return r;
  }
  bool repaired = parsed->repaired;
  const json* obj = &parsed->value;
  // The molmo schema nests the answers under the file name.
  if (style == PromptStyle::MolmoJson && obj->size() == 1 && obj->begin().value().is_object()) {
    if (obj->begin().key() != sketch_id) repaired = true;
    obj = &obj->begin().value();
  }

  std::size_t matched = 0;
  for (const auto& e : elements) {
    const auto it = obj->find(e.id);
    if (it == obj->end()) {
      repaired = true;
      continue;
    }
    ++matched;
    const json& v = *it;
    if (style == PromptStyle::MolmoJson) {
      if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) {
        r.presence[e.id] = v.get<int>() == 1;
      } else if (v.is_boolean()) {
        r.presence[e.id] = v.get<bool>();
        repaired = true;
      } else {
        repaired = true;
      }
    } else if (v.is_boolean()) {
      r.presence[e.id] = v.get<bool>();
    } else {
      repaired = true;  // ambiguous means absent
    }
  }
  if (obj->size() > matched) repaired = true;  // unknown keys dropped
  if (matched == 0) {
    r.parse_status = ParseStatus::Failed;
  } else if (repaired) {
    r.parse_status = ParseStatus::Repaired;
  }
  return r;
}

// --------------------------------------------------------------- operations

ElementList extract_commonsense(const std::string& class_name, ChatClient& client,
                                const ProviderConfig& config) {
  if (trim(class_name).empty()) throw Error(ErrorCode::InvalidArgument, "empty class name");
  ChatRequest req{config.model_name,
                  {{"user", render_extraction_prompt(config.extraction_template, class_name),
                    std::nullopt}},
                  config.temperature};
  return parse_extraction_response(client.complete(req), class_name);
}

VqaResult annotate_elements(const std::string& sketch_id, const std::string& image,
                            const std::string& class_name, const ElementList& elements,
                            ChatClient& client, const ProviderConfig& config) {
  if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "empty element list");
  if (config.prompt_style != PromptStyle::PerElementYesNo) {
    const std::string prompt = config.prompt_style == PromptStyle::MolmoJson
                                   ? render_molmo_prompt(class_name, sketch_id, elements)
                                   : render_auditor_prompt(class_name, elements);
    ChatRequest req{config.model_name, {{"user", prompt, image}}, config.temperature};
    return parse_presence_response(sketch_id, client.complete(req), elements,
                                   config.prompt_style);
  }

  std::vector<std::string> answers(elements.size());
  parallel_for(elements.size(), static_cast<unsigned>(config.max_parallel),
               [&](std::size_t i) {
                 ChatRequest req{config.model_name,
                                 {{"user",
                                   render_yes_no_prompt(config.yes_no_template, class_name,
                                                        elements[i]),
                                   image}},
                                 config.temperature};
                 answers[i] = client.complete(req);
               });
  VqaResult r{sketch_id, {}, json(answers).dump(), ParseStatus::Ok};
  std::size_t understood = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto yes = parse_yes_no(answers[i]);
    r.presence[elements[i].id] = yes.value_or(false);
    if (yes) ++understood;
  }
  if (understood == 0) {
    r.parse_status = ParseStatus::Failed;
  } else if (understood < elements.size()) {
    r.parse_status = ParseStatus::Repaired;
  }
  return r;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  if (logits.empty()) return {};
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double& x : out) x /= sum;
  return out;
}

ClassifierResult classify(const std::string& sketch_id, const std::string& image,
                          const std::vector<std::string>& candidate_labels,
                          const std::string& ground_truth, LabelScorer& scorer,
                          const ProviderConfig& config) {
  if (std::find(candidate_labels.begin(), candidate_labels.end(), ground_truth) ==
      candidate_labels.end()) {
    throw Error(ErrorCode::InvalidArgument,
                "ground truth '" + ground_truth + "' is not among the candidate labels");
  }
  if (std::set<std::string>(candidate_labels.begin(), candidate_labels.end()).size() !=
      candidate_labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "candidate labels contain duplicates");
  }
  ScoreRequest req{config.model_name, image, {}};
  for (const auto& c : candidate_labels) {
    req.labels.push_back(render_template(config.label_template, {{"class", spoken_name(c)}}));
  }
  const auto scores = scorer.score(req);
  if (scores.size() != candidate_labels.size()) {
    throw Error(ErrorCode::Network,
                fmt::format("scorer returned {} scores for {} labels; no score for '{}'",
                            scores.size(), candidate_labels.size(), ground_truth));
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::Network, "scorer returned a non-finite score");
  }
  const auto probs = softmax(scores);
  ClassifierResult r;
  r.sketch_id = sketch_id;
  for (std::size_t i = 0; i < candidate_labels.size(); ++i) {
    r.probabilities[candidate_labels[i]] = probs[i];
  }
  r.ground_truth_prob = r.probabilities.at(ground_truth);
  return r;
}

std::map<std::string, double> parse_probabilities(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::Parse, "probabilities must be a JSON object {sketch_id: P}");
  }
  std::map<std::string, double> out;
  for (const auto& [id, v] : j.items()) {
    if (!v.is_number()) {
      throw Error(ErrorCode::Parse, "probability of '" + id + "' is not a number");
    }
    const double p = v.get<double>();
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::Validation,
                  fmt::format("probability of '{}' is {}, outside [0, 1]", id, p));
    }
    out[id] = p;
  }
  return out;
}

std::map<std::string, double> load_probabilities(const std::filesystem::path& path) {
  try {
    return parse_probabilities(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

std::vector<SketchSignals> fixture_signals(const std::vector<SketchRecord>& records,
                                           const CommonsenseDB& db,
                                           const std::map<std::string, double>& probabilities) {
  std::vector<SketchSignals> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (!db.has_class(r.class_name)) {
      throw Error(ErrorCode::Validation,
                  fmt::format("sketch '{}': class '{}' is not in the commonsense DB", r.sketch_id,
                              r.class_name));
    }
    const auto p = probabilities.find(r.sketch_id);
    if (p == probabilities.end()) {
      throw Error(ErrorCode::Validation,
                  fmt::format("sketch '{}' has no entry in the probabilities file", r.sketch_id));
    }
    Signals s;
    s.element_count = db.element_count(r.class_name);
    s.visible_count = static_cast<double>(r.visible_count());
    s.probability = p->second;
    out.push_back({r.sketch_id, r.class_name, s});
  }
  return out;
}

void to_json(json& j, const VqaResult& r) {
  j = {{"sketch_id", r.sketch_id},
       {"presence", r.presence},
       {"parse_status", to_string(r.parse_status)},
       {"raw_response", r.raw_response}};
}

VqaResult vqa_result_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sketch_id") || !j["sketch_id"].is_string() ||
      !j.contains("presence") || !j["presence"].is_object()) {
    throw Error(ErrorCode::Parse, "prediction needs sketch_id and a presence object");
  }
  VqaResult r;
  r.sketch_id = j["sketch_id"].get<std::string>();
  for (const auto& [id, v] : j["presence"].items()) {
    if (!v.is_boolean()) {
      throw Error(ErrorCode::Parse,
                  "sketch '" + r.sketch_id + "': presence of '" + id + "' is not a boolean");
    }
    r.presence[id] = v.get<bool>();
  }
  if (j.contains("raw_response") && j["raw_response"].is_string()) {
    r.raw_response = j["raw_response"].get<std::string>();
  }
  if (j.contains("parse_status")) {
    r.parse_status = parse_status_from_string(j["parse_status"].get<std::string>());
  }
  return r;
}

void to_json(json& j, const ClassifierResult& r) {
  j = {{"sketch_id", r.sketch_id},
       {"probabilities", r.probabilities},
       {"ground_truth_prob", r.ground_truth_prob}};
}

}  // namespace sea
