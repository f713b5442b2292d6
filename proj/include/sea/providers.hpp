// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sea/dataset.hpp"
#include "sea/metric.hpp"
#include "sea/prompts.hpp"
#include "sea/vqa.hpp"

namespace sea {

enum class PromptStyle { StructuredJson, PerElementYesNo, MolmoJson };

const char* to_string(PromptStyle s);
PromptStyle prompt_style_from_string(const std::string& s);

struct ProviderConfig {
  std::string endpoint_url;     // chat-completion URL
  std::string classifier_url;   // label-scoring URL; empty means endpoint_url
  std::string model_name;
  std::string api_key_env;      // variable name only, the key itself is never stored
  std::chrono::milliseconds timeout{60000};
  int max_retries = 2;
  int max_parallel = 4;
  std::chrono::milliseconds retry_backoff{500};  // doubled per attempt
  PromptStyle prompt_style = PromptStyle::StructuredJson;
  ExtractionTemplate extraction_template = ExtractionTemplate::Analyzer;
  YesNoTemplate yes_no_template = YesNoTemplate::Plain;
  std::string label_template = "a black line drawing of a {class}";
  double temperature = 0.0;

  void validate() const;
};

/// Reads the documented fields (timeout and retry_backoff in seconds).
/// Unknown keys are rejected so typos do not silently fall back to defaults.
ProviderConfig provider_config_from_json(const nlohmann::json& j);
nlohmann::json provider_config_to_json(const ProviderConfig& c);

// ---------------------------------------------------------------- transport

struct ChatMessage {
  std::string role;                   // "system" or "user"
  std::string text;
  std::optional<std::string> image;   // raw bytes, sent base64-encoded
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
};

/// Returns the assistant text of one completion.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

struct ScoreRequest {
  std::string model;
  std::string image;                 // raw bytes
  std::vector<std::string> labels;
};

/// Returns one raw score (logit) per label.
class LabelScorer {
 public:
  virtual ~LabelScorer() = default;
  virtual std::vector<double> score(const ScoreRequest& request) = 0;
};

/// Wire body of a chat request (OpenAI-compatible messages array).
nlohmann::json chat_request_body(const ChatRequest& request);
nlohmann::json score_request_body(const ScoreRequest& request);

/// HTTP transport over cpp-httplib. Retries network failures, timeouts, 429
/// and 5xx; other statuses fail immediately.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(ProviderConfig config);
  std::string complete(const ChatRequest& request) override;
  std::int64_t requests_sent() const { return sent_; }

 private:
  ProviderConfig config_;
  std::atomic<std::int64_t> sent_{0};
};

class HttpLabelScorer final : public LabelScorer {
 public:
  explicit HttpLabelScorer(ProviderConfig config);
  std::vector<double> score(const ScoreRequest& request) override;

 private:
  ProviderConfig config_;
};

// -------------------------------------------------------------------- cache

/// Content-addressed store: <dir>/<hash[0:2]>/<hash>.json holding
/// {request_hash, model, created_at, response}. Writes are atomic renames;
/// unreadable entries count as misses and get rewritten.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<nlohmann::json> get(const std::string& hash) const;
  void put(const std::string& hash, const std::string& model, const nlohmann::json& response);
  std::filesystem::path entry_path(const std::string& hash) const;

  /// Looks the key up, otherwise runs `compute` once per key in this
  /// process even under concurrent callers, stores and returns its result.
  nlohmann::json get_or_compute(const std::string& hash, const std::string& model,
                                const std::function<nlohmann::json()>& compute);

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_future<nlohmann::json>> inflight_;
};

/// Hash of model name, prompt bytes and image bytes.
std::string chat_request_hash(const ChatRequest& request);
std::string score_request_hash(const ScoreRequest& request);

class CachedChatClient final : public ChatClient {
 public:
  CachedChatClient(std::shared_ptr<ChatClient> inner, std::shared_ptr<ResponseCache> cache);
  std::string complete(const ChatRequest& request) override;

 private:
  std::shared_ptr<ChatClient> inner_;
  std::shared_ptr<ResponseCache> cache_;
};

class CachedLabelScorer final : public LabelScorer {
 public:
  CachedLabelScorer(std::shared_ptr<LabelScorer> inner, std::shared_ptr<ResponseCache> cache);
  std::vector<double> score(const ScoreRequest& request) override;

 private:
  std::shared_ptr<LabelScorer> inner_;
  std::shared_ptr<ResponseCache> cache_;
};

// ------------------------------------------------------------------ parsing

struct ModelJson {
  nlohmann::json value;
  bool repaired = false;
};

/// Strict parse first; failing that, one repair pass that drops code fences
/// and any prose outside the outermost braces. Empty when both fail.
std::optional<ModelJson> parse_model_json(const std::string& text);

/// "Yes." / "no" / " YES!" style answers; empty when neither word leads.
std::optional<bool> parse_yes_no(const std::string& answer);

bool is_snake_case(const std::string& s);

/// Validates an extraction response for `class_name`. Throws
/// Error(Extraction) carrying the raw text.
ElementList parse_extraction_response(const std::string& raw, const std::string& class_name);

/// Normalizes an object-of-booleans (structured) or object-of-0/1 (molmo,
/// optionally nested under the file name) into presence over `elements`.
VqaResult parse_presence_response(const std::string& sketch_id, const std::string& raw,
                                  const ElementList& elements, PromptStyle style);

// --------------------------------------------------------------- operations

ElementList extract_commonsense(const std::string& class_name, ChatClient& client,
                                const ProviderConfig& config);

VqaResult annotate_elements(const std::string& sketch_id, const std::string& image,
                            const std::string& class_name, const ElementList& elements,
                            ChatClient& client, const ProviderConfig& config);

struct ClassifierResult {
  std::string sketch_id;
  std::map<std::string, double> probabilities;  // class name -> probability
  double ground_truth_prob = 0.0;
};

/// Numerically stable softmax.
std::vector<double> softmax(const std::vector<double>& logits);

ClassifierResult classify(const std::string& sketch_id, const std::string& image,
                          const std::vector<std::string>& candidate_labels,
                          const std::string& ground_truth, LabelScorer& scorer,
                          const ProviderConfig& config);

/// Sidecar JSON object {sketch_id: P}; every P must be in [0, 1].
std::map<std::string, double> load_probabilities(const std::filesystem::path& path);
std::map<std::string, double> parse_probabilities(const nlohmann::json& j);

struct SketchSignals {
  std::string sketch_id;
  std::string class_name;
  Signals signals;
};

/// E from the DB, V from annotated presence, P from the sidecar. A missing
/// sidecar entry is Error(Validation) naming the sketch.
std::vector<SketchSignals> fixture_signals(const std::vector<SketchRecord>& records,
                                           const CommonsenseDB& db,
                                           const std::map<std::string, double>& probabilities);

void to_json(nlohmann::json& j, const VqaResult& r);
VqaResult vqa_result_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const ClassifierResult& r);

}  // namespace sea
