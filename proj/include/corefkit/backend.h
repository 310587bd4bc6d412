// Copyright 2026 The Corefkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text-generation backends the annotation pipeline talks to.

#ifndef COREFKIT_BACKEND_H_
#define COREFKIT_BACKEND_H_

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace corefkit {

struct GenerationRequest {
  std::string prompt;
  std::string doc_id;
  size_t window_index = 0;
};

struct BackendInfo {
  std::string name;
  size_t max_context = 0;      // 0 when unknown
  bool single_flight = false;  // generate() must not run concurrently
};

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual BackendInfo info() const = 0;
  // Throws BackendError on failure.
  virtual std::string generate(const GenerationRequest &request) = 0;
};

// Returns the text to annotate unchanged, i.e. predicts nothing.
class EchoBackend : public ModelBackend {
 public:
  BackendInfo info() const override { return {"echo", 0, false}; }
  std::string generate(const GenerationRequest &request) override;
};

// Serves completions keyed by (doc_id, window_index).
class ReplayBackend : public ModelBackend {
 public:
  using Key = std::pair<std::string, size_t>;

  explicit ReplayBackend(std::map<Key, std::string> completions,
                         std::string name = "replay")
      : completions_(std::move(completions)), name_(std::move(name)) {}
  // Reads JSON lines with doc_id, window_index and completion; other keys are
  // ignored. Throws std::invalid_argument on malformed lines.
  static ReplayBackend from_jsonl(std::string_view text);

  BackendInfo info() const override { return {name_, 0, false}; }
  std::string generate(const GenerationRequest &request) override;
  size_t size() const { return completions_.size(); }

 private:
  std::map<Key, std::string> completions_;
  std::string name_;
};

struct HttpBackendConfig {
  std::string endpoint;  // e.g. http://localhost:8000/v1/completions
  std::string model;
  std::string token_env = "COREFKIT_API_TOKEN";
  size_t max_tokens = 2048;
  size_t max_context = 0;
  int timeout_seconds = 300;
  bool single_flight = false;
};

// OpenAI-style completion endpoint. The bearer token is read from the
// environment variable named in the config, if set.
class HttpBackend : public ModelBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  BackendInfo info() const override;
  std::string generate(const GenerationRequest &request) override;

  // Request body for a prompt.
  std::string request_body(std::string_view prompt) const;
  // First completion text of a response body; throws BackendError.
  static std::string parse_response(std::string_view body);

 private:
  HttpBackendConfig config_;
};

}  // namespace corefkit

#endif  // COREFKIT_BACKEND_H_
