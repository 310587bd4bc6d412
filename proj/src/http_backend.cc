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

#include <cstdlib>
#include <string>

#include "corefkit/backend.h"
#include "httplib.h"
#include "json.hpp"

namespace corefkit {
namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string &url) {
  size_t scheme = url.find("://");
  size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  size_t slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw std::invalid_argument("http backend needs an endpoint");
  }
}

BackendInfo HttpBackend::info() const {
  return {"http:" + config_.model, config_.max_context, config_.single_flight};
}

std::string HttpBackend::request_body(std::string_view prompt) const {
  nlohmann::ordered_json body;
  body["model"] = config_.model;
  body["prompt"] = prompt;
  body["max_tokens"] = config_.max_tokens;
  body["temperature"] = 0;
  return body.dump();
}

std::string HttpBackend::parse_response(std::string_view body) {
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) throw BackendError("response is not JSON");
  if (!j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty()) {
    throw BackendError("response has no choices");
  }
  const auto &choice = j["choices"][0];
  if (choice.contains("text") && choice["text"].is_string()) {
    return choice["text"].get<std::string>();
  }
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string()) {
    return choice["message"]["content"].get<std::string>();
  }
  throw BackendError("first choice carries no text");
}

std::string HttpBackend::generate(const GenerationRequest &request) {
  Url url = split_url(config_.endpoint);
  httplib::Client client(url.origin);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (const char *token = std::getenv(config_.token_env.c_str())) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }
  auto res = client.Post(url.path, headers, request_body(request.prompt),
                         "application/json");
  if (!res) {
    throw BackendError("request to " + config_.endpoint +
                       " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError("endpoint answered HTTP " +
                       std::to_string(res->status));
  }
  return parse_response(res->body);
}

}  // namespace corefkit
