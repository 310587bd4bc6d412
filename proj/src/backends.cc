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

#include <string>

#include "corefkit/backend.h"
#include "corefkit/pipeline.h"
#include "corefkit/text_util.h"
#include "json.hpp"

namespace corefkit {

std::string EchoBackend::generate(const GenerationRequest &request) {
  auto batch = prompt_batch(request.prompt);
  if (!batch) throw BackendError("prompt has no INPUT TO ANNOTATE section");
  return *batch;
}

ReplayBackend ReplayBackend::from_jsonl(std::string_view text) {
  std::map<Key, std::string> completions;
  size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("doc_id") ||
        !j["doc_id"].is_string() || !j.contains("window_index") ||
        !j["window_index"].is_number_unsigned() ||
        !j.contains("completion") || !j["completion"].is_string()) {
      throw std::invalid_argument(
          "replay line " + std::to_string(line_no) +
          ": expected {doc_id, window_index, completion}");
    }
    completions[{j["doc_id"].get<std::string>(),
                 j["window_index"].get<size_t>()}] =
        j["completion"].get<std::string>();
  }
  return ReplayBackend(std::move(completions));
}

std::string ReplayBackend::generate(const GenerationRequest &request) {
  auto it = completions_.find({request.doc_id, request.window_index});
  if (it == completions_.end()) {
    throw BackendError("no stored completion for document '" +
                       request.doc_id + "' window " +
                       std::to_string(request.window_index));
  }
  return it->second;
}

}  // namespace corefkit
