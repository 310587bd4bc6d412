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

// Windowed annotation: a document is annotated a few sentences at a time,
// each batch preceded by the tail of what has been annotated so far.

#ifndef COREFKIT_PIPELINE_H_
#define COREFKIT_PIPELINE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/backend.h"
#include "corefkit/conllu.h"
#include "corefkit/diagnostics.h"
#include "corefkit/formats.h"
#include "corefkit/reindex.h"

namespace corefkit {

struct PipelineConfig {
  size_t sentences_per_batch = 4;
  size_t context_budget = 250;  // rendered words, tags included
  Format format = Format::HeadwordXml;
  double fuzzy_threshold = 0.5;
  bool on_the_fly_clean = true;
  bool reindex = true;
  size_t retries = 2;

  // "small" (4, 250), "large-train" (6, 1024), "large-infer" (6, 3072).
  static std::optional<PipelineConfig> preset(std::string_view name);
  // Throws std::invalid_argument.
  void validate() const;
};

std::vector<SentenceRange> partition_batches(size_t sentence_count,
                                             size_t per_batch);

// Whitespace words `text` renders to.
size_t rendered_word_count(const AnnotatedText &text);

// The annotated rendering of sentences [0, before) of `doc`, cut to the
// longest suffix that fits `cfg.context_budget` words. A word always keeps
// its tags. Labels are global chain ids.
AnnotatedText build_context(const Document &doc, size_t before,
                            const PipelineConfig &cfg);

std::string build_prompt(std::string_view context, std::string_view batch,
                         Format format);
// The INPUT TO ANNOTATE section of a prompt built by build_prompt.
std::optional<std::string> prompt_batch(std::string_view prompt);

struct TrainingPair {
  std::string doc_id;
  size_t window_index = 0;
  std::string prompt;
  std::string completion;
};

std::vector<TrainingPair> export_training_pairs(const Document &doc,
                                                const PipelineConfig &cfg);
std::vector<TrainingPair> export_training_pairs(const Corpus &corpus,
                                                const PipelineConfig &cfg);
std::string training_pair_json(const TrainingPair &pair);

// Answers each window with the gold rendering of its batch.
class OracleBackend : public ModelBackend {
 public:
  OracleBackend(const Corpus &gold, const PipelineConfig &cfg);
  OracleBackend(std::span<const Document> gold, const PipelineConfig &cfg);
  BackendInfo info() const override { return {"oracle", 0, false}; }
  std::string generate(const GenerationRequest &request) override;

 private:
  std::map<std::pair<std::string, size_t>, std::string> completions_;
};

struct WindowReport {
  size_t index = 0;
  SentenceRange batch;
  bool annotated = false;
  size_t attempts = 0;
  std::string error;
  size_t mentions = 0;
  Diagnostics diagnostics;
};

struct AnnotationResult {
  Document document;
  std::vector<WindowReport> windows;

  bool complete() const;
};

// Annotates `doc` (its existing chains are ignored) window by window.
AnnotationResult annotate_document(const Document &doc, ModelBackend &backend,
                                   const PipelineConfig &cfg);

// Runs documents on up to `jobs` threads; results keep input order.
std::vector<AnnotationResult> annotate_documents(
    std::span<const Document> docs, ModelBackend &backend,
    const PipelineConfig &cfg, size_t jobs = 1);

}  // namespace corefkit

#endif  // COREFKIT_PIPELINE_H_
