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

#include "corefkit/pipeline.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "corefkit/align.h"
#include "corefkit/text_util.h"
#include "json.hpp"

namespace corefkit {

std::optional<PipelineConfig> PipelineConfig::preset(std::string_view name) {
  PipelineConfig cfg;
  if (name == "small") {
    cfg.sentences_per_batch = 4;
    cfg.context_budget = 250;
  } else if (name == "large-train") {
    cfg.sentences_per_batch = 6;
    cfg.context_budget = 1024;
  } else if (name == "large-infer") {
    cfg.sentences_per_batch = 6;
    cfg.context_budget = 3072;
  } else {
    return std::nullopt;
  }
  return cfg;
}

void PipelineConfig::validate() const {
  if (sentences_per_batch < 1) {
    throw std::invalid_argument("sentences_per_batch must be at least 1");
  }
  if (fuzzy_threshold < 0 || fuzzy_threshold > 1) {
    throw std::invalid_argument("fuzzy_threshold must lie in [0, 1]");
  }
}

std::vector<SentenceRange> partition_batches(size_t sentence_count,
                                             size_t per_batch) {
  std::vector<SentenceRange> out;
  if (per_batch == 0) per_batch = 1;
  for (size_t i = 0; i < sentence_count; i += per_batch) {
    out.push_back({i, std::min(sentence_count, i + per_batch)});
  }
  return out;
}

size_t rendered_word_count(const AnnotatedText &text) {
  return split_words(render(text)).size();
}

namespace {

// Whitespace words one event adds to the rendering.
size_t event_words(Format format, EventKind kind) {
  switch (format) {
    case Format::Crac:
      return kind == EventKind::Zero ? 1 : 0;
    case Format::ExplicitXml:
      if (kind == EventKind::Close) return 1;
      return kind == EventKind::Head ? 0 : 2;
    case Format::MinimalXml:
      return kind == EventKind::Head ? 0 : 1;
    case Format::HeadwordXml:
      return kind == EventKind::Head || kind == EventKind::Zero ? 1 : 0;
  }
  return 1;
}

ChainLabels chain_ids_as_labels() {
  return [](const std::string &id) -> std::optional<std::string> { return id; };
}

void relabel(AnnotatedText &text, const ChainLabels &labels) {
  for (TagEvent &e : text.events) {
    if (e.kind == EventKind::Close) continue;
    if (auto l = labels(e.chain)) e.chain = *l;
  }
}

}  // namespace

AnnotatedText build_context(const Document &doc, size_t before,
                            const PipelineConfig &cfg) {
  AnnotatedText out;
  out.format = cfg.format;
  before = std::min(before, doc.sentences.size());
  if (before == 0 || cfg.context_budget == 0) return out;

  AnnotatedText full =
      encode(doc, {0, before}, cfg.format, chain_ids_as_labels()).text;
  const size_t n = full.tokens.size();
  std::vector<size_t> weight(n, 1);
  for (const TagEvent &e : full.events) {
    weight[e.anchor] += event_words(cfg.format, e.kind);
  }
  size_t start = n, total = 0;
  while (start > 0 && total + weight[start - 1] <= cfg.context_budget) {
    total += weight[--start];
  }
  if (start == n) return out;

  out.tokens.assign(full.tokens.begin() + start, full.tokens.end());
  out.line_starts.push_back(0);
  for (size_t s : full.line_starts) {
    if (s > start) out.line_starts.push_back(s - start);
  }
  size_t depth = 0;
  for (const TagEvent &e : full.events) {
    if (e.anchor < start) continue;
    if (e.kind == EventKind::Open) ++depth;
    if (e.kind == EventKind::Close) {
      if (depth == 0) continue;  // its Open fell outside the budget
      --depth;
    }
    TagEvent shifted = e;
    shifted.anchor -= start;
    out.events.push_back(std::move(shifted));
  }
  return out;
}

namespace {

struct TagShapes {
  std::string_view entities;
  std::string_view zeros;
};

TagShapes tag_shapes(Format format) {
  switch (format) {
    case Format::Crac:
      return {"<Token>|[eN <EntitySpan> <Token>|eN] ; one-word span <Token>|[eN]",
              "<ZeroMentionHead> ##|[eN]"};
    case Format::ExplicitXml:
      return {"<ent id=COREF_N> <EntitySpan> </ent>",
              "<ZeroMentionHead> <zero_ent id=COREF_N>"};
    case Format::MinimalXml:
      return {"<entN> <EntitySpan> </ent>", "<ZeroMentionHead> <zeroN>"};
    case Format::HeadwordXml:
      return {"<EntityHead> <entN>", "<ZeroMentionHead> <zeroN>"};
  }
  return {};
}

constexpr std::string_view kInputHeader = "INPUT TO ANNOTATE\n";
constexpr std::string_view kOutputHeader = "\n\nANNOTATED OUTPUT\n";

}  // namespace

std::string build_prompt(std::string_view context, std::string_view batch,
                         Format format) {
  TagShapes shapes = tag_shapes(format);
  std::string out;
  out += "TASK: COREFERENCE ANNOTATION\n";
  out += "Annotate mentions and zero anaphora. Do not modify the input text.\n";
  out += "\nALLOWED TAGS\n";
  out += "- Entities: " + std::string(shapes.entities) + "\n";
  out += "- Zeros: " + std::string(shapes.zeros) + "\n";
  out += "\nPREVIOUS CONTEXT\n";
  out += context.empty() ? std::string("(none)") : std::string(context);
  out += "\n\n";
  out += kInputHeader;
  out += batch;
  out += kOutputHeader;
  return out;
}

std::optional<std::string> prompt_batch(std::string_view prompt) {
  size_t begin = prompt.rfind(std::string("\n") + std::string(kInputHeader));
  if (begin == std::string_view::npos) return std::nullopt;
  begin += 1 + kInputHeader.size();
  size_t end = prompt.rfind(kOutputHeader);
  if (end == std::string_view::npos || end < begin) return std::nullopt;
  return std::string(prompt.substr(begin, end - begin));
}

namespace {

struct Window {
  std::string prompt;
  AnnotatedText context;  // displayed labels
  IdMap map;
};

// Context and prompt of one window over `doc`. With reindexing on, context
// labels become 0..N-1; otherwise chains show their numeric id.
Window make_window(const Document &doc, SentenceRange range,
                   const PipelineConfig &cfg, const AnnotatedText &batch) {
  Window w;
  AnnotatedText context = build_context(doc, range.first, cfg);
  if (cfg.reindex) {
    Localized local = localize(context);
    w.context = std::move(local.text);
    w.map = std::move(local.map);
  } else {
    relabel(context, identity_labels());
    w.context = std::move(context);
  }
  w.prompt = build_prompt(render(w.context), render_plain(batch), cfg.format);
  return w;
}

}  // namespace

std::vector<TrainingPair> export_training_pairs(const Document &doc,
                                                const PipelineConfig &cfg) {
  cfg.validate();
  std::vector<TrainingPair> out;
  auto batches = partition_batches(doc.sentences.size(), cfg.sentences_per_batch);
  for (size_t w = 0; w < batches.size(); ++w) {
    AnnotatedText batch =
        encode(doc, batches[w], cfg.format, chain_ids_as_labels()).text;
    Window window = make_window(doc, batches[w], cfg, batch);
    if (cfg.reindex) {
      // Chains not in the visible context continue from N.
      long next = static_cast<long>(window.map.n_context);
      for (TagEvent &e : batch.events) {
        if (e.kind == EventKind::Close) continue;
        auto it = window.map.global_to_local.find(e.chain);
        if (it == window.map.global_to_local.end()) {
          window.map.bind(next, e.chain);
          e.chain = std::to_string(next++);
        } else {
          e.chain = std::to_string(it->second);
        }
      }
    } else {
      relabel(batch, identity_labels());
    }
    out.push_back({doc.doc_id, w, window.prompt, render(batch)});
  }
  return out;
}

std::vector<TrainingPair> export_training_pairs(const Corpus &corpus,
                                                const PipelineConfig &cfg) {
  std::vector<TrainingPair> out;
  for (const Dataset &d : corpus.datasets) {
    for (const Document &doc : d.documents) {
      auto pairs = export_training_pairs(doc, cfg);
      out.insert(out.end(), std::make_move_iterator(pairs.begin()),
                 std::make_move_iterator(pairs.end()));
    }
  }
  return out;
}

std::string training_pair_json(const TrainingPair &pair) {
  nlohmann::ordered_json j;
  j["doc_id"] = pair.doc_id;
  j["window_index"] = pair.window_index;
  j["prompt"] = pair.prompt;
  j["completion"] = pair.completion;
  return j.dump();
}

OracleBackend::OracleBackend(const Corpus &gold, const PipelineConfig &cfg) {
  for (TrainingPair &p : export_training_pairs(gold, cfg)) {
    completions_[{p.doc_id, p.window_index}] = std::move(p.completion);
  }
}

OracleBackend::OracleBackend(std::span<const Document> gold,
                             const PipelineConfig &cfg) {
  for (const Document &doc : gold) {
    for (TrainingPair &p : export_training_pairs(doc, cfg)) {
      completions_[{p.doc_id, p.window_index}] = std::move(p.completion);
    }
  }
}

std::string OracleBackend::generate(const GenerationRequest &request) {
  auto it = completions_.find({request.doc_id, request.window_index});
  if (it == completions_.end()) {
    throw BackendError("oracle has no window " +
                       std::to_string(request.window_index) + " for document '" +
                       request.doc_id + "'");
  }
  return it->second;
}

bool AnnotationResult::complete() const {
  return std::all_of(windows.begin(), windows.end(),
                     [](const WindowReport &w) { return w.annotated; });
}

namespace {

// Labels are read as document-wide chain numbers: "7" is chain e7.
AnnotatedText absolute_labels(const AnnotatedText &text,
                              Diagnostics *diagnostics) {
  IdMap map;
  for (const TagEvent &e : text.events) {
    if (e.kind == EventKind::Close) continue;
    if (auto n = parse_uint(e.chain)) map.bind(*n, "e" + std::to_string(*n));
  }
  ChainIdAllocator unused;
  return globalize(text, map, unused, diagnostics);
}

}  // namespace

AnnotationResult annotate_document(const Document &doc, ModelBackend &backend,
                                   const PipelineConfig &cfg) {
  cfg.validate();
  AnnotationResult result;
  Document &pred = result.document;
  pred = doc;
  pred.chains.clear();
  ChainIdAllocator allocator;

  EncodeOptions options;
  options.skip_unlabelled = true;
  auto no_labels = [](const std::string &) -> std::optional<std::string> {
    return std::nullopt;
  };
  CleanOptions clean_options;
  clean_options.fuzzy_threshold = cfg.fuzzy_threshold;

  auto batches = partition_batches(pred.sentences.size(), cfg.sentences_per_batch);
  for (size_t w = 0; w < batches.size(); ++w) {
    WindowReport report;
    report.index = w;
    report.batch = batches[w];
    EncodedSlice batch = encode(pred, batches[w], cfg.format, no_labels, options);
    Window window = make_window(pred, batches[w], cfg, batch.text);

    std::optional<std::string> completion;
    for (size_t attempt = 0; attempt <= cfg.retries && !completion; ++attempt) {
      ++report.attempts;
      try {
        completion = backend.generate({window.prompt, doc.doc_id, w});
      } catch (const std::exception &e) {
        report.error = e.what();
      }
    }
    if (!completion) {
      result.windows.push_back(std::move(report));
      continue;
    }
    report.annotated = true;
    report.error.clear();

    AnnotatedText projected;
    if (cfg.on_the_fly_clean) {
      CleanResult cleaned = clean_decoded(
          batch.text, decode(*completion, cfg.format), clean_options);
      projected = std::move(cleaned.text);
      report.diagnostics = std::move(cleaned.diagnostics);
    } else {
      // Word i of the output is taken to be word i of the batch.
      DecodeResult decoded = decode(*completion, cfg.format);
      projected = std::move(decoded.text);
      report.diagnostics = std::move(decoded.diagnostics);
    }
    std::vector<std::optional<WordRef>> words(projected.tokens.size());
    for (size_t t = 0; t < words.size() && t < batch.words.size(); ++t) {
      words[t] = batch.words[t];
    }

    AnnotatedText global =
        cfg.reindex
            ? globalize(projected, window.map, allocator, &report.diagnostics)
            : absolute_labels(projected, &report.diagnostics);
    std::vector<Mention> mentions =
        events_to_mentions(global, pred, words, &report.diagnostics);
    report.mentions = mentions.size();
    for (Mention &m : mentions) pred.add_mention(std::move(m));
    pred.normalize();
    result.windows.push_back(std::move(report));
  }
  return result;
}

namespace {

class SerializedBackend : public ModelBackend {
 public:
  explicit SerializedBackend(ModelBackend &inner) : inner_(inner) {}
  BackendInfo info() const override { return inner_.info(); }
  std::string generate(const GenerationRequest &request) override {
    std::lock_guard<std::mutex> lock(mutex_);
    return inner_.generate(request);
  }

 private:
  ModelBackend &inner_;
  std::mutex mutex_;
};

}  // namespace

std::vector<AnnotationResult> annotate_documents(
    std::span<const Document> docs, ModelBackend &backend,
    const PipelineConfig &cfg, size_t jobs) {
  std::vector<AnnotationResult> results(docs.size());
  SerializedBackend serialized(backend);
  ModelBackend &target =
      backend.info().single_flight ? static_cast<ModelBackend &>(serialized)
                                   : backend;
  jobs = std::max<size_t>(1, std::min(jobs, docs.size()));
  if (jobs == 1) {
    for (size_t i = 0; i < docs.size(); ++i) {
      results[i] = annotate_document(docs[i], target, cfg);
    }
    return results;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (size_t t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (size_t i = next++; i < docs.size(); i = next++) {
        try {
          results[i] = annotate_document(docs[i], target, cfg);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread &w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace corefkit
