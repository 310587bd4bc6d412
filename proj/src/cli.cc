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

#include "corefkit/cli.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "corefkit/align.h"
#include "corefkit/conllu.h"
#include "corefkit/formats.h"
#include "corefkit/metrics.h"
#include "corefkit/text_util.h"
#include "json.hpp"

namespace corefkit {
namespace {

using nlohmann::ordered_json;

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string &path, std::istream &in) {
  std::stringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot read " + path);
  ss << file.rdbuf();
  return ss.str();
}

void write_text(const std::string &path, const std::string &text,
                std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw DataError("cannot write " + path);
}

std::vector<Document> load_documents(const std::string &path, std::istream &in,
                                     std::ostream &err) {
  ParseResult parsed;
  try {
    parsed = parse_conllu(read_text(path, in));
  } catch (const ParseError &e) {
    std::string message = e.what();
    if (e.line() > 0) {
      std::string prefix = "line " + std::to_string(e.line()) + ": ";
      message = path + ":" + std::to_string(e.line()) + ": " +
                message.substr(prefix.size());
    } else {
      message = path + ": " + message;
    }
    throw DataError(message);
  }
  for (const std::string &w : parsed.warnings) {
    err << path << ": warning: " << w << "\n";
  }
  return std::move(parsed.documents);
}

Corpus load_corpus(const std::vector<std::string> &paths, std::istream &in,
                   std::ostream &err) {
  Corpus corpus;
  for (const std::string &path : paths) {
    std::string id = path == "-" ? "stdin" : dataset_id_from_path(path);
    try {
      corpus.add({id, load_documents(path, in, err)});
    } catch (const std::invalid_argument &e) {
      throw DataError(e.what());
    }
  }
  return corpus;
}

// Copies that can be written inline: crossing mentions are dropped.
std::vector<Document> nestable(const std::vector<Document> &docs,
                               std::ostream &err) {
  std::vector<Document> out = docs;
  for (Document &d : out) {
    if (size_t n = drop_crossing_mentions(d)) {
      err << "warning: document '" << d.doc_id << "': dropped " << n
          << " crossing mention(s)\n";
    }
  }
  return out;
}

Format format_option(const std::string &name) {
  if (name.empty()) return Format::HeadwordXml;
  auto f = parse_format(name);
  if (!f) throw std::invalid_argument("unknown format '" + name + "'");
  return *f;
}

ordered_json diagnostic_json(const Diagnostic &d) {
  ordered_json j;
  j["code"] = d.code;
  j["message"] = d.message;
  j["position"] = d.position ? ordered_json(*d.position) : ordered_json(nullptr);
  return j;
}

std::string jsonl(const std::vector<ordered_json> &rows) {
  std::string out;
  for (const ordered_json &r : rows) out += r.dump() + "\n";
  return out;
}

std::optional<std::string> no_labels(const std::string &) {
  return std::nullopt;
}

// "7" names chain e7; anything else is used as is.
std::string chain_for_label(const std::string &label) {
  return parse_uint(label) ? "e" + label : label;
}

// Reads the documents of an annotated text into copies of `reference`.
Document decode_document(const Document &reference, std::string_view text,
                         Format format, Diagnostics *diagnostics) {
  Document doc = reference;
  doc.chains.clear();
  EncodeOptions options;
  options.skip_unlabelled = true;
  EncodedSlice plain =
      encode(doc, {0, doc.sentences.size()}, format, no_labels, options);
  CleanResult cleaned = clean_decoded(plain.text, decode(text, format));
  diagnostics->insert(diagnostics->end(), cleaned.diagnostics.begin(),
                      cleaned.diagnostics.end());
  for (TagEvent &e : cleaned.text.events) {
    if (e.kind != EventKind::Close) e.chain = chain_for_label(e.chain);
  }
  std::vector<std::optional<WordRef>> words(plain.words.begin(),
                                            plain.words.end());
  for (Mention &m : events_to_mentions(cleaned.text, doc, words, diagnostics)) {
    doc.add_mention(std::move(m));
  }
  doc.normalize();
  return doc;
}

constexpr std::string_view kDocHeader = "# newdoc id = ";

// Splits converted text into (doc id, body) blocks.
std::vector<std::pair<std::string, std::string>> split_blocks(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> blocks;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (starts_with(line, kDocHeader)) {
      blocks.push_back({std::string(trim(line.substr(kDocHeader.size()))), ""});
      continue;
    }
    if (blocks.empty()) blocks.push_back({"", ""});
    blocks.back().second += std::string(line) + "\n";
  }
  return blocks;
}

ordered_json prf_json(const PRF &p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

std::string fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string padded(const std::string &text, size_t width) {
  return text.size() >= width ? text + " "
                              : text + std::string(width - text.size(), ' ');
}

// Pairs prediction files with gold files: by dataset id, or the only file
// with the only file.
Corpus align_predictions(const Corpus &gold, Corpus pred) {
  if (gold.datasets.size() == 1 && pred.datasets.size() == 1) {
    pred.datasets[0].dataset_id = gold.datasets[0].dataset_id;
  }
  return pred;
}

void apply_pipeline_key(PipelineConfig &cfg, const std::string &key,
                        const nlohmann::json &value) {
  if (key == "sentences_per_batch") {
    cfg.sentences_per_batch = value.get<size_t>();
  } else if (key == "context_budget") {
    cfg.context_budget = value.get<size_t>();
  } else if (key == "format") {
    cfg.format = format_option(value.get<std::string>());
  } else if (key == "fuzzy_threshold") {
    cfg.fuzzy_threshold = value.get<double>();
  } else if (key == "on_the_fly_clean") {
    cfg.on_the_fly_clean = value.get<bool>();
  } else if (key == "reindex") {
    cfg.reindex = value.get<bool>();
  } else if (key == "retries") {
    cfg.retries = value.get<size_t>();
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void apply_backend_key(BackendConfig &b, const std::string &key,
                       const nlohmann::json &value) {
  if (key == "kind") {
    b.kind = value.get<std::string>();
    if (b.kind != "oracle" && b.kind != "replay" && b.kind != "echo" &&
        b.kind != "http") {
      throw std::invalid_argument("unknown backend kind '" + b.kind + "'");
    }
  } else if (key == "replay_path") {
    b.replay_path = value.get<std::string>();
  } else if (key == "endpoint") {
    b.http.endpoint = value.get<std::string>();
  } else if (key == "model") {
    b.http.model = value.get<std::string>();
  } else if (key == "token_env") {
    b.http.token_env = value.get<std::string>();
  } else if (key == "max_tokens") {
    b.http.max_tokens = value.get<size_t>();
  } else if (key == "max_context") {
    b.http.max_context = value.get<size_t>();
  } else if (key == "timeout_seconds") {
    b.http.timeout_seconds = value.get<int>();
  } else if (key == "single_flight") {
    b.http.single_flight = value.get<bool>();
  } else {
    throw std::invalid_argument("unknown backend key '" + key + "'");
  }
}

std::unique_ptr<ModelBackend> make_backend(const JobConfig &job,
                                           std::span<const Document> gold,
                                           std::istream &in) {
  const BackendConfig &b = job.backend;
  if (b.kind == "oracle") {
    return std::make_unique<OracleBackend>(gold, job.pipeline);
  }
  if (b.kind == "echo") return std::make_unique<EchoBackend>();
  if (b.kind == "replay") {
    if (b.replay_path.empty()) {
      throw std::invalid_argument("replay backend needs replay_path");
    }
    try {
      return std::make_unique<ReplayBackend>(
          ReplayBackend::from_jsonl(read_text(b.replay_path, in)));
    } catch (const std::invalid_argument &e) {
      throw DataError(b.replay_path + ": " + e.what());
    }
  }
  return std::make_unique<HttpBackend>(b.http);
}

struct Options {
  std::string input = "-";
  std::string output;
  std::string format;  // empty: headword, or the job config's format
  std::string reference;
  std::string model_output;
  std::string diagnostics;
  std::string config;
  std::string preset;
  std::string cdf_csv;
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  std::vector<std::string> inputs;
  std::vector<size_t> budgets = {250, 3072};
  size_t jobs = 0;
  bool join = false;
  bool table = false;
  bool no_singletons = false;
};

JobConfig job_from_options(const Options &o, std::istream &in) {
  JobConfig job;
  if (!o.config.empty()) job = parse_job_config(read_text(o.config, in));
  if (!o.preset.empty()) {
    auto preset = PipelineConfig::preset(o.preset);
    if (!preset) throw std::invalid_argument("unknown preset '" + o.preset + "'");
    job.pipeline.sentences_per_batch = preset->sentences_per_batch;
    job.pipeline.context_budget = preset->context_budget;
  }
  if (o.jobs > 0) job.jobs = o.jobs;
  job.pipeline.validate();
  return job;
}

int cmd_convert(const Options &o, std::istream &in, std::ostream &out,
                std::ostream &err) {
  Format format = format_option(o.format);
  std::string text;
  for (const Document &doc : nestable(load_documents(o.input, in, err), err)) {
    EncodeOptions options;
    options.join_space_after = o.join;
    AnnotatedText t = encode(doc, {0, doc.sentences.size()}, format,
                             identity_labels(), options)
                          .text;
    text += std::string(kDocHeader) + doc.doc_id + "\n" + render(t) + "\n";
  }
  write_text(o.output, text, out);
  return kExitOk;
}

int cmd_decode(const Options &o, std::istream &in, std::ostream &out,
               std::ostream &err) {
  Format format = format_option(o.format);
  std::vector<Document> refs = load_documents(o.reference, in, err);
  auto blocks = split_blocks(read_text(o.input, in));
  std::map<std::string, std::string> by_id;
  bool headed = !blocks.empty() && !blocks[0].first.empty();
  if (!headed && !blocks.empty() && refs.size() != 1) {
    throw DataError(o.input + ": text without '# newdoc id' lines needs a " +
                    "single reference document");
  }
  for (auto &[id, body] : blocks) by_id[id] += body;
  std::vector<Document> docs;
  std::vector<ordered_json> diag_rows;
  for (const Document &ref : refs) {
    auto it = by_id.find(headed ? ref.doc_id : "");
    if (it == by_id.end()) {
      err << "warning: no annotated text for document '" << ref.doc_id
          << "'\n";
      Document empty = ref;
      empty.chains.clear();
      docs.push_back(std::move(empty));
      continue;
    }
    Diagnostics diags;
    docs.push_back(decode_document(ref, it->second, format, &diags));
    for (const Diagnostic &d : diags) {
      ordered_json row = {{"doc_id", ref.doc_id}};
      row.update(diagnostic_json(d));
      diag_rows.push_back(std::move(row));
    }
  }
  write_text(o.output, serialize_conllu(std::span<const Document>(docs)), out);
  if (!o.diagnostics.empty()) write_text(o.diagnostics, jsonl(diag_rows), out);
  return kExitOk;
}

int cmd_clean(const Options &o, std::istream &in, std::ostream &out,
              std::ostream &err) {
  Format format = format_option(o.format);
  std::string input_text;
  if (o.input.size() > 7 && o.input.substr(o.input.size() - 7) == ".conllu") {
    EncodeOptions options;
    options.skip_unlabelled = true;
    for (const Document &doc : load_documents(o.input, in, err)) {
      AnnotatedText t =
          encode(doc, {0, doc.sentences.size()}, format, no_labels, options)
              .text;
      input_text += render_plain(t) + "\n";
    }
  } else {
    input_text = read_text(o.input, in);
  }
  CleanResult r = clean(input_text, read_text(o.model_output, in), format);
  write_text(o.output, render(r.text) + "\n", out);
  if (!o.diagnostics.empty()) {
    std::vector<ordered_json> rows;
    for (const Diagnostic &d : r.diagnostics) rows.push_back(diagnostic_json(d));
    write_text(o.diagnostics, jsonl(rows), out);
  }
  return kExitOk;
}

int cmd_annotate(const Options &o, std::istream &in, std::ostream &out,
                 std::ostream &err) {
  JobConfig job = job_from_options(o, in);
  if (!o.format.empty()) job.pipeline.format = format_option(o.format);
  std::string input = o.input != "-" ? o.input
                      : job.input.empty() ? "-" : job.input;
  std::string output = !o.output.empty() ? o.output : job.output;
  std::vector<Document> docs = nestable(load_documents(input, in, err), err);
  std::unique_ptr<ModelBackend> backend = make_backend(job, docs, in);
  std::vector<AnnotationResult> results =
      annotate_documents(docs, *backend, job.pipeline, job.jobs);

  std::vector<Document> predicted;
  std::vector<ordered_json> rows;
  size_t failed = 0;
  for (const AnnotationResult &r : results) {
    predicted.push_back(r.document);
    for (const WindowReport &w : r.windows) {
      if (!w.annotated) {
        ++failed;
        rows.push_back({{"doc_id", r.document.doc_id},
                        {"window", w.index},
                        {"code", "window-failed"},
                        {"message", w.error},
                        {"position", nullptr}});
      }
      for (const Diagnostic &d : w.diagnostics) {
        ordered_json row = {{"doc_id", r.document.doc_id}, {"window", w.index}};
        row.update(diagnostic_json(d));
        rows.push_back(std::move(row));
      }
    }
  }
  write_text(output, serialize_conllu(std::span<const Document>(predicted)),
             out);
  if (!o.diagnostics.empty()) write_text(o.diagnostics, jsonl(rows), out);
  if (failed > 0) {
    err << "error: " << failed << " window(s) could not be annotated\n";
    return kExitBackend;
  }
  return kExitOk;
}

int cmd_evaluate(const Options &o, std::istream &in, std::ostream &out,
                 std::ostream &err) {
  Corpus gold = load_corpus(o.gold, in, err);
  Corpus pred = align_predictions(gold, load_corpus(o.pred, in, err));
  ScoreReport report = conll_f1(gold, pred);
  for (const std::string &w : report.warnings) err << "warning: " << w << "\n";
  std::string text;
  if (o.table) {
    text += padded("dataset", 24) + padded("MUC", 8) + padded("B3", 8) +
            padded("CEAFe", 8) + "CoNLL\n";
    for (const auto &[id, s] : report.datasets) {
      text += padded(id, 24) + padded(fixed(100 * s.muc.f1), 8) +
              padded(fixed(100 * s.b3.f1), 8) +
              padded(fixed(100 * s.ceaf_e.f1), 8) + fixed(s.conll_f1) + "\n";
    }
    text += padded("macro average", 48) + fixed(report.macro_average) + "\n";
  } else {
    ordered_json j;
    j["datasets"] = ordered_json::object();
    for (const auto &[id, s] : report.datasets) {
      j["datasets"][id] = {{"muc", prf_json(s.muc)},
                           {"b3", prf_json(s.b3)},
                           {"ceaf_e", prf_json(s.ceaf_e)},
                           {"conll_f1", s.conll_f1}};
    }
    j["macro_average"] = report.macro_average;
    j["warnings"] = report.warnings;
    text = j.dump(2) + "\n";
  }
  write_text(o.output, text, out);
  return kExitOk;
}

int cmd_stats(const Options &o, std::istream &in, std::ostream &out,
              std::ostream &err) {
  Corpus gold = load_corpus(o.gold, in, err);
  std::optional<Corpus> pred;
  if (!o.pred.empty()) pred = align_predictions(gold, load_corpus(o.pred, in, err));
  DensityOptions options;
  options.include_singletons = !o.no_singletons;
  DensityStats density_stats =
      density(gold, pred ? &*pred : nullptr, options);
  DistanceCdf cdf = antecedent_cdf(gold);

  std::string text;
  if (o.table) {
    text += padded("dataset", 24) + padded("gold/100", 10) +
            (pred ? padded("pred/100", 10) + "rel.error" : "") + "\n";
    for (const auto &[id, row] : density_stats.datasets) {
      text += padded(id, 24) + padded(fixed(row.gold_per_100), 10);
      if (pred) {
        text += padded(fixed(row.pred_per_100), 10) +
                fixed(100 * row.relative_error) + "%";
      }
      text += "\n";
    }
    for (size_t b : o.budgets) {
      text += "antecedent coverage within " + std::to_string(b) +
              " words: " + fixed(100 * cdf.coverage(b)) + "%\n";
    }
  } else {
    ordered_json j;
    j["density"] = ordered_json::object();
    for (const auto &[id, row] : density_stats.datasets) {
      ordered_json r = {{"gold_per_100", row.gold_per_100},
                        {"gold_mentions", row.gold_mentions},
                        {"gold_tokens", row.gold_tokens}};
      if (pred) {
        r["pred_per_100"] = row.pred_per_100;
        r["pred_mentions"] = row.pred_mentions;
        r["relative_error"] = row.relative_error;
      }
      j["density"][id] = std::move(r);
    }
    ordered_json coverage = ordered_json::object();
    for (size_t b : o.budgets) coverage[std::to_string(b)] = cdf.coverage(b);
    j["antecedents"] = {{"distance_unit", "surface words between heads"},
                        {"total", cdf.total},
                        {"coverage", coverage}};
    text = j.dump(2) + "\n";
  }
  write_text(o.output, text, out);
  if (!o.cdf_csv.empty()) {
    std::string csv = "distance,cumulative\n";
    for (const auto &[d, share] : cdf.bins) {
      std::ostringstream line;
      line.precision(17);
      line << d << "," << share << "\n";
      csv += line.str();
    }
    write_text(o.cdf_csv, csv, out);
  }
  return kExitOk;
}

int cmd_export_train(const Options &o, std::istream &in, std::ostream &out,
                     std::ostream &err) {
  JobConfig job = job_from_options(o, in);
  if (!o.format.empty()) job.pipeline.format = format_option(o.format);
  std::vector<std::string> inputs = o.inputs;
  if (inputs.empty()) inputs.push_back(job.input.empty() ? "-" : job.input);
  std::string text;
  for (const std::string &path : inputs) {
    for (const Document &doc : nestable(load_documents(path, in, err), err)) {
      for (const TrainingPair &p : export_training_pairs(doc, job.pipeline)) {
        text += training_pair_json(p) + "\n";
      }
    }
  }
  write_text(!o.output.empty() ? o.output : job.output, text, out);
  return kExitOk;
}

}  // namespace

JobConfig parse_job_config(std::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw std::invalid_argument("job config must be a JSON object");
  }
  JobConfig job;
  try {
    if (j.contains("preset")) {
      auto preset = PipelineConfig::preset(j["preset"].get<std::string>());
      if (!preset) throw std::invalid_argument("unknown preset");
      job.pipeline = *preset;
    }
    for (const auto &[key, value] : j.items()) {
      if (key == "preset") continue;
      if (key == "backend") {
        if (!value.is_object()) {
          throw std::invalid_argument("backend must be an object");
        }
        for (const auto &[bkey, bvalue] : value.items()) {
          apply_backend_key(job.backend, bkey, bvalue);
        }
      } else if (key == "input") {
        job.input = value.get<std::string>();
      } else if (key == "output") {
        job.output = value.get<std::string>();
      } else if (key == "jobs") {
        job.jobs = value.get<size_t>();
      } else {
        apply_pipeline_key(job.pipeline, key, value);
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("job config: ") + e.what());
  }
  if (job.backend.kind == "http" && job.backend.http.endpoint.empty()) {
    throw std::invalid_argument("http backend needs an endpoint");
  }
  job.pipeline.validate();
  return job;
}

int run_cli(int argc, const char *const *argv, std::istream &in,
            std::ostream &out, std::ostream &err) {
  CLI::App app{"corefkit: coreference annotation with inline formats"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App *cmd) {
    cmd->add_option("--format", o.format,
                    "crac, explicit, minimal or headword (default)");
  };

  CLI::App *convert = app.add_subcommand("convert", "CoNLL-U to inline text");
  convert->add_option("input,--in", o.input, "CoNLL-U file or -");
  convert->add_option("--out", o.output, "output file (default stdout)");
  convert->add_flag("--join", o.join, "glue SpaceAfter=No tokens");
  add_format(convert);

  CLI::App *decode_cmd =
      app.add_subcommand("decode", "inline text back to CoNLL-U");
  decode_cmd->add_option("--reference", o.reference, "CoNLL-U with the words")
      ->required();
  decode_cmd->add_option("input,--in", o.input, "annotated text or -");
  decode_cmd->add_option("--out", o.output, "output CoNLL-U");
  decode_cmd->add_option("--diagnostics", o.diagnostics, "JSONL file");
  add_format(decode_cmd);

  CLI::App *clean_cmd =
      app.add_subcommand("clean", "project model output onto the input");
  clean_cmd->add_option("--input", o.input, "input text or .conllu")
      ->required();
  clean_cmd->add_option("--output", o.model_output, "model output file")
      ->required();
  clean_cmd->add_option("--out", o.output, "cleaned text (default stdout)");
  clean_cmd->add_option("--diagnostics", o.diagnostics, "JSONL file");
  add_format(clean_cmd);

  CLI::App *annotate = app.add_subcommand("annotate", "run a backend");
  annotate->add_option("--config", o.config, "job JSON file");
  annotate->add_option("--in", o.input, "CoNLL-U input or -");
  annotate->add_option("--out", o.output, "predicted CoNLL-U");
  annotate->add_option("--jobs", o.jobs, "documents in parallel");
  annotate->add_option("--preset", o.preset, "small, large-train, large-infer");
  annotate->add_option("--diagnostics", o.diagnostics, "JSONL file");
  add_format(annotate);

  CLI::App *evaluate = app.add_subcommand("evaluate", "CoNLL F1 scores");
  evaluate->add_option("--gold", o.gold, "gold CoNLL-U files")->required();
  evaluate->add_option("--pred", o.pred, "predicted CoNLL-U files")->required();
  evaluate->add_option("--out", o.output, "report file (default stdout)");
  evaluate->add_flag("--table", o.table, "human-readable table");

  CLI::App *stats = app.add_subcommand("stats", "density and distances");
  stats->add_option("--gold", o.gold, "gold CoNLL-U files")->required();
  stats->add_option("--pred", o.pred, "predicted CoNLL-U files");
  stats->add_option("--out", o.output, "report file (default stdout)");
  stats->add_option("--budget", o.budgets, "coverage budgets in words")
      ->capture_default_str();
  stats->add_option("--cdf-csv", o.cdf_csv, "write the distance CDF here");
  stats->add_flag("--no-singletons", o.no_singletons,
                  "skip singleton chains in densities");
  stats->add_flag("--table", o.table, "human-readable table");

  CLI::App *export_cmd =
      app.add_subcommand("export-train", "prompt/completion pairs");
  export_cmd->add_option("--config", o.config, "job JSON file");
  export_cmd->add_option("--in", o.inputs, "CoNLL-U files");
  export_cmd->add_option("--out", o.output, "JSONL output");
  export_cmd->add_option("--preset", o.preset, "small, large-train, large-infer");
  add_format(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (convert->parsed()) return cmd_convert(o, in, out, err);
    if (decode_cmd->parsed()) return cmd_decode(o, in, out, err);
    if (clean_cmd->parsed()) return cmd_clean(o, in, out, err);
    if (annotate->parsed()) return cmd_annotate(o, in, out, err);
    if (evaluate->parsed()) return cmd_evaluate(o, in, out, err);
    if (stats->parsed()) return cmd_stats(o, in, out, err);
    if (export_cmd->parsed()) return cmd_export_train(o, in, out, err);
  } catch (const DataError &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const EncodeError &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const BackendError &e) {
    err << "error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace corefkit
