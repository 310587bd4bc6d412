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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "corefkit/cli.h"
#include "corefkit/metrics.h"
#include "corefkit/text_util.h"
#include "doctest.h"
#include "json.hpp"
#include "support/random_doc.h"
#include "support/test_util.h"

using namespace corefkit;
using corefkit::testing::data_path;
using corefkit::testing::read_file;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string &stdin_text = "") {
  args.insert(args.begin(), "corefkit");
  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("corefkit_cli_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string &name, const std::string &text = "") {
    std::string p = (path_ / name).string();
    if (!text.empty()) std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  fs::path path_;
};

std::string lison() { return data_path("lison.conllu"); }

}  // namespace

TEST_CASE("convert writes each format with a document header") {
  Run r = run({"convert", lison(), "--format", "crac", "--join"});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "# newdoc id = lison\n"
        "When Lison|[e1] visits her|[e1],[e2 sister|e2] , brings ##|[e1] "
        "flowers.\n");
  r = run({"convert", "-", "--join"}, read_file(lison()));
  CHECK(r.out ==
        "# newdoc id = lison\n"
        "When Lison <ent1> visits her <ent1> sister <ent2> , brings <zero1> "
        "flowers.\n");
}

TEST_CASE("convert then decode restores the chains in span formats") {
  TempDir tmp;
  Document gold = corefkit::testing::lison_document();
  for (const char *format : {"crac", "explicit", "minimal", "headword"}) {
    CAPTURE(format);
    Run conv = run({"convert", lison(), "--format", format});
    REQUIRE(conv.code == kExitOk);
    std::string text = tmp.file("t.txt", conv.out);
    Run dec = run({"decode", "--reference", lison(), text, "--format", format});
    REQUIRE(dec.code == kExitOk);
    ParseResult back = parse_conllu(dec.out);
    REQUIRE(back.documents.size() == 1);
    CHECK(score(gold, back.documents[0]).conll_f1 == doctest::Approx(100));
    if (std::string(format) != "headword") {
      for (const auto &[id, chain] : gold.chains) {
        REQUIRE(back.documents[0].chains.count(id) == 1);
        const auto &m = back.documents[0].chains.at(id).mentions;
        REQUIRE(m.size() == chain.mentions.size());
        for (size_t i = 0; i < m.size(); ++i) {
          CHECK(m[i].fragments == chain.mentions[i].fragments);
          CHECK(m[i].head == chain.mentions[i].head);
        }
      }
    }
  }
}

TEST_CASE("convert and decode keep several documents apart") {
  TempDir tmp;
  std::mt19937_64 rng(17);
  std::vector<Document> docs;
  for (int i = 0; i < 5; ++i) {
    docs.push_back(corefkit::testing::random_document(
        rng, {}, "d" + std::to_string(i)));
  }
  std::string ref = tmp.file("ref.conllu",
                             serialize_conllu(std::span<const Document>(docs)));
  Run conv = run({"convert", ref, "--format", "minimal"});
  REQUIRE(conv.code == kExitOk);
  Run dec = run({"decode", "--reference", ref, "-", "--format", "minimal"},
                conv.out);
  REQUIRE(dec.code == kExitOk);
  ParseResult back = parse_conllu(dec.out);
  REQUIRE(back.documents.size() == docs.size());
  for (size_t i = 0; i < docs.size(); ++i) {
    CHECK(back.documents[i].doc_id == docs[i].doc_id);
    CHECK(score(docs[i], back.documents[i]).conll_f1 == doctest::Approx(100));
  }
}

TEST_CASE("clean projects model output onto the input words") {
  TempDir tmp;
  std::string input = tmp.file("in.txt", "the cat sat\n");
  std::string output = tmp.file("out.txt", "the catt <ent1> sat sat\n");
  std::string diags = tmp.file("d.jsonl");
  Run r = run({"clean", "--input", input, "--output", output, "--diagnostics",
               diags});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "the cat <ent1> sat\n");
  r = run({"clean", "--input", lison(), "--output", output});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("When Lison visits") == 0);
}

TEST_CASE("job config rejects unknown keys and bad values") {
  CHECK_THROWS_WITH_AS(parse_job_config(R"({"bogus": 1})"),
                       doctest::Contains("bogus"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_job_config(R"({"backend": {"colour": 1}})"),
                       doctest::Contains("colour"), std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"sentences_per_batch": "x"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"sentences_per_batch": 0})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config("[1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"backend": {"kind": "http"}})"),
                  std::invalid_argument);

  JobConfig job = parse_job_config(
      R"({"context_budget": 100, "preset": "large-infer", "format": "crac",
          "jobs": 3, "backend": {"kind": "replay", "replay_path": "r"}})");
  CHECK(job.pipeline.sentences_per_batch == 6);
  CHECK(job.pipeline.context_budget == 100);
  CHECK(job.pipeline.format == Format::Crac);
  CHECK(job.jobs == 3);
  CHECK(job.backend.kind == "replay");

  TempDir tmp;
  std::string cfg = tmp.file("job.json", R"({"bogus": 1})");
  Run r = run({"annotate", "--config", cfg, "--in", lison()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("bogus") != std::string::npos);
}

TEST_CASE("parse errors name file and line and exit 2") {
  TempDir tmp;
  std::string bad = tmp.file("bad.conllu", "# sent_id = 1\n1\tx\n");
  Run r = run({"evaluate", "--gold", bad, "--pred", bad});
  CHECK(r.code == kExitData);
  CHECK(r.err.find(bad + ":2:") != std::string::npos);
  r = run({"convert", tmp.file("missing.conllu")});
  CHECK(r.code == kExitData);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"convert", lison(), "--format", "yaml"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("evaluate reports per dataset and the macro average") {
  Run r = run({"evaluate", "--gold", lison(), "--pred", lison()});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["datasets"]["lison"]["conll_f1"].get<double>() == 100.0);
  CHECK(j["datasets"]["lison"]["muc"]["f1"].get<double>() == 1.0);
  CHECK(j["macro_average"].get<double>() == 100.0);

  Run t = run({"evaluate", "--gold", lison(), "--pred", lison(), "--table"});
  CHECK(t.out.find("100.00") != std::string::npos);
}

TEST_CASE("stats reports density and antecedent coverage") {
  TempDir tmp;
  std::string csv = tmp.file("cdf.csv");
  Run r = run({"stats", "--gold", lison(), "--budget", "2", "--cdf-csv", csv});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["density"]["lison"]["gold_per_100"].get<double>() ==
        doctest::Approx(400.0 / 9));
  CHECK(j["antecedents"]["total"].get<size_t>() == 2);
  CHECK(j["antecedents"]["coverage"]["2"].get<double>() == 0.5);
  CHECK(read_file(csv) == "distance,cumulative\n2,0.5\n3,1\n");

  r = run({"stats", "--gold", lison(), "--no-singletons"});
  CHECK(nlohmann::json::parse(r.out)["density"]["lison"]["gold_per_100"]
            .get<double>() == doctest::Approx(300.0 / 9));
}

TEST_CASE("annotate with the oracle backend reproduces the gold chains") {
  TempDir tmp;
  std::mt19937_64 rng(5);
  std::vector<Document> docs;
  for (int i = 0; i < 4; ++i) {
    docs.push_back(corefkit::testing::random_document(
        rng, {}, "doc" + std::to_string(i)));
  }
  std::string gold = tmp.file("gold.conllu",
                              serialize_conllu(std::span<const Document>(docs)));
  for (const char *format : {"crac", "minimal"}) {
    CAPTURE(format);
    std::string cfg = tmp.file(
        "job.json", std::string(R"({"preset": "large-infer", "format": ")") +
                        format + R"("})");
    std::string pred = tmp.file("pred.conllu");
    Run r = run({"annotate", "--config", cfg, "--in", gold, "--out", pred,
                 "--jobs", "2"});
    REQUIRE(r.code == kExitOk);
    Run e = run({"evaluate", "--gold", gold, "--pred", pred});
    CHECK(nlohmann::json::parse(e.out)["macro_average"].get<double>() ==
          doctest::Approx(100));
  }
}

TEST_CASE("replayed annotation is byte-identical across runs") {
  TempDir tmp;
  std::string train = tmp.file("train.jsonl");
  Run ex = run({"export-train", "--in", lison(), "--out", train, "--preset",
                "small"});
  REQUIRE(ex.code == kExitOk);
  std::string exported = read_file(train);
  std::string replay;
  for (std::string_view line : corefkit::split(exported, '\n')) {
    if (line.empty()) continue;
    replay += std::string(line) + "\n";
  }
  std::string replay_path = tmp.file("replay.jsonl", replay);
  std::string cfg = tmp.file(
      "job.json", R"({"backend": {"kind": "replay", "replay_path": ")" +
                      replay_path + R"("}})");
  Run a = run({"annotate", "--config", cfg, "--in", lison()});
  Run b = run({"annotate", "--config", cfg, "--in", lison(), "--jobs", "4"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("annotate exits 3 when a window stays unannotated") {
  TempDir tmp;
  std::string replay = tmp.file("empty.jsonl", "\n");
  std::string cfg = tmp.file(
      "job.json", R"({"retries": 0, "backend": {"kind": "replay", )"
                  R"("replay_path": ")" + replay + R"("}})");
  Run r = run({"annotate", "--config", cfg, "--in", lison()});
  CHECK(r.code == kExitBackend);
  // Partial output is still written.
  CHECK(parse_conllu(r.out).documents.size() == 1);
}
