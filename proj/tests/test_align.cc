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

#include <algorithm>
#include <functional>
#include <random>

#include "corefkit/align.h"
#include "corefkit/text_util.h"
#include "doctest.h"
#include "support/corrupt.h"
#include "support/random_doc.h"
#include "support/test_util.h"

using namespace corefkit;
using corefkit::testing::corrupt;
using corefkit::testing::chance;
using corefkit::testing::pick;

namespace {

using Words = std::vector<std::string>;

size_t lcs_length(const Words &a, const Words &b) {
  std::vector<std::vector<size_t>> t(a.size() + 1,
                                     std::vector<size_t>(b.size() + 1, 0));
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1
                                     : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

// Plain recursive Levenshtein over bytes; callers pass ASCII.
size_t naive_distance(const std::string &a, const std::string &b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::string ra = a.substr(1), rb = b.substr(1);
  size_t sub = naive_distance(ra, rb) + (a[0] != b[0]);
  return std::min({sub, naive_distance(ra, b) + 1, naive_distance(a, rb) + 1});
}

void check_monotone(const Alignment &al, const Words &in, const Words &out) {
  for (size_t k = 0; k < al.pairs.size(); ++k) {
    const AlignedPair &p = al.pairs[k];
    CHECK(p.input < in.size());
    CHECK(p.output < out.size());
    if (p.kind != MatchKind::Fuzzy) CHECK(in[p.input] == out[p.output]);
    if (k > 0) {
      CHECK(al.pairs[k - 1].input < p.input);
      CHECK(al.pairs[k - 1].output < p.output);
    }
  }
  CHECK(al.pairs.size() + al.unmatched_input.size() == in.size());
  CHECK(al.pairs.size() + al.unmatched_output.size() == out.size());
}

std::string plain(const std::string &annotated, Format fmt) {
  return render_plain(decode(annotated, fmt).text);
}

}  // namespace

TEST_CASE("identical sequences anchor every word") {
  Words w = {"a", "b", "c"};
  Alignment al = anchor_align(w, w);
  REQUIRE(al.pairs.size() == 3);
  for (size_t k = 0; k < 3; ++k) {
    CHECK(al.pairs[k] == AlignedPair{k, k, MatchKind::Anchor});
  }
  CHECK(al.unmatched_input.empty());
  CHECK(al.unmatched_output.empty());
}

TEST_CASE("repeated words become anchors inside gaps") {
  Words w = {"a", "b", "c", "b", "d"};
  Alignment al = anchor_align(w, w);
  CHECK(al.pairs.size() == lcs_length(w, w));
  for (const AlignedPair &p : al.pairs) {
    CHECK(p.kind == MatchKind::Anchor);
    CHECK(p.input == p.output);
  }
}

TEST_CASE("crossing anchors keep one increasing run") {
  Words in = {"a", "x", "b"}, out = {"b", "x", "a"};
  Alignment al = anchor_align(in, out);
  // Brute force over subsets of the three candidate pairs.
  std::vector<AlignedPair> cand = {{0, 2}, {1, 1}, {2, 0}};
  size_t best = 0;
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<AlignedPair> sub;
    for (int k = 0; k < 3; ++k) {
      if (mask & (1 << k)) sub.push_back(cand[k]);
    }
    bool inc = true;
    for (size_t k = 1; k < sub.size(); ++k) {
      inc = inc && sub[k - 1].input < sub[k].input;
    }
    if (inc) best = std::max(best, sub.size());
  }
  CHECK(al.pairs.size() == best);
  check_monotone(al, in, out);
}

TEST_CASE("disjoint vocabularies give an empty alignment") {
  Words in = {"a", "b"}, out = {"c", "d", "e"};
  Alignment al = anchor_align(in, out);
  CHECK(al.pairs.empty());
  CHECK(al.unmatched_input.size() == 2);
  CHECK(al.unmatched_output.size() == 3);
}

TEST_CASE("longest_increasing matches a quadratic oracle") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 500; ++round) {
    std::vector<size_t> v(pick(rng, 0, 14));
    for (size_t &x : v) x = pick(rng, 0, 9);
    std::vector<size_t> best(v.size(), 1);
    size_t want = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (v[j] < v[i]) best[i] = std::max(best[i], best[j] + 1);
      }
      want = std::max(want, best[i]);
    }
    std::vector<size_t> got = longest_increasing(v);
    CHECK(got.size() == want);
    for (size_t k = 1; k < got.size(); ++k) {
      CHECK(got[k - 1] < got[k]);
      CHECK(v[got[k - 1]] < v[got[k]]);
    }
  }
}

TEST_CASE("expansion fills the interior between anchors") {
  Words w = {"w", "x", "x", "z"};
  Alignment al = expand_and_fuzzy(anchor_align(w, w), w, w);
  REQUIRE(al.pairs.size() == 4);
  for (const AlignedPair &p : al.pairs) CHECK(p.kind != MatchKind::Fuzzy);
  CHECK(al.pairs[1].kind == MatchKind::Expanded);
}

TEST_CASE("edit similarity agrees with a recursive oracle") {
  CHECK(edit_distance("colour", "color") == naive_distance("colour", "color"));
  CHECK(similarity("colour", "color") == doctest::Approx(5.0 / 6.0));
  CHECK(similarity("", "") == 1.0);
  CHECK(edit_distance("Léa", "Lea") == 1);
  CHECK(edit_distance("über", "") == 4);
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    std::string a, b;
    for (size_t k = pick(rng, 0, 6); k > 0; --k) a += char('a' + pick(rng, 0, 2));
    for (size_t k = pick(rng, 0, 6); k > 0; --k) b += char('a' + pick(rng, 0, 2));
    CHECK(edit_distance(a, b) == naive_distance(a, b));
  }
}

TEST_CASE("fuzzy pairs accept close spellings only") {
  Words in = {"colour"}, out = {"color"};
  Alignment al = expand_and_fuzzy(anchor_align(in, out), in, out);
  REQUIRE(al.pairs.size() == 1);
  CHECK(al.pairs[0].kind == MatchKind::Fuzzy);
  Words other = {"xyz"};
  CHECK(expand_and_fuzzy(anchor_align(in, other), in, other).pairs.empty());
  CHECK(expand_and_fuzzy(anchor_align(in, out), in, out, 0.9).pairs.empty());
}

TEST_CASE("a duplicated word stays unmatched") {
  Words in = {"a", "b", "c"}, out = {"a", "b", "b", "c"};
  Alignment al = expand_and_fuzzy(anchor_align(in, out), in, out);
  CHECK(al.pairs == std::vector<AlignedPair>{{0, 0, MatchKind::Anchor},
                                             {1, 1, MatchKind::Expanded},
                                             {3, 2, MatchKind::Anchor}});
  CHECK(al.unmatched_output == std::vector<size_t>{2});
  CHECK(lcs_length(in, out) == al.pairs.size());
}

TEST_CASE("clean keeps correct output verbatim") {
  std::string out = "When Lison <ent1> visits her <ent1> sister <ent2> , "
                    "brings <zero1> flowers.";
  CleanResult r = clean(plain(out, Format::HeadwordXml), out,
                        Format::HeadwordXml);
  CHECK(render(r.text) == out);
  CHECK(r.diagnostics.empty());
}

TEST_CASE("clean drops the tags of a looping output") {
  CleanResult r = clean("a b", "a <ent1> b a <ent1> b a b",
                        Format::HeadwordXml);
  CHECK(r.text.tokens == Words{"a", "b"});
  CHECK(r.text.events ==
        std::vector<TagEvent>{{EventKind::Head, "1", 0, Side::After}});
  CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("clean moves a tag from a misspelled word to the input word") {
  CleanResult r = clean("When Lison visits", "When Lisonn <ent1> visits",
                        Format::HeadwordXml);
  CHECK(render(r.text) == "When Lison <ent1> visits");
}

TEST_CASE("clean re-anchors a tag on an inserted word") {
  CleanResult r = clean("a b c", "a <ent0> b zzz <ent1> c",
                        Format::HeadwordXml);
  CHECK(render(r.text) == "a <ent0> b <ent1> c");
  CleanResult open = clean("a b c", "a zzz <ent0> b </ent> c",
                           Format::MinimalXml);
  CHECK(render(open.text) == "a <ent0> b </ent> c");
}

TEST_CASE("property: clean returns the input words for any output") {
  std::mt19937_64 rng(21);
  const Format formats[] = {Format::Crac, Format::ExplicitXml,
                            Format::MinimalXml, Format::HeadwordXml};
  for (int i = 0; i < 120; ++i) {
    Document doc = corefkit::testing::random_document(rng);
    for (Format f : formats) {
      EncodedSlice enc = encode(doc, {0, doc.sentences.size()}, f,
                                identity_labels());
      std::string input = render_plain(enc.text);
      std::string output = corrupt(render(enc.text), rng);
      CleanResult r = clean(input, output, f);
      CAPTURE(output);
      CHECK(r.text.tokens == split_words(input));
      CHECK(render_plain(r.text) == input);
      check_monotone(r.alignment, r.text.tokens,
                     decode(output, f).text.tokens);
      // Events are in canonical order and closes never outrun opens. Opens
      // whose close was lost stay open.
      std::vector<TagEvent> sorted = r.text.events;
      canonicalize_events(sorted);
      CHECK(sorted == r.text.events);
      long depth = 0;
      for (const TagEvent &e : r.text.events) {
        CHECK(e.anchor < r.text.tokens.size());
        depth += e.kind == EventKind::Open;
        depth -= e.kind == EventKind::Close;
        CHECK(depth >= 0);
      }
      // Idempotent on its own result.
      CleanResult again = clean(input, render(r.text), f);
      CAPTURE(input);
      CAPTURE(render(r.text));
      CAPTURE(render(again.text));
      CHECK(again.text == r.text);
      for (const Diagnostic &d : again.diagnostics) {
        CHECK(d.code == "unclosed-span");
      }
    }
  }
}

TEST_CASE("property: clean preserves uncorrupted encodings") {
  std::mt19937_64 rng(22);
  const Format formats[] = {Format::Crac, Format::ExplicitXml,
                            Format::MinimalXml, Format::HeadwordXml};
  for (int i = 0; i < 120; ++i) {
    Document doc = corefkit::testing::random_document(rng);
    for (Format f : formats) {
      for (bool joined : {false, true}) {
        AnnotatedText enc = encode(doc, {0, doc.sentences.size()}, f,
                                   identity_labels(),
                                   {.join_space_after = joined})
                                .text;
        CleanResult r = clean(render_plain(enc), render(enc), f);
        CHECK(r.text.events == enc.events);
        CHECK(r.diagnostics.empty());
      }
    }
  }
}

TEST_CASE("property: per-sentence and whole-document cleaning agree") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 80; ++i) {
    Document doc = corefkit::testing::random_document(rng);
    Format f = Format::HeadwordXml;
    AnnotatedText whole = encode(doc, {0, doc.sentences.size()}, f,
                                 identity_labels())
                              .text;
    CleanResult all = clean(render_plain(whole), render(whole), f);
    std::vector<TagEvent> pieces;
    size_t offset = 0;
    for (size_t s = 0; s < doc.sentences.size(); ++s) {
      AnnotatedText one = encode(doc, {s, s + 1}, f, identity_labels()).text;
      CleanResult r = clean(render_plain(one), render(one), f);
      for (TagEvent e : r.text.events) {
        e.anchor += offset;
        pieces.push_back(e);
      }
      offset += one.tokens.size();
    }
    CHECK(pieces == all.text.events);
  }
}
