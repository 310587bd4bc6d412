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

// Random small documents for property tests. Every generated document is
// valid and uncrossed, mention heads agree with the dependency fallback of
// their head fragment, no two mentions of a sentence share a head, each
// empty node carries at most one zero mention, and a chain has at most one
// discontinuous mention per sentence (Entity brackets cannot tell two apart).

#ifndef COREFKIT_TESTS_RANDOM_DOC_H_
#define COREFKIT_TESTS_RANDOM_DOC_H_

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "corefkit/conllu.h"

namespace corefkit::testing {

struct RandomDocOptions {
  size_t max_sentences = 5;
  size_t max_chains = 4;
  size_t max_tokens = 9;
  size_t max_mentions_per_chain = 4;
  double zero_rate = 0.25;
  double discontinuous_rate = 0.15;
  double space_after_no_rate = 0.15;
};

inline size_t pick(std::mt19937_64 &rng, size_t lo, size_t hi) {
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

inline bool chance(std::mt19937_64 &rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

inline Sentence random_sentence(std::mt19937_64 &rng, const std::string &id,
                                const RandomDocOptions &opt) {
  static const std::vector<std::string> vocab = {
      "the", "a",     "cat",  "dog",   "Marie", "saw", "it",   "her",
      "house", "green", "and", "runs", ".",     ",",   "old",  "man",
      "Léa", "café",  "über", "she",   "him",   "of",  "city", "Paris"};
  Sentence s;
  s.sent_id = id;
  size_t n = pick(rng, 1, opt.max_tokens);
  // Random tree: attach tokens in a random order to one already attached.
  std::vector<int> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i) + 1;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> governor(n + 1, 0);
  for (size_t k = 1; k < n; ++k) {
    governor[order[k]] = order[pick(rng, 0, k - 1)];
  }
  std::vector<std::string> forms;
  for (size_t w = 0; w <= n; ++w) {
    if (w >= 1) {
      Token t;
      t.id = {static_cast<int>(w), 0};
      t.form = vocab[pick(rng, 0, vocab.size() - 1)];
      t.lemma = t.form;
      t.head = std::to_string(governor[w]);
      t.deprel = governor[w] == 0 ? "root" : "dep";
      t.governor = NodeId{governor[w], 0};
      if (w < n && chance(rng, opt.space_after_no_rate)) {
        t.misc.push_back("SpaceAfter=No");
      }
      forms.push_back(t.form);
      s.nodes.push_back(std::move(t));
    }
    if (chance(rng, opt.zero_rate / 2)) {
      Token z;
      z.id = {static_cast<int>(w), 1};
      z.form = "_";
      z.lemma = "_";
      int gov = static_cast<int>(pick(rng, 1, n));
      z.deps = std::to_string(gov) + ":nsubj";
      z.governor = NodeId{gov, 0};
      s.nodes.push_back(std::move(z));
    }
  }
  std::string text;
  for (const auto &f : forms) text += (text.empty() ? "" : " ") + f;
  s.text = text;
  return s;
}

namespace detail {

struct Placed {
  std::string chain_id;
  std::vector<Fragment> fragments;
  NodeId head;
};

inline bool crosses(const Fragment &a, const Fragment &b) {
  return (a.first < b.first && b.first <= a.last && a.last < b.last) ||
         (b.first < a.first && a.first <= b.last && b.last < a.last);
}

}  // namespace detail

inline Document random_document(std::mt19937_64 &rng,
                                const RandomDocOptions &opt = {},
                                const std::string &doc_id = "doc") {
  Document doc;
  doc.doc_id = doc_id;
  doc.global_entity = "eid-etype-head-other";
  size_t ns = pick(rng, 1, opt.max_sentences);
  for (size_t s = 0; s < ns; ++s) {
    doc.sentences.push_back(
        random_sentence(rng, doc_id + "-" + std::to_string(s + 1), opt));
  }
  std::vector<std::vector<detail::Placed>> placed(ns);

  std::set<int> numbers;
  size_t nc = pick(rng, 1, opt.max_chains);
  while (numbers.size() < nc) numbers.insert(static_cast<int>(pick(rng, 1, 60)));
  static const std::vector<std::string> types = {"person", "place", "thing"};
  for (int number : numbers) {
    std::string chain_id = "e" + std::to_string(number);
    std::string etype = types[pick(rng, 0, types.size() - 1)];
    size_t want = pick(rng, 1, opt.max_mentions_per_chain);
    for (size_t attempt = 0, made = 0; made < want && attempt < 30; ++attempt) {
      size_t s = pick(rng, 0, ns - 1);
      const Sentence &sent = doc.sentences[s];
      std::vector<NodeId> surface, empties;
      for (const Token &t : sent.nodes) {
        (t.is_zero() ? empties : surface).push_back(t.id);
      }
      Mention m;
      m.chain_id = chain_id;
      m.sentence = s;
      m.attrs = {etype};
      if (!empties.empty() && chance(rng, opt.zero_rate)) {
        NodeId e = empties[pick(rng, 0, empties.size() - 1)];
        m.fragments = {{e, e}};
        m.head = e;
        m.is_zero = true;
      } else {
        size_t a = pick(rng, 0, surface.size() - 1);
        size_t b = std::min(surface.size() - 1, a + pick(rng, 0, 3));
        m.fragments = {{surface[a], surface[b]}};
        size_t head_frag = 0;
        if (b + 2 < surface.size() && chance(rng, opt.discontinuous_rate)) {
          size_t c = pick(rng, b + 2, surface.size() - 1);
          size_t d = std::min(surface.size() - 1, c + pick(rng, 0, 1));
          m.fragments.push_back({surface[c], surface[d]});
          head_frag = pick(rng, 0, 1);
        }
        m.head = mention_head(
            std::span<const Fragment>(&m.fragments[head_frag], 1), sent);
      }
      bool ok = true;
      for (const detail::Placed &p : placed[s]) {
        if (p.head == m.head) ok = false;
        if (p.chain_id == chain_id && p.fragments.size() > 1 &&
            m.fragments.size() > 1) {
          ok = false;
        }
        for (const Fragment &f : p.fragments) {
          for (const Fragment &g : m.fragments) {
            if (detail::crosses(f, g)) ok = false;
          }
        }
      }
      if (!ok) continue;
      placed[s].push_back({chain_id, m.fragments, m.head});
      doc.add_mention(std::move(m));
      ++made;
    }
  }
  doc.normalize();
  return doc;
}

// Head-level view of a document: chain id -> set of (sentence, head).
inline std::map<std::string, std::set<std::pair<size_t, NodeId>>> head_chains(
    const Document &doc) {
  std::map<std::string, std::set<std::pair<size_t, NodeId>>> out;
  for (const auto &[id, chain] : doc.chains) {
    for (const Mention &m : chain.mentions) out[id].insert({m.sentence, m.head});
  }
  return out;
}

// Head-level chains up to renaming: the set of head sets.
inline std::set<std::set<std::pair<size_t, NodeId>>> head_partition(
    const Document &doc) {
  std::set<std::set<std::pair<size_t, NodeId>>> out;
  for (auto &[id, heads] : head_chains(doc)) out.insert(heads);
  return out;
}

}  // namespace corefkit::testing

#endif  // COREFKIT_TESTS_RANDOM_DOC_H_
