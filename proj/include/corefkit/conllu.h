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

// Object model for CorefUD-flavoured CoNLL-U documents: sentences with
// surface tokens and empty nodes, and coreference chains whose mentions are
// head-anchored (possibly discontinuous) spans.

#ifndef COREFKIT_CONLLU_H_
#define COREFKIT_CONLLU_H_

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corefkit {

// Position of a node inside a sentence. Surface tokens have empty == 0;
// empty nodes are written "word.empty" and sort right after surface token
// `word` (word == 0 places them before the first token).
struct NodeId {
  int word = 0;
  int empty = 0;

  bool is_empty() const { return empty > 0; }
  std::string str() const;
  static std::optional<NodeId> parse(std::string_view text);

  auto operator<=>(const NodeId &) const = default;
};

struct Token {
  NodeId id;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  std::string head = "_";    // HEAD column, verbatim
  std::string deprel = "_";
  std::string deps = "_";    // DEPS column, verbatim
  std::vector<std::string> misc;  // MISC items other than Entity, verbatim

  // Governing node: HEAD for surface tokens, the first DEPS head for empty
  // nodes. {0, 0} is the root; nullopt when the columns carry nothing usable.
  std::optional<NodeId> governor;

  bool is_zero() const { return id.is_empty(); }
  bool space_after() const;

  bool operator==(const Token &) const = default;
};

struct Sentence {
  std::string sent_id;
  std::string text;                   // "# text =" comment, may be empty
  std::vector<std::string> comments;  // other comment lines, verbatim
  std::vector<Token> nodes;           // tokens and empty nodes, by NodeId
  // Multiword-token lines, kept verbatim, keyed by the index of the node
  // they precede.
  std::vector<std::pair<size_t, std::string>> multiword;

  // Index into `nodes`, or nullopt.
  std::optional<size_t> index_of(NodeId id) const;
  const Token *find(NodeId id) const;
  size_t surface_size() const;

  bool operator==(const Sentence &) const = default;
};

// Inclusive node range of one contiguous mention piece.
struct Fragment {
  NodeId first;
  NodeId last;

  auto operator<=>(const Fragment &) const = default;
};

struct Mention {
  std::string chain_id;
  size_t sentence = 0;
  std::vector<Fragment> fragments;
  NodeId head;
  bool is_zero = false;
  // Entity dash-fields after the eid, verbatim, with the head slot blanked
  // (the head is regenerated from `head` on output).
  std::vector<std::string> attrs;

  // Fragment holding the head, or the first fragment if none does.
  const Fragment &head_fragment() const;

  bool operator==(const Mention &) const = default;
};

// Document-order key used to sort mentions inside a chain.
bool mention_less(const Mention &a, const Mention &b);

struct Chain {
  std::string chain_id;
  std::vector<Mention> mentions;

  bool is_singleton() const { return mentions.size() == 1; }
  bool operator==(const Chain &) const = default;
};

struct Document {
  std::string doc_id;
  std::string global_entity;  // "# global.Entity =" value, empty if absent
  std::vector<Sentence> sentences;
  std::map<std::string, Chain> chains;

  // Appends a mention to its chain, creating the chain if needed.
  void add_mention(Mention mention);
  // Sorts chain mentions into document order and drops empty chains.
  void normalize();
  size_t mention_count() const;
  size_t surface_size() const;
  std::vector<const Mention *> mentions() const;

  bool operator==(const Document &) const = default;
};

struct Dataset {
  std::string dataset_id;
  std::vector<Document> documents;
};

struct Corpus {
  std::vector<Dataset> datasets;

  // Throws std::invalid_argument on a duplicate dataset id.
  void add(Dataset dataset);
  const Dataset *find(std::string_view dataset_id) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

class SerializeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseResult {
  std::vector<Document> documents;
  std::vector<std::string> warnings;
};

ParseResult parse_conllu(std::string_view text);

// Writes one document. The global.Entity header is emitted when set.
std::string serialize_conllu(const Document &doc);
// Writes several documents; the global.Entity header of the first document
// is written once at the top.
std::string serialize_conllu(std::span<const Document> docs);

// Nodes covered by a set of fragments, in sentence order.
std::vector<NodeId> covered_nodes(const Sentence &sentence,
                                  std::span<const Fragment> fragments);

// Head of a span: the unique surface token whose governor lies outside the
// span, leftmost on ties. Spans without surface tokens fall back to their
// empty nodes.
NodeId mention_head(std::span<const Fragment> fragments,
                    const Sentence &sentence);

// Returns a pair of mentions (by index into `mentions`) whose fragments
// properly cross, if any.
std::optional<std::pair<size_t, size_t>> find_crossing(
    std::span<const Mention> mentions);

// Dataset id derived from a CorefUD file name, e.g.
// "fr_democrat-corefud-train.conllu" -> "fr_democrat".
std::string dataset_id_from_path(std::string_view path);

}  // namespace corefkit

#endif  // COREFKIT_CONLLU_H_
