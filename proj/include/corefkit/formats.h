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

// Inline plaintext annotation formats. A document slice is rendered as
// whitespace-separated words and tags; tags are modelled as events anchored
// before or after a word.

#ifndef COREFKIT_FORMATS_H_
#define COREFKIT_FORMATS_H_

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/conllu.h"
#include "corefkit/diagnostics.h"

namespace corefkit {

enum class Format { Crac, ExplicitXml, MinimalXml, HeadwordXml };

// "crac", "explicit", "minimal", "headword".
std::string_view format_name(Format format);
std::optional<Format> parse_format(std::string_view name);
bool is_span_format(Format format);

enum class EventKind { Open, Close, Zero, Head };
enum class Side { Before, After };

struct TagEvent {
  EventKind kind = EventKind::Open;
  std::string chain;  // display label; empty for Close
  size_t anchor = 0;  // word index
  Side side = Side::Before;

  bool operator==(const TagEvent &) const = default;
};

struct AnnotatedText {
  Format format = Format::MinimalXml;
  std::vector<std::string> tokens;
  std::vector<TagEvent> events;
  // Word index of the first word of every rendered line.
  std::vector<size_t> line_starts;

  bool operator==(const AnnotatedText &) const = default;
};

// Stable-sorts events into rendering order: by anchor, Before before After,
// then Zero < Open on the Before side and Close < Head < Zero on the After
// side. Relative order inside a group is kept.
void canonicalize_events(std::vector<TagEvent> &events);

// The wire word at position i of an encoded slice: a run of nodes of one
// sentence (several only when SpaceAfter=No tokens were joined).
struct WordRef {
  size_t sentence = 0;
  NodeId first;
  NodeId last;
  NodeId head;  // node a Head tag on this word stands for

  bool operator==(const WordRef &) const = default;
};

// Half-open range of sentence indices.
struct SentenceRange {
  size_t first = 0;
  size_t last = 0;
};

// Display label for a chain, or nullopt when the chain has none.
using ChainLabels =
    std::function<std::optional<std::string>(const std::string &chain_id)>;

struct EncodeOptions {
  // Glue a token to the next one when its MISC has SpaceAfter=No and no tag
  // would have to sit between them.
  bool join_space_after = false;
  // Render only these chains; others are skipped instead of raising.
  bool skip_unlabelled = false;
};

struct EncodedSlice {
  AnnotatedText text;
  std::vector<WordRef> words;
};

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Encodes the sentences in `range` with all mentions of `doc` that fall in
// them. Discontinuous mentions keep only the fragment holding their head.
// Throws EncodeError on crossing spans or on a chain without a label.
EncodedSlice encode(const Document &doc, SentenceRange range, Format format,
                    const ChainLabels &labels, const EncodeOptions &options = {});

// Labels every chain by its numeric suffix ("e12" -> "12") or, failing that,
// by its id.
ChainLabels identity_labels();

// Single-space join of words and tags, one line per sentence.
std::string render(const AnnotatedText &text);
// Same layout with every tag removed.
std::string render_plain(const AnnotatedText &text);

struct DecodeResult {
  AnnotatedText text;
  Diagnostics diagnostics;
};

// Never fails. Tags from another format are dropped with a diagnostic;
// tag-like atoms that do not parse stay as ordinary words.
DecodeResult decode(std::string_view text, Format format);

// Turns events into mentions of `doc`. `words[i]` maps word i of the text
// to document nodes; unmapped words make the events on them drop out.
// Mention chain ids are the event labels.
std::vector<Mention> events_to_mentions(
    const AnnotatedText &text, const Document &doc,
    std::span<const std::optional<WordRef>> words, Diagnostics *diagnostics);

// Head fragment of a mention trimmed to surface nodes; nullopt when the
// mention is a zero or has no surface node.
std::optional<Fragment> reduced_span(const Mention &mention,
                                     const Sentence &sentence);

// Removes mentions whose reduced spans properly cross an earlier mention
// (in document order). Returns the number of mentions removed.
size_t drop_crossing_mentions(Document &doc);

// Label order: numeric labels by value, others after them. Crac spans that
// share both ends decode in this order.
bool label_less(const std::string &a, const std::string &b);

// Number of tags the text renders to.
size_t tag_count(const AnnotatedText &text);

}  // namespace corefkit

#endif  // COREFKIT_FORMATS_H_
