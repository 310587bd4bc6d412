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

#include "corefkit/formats.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "corefkit/text_util.h"

namespace corefkit {

std::string_view format_name(Format format) {
  switch (format) {
    case Format::Crac:
      return "crac";
    case Format::ExplicitXml:
      return "explicit";
    case Format::MinimalXml:
      return "minimal";
    case Format::HeadwordXml:
      return "headword";
  }
  return "";
}

std::optional<Format> parse_format(std::string_view name) {
  for (Format f : {Format::Crac, Format::ExplicitXml, Format::MinimalXml,
                   Format::HeadwordXml}) {
    if (format_name(f) == name) return f;
  }
  return std::nullopt;
}

bool is_span_format(Format format) { return format != Format::HeadwordXml; }

namespace {

int kind_rank(const TagEvent &e) {
  if (e.side == Side::Before) return e.kind == EventKind::Zero ? 0 : 1;
  switch (e.kind) {
    case EventKind::Close:
      return 0;
    case EventKind::Head:
      return 1;
    default:
      return 2;
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

void canonicalize_events(std::vector<TagEvent> &events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const TagEvent &a, const TagEvent &b) {
                     return std::make_tuple(a.anchor, a.side == Side::After,
                                            kind_rank(a)) <
                            std::make_tuple(b.anchor, b.side == Side::After,
                                            kind_rank(b));
                   });
}

std::optional<Fragment> reduced_span(const Mention &mention,
                                     const Sentence &sentence) {
  if (mention.head.is_empty() || mention.fragments.empty()) return std::nullopt;
  const Fragment &f = mention.head_fragment();
  auto first = sentence.index_of(f.first);
  auto last = sentence.index_of(f.last);
  if (!first || !last) return std::nullopt;
  size_t i = *first, j = *last;
  while (i <= j && sentence.nodes[i].is_zero()) ++i;
  while (j > i && sentence.nodes[j].is_zero()) --j;
  if (i > j || sentence.nodes[i].is_zero()) return std::nullopt;
  return Fragment{sentence.nodes[i].id, sentence.nodes[j].id};
}

namespace {

bool spans_cross(const Fragment &a, const Fragment &b) {
  return (a.first < b.first && b.first <= a.last && a.last < b.last) ||
         (b.first < a.first && a.first <= b.last && b.last < a.last);
}

struct SpanEntry {
  const Mention *mention;
  std::string label;
  Fragment span;
};

bool span_entry_less(const SpanEntry &a, const SpanEntry &b) {
  if (a.span.first != b.span.first) return a.span.first < b.span.first;
  if (a.span.last != b.span.last) return b.span.last < a.span.last;
  return label_less(a.label, b.label);
}

}  // namespace

ChainLabels identity_labels() {
  return [](const std::string &chain_id) -> std::optional<std::string> {
    size_t i = 0;
    while (i < chain_id.size() && !(chain_id[i] >= '0' && chain_id[i] <= '9')) {
      ++i;
    }
    std::string_view digits = std::string_view(chain_id).substr(i);
    if (all_digits(digits)) return std::string(digits);
    return chain_id;
  };
}

EncodedSlice encode(const Document &doc, SentenceRange range, Format format,
                    const ChainLabels &labels, const EncodeOptions &options) {
  EncodedSlice out;
  out.text.format = format;
  range.last = std::min(range.last, doc.sentences.size());

  std::vector<std::vector<const Mention *>> by_sentence(doc.sentences.size());
  for (const auto &[id, chain] : doc.chains) {
    for (const Mention &m : chain.mentions) {
      if (m.sentence >= range.first && m.sentence < range.last) {
        by_sentence[m.sentence].push_back(&m);
      }
    }
  }

  for (size_t s = range.first; s < range.last; ++s) {
    const Sentence &sentence = doc.sentences[s];
    const size_t n = sentence.nodes.size();
    std::vector<std::vector<TagEvent>> before(n), after(n);

    std::vector<SpanEntry> spans;
    std::vector<std::pair<NodeId, std::string>> zeros;
    for (const Mention *m : by_sentence[s]) {
      auto label = labels(m->chain_id);
      if (!label) {
        if (options.skip_unlabelled) continue;
        throw EncodeError("chain " + m->chain_id + " has no display label");
      }
      if (m->head.is_empty()) {
        zeros.emplace_back(m->head, *label);
        continue;
      }
      auto span = reduced_span(*m, sentence);
      if (!span) continue;
      spans.push_back({m, *label, *span});
    }
    std::sort(spans.begin(), spans.end(), span_entry_less);
    for (size_t i = 0; i < spans.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (spans_cross(spans[i].span, spans[j].span)) {
          throw EncodeError("crossing mentions in sentence " +
                            sentence.sent_id + ": " +
                            spans[j].mention->chain_id + "[" +
                            spans[j].span.first.str() + ".." +
                            spans[j].span.last.str() + "] and " +
                            spans[i].mention->chain_id + "[" +
                            spans[i].span.first.str() + ".." +
                            spans[i].span.last.str() + "]");
        }
      }
    }

    if (format == Format::HeadwordXml) {
      std::vector<const SpanEntry *> heads;
      for (const SpanEntry &e : spans) heads.push_back(&e);
      std::stable_sort(heads.begin(), heads.end(),
                       [](const SpanEntry *a, const SpanEntry *b) {
                         return a->mention->head < b->mention->head;
                       });
      for (const SpanEntry *e : heads) {
        size_t at = *sentence.index_of(e->mention->head);
        after[at].push_back({EventKind::Head, e->label, 0, Side::After});
      }
    } else {
      for (const SpanEntry &e : spans) {
        before[*sentence.index_of(e.span.first)].push_back(
            {EventKind::Open, e.label, 0, Side::Before});
        after[*sentence.index_of(e.span.last)].push_back(
            {EventKind::Close, "", 0, Side::After});
      }
    }

    std::sort(zeros.begin(), zeros.end(), [](const auto &a, const auto &b) {
      if (a.first != b.first) return a.first < b.first;
      return label_less(a.second, b.second);
    });
    size_t first_surface = n;
    for (size_t i = 0; i < n; ++i) {
      if (!sentence.nodes[i].is_zero()) {
        first_surface = i;
        break;
      }
    }
    for (const auto &[node, label] : zeros) {
      if (node.word > 0) {
        auto at = sentence.index_of(NodeId{node.word, 0});
        if (at) after[*at].push_back({EventKind::Zero, label, 0, Side::After});
      } else if (first_surface < n) {
        before[first_surface].push_back(
            {EventKind::Zero, label, 0, Side::Before});
      }
    }

    bool line_started = false;
    size_t i = 0;
    while (i < n) {
      if (sentence.nodes[i].is_zero()) {
        ++i;
        continue;
      }
      size_t first = i;
      size_t last = i;
      NodeId group_head = sentence.nodes[i].id;
      while (options.join_space_after && !sentence.nodes[last].space_after()) {
        size_t next = last + 1;
        while (next < n && sentence.nodes[next].is_zero()) ++next;
        if (next >= n) break;
        if (!after[last].empty() || !before[next].empty()) break;
        if (format == Format::Crac &&
            (!before[first].empty() || !after[next].empty())) {
          break;
        }
        Fragment joined{sentence.nodes[first].id, sentence.nodes[next].id};
        NodeId head = mention_head(std::span<const Fragment>(&joined, 1),
                                   sentence);
        bool has_head_tag = std::any_of(
            after[next].begin(), after[next].end(),
            [](const TagEvent &e) { return e.kind == EventKind::Head; });
        if (has_head_tag && head != sentence.nodes[next].id) break;
        last = next;
        group_head = head;
      }

      size_t word = out.text.tokens.size();
      if (!line_started) {
        out.text.line_starts.push_back(word);
        line_started = true;
      }
      std::string form;
      for (size_t k = first; k <= last; ++k) {
        if (!sentence.nodes[k].is_zero()) form += sentence.nodes[k].form;
      }
      out.text.tokens.push_back(std::move(form));
      out.words.push_back({s, sentence.nodes[first].id, sentence.nodes[last].id,
                           group_head});
      for (TagEvent e : before[first]) {
        e.anchor = word;
        out.text.events.push_back(std::move(e));
      }
      for (TagEvent e : after[last]) {
        e.anchor = word;
        out.text.events.push_back(std::move(e));
      }
      i = last + 1;
    }
  }
  canonicalize_events(out.text.events);
  return out;
}

namespace {

bool renders_in(Format format, EventKind kind) {
  switch (kind) {
    case EventKind::Zero:
      return true;
    case EventKind::Head:
      return format == Format::HeadwordXml;
    default:
      return format != Format::HeadwordXml;
  }
}

std::string xml_tag(Format format, const TagEvent &e) {
  switch (e.kind) {
    case EventKind::Open:
      return format == Format::ExplicitXml ? "<ent id=COREF_" + e.chain + ">"
                                           : "<ent" + e.chain + ">";
    case EventKind::Close:
      return "</ent>";
    case EventKind::Head:
      return "<ent" + e.chain + ">";
    case EventKind::Zero:
      return format == Format::ExplicitXml
                 ? "<zero_ent id=COREF_" + e.chain + ">"
                 : "<zero" + e.chain + ">";
  }
  return "";
}

// Stack pairing of Open and Close events: result[i] is the index of the
// partner of event i, or npos.
std::vector<size_t> pair_brackets(const std::vector<TagEvent> &events) {
  constexpr size_t npos = std::numeric_limits<size_t>::max();
  std::vector<size_t> partner(events.size(), npos);
  std::vector<size_t> stack;
  for (size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind == EventKind::Open) {
      stack.push_back(i);
    } else if (events[i].kind == EventKind::Close && !stack.empty()) {
      partner[i] = stack.back();
      partner[stack.back()] = i;
      stack.pop_back();
    }
  }
  return partner;
}

// Per-word lists of rendered atoms.
struct WordAtoms {
  std::vector<std::string> before;
  std::vector<std::string> after;
  std::string token;
};

std::vector<WordAtoms> xml_atoms(const AnnotatedText &text) {
  std::vector<WordAtoms> words(text.tokens.size());
  for (size_t i = 0; i < text.tokens.size(); ++i) words[i].token = text.tokens[i];
  for (const TagEvent &e : text.events) {
    if (e.anchor >= words.size() || !renders_in(text.format, e.kind)) continue;
    auto &list = e.side == Side::Before ? words[e.anchor].before
                                        : words[e.anchor].after;
    list.push_back(xml_tag(text.format, e));
  }
  return words;
}

std::vector<WordAtoms> crac_atoms(const AnnotatedText &text) {
  constexpr size_t npos = std::numeric_limits<size_t>::max();
  std::vector<WordAtoms> words(text.tokens.size());
  std::vector<TagEvent> events;
  for (const TagEvent &e : text.events) {
    if (e.anchor < words.size() && renders_in(text.format, e.kind)) {
      events.push_back(e);
    }
  }
  std::vector<size_t> partner = pair_brackets(events);
  std::vector<std::vector<std::string>> singles(words.size()),
      opens(words.size()), closes(words.size());
  for (size_t i = 0; i < events.size(); ++i) {
    const TagEvent &e = events[i];
    if (e.kind == EventKind::Zero) {
      auto &list = e.side == Side::Before ? words[e.anchor].before
                                          : words[e.anchor].after;
      list.push_back("##|[e" + e.chain + "]");
    } else if (e.kind == EventKind::Open) {
      if (partner[i] != npos && events[partner[i]].anchor == e.anchor) {
        singles[e.anchor].push_back("[e" + e.chain + "]");
      } else {
        opens[e.anchor].push_back("[e" + e.chain);
      }
    } else if (e.kind == EventKind::Close && partner[i] != npos) {
      const TagEvent &open = events[partner[i]];
      if (open.anchor != e.anchor) {
        closes[e.anchor].push_back("e" + open.chain + "]");
      }
    }
  }
  for (size_t t = 0; t < words.size(); ++t) {
    std::vector<std::string> notes = singles[t];
    notes.insert(notes.end(), opens[t].begin(), opens[t].end());
    notes.insert(notes.end(), closes[t].begin(), closes[t].end());
    words[t].token = text.tokens[t];
    if (!notes.empty()) words[t].token += "|" + join(notes, ",");
  }
  return words;
}

std::string layout(const AnnotatedText &text,
                   const std::vector<WordAtoms> &words) {
  std::set<size_t> starts(text.line_starts.begin(), text.line_starts.end());
  std::string out;
  for (size_t t = 0; t < words.size(); ++t) {
    if (t > 0) out += starts.count(t) ? "\n" : " ";
    bool first = true;
    auto put = [&](const std::string &atom) {
      if (!first) out += ' ';
      out += atom;
      first = false;
    };
    for (const auto &a : words[t].before) put(a);
    put(words[t].token);
    for (const auto &a : words[t].after) put(a);
  }
  return out;
}

}  // namespace

std::string render(const AnnotatedText &text) {
  return layout(text, text.format == Format::Crac ? crac_atoms(text)
                                                  : xml_atoms(text));
}

std::string render_plain(const AnnotatedText &text) {
  std::vector<WordAtoms> words(text.tokens.size());
  for (size_t i = 0; i < text.tokens.size(); ++i) words[i].token = text.tokens[i];
  return layout(text, words);
}

bool label_less(const std::string &a, const std::string &b) {
  return std::make_pair(a.size(), std::string_view(a)) <
         std::make_pair(b.size(), std::string_view(b));
}

size_t tag_count(const AnnotatedText &text) {
  if (text.format != Format::Crac) {
    return std::count_if(text.events.begin(), text.events.end(),
                         [&](const TagEvent &e) {
                           return renders_in(text.format, e.kind);
                         });
  }
  size_t count = 0;
  for (const TagEvent &e : text.events) {
    if (e.kind == EventKind::Open || e.kind == EventKind::Zero) ++count;
  }
  return count;
}

namespace {

// A tag recognised by one of the XML grammars, possibly spanning two atoms.
struct XmlTag {
  enum Shape { ExplicitOpen, ExplicitZero, Close, NumberedEnt, NumberedZero };
  Shape shape;
  std::string label;
  size_t atoms = 1;
};

std::optional<std::string> numbered(std::string_view atom,
                                    std::string_view prefix) {
  if (!starts_with(atom, prefix) || atom.size() < prefix.size() + 2 ||
      atom.back() != '>') {
    return std::nullopt;
  }
  std::string_view digits =
      atom.substr(prefix.size(), atom.size() - prefix.size() - 1);
  if (!all_digits(digits)) return std::nullopt;
  return std::string(digits);
}

std::optional<XmlTag> match_xml(const std::vector<std::string> &atoms,
                                size_t i) {
  std::string_view atom = atoms[i];
  if (atom == "</ent>") return XmlTag{XmlTag::Close, "", 1};
  if ((atom == "<ent" || atom == "<zero_ent") && i + 1 < atoms.size()) {
    if (auto label = numbered(atoms[i + 1], "id=COREF_")) {
      return XmlTag{atom == "<ent" ? XmlTag::ExplicitOpen : XmlTag::ExplicitZero,
                    *label, 2};
    }
  }
  if (auto label = numbered(atom, "<ent")) {
    return XmlTag{XmlTag::NumberedEnt, *label, 1};
  }
  if (auto label = numbered(atom, "<zero")) {
    return XmlTag{XmlTag::NumberedZero, *label, 1};
  }
  return std::nullopt;
}

// Event kind an XML tag stands for in `format`, or nullopt if foreign.
std::optional<EventKind> xml_kind(Format format, XmlTag::Shape shape) {
  switch (format) {
    case Format::ExplicitXml:
      if (shape == XmlTag::ExplicitOpen) return EventKind::Open;
      if (shape == XmlTag::ExplicitZero) return EventKind::Zero;
      if (shape == XmlTag::Close) return EventKind::Close;
      return std::nullopt;
    case Format::MinimalXml:
      if (shape == XmlTag::NumberedEnt) return EventKind::Open;
      if (shape == XmlTag::NumberedZero) return EventKind::Zero;
      if (shape == XmlTag::Close) return EventKind::Close;
      return std::nullopt;
    case Format::HeadwordXml:
      if (shape == XmlTag::NumberedEnt) return EventKind::Head;
      if (shape == XmlTag::NumberedZero) return EventKind::Zero;
      return std::nullopt;
    case Format::Crac:
      return std::nullopt;
  }
  return std::nullopt;
}

struct PendingTag {
  EventKind kind;
  std::string label;
  bool line_start = false;  // seen before any token of its line
};

enum class CracNoteKind { Single, Open, Close };

struct CracNote {
  CracNoteKind kind;
  std::string label;
};

std::optional<CracNote> parse_crac_note(std::string_view note) {
  bool lead = starts_with(note, "[e");
  bool trail = !note.empty() && note.back() == ']';
  std::string_view body = note;
  if (lead) {
    body.remove_prefix(2);
  } else if (starts_with(note, "e")) {
    body.remove_prefix(1);
  } else {
    return std::nullopt;
  }
  if (trail) body.remove_suffix(1);
  if (!all_digits(body)) return std::nullopt;
  if (lead && trail) return CracNote{CracNoteKind::Single, std::string(body)};
  if (lead) return CracNote{CracNoteKind::Open, std::string(body)};
  if (trail) return CracNote{CracNoteKind::Close, std::string(body)};
  return std::nullopt;
}

// Splits "tok|[e1],[e2" into its token and notes.
std::optional<std::pair<std::string, std::vector<CracNote>>> parse_crac_atom(
    std::string_view atom) {
  size_t bar = atom.rfind('|');
  if (bar == std::string_view::npos || bar == 0 || bar + 1 == atom.size()) {
    return std::nullopt;
  }
  std::vector<CracNote> notes;
  for (std::string_view part : split(atom.substr(bar + 1), ',')) {
    auto note = parse_crac_note(part);
    if (!note) return std::nullopt;
    notes.push_back(*note);
  }
  return std::make_pair(std::string(atom.substr(0, bar)), std::move(notes));
}

class Decoder {
 public:
  explicit Decoder(Format format) { result_.text.format = format; }

  DecodeResult run(std::string_view text) {
    for (std::string_view line : split(text, '\n')) {
      line_has_token_ = false;
      std::vector<std::string> atoms = split_words(line);
      for (size_t i = 0; i < atoms.size();) i += atom(atoms, i);
    }
    flush(std::nullopt);
    if (format() == Format::Crac) build_crac_spans();
    canonicalize_events(result_.text.events);
    drop_unmatched_closes();
    return std::move(result_);
  }

 private:
  Format format() const { return result_.text.format; }
  size_t token_count() const { return result_.text.tokens.size(); }

  void diag(std::string code, std::string message,
            std::optional<size_t> position) {
    result_.diagnostics.push_back(
        {std::move(code), std::move(message), position});
  }

  size_t atom(const std::vector<std::string> &atoms, size_t i) {
    if (auto tag = match_xml(atoms, i)) {
      auto kind = xml_kind(format(), tag->shape);
      std::string text = atoms[i];
      if (tag->atoms == 2) text += " " + atoms[i + 1];
      if (!kind) {
        diag("foreign-tag", "tag '" + text + "' is not part of the " +
                                std::string(format_name(format())) +
                                " format",
             token_count());
      } else {
        pending_.push_back({*kind, tag->label, !line_has_token_});
      }
      return tag->atoms;
    }
    if (format() == Format::Crac) {
      if (auto parsed = parse_crac_atom(atoms[i])) {
        auto &[word, notes] = *parsed;
        if (word == "##") {
          bool all_single = std::all_of(
              notes.begin(), notes.end(),
              [](const CracNote &n) { return n.kind == CracNoteKind::Single; });
          if (all_single) {
            for (const CracNote &n : notes) {
              pending_.push_back({EventKind::Zero, n.label, !line_has_token_});
            }
            return 1;
          }
        } else {
          add_token(word);
          crac_notes_.emplace_back(token_count() - 1, std::move(notes));
          return 1;
        }
      }
    }
    add_token(atoms[i]);
    return 1;
  }

  void add_token(std::string word) {
    size_t index = token_count();
    bool line_start = !line_has_token_;
    flush(index);
    if (line_start) result_.text.line_starts.push_back(index);
    line_has_token_ = true;
    result_.text.tokens.push_back(std::move(word));
  }

  // Attaches tags seen since the previous token. `next` is the token that
  // follows them, if any.
  void flush(std::optional<size_t> next) {
    std::optional<size_t> prev;
    if (next ? *next > 0 : token_count() > 0) {
      prev = (next ? *next : token_count()) - 1;
    }
    for (PendingTag &tag : pending_) {
      switch (tag.kind) {
        case EventKind::Open:
          if (next) {
            emit(tag, *next, Side::Before);
          } else {
            diag("dangling-open", "opening tag after the last token", prev);
          }
          break;
        case EventKind::Close:
        case EventKind::Head:
          if (prev) {
            emit(tag, *prev, Side::After);
          } else {
            diag("no-anchor", "tag before the first token", next);
          }
          break;
        case EventKind::Zero:
          if (next && (!prev || tag.line_start)) {
            emit(tag, *next, Side::Before);
          } else if (prev) {
            emit(tag, *prev, Side::After);
          } else {
            diag("no-anchor", "zero tag in a text without tokens",
                 std::nullopt);
          }
          break;
      }
    }
    pending_.clear();
  }

  void emit(const PendingTag &tag, size_t anchor, Side side) {
    result_.text.events.push_back(
        {tag.kind, tag.kind == EventKind::Close ? "" : tag.label, anchor, side});
  }

  struct CracSpan {
    std::string label;
    size_t start;
    size_t end;  // npos when never closed
  };

  void build_crac_spans() {
    constexpr size_t npos = std::numeric_limits<size_t>::max();
    std::vector<CracSpan> spans;
    std::map<std::string, std::vector<size_t>> open;
    for (auto &[t, notes] : crac_notes_) {
      for (const CracNote &note : notes) {
        switch (note.kind) {
          case CracNoteKind::Single:
            spans.push_back({note.label, t, t});
            break;
          case CracNoteKind::Open:
            open[note.label].push_back(spans.size());
            spans.push_back({note.label, t, npos});
            break;
          case CracNoteKind::Close: {
            auto &stack = open[note.label];
            if (stack.empty()) {
              diag("unmatched-close", "close of e" + note.label +
                                          " without an open span",
                   t);
            } else {
              spans[stack.back()].end = t;
              stack.pop_back();
            }
            break;
          }
        }
      }
    }
    std::stable_sort(spans.begin(), spans.end(),
                     [](const CracSpan &a, const CracSpan &b) {
                       if (a.start != b.start) return a.start < b.start;
                       if (a.end != b.end) return a.end > b.end;
                       return label_less(a.label, b.label);
                     });
    std::vector<const CracSpan *> kept;
    for (const CracSpan &span : spans) {
      bool crosses = std::any_of(
          kept.begin(), kept.end(), [&](const CracSpan *k) {
            return k->start < span.start && span.start <= k->end &&
                   k->end < span.end;
          });
      if (crosses) {
        diag("crossing-span", "span of e" + span.label + " crosses another",
             span.start);
        continue;
      }
      kept.push_back(&span);
    }
    for (const CracSpan *span : kept) {
      result_.text.events.push_back(
          {EventKind::Open, span->label, span->start, Side::Before});
      if (span->end != npos) {
        result_.text.events.push_back(
            {EventKind::Close, "", span->end, Side::After});
      } else {
        diag("unclosed-span", "span of e" + span->label + " is never closed",
             span->start);
      }
    }
  }

  void drop_unmatched_closes() {
    auto &events = result_.text.events;
    size_t depth = 0;
    std::vector<TagEvent> kept;
    for (TagEvent &e : events) {
      if (e.kind == EventKind::Open) ++depth;
      if (e.kind == EventKind::Close) {
        if (depth == 0) {
          diag("unmatched-close", "closing tag without an open span",
               e.anchor);
          continue;
        }
        --depth;
      }
      kept.push_back(std::move(e));
    }
    events = std::move(kept);
  }

  DecodeResult result_;
  std::vector<PendingTag> pending_;
  std::vector<std::pair<size_t, std::vector<CracNote>>> crac_notes_;
  bool line_has_token_ = false;
};

}  // namespace

DecodeResult decode(std::string_view text, Format format) {
  return Decoder(format).run(text);
}

std::vector<Mention> events_to_mentions(
    const AnnotatedText &text, const Document &doc,
    std::span<const std::optional<WordRef>> words, Diagnostics *diagnostics) {
  Diagnostics scratch;
  Diagnostics &diags = diagnostics ? *diagnostics : scratch;
  auto ref = [&](size_t t) -> const WordRef * {
    if (t >= words.size() || !words[t]) return nullptr;
    return &*words[t];
  };

  std::vector<Mention> out;
  auto add_span = [&](const std::string &label, size_t a, size_t b) {
    const WordRef *start = ref(a);
    if (start == nullptr) {
      diags.push_back({"unmapped", "span of " + label +
                                       " starts on an unmapped word",
                       a});
      return;
    }
    size_t end = b;
    while (end > a && (ref(end) == nullptr ||
                       ref(end)->sentence != start->sentence)) {
      --end;
    }
    if (end != b) {
      diags.push_back({ref(b) == nullptr ? "unmapped" : "clipped",
                       "span of " + label + " cut back to word " +
                           std::to_string(end),
                       b});
    }
    Mention m;
    m.chain_id = label;
    m.sentence = start->sentence;
    m.fragments = {{start->first, ref(end)->last}};
    m.head = mention_head(m.fragments, doc.sentences[m.sentence]);
    out.push_back(std::move(m));
  };

  std::vector<const TagEvent *> stack;
  // Zero tags grouped by slot: (sentence, anchor word) -> labels.
  std::map<std::pair<size_t, int>, std::vector<std::pair<std::string, size_t>>>
      zero_slots;
  for (const TagEvent &e : text.events) {
    switch (e.kind) {
      case EventKind::Open:
        stack.push_back(&e);
        break;
      case EventKind::Close:
        if (stack.empty()) {
          diags.push_back({"unmatched-close", "closing tag without an open span",
                           e.anchor});
          break;
        }
        add_span(stack.back()->chain, stack.back()->anchor, e.anchor);
        stack.pop_back();
        break;
      case EventKind::Head: {
        const WordRef *w = ref(e.anchor);
        if (w == nullptr) {
          diags.push_back({"unmapped", "head tag on an unmapped word",
                           e.anchor});
          break;
        }
        Mention m;
        m.chain_id = e.chain;
        m.sentence = w->sentence;
        m.fragments = {{w->head, w->head}};
        m.head = w->head;
        out.push_back(std::move(m));
        break;
      }
      case EventKind::Zero: {
        const WordRef *w = ref(e.anchor);
        if (w == nullptr) {
          diags.push_back({"unmapped", "zero tag on an unmapped word",
                           e.anchor});
          break;
        }
        int slot = e.side == Side::After ? w->last.word : w->first.word - 1;
        zero_slots[{w->sentence, slot}].emplace_back(e.chain, e.anchor);
        break;
      }
    }
  }
  if (!stack.empty() && !text.tokens.empty()) {
    // Auto-close at the last word; add_span trims to the opening sentence.
    while (!stack.empty()) {
      diags.push_back({"auto-close", "span of " + stack.back()->chain +
                                         " closed at the end of the text",
                       stack.back()->anchor});
      add_span(stack.back()->chain, stack.back()->anchor,
               text.tokens.size() - 1);
      stack.pop_back();
    }
  }

  for (const auto &[slot, tags] : zero_slots) {
    const Sentence &sentence = doc.sentences[slot.first];
    std::vector<NodeId> nodes;
    for (const Token &t : sentence.nodes) {
      if (t.is_zero() && t.id.word == slot.second) nodes.push_back(t.id);
    }
    if (nodes.empty()) {
      for (const auto &[label, anchor] : tags) {
        diags.push_back({"no-empty-node",
                         "zero tag of " + label +
                             " has no empty node to attach to",
                         anchor});
      }
      continue;
    }
    for (size_t k = 0; k < tags.size(); ++k) {
      size_t pick = tags.size() == nodes.size() ? k
                                                : std::min(k, nodes.size() - 1);
      Mention m;
      m.chain_id = tags[k].first;
      m.sentence = slot.first;
      m.fragments = {{nodes[pick], nodes[pick]}};
      m.head = nodes[pick];
      m.is_zero = true;
      out.push_back(std::move(m));
    }
  }
  return out;
}

size_t drop_crossing_mentions(Document &doc) {
  struct Item {
    size_t sentence;
    Fragment span;
    const Mention *mention;
  };
  std::vector<Item> items;
  for (const auto &[id, chain] : doc.chains) {
    for (const Mention &m : chain.mentions) {
      if (m.sentence >= doc.sentences.size()) continue;
      if (auto span = reduced_span(m, doc.sentences[m.sentence])) {
        items.push_back({m.sentence, *span, &m});
      }
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item &a, const Item &b) {
    if (a.sentence != b.sentence) return a.sentence < b.sentence;
    if (a.span.first != b.span.first) return a.span.first < b.span.first;
    return b.span.last < a.span.last;
  });
  std::set<const Mention *> dropped;
  for (size_t i = 0; i < items.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (items[j].sentence != items[i].sentence ||
          dropped.count(items[j].mention)) {
        continue;
      }
      if (spans_cross(items[i].span, items[j].span)) {
        dropped.insert(items[i].mention);
        break;
      }
    }
  }
  if (dropped.empty()) return 0;
  for (auto &[id, chain] : doc.chains) {
    std::erase_if(chain.mentions,
                  [&](const Mention &m) { return dropped.count(&m) > 0; });
  }
  doc.normalize();
  return dropped.size();
}

}  // namespace corefkit
