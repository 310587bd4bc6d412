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

#include "corefkit/conllu.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "corefkit/text_util.h"

namespace corefkit {

std::string NodeId::str() const {
  std::string out = std::to_string(word);
  if (empty > 0) out += "." + std::to_string(empty);
  return out;
}

std::optional<NodeId> NodeId::parse(std::string_view text) {
  size_t dot = text.find('.');
  if (dot == std::string_view::npos) {
    auto word = parse_uint(text);
    if (!word) return std::nullopt;
    return NodeId{static_cast<int>(*word), 0};
  }
  auto word = parse_uint(text.substr(0, dot));
  auto empty = parse_uint(text.substr(dot + 1));
  if (!word || !empty || *empty == 0) return std::nullopt;
  return NodeId{static_cast<int>(*word), static_cast<int>(*empty)};
}

bool Token::space_after() const {
  return std::find(misc.begin(), misc.end(), "SpaceAfter=No") == misc.end();
}

std::optional<size_t> Sentence::index_of(NodeId id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const Token &t, const NodeId &key) { return t.id < key; });
  if (it == nodes.end() || it->id != id) return std::nullopt;
  return static_cast<size_t>(it - nodes.begin());
}

const Token *Sentence::find(NodeId id) const {
  auto index = index_of(id);
  return index ? &nodes[*index] : nullptr;
}

size_t Sentence::surface_size() const {
  return std::count_if(nodes.begin(), nodes.end(),
                       [](const Token &t) { return !t.is_zero(); });
}

const Fragment &Mention::head_fragment() const {
  for (const Fragment &f : fragments) {
    if (f.first <= head && head <= f.last) return f;
  }
  return fragments.front();
}

bool mention_less(const Mention &a, const Mention &b) {
  return std::tie(a.sentence, a.head, a.fragments, a.is_zero, a.attrs,
                  a.chain_id) <
         std::tie(b.sentence, b.head, b.fragments, b.is_zero, b.attrs,
                  b.chain_id);
}

void Document::add_mention(Mention mention) {
  Chain &chain = chains[mention.chain_id];
  chain.chain_id = mention.chain_id;
  chain.mentions.push_back(std::move(mention));
}

void Document::normalize() {
  for (auto it = chains.begin(); it != chains.end();) {
    if (it->second.mentions.empty()) {
      it = chains.erase(it);
      continue;
    }
    std::sort(it->second.mentions.begin(), it->second.mentions.end(),
              mention_less);
    ++it;
  }
}

size_t Document::mention_count() const {
  size_t count = 0;
  for (const auto &[id, chain] : chains) count += chain.mentions.size();
  return count;
}

size_t Document::surface_size() const {
  size_t count = 0;
  for (const Sentence &s : sentences) count += s.surface_size();
  return count;
}

std::vector<const Mention *> Document::mentions() const {
  std::vector<const Mention *> out;
  for (const auto &[id, chain] : chains) {
    for (const Mention &m : chain.mentions) out.push_back(&m);
  }
  return out;
}

void Corpus::add(Dataset dataset) {
  if (find(dataset.dataset_id) != nullptr) {
    throw std::invalid_argument("duplicate dataset id: " +
                                dataset.dataset_id);
  }
  datasets.push_back(std::move(dataset));
}

const Dataset *Corpus::find(std::string_view dataset_id) const {
  for (const Dataset &d : datasets) {
    if (d.dataset_id == dataset_id) return &d;
  }
  return nullptr;
}

std::vector<NodeId> covered_nodes(const Sentence &sentence,
                                  std::span<const Fragment> fragments) {
  std::vector<NodeId> out;
  for (const Fragment &f : fragments) {
    auto first = sentence.index_of(f.first);
    auto last = sentence.index_of(f.last);
    if (!first || !last) continue;
    for (size_t i = *first; i <= *last; ++i) out.push_back(sentence.nodes[i].id);
  }
  return out;
}

NodeId mention_head(std::span<const Fragment> fragments,
                    const Sentence &sentence) {
  std::vector<NodeId> nodes = covered_nodes(sentence, fragments);
  if (nodes.empty()) return fragments.empty() ? NodeId{} : fragments[0].first;
  std::vector<NodeId> pool;
  for (NodeId id : nodes) {
    if (!id.is_empty()) pool.push_back(id);
  }
  if (pool.empty()) pool = nodes;
  std::set<NodeId> inside(nodes.begin(), nodes.end());
  for (NodeId id : pool) {
    const Token *token = sentence.find(id);
    if (!token->governor || !inside.count(*token->governor)) return id;
  }
  return pool.front();
}

namespace {

bool fragments_cross(const Fragment &a, const Fragment &b) {
  return (a.first < b.first && b.first <= a.last && a.last < b.last) ||
         (b.first < a.first && a.first <= b.last && b.last < a.last);
}

}  // namespace

std::optional<std::pair<size_t, size_t>> find_crossing(
    std::span<const Mention> mentions) {
  for (size_t i = 0; i < mentions.size(); ++i) {
    for (size_t j = i + 1; j < mentions.size(); ++j) {
      if (mentions[i].sentence != mentions[j].sentence) continue;
      for (const Fragment &a : mentions[i].fragments) {
        for (const Fragment &b : mentions[j].fragments) {
          if (fragments_cross(a, b)) return std::make_pair(i, j);
        }
      }
    }
  }
  return std::nullopt;
}

std::string dataset_id_from_path(std::string_view path) {
  size_t slash = path.find_last_of('/');
  if (slash != std::string_view::npos) path.remove_prefix(slash + 1);
  size_t dot = path.find('.');
  if (dot != std::string_view::npos) path = path.substr(0, dot);
  size_t dash = path.find('-');
  if (dash != std::string_view::npos && dash > 0) path = path.substr(0, dash);
  return std::string(path);
}

namespace {

constexpr size_t kNoHeadField = static_cast<size_t>(-1);
constexpr size_t kDefaultHeadField = 2;  // eid-etype-head-other

size_t head_field_index(std::string_view global_entity) {
  if (global_entity.empty()) return kDefaultHeadField;
  auto names = split(trim(global_entity), '-');
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "head") return i;
  }
  return kNoHeadField;
}

// "e12" or "e12[2/3]".
struct EntityRef {
  std::string eid;
  int part = 0;   // 0 for continuous mentions
  int parts = 0;
};

std::optional<EntityRef> parse_entity_ref(std::string_view text) {
  EntityRef ref;
  size_t bracket = text.find('[');
  if (bracket == std::string_view::npos) {
    ref.eid = std::string(text);
    if (ref.eid.empty()) return std::nullopt;
    return ref;
  }
  if (text.back() != ']' || bracket == 0) return std::nullopt;
  std::string_view marker = text.substr(bracket + 1,
                                        text.size() - bracket - 2);
  size_t slash = marker.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto part = parse_uint(marker.substr(0, slash));
  auto parts = parse_uint(marker.substr(slash + 1));
  if (!part || !parts || *part < 1 || *part > *parts) return std::nullopt;
  ref.eid = std::string(text.substr(0, bracket));
  ref.part = static_cast<int>(*part);
  ref.parts = static_cast<int>(*parts);
  return ref;
}

std::string ref_text(const std::string &eid, int part, int parts) {
  if (part == 0) return eid;
  return eid + "[" + std::to_string(part) + "/" + std::to_string(parts) + "]";
}

struct EntityCell {
  size_t node;  // index into sentence nodes
  std::string value;
  size_t line;
};

struct PendingMention {
  Mention mention;
  std::optional<long> head_index;
  int parts = 0;                // 0 for continuous
  std::vector<int> opened;      // per part: 0 unopened, 1 open, 2 closed
  size_t line = 0;
};

class SentenceEntityReader {
 public:
  SentenceEntityReader(const Document &doc, const Sentence &sentence,
                       size_t sentence_index, size_t head_field,
                       std::vector<std::string> *warnings)
      : doc_(doc),
        sentence_(sentence),
        sentence_index_(sentence_index),
        head_field_(head_field),
        warnings_(warnings) {}

  std::vector<Mention> read(const std::vector<EntityCell> &cells) {
    for (const EntityCell &cell : cells) read_cell(cell);
    for (const auto &[eid, stack] : open_) {
      if (!stack.empty()) fail_unbalanced(eid, pending_[stack.back()].line);
    }
    for (const PendingMention &p : pending_) {
      if (p.parts > 0 && !complete(p)) fail_unbalanced(p.mention.chain_id,
                                                       p.line);
    }
    std::vector<Mention> out;
    for (PendingMention &p : pending_) {
      Mention &m = p.mention;
      std::sort(m.fragments.begin(), m.fragments.end());
      std::vector<NodeId> nodes = covered_nodes(sentence_, m.fragments);
      if (p.head_index && *p.head_index >= 1 &&
          static_cast<size_t>(*p.head_index) <= nodes.size()) {
        m.head = nodes[*p.head_index - 1];
      } else {
        if (p.head_index) {
          warnings_->push_back("sentence " + sentence_.sent_id +
                               ": head index " +
                               std::to_string(*p.head_index) +
                               " outside mention of " + m.chain_id +
                               ", using dependency head");
        }
        m.head = mention_head(m.fragments, sentence_);
      }
      m.is_zero = m.head.is_empty();
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  static bool complete(const PendingMention &p) {
    return std::all_of(p.opened.begin(), p.opened.end(),
                       [](int s) { return s == 2; });
  }

  [[noreturn]] void fail_unbalanced(const std::string &eid, size_t line) {
    throw ParseError("unbalanced Entity brackets for chain " + eid +
                         " in document '" + doc_.doc_id + "'",
                     line);
  }

  void read_cell(const EntityCell &cell) {
    std::string_view value = cell.value;
    size_t i = 0;
    while (i < value.size()) {
      if (value[i] == '(') {
        size_t j = value.find_first_of("()", i + 1);
        std::string_view content =
            value.substr(i + 1, (j == std::string_view::npos ? value.size()
                                                             : j) -
                                    i - 1);
        bool single = j != std::string_view::npos && value[j] == ')';
        open(content, single, cell);
        i = (j == std::string_view::npos) ? value.size()
                                          : (single ? j + 1 : j);
      } else {
        size_t j = value.find(')', i);
        if (j == std::string_view::npos) {
          throw ParseError("malformed Entity value '" + cell.value + "'",
                           cell.line);
        }
        close(value.substr(i, j - i), cell);
        i = j + 1;
      }
    }
  }

  void open(std::string_view content, bool single, const EntityCell &cell) {
    auto fields = split(content, '-');
    auto ref = parse_entity_ref(fields[0]);
    if (!ref) {
      throw ParseError("malformed Entity bracket '(" + std::string(content) +
                           "'",
                       cell.line);
    }
    NodeId at = sentence_.nodes[cell.node].id;
    size_t index;
    if (ref->part <= 1) {
      PendingMention p;
      p.mention.chain_id = ref->eid;
      p.mention.sentence = sentence_index_;
      p.line = cell.line;
      for (size_t f = 1; f < fields.size(); ++f) {
        p.mention.attrs.emplace_back(fields[f]);
      }
      if (head_field_ != kNoHeadField && head_field_ < fields.size()) {
        p.head_index = parse_uint(fields[head_field_]);
        p.mention.attrs[head_field_ - 1].clear();
      }
      while (!p.mention.attrs.empty() && p.mention.attrs.back().empty()) {
        p.mention.attrs.pop_back();
      }
      if (ref->part == 1) {
        p.parts = ref->parts;
        p.opened.assign(ref->parts, 0);
      }
      index = pending_.size();
      pending_.push_back(std::move(p));
    } else {
      index = find_discontinuous(*ref, 0, cell);
    }
    PendingMention &p = pending_[index];
    p.mention.fragments.push_back({at, at});
    if (ref->part > 0) p.opened[ref->part - 1] = single ? 2 : 1;
    if (!single && ref->part == 0) open_[ref->eid].push_back(index);
  }

  size_t find_discontinuous(const EntityRef &ref, int state,
                            const EntityCell &cell) {
    for (size_t k = pending_.size(); k-- > 0;) {
      const PendingMention &p = pending_[k];
      if (p.parts == ref.parts && p.mention.chain_id == ref.eid &&
          p.opened[ref.part - 1] == state) {
        return k;
      }
    }
    fail_unbalanced(ref_text(ref.eid, ref.part, ref.parts), cell.line);
  }

  void close(std::string_view content, const EntityCell &cell) {
    auto ref = parse_entity_ref(content);
    if (!ref) {
      throw ParseError("malformed Entity bracket '" + std::string(content) +
                           ")'",
                       cell.line);
    }
    NodeId at = sentence_.nodes[cell.node].id;
    if (ref->part == 0) {
      auto &stack = open_[ref->eid];
      if (stack.empty()) fail_unbalanced(ref->eid, cell.line);
      pending_[stack.back()].mention.fragments.back().last = at;
      stack.pop_back();
      return;
    }
    size_t index = find_discontinuous(*ref, 1, cell);
    PendingMention &p = pending_[index];
    // Fragments are appended in opening order; the open one for this part is
    // the one whose end has not moved yet and that started at or before us.
    int opened_before = 0;
    for (int k = 0; k < ref->part - 1; ++k) opened_before += p.opened[k] != 0;
    p.mention.fragments[opened_before].last = at;
    p.opened[ref->part - 1] = 2;
  }

  const Document &doc_;
  const Sentence &sentence_;
  size_t sentence_index_;
  size_t head_field_;
  std::vector<std::string> *warnings_;
  std::vector<PendingMention> pending_;
  std::map<std::string, std::vector<size_t>> open_;
};

class Parser {
 public:
  ParseResult run(std::string_view text) {
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      handle(line, line_no);
      if (end == text.size()) break;
      pos = end + 1;
    }
    finish_sentence(line_no);
    return std::move(result_);
  }

 private:
  void handle(std::string_view line, size_t line_no) {
    if (trim(line).empty()) {
      finish_sentence(line_no);
      return;
    }
    if (!in_sentence_) {
      in_sentence_ = true;
      sentence_ = Sentence();
      cells_.clear();
      sentence_line_ = line_no;
    }
    if (line.front() == '#') {
      comment(line, line_no);
    } else {
      token(line, line_no);
    }
  }

  static std::optional<std::string_view> comment_value(std::string_view line,
                                                       std::string_view key) {
    std::string_view body = trim(line.substr(1));
    if (!starts_with(body, key)) return std::nullopt;
    std::string_view rest = body.substr(key.size());
    if (rest.empty()) return std::string_view();
    rest = trim(rest);
    if (rest.empty()) return std::string_view();
    if (rest.front() != '=') return std::nullopt;
    return trim(rest.substr(1));
  }

  void comment(std::string_view line, size_t line_no) {
    if (auto v = comment_value(line, "newdoc id"); v) {
      start_document(std::string(*v));
    } else if (trim(line.substr(1)) == "newdoc") {
      start_document("");
    } else if (auto v = comment_value(line, "global.Entity"); v) {
      global_entity_ = std::string(*v);
      if (doc_ != nullptr && doc_->sentences.empty()) {
        doc_->global_entity = global_entity_;
      }
    } else if (auto v = comment_value(line, "sent_id"); v) {
      sentence_.sent_id = std::string(*v);
      if (!sentence_.sent_id.empty() &&
          !sent_ids_.insert(sentence_.sent_id).second) {
        throw ParseError("duplicate sent_id " + sentence_.sent_id, line_no);
      }
    } else if (auto v = comment_value(line, "text"); v) {
      sentence_.text = std::string(*v);
    } else {
      sentence_.comments.emplace_back(line);
    }
  }

  void start_document(std::string id) {
    Document doc;
    doc.doc_id = std::move(id);
    doc.global_entity = global_entity_;
    result_.documents.push_back(std::move(doc));
    doc_ = &result_.documents.back();
  }

  void token(std::string_view line, size_t line_no) {
    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    }
    if (cols[0].find('-') != std::string_view::npos) {
      sentence_.multiword.emplace_back(sentence_.nodes.size(),
                                       std::string(line));
      return;
    }
    auto id = NodeId::parse(cols[0]);
    if (!id || id->word < (id->is_empty() ? 0 : 1)) {
      throw ParseError("bad token id '" + std::string(cols[0]) + "'",
                       line_no);
    }
    Token t;
    t.id = *id;
    t.form = std::string(cols[1]);
    t.lemma = std::string(cols[2]);
    t.upos = std::string(cols[3]);
    t.xpos = std::string(cols[4]);
    t.feats = std::string(cols[5]);
    t.head = std::string(cols[6]);
    t.deprel = std::string(cols[7]);
    t.deps = std::string(cols[8]);
    if (!t.is_zero()) {
      if (auto h = parse_uint(t.head)) t.governor = NodeId{int(*h), 0};
    } else if (t.deps != "_") {
      std::string_view first = split(t.deps, '|')[0];
      t.governor = NodeId::parse(first.substr(0, first.find(':')));
    }
    if (t.governor && *t.governor == t.id) {
      throw ParseError("token " + t.id.str() + " governs itself", line_no);
    }
    if (cols[9] != "_") {
      for (std::string_view item : split(cols[9], '|')) {
        if (starts_with(item, "Entity=")) {
          cells_.push_back({sentence_.nodes.size(),
                            std::string(item.substr(7)), line_no});
        } else {
          t.misc.emplace_back(item);
        }
      }
    }
    if (!sentence_.nodes.empty() && !(sentence_.nodes.back().id < t.id)) {
      throw ParseError("token id " + t.id.str() + " out of order", line_no);
    }
    sentence_.nodes.push_back(std::move(t));
  }

  void finish_sentence(size_t line_no) {
    if (!in_sentence_) return;
    in_sentence_ = false;
    if (sentence_.nodes.empty()) {
      // A comment-only block: keep newdoc/global headers, ignore the rest.
      return;
    }
    int expected = 1;
    for (const Token &t : sentence_.nodes) {
      if (t.is_zero()) {
        if (t.id.word != expected - 1) {
          throw ParseError("empty node " + t.id.str() + " does not follow " +
                               "token " + std::to_string(expected - 1),
                           sentence_line_);
        }
        continue;
      }
      if (t.id.word != expected) {
        throw ParseError("token ids are not contiguous at " + t.id.str(),
                         sentence_line_);
      }
      ++expected;
    }
    if (doc_ == nullptr) start_document("");
    for (const Token &t : sentence_.nodes) {
      if (t.is_zero() && t.governor && t.governor->is_empty()) {
        result_.warnings.push_back(
            "sentence " + sentence_.sent_id + ": governor of empty node " +
            t.id.str() + " is itself an empty node (" + t.governor->str() +
            ")");
      }
    }
    size_t index = doc_->sentences.size();
    SentenceEntityReader reader(*doc_, sentence_, index,
                                head_field_index(doc_->global_entity),
                                &result_.warnings);
    std::vector<Mention> mentions = reader.read(cells_);
    doc_->sentences.push_back(std::move(sentence_));
    for (Mention &m : mentions) doc_->add_mention(std::move(m));
    doc_->normalize();
    (void)line_no;
  }

  ParseResult result_;
  Document *doc_ = nullptr;
  std::string global_entity_;
  std::set<std::string> sent_ids_;
  bool in_sentence_ = false;
  Sentence sentence_;
  size_t sentence_line_ = 0;
  std::vector<EntityCell> cells_;
};

// Bracket strings for every node of one sentence.
struct BracketItem {
  std::string text;
  // Sort keys: outer-first for opens, inner-first for closes.
  NodeId other_end;
  size_t order;
};

std::vector<std::string> entity_cells(const Document &doc, size_t sentence_index,
                                      const std::vector<const Mention *> &ms) {
  const Sentence &sentence = doc.sentences[sentence_index];
  size_t head_field = head_field_index(doc.global_entity);
  std::vector<std::vector<BracketItem>> opens(sentence.nodes.size());
  std::vector<std::vector<BracketItem>> singles(sentence.nodes.size());
  std::vector<std::vector<BracketItem>> closes(sentence.nodes.size());

  for (size_t order = 0; order < ms.size(); ++order) {
    const Mention &m = *ms[order];
    std::vector<Fragment> fragments = m.fragments;
    std::sort(fragments.begin(), fragments.end());
    std::vector<NodeId> nodes = covered_nodes(sentence, fragments);
    auto head_pos = std::find(nodes.begin(), nodes.end(), m.head);
    if (head_pos == nodes.end()) {
      throw SerializeError("mention of " + m.chain_id + " in sentence " +
                           sentence.sent_id + ": head " + m.head.str() +
                           " lies outside its fragments");
    }
    std::vector<std::string> fields;
    fields.push_back(m.chain_id);
    for (const std::string &a : m.attrs) fields.push_back(a);
    if (head_field != kNoHeadField) {
      if (fields.size() <= head_field) fields.resize(head_field + 1);
      fields[head_field] = std::to_string(head_pos - nodes.begin() + 1);
    }
    int parts = fragments.size() > 1 ? static_cast<int>(fragments.size()) : 0;
    for (size_t k = 0; k < fragments.size(); ++k) {
      const Fragment &f = fragments[k];
      auto first = sentence.index_of(f.first);
      auto last = sentence.index_of(f.last);
      if (!first || !last || *last < *first) {
        throw SerializeError("mention of " + m.chain_id + " in sentence " +
                             sentence.sent_id + " refers to missing nodes");
      }
      int part = parts > 0 ? static_cast<int>(k) + 1 : 0;
      std::string open_text = "(";
      if (part <= 1) {
        fields[0] = ref_text(m.chain_id, part, parts);
        open_text += join(fields, "-");
      } else {
        open_text += ref_text(m.chain_id, part, parts);
      }
      if (*first == *last) {
        singles[*first].push_back({open_text + ")", f.last, order});
      } else {
        opens[*first].push_back({open_text, f.last, order});
        closes[*last].push_back({ref_text(m.chain_id, part, parts) + ")",
                                 f.first, order});
      }
    }
  }

  std::vector<std::string> out(sentence.nodes.size());
  for (size_t i = 0; i < sentence.nodes.size(); ++i) {
    std::stable_sort(opens[i].begin(), opens[i].end(),
                     [](const BracketItem &a, const BracketItem &b) {
                       return std::tie(b.other_end, a.order) <
                              std::tie(a.other_end, b.order);
                     });
    std::stable_sort(closes[i].begin(), closes[i].end(),
                     [](const BracketItem &a, const BracketItem &b) {
                       return std::tie(b.other_end, b.order) <
                              std::tie(a.other_end, a.order);
                     });
    for (const auto *group : {&opens[i], &singles[i], &closes[i]}) {
      for (const BracketItem &item : *group) out[i] += item.text;
    }
  }
  return out;
}

void write_document(const Document &doc, bool with_header, std::string &out) {
  if (with_header && !doc.global_entity.empty()) {
    out += "# global.Entity = " + doc.global_entity + "\n";
  }
  std::vector<std::vector<const Mention *>> by_sentence(doc.sentences.size());
  std::vector<Mention> all;
  for (const auto &[id, chain] : doc.chains) {
    for (const Mention &m : chain.mentions) {
      if (m.sentence >= doc.sentences.size()) {
        throw SerializeError("mention of " + m.chain_id +
                             " refers to a missing sentence");
      }
      if (m.fragments.empty()) {
        throw SerializeError("mention of " + m.chain_id + " has no span");
      }
      by_sentence[m.sentence].push_back(&m);
      all.push_back(m);
    }
  }
  if (auto crossing = find_crossing(all)) {
    const Mention &a = all[crossing->first];
    const Mention &b = all[crossing->second];
    auto describe = [&](const Mention &m) {
      const Fragment &f = m.head_fragment();
      return m.chain_id + "[" + f.first.str() + ".." + f.last.str() + "]";
    };
    throw SerializeError("crossing mentions in sentence " +
                         doc.sentences[a.sentence].sent_id + ": " +
                         describe(a) + " and " + describe(b));
  }

  if (!doc.doc_id.empty()) out += "# newdoc id = " + doc.doc_id + "\n";
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence &sentence = doc.sentences[s];
    std::vector<std::string> cells = entity_cells(doc, s, by_sentence[s]);
    for (const std::string &c : sentence.comments) out += c + "\n";
    if (!sentence.sent_id.empty()) {
      out += "# sent_id = " + sentence.sent_id + "\n";
    }
    if (!sentence.text.empty()) out += "# text = " + sentence.text + "\n";
    size_t mw = 0;
    for (size_t i = 0; i < sentence.nodes.size(); ++i) {
      while (mw < sentence.multiword.size() &&
             sentence.multiword[mw].first <= i) {
        out += sentence.multiword[mw++].second + "\n";
      }
      const Token &t = sentence.nodes[i];
      std::vector<std::string> misc = t.misc;
      if (!cells[i].empty()) misc.push_back("Entity=" + cells[i]);
      std::string misc_col = misc.empty() ? "_" : join(misc, "|");
      out += t.id.str() + "\t" + t.form + "\t" + t.lemma + "\t" + t.upos +
             "\t" + t.xpos + "\t" + t.feats + "\t" + t.head + "\t" +
             t.deprel + "\t" + t.deps + "\t" + misc_col + "\n";
    }
    while (mw < sentence.multiword.size()) {
      out += sentence.multiword[mw++].second + "\n";
    }
    out += "\n";
  }
}

}  // namespace

ParseResult parse_conllu(std::string_view text) {
  return Parser().run(text);
}

std::string serialize_conllu(const Document &doc) {
  std::string out;
  write_document(doc, true, out);
  return out;
}

std::string serialize_conllu(std::span<const Document> docs) {
  std::string out;
  for (size_t i = 0; i < docs.size(); ++i) write_document(docs[i], i == 0, out);
  return out;
}

}  // namespace corefkit
