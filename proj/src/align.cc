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

#include "corefkit/align.h"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

namespace corefkit {
namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();

// Bounded lookahead when skipping words inside a gap.
constexpr size_t kFuzzyLookahead = 64;

std::u32string code_points(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    size_t extra = c < 0x80           ? 0
                   : (c >> 5) == 0x6  ? 1
                   : (c >> 4) == 0xE  ? 2
                   : (c >> 3) == 0x1E ? 3
                                      : 4;
    char32_t cp = extra == 0 ? c : (c & (0x3F >> extra));
    bool ok = extra < 4 && i + extra < s.size();
    for (size_t k = 1; ok && k <= extra; ++k) {
      unsigned char next = s[i + k];
      ok = (next & 0xC0) == 0x80;
      cp = (cp << 6) | (next & 0x3F);
    }
    if (!ok) {
      // Stray byte: count it as one symbol of its own.
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void fill_unmatched(Alignment &al, size_t n_input, size_t n_output) {
  std::vector<bool> in(n_input), out(n_output);
  for (const AlignedPair &p : al.pairs) {
    in[p.input] = true;
    out[p.output] = true;
  }
  al.unmatched_input.clear();
  al.unmatched_output.clear();
  for (size_t i = 0; i < n_input; ++i) {
    if (!in[i]) al.unmatched_input.push_back(i);
  }
  for (size_t o = 0; o < n_output; ++o) {
    if (!out[o]) al.unmatched_output.push_back(o);
  }
}

void sort_pairs(std::vector<AlignedPair> &pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const AlignedPair &a, const AlignedPair &b) {
              return a.output < b.output;
            });
}

}  // namespace

size_t edit_distance(std::string_view a, std::string_view b) {
  std::u32string x = code_points(a), y = code_points(b);
  std::vector<size_t> row(y.size() + 1);
  for (size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= x.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= y.size(); ++j) {
      size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (x[i - 1] == y[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[y.size()];
}

double similarity(std::string_view a, std::string_view b) {
  if (a == b) return 1.0;
  size_t longest = std::max(code_points(a).size(), code_points(b).size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / longest;
}

std::vector<size_t> longest_increasing(std::span<const size_t> values) {
  std::vector<size_t> tails;  // index of smallest tail for each length
  std::vector<size_t> prev(values.size(), kNone);
  for (size_t k = 0; k < values.size(); ++k) {
    auto it = std::lower_bound(
        tails.begin(), tails.end(), values[k],
        [&](size_t index, size_t v) { return values[index] < v; });
    if (it != tails.begin()) prev[k] = *(it - 1);
    if (it == tails.end()) {
      tails.push_back(k);
    } else {
      *it = k;
    }
  }
  std::vector<size_t> out;
  for (size_t k = tails.empty() ? kNone : tails.back(); k != kNone; k = prev[k]) {
    out.push_back(k);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Alignment anchor_align(std::span<const std::string> input,
                       std::span<const std::string> output) {
  struct Region {
    size_t o_lo, o_hi, i_lo, i_hi;
  };
  struct Count {
    size_t n = 0;
    size_t at = 0;
  };
  Alignment al;
  std::vector<Region> work{{0, output.size(), 0, input.size()}};
  while (!work.empty()) {
    Region r = work.back();
    work.pop_back();
    if (r.o_lo >= r.o_hi || r.i_lo >= r.i_hi) continue;

    std::unordered_map<std::string_view, Count> in_count, out_count;
    for (size_t i = r.i_lo; i < r.i_hi; ++i) {
      Count &c = in_count[input[i]];
      ++c.n;
      c.at = i;
    }
    for (size_t o = r.o_lo; o < r.o_hi; ++o) {
      Count &c = out_count[output[o]];
      ++c.n;
      c.at = o;
    }
    std::vector<std::pair<size_t, size_t>> candidates;  // (output, input)
    for (size_t o = r.o_lo; o < r.o_hi; ++o) {
      if (out_count[output[o]].n != 1) continue;
      auto it = in_count.find(output[o]);
      if (it != in_count.end() && it->second.n == 1) {
        candidates.emplace_back(o, it->second.at);
      }
    }
    if (candidates.empty()) continue;

    std::vector<size_t> inputs;
    for (const auto &c : candidates) inputs.push_back(c.second);
    std::vector<size_t> keep = longest_increasing(inputs);

    size_t o_lo = r.o_lo, i_lo = r.i_lo;
    for (size_t k : keep) {
      auto [o, i] = candidates[k];
      al.pairs.push_back({o, i, MatchKind::Anchor});
      work.push_back({o_lo, o, i_lo, i});
      o_lo = o + 1;
      i_lo = i + 1;
    }
    work.push_back({o_lo, r.o_hi, i_lo, r.i_hi});
  }
  sort_pairs(al.pairs);
  fill_unmatched(al, input.size(), output.size());
  return al;
}

Alignment expand_and_fuzzy(const Alignment &alignment,
                           std::span<const std::string> input,
                           std::span<const std::string> output,
                           double threshold) {
  std::vector<size_t> in_of(output.size(), kNone);
  std::vector<bool> input_used(input.size());
  Alignment al;
  auto add = [&](size_t o, size_t i, MatchKind kind) {
    al.pairs.push_back({o, i, kind});
    in_of[o] = i;
    input_used[i] = true;
  };
  for (const AlignedPair &p : alignment.pairs) add(p.output, p.input, p.kind);

  for (const AlignedPair &p : alignment.pairs) {
    for (size_t o = p.output, i = p.input;
         o > 0 && i > 0 && in_of[o - 1] == kNone && !input_used[i - 1] &&
         output[o - 1] == input[i - 1];
         --o, --i) {
      add(o - 1, i - 1, MatchKind::Expanded);
    }
    for (size_t o = p.output + 1, i = p.input + 1;
         o < output.size() && i < input.size() && in_of[o] == kNone &&
         !input_used[i] && output[o] == input[i];
         ++o, ++i) {
      add(o, i, MatchKind::Expanded);
    }
  }
  sort_pairs(al.pairs);

  // Greedy in-order pairing inside every gap between matched pairs.
  std::vector<AlignedPair> fixed = al.pairs;
  size_t o_lo = 0, i_lo = 0;
  for (size_t k = 0; k <= fixed.size(); ++k) {
    size_t o_hi = k < fixed.size() ? fixed[k].output : output.size();
    size_t i_hi = k < fixed.size() ? fixed[k].input : input.size();
    size_t o = o_lo, i = i_lo;
    while (o < o_hi && i < i_hi) {
      if (similarity(output[o], input[i]) >= threshold) {
        add(o++, i++, MatchKind::Fuzzy);
        continue;
      }
      size_t skip_in = kNone, skip_out = kNone;
      for (size_t j = i + 1; j < std::min(i_hi, i + kFuzzyLookahead); ++j) {
        if (similarity(output[o], input[j]) >= threshold) {
          skip_in = j - i;
          break;
        }
      }
      for (size_t j = o + 1; j < std::min(o_hi, o + kFuzzyLookahead); ++j) {
        if (similarity(output[j], input[i]) >= threshold) {
          skip_out = j - o;
          break;
        }
      }
      if (skip_in == kNone && skip_out == kNone) {
        ++o;
        ++i;
      } else if (skip_out <= skip_in) {
        o += skip_out;
      } else {
        i += skip_in;
      }
    }
    if (k < fixed.size()) {
      o_lo = fixed[k].output + 1;
      i_lo = fixed[k].input + 1;
    }
  }
  sort_pairs(al.pairs);
  fill_unmatched(al, input.size(), output.size());
  return al;
}

namespace {

struct ProjectedSpan {
  std::string label;
  size_t start;
  size_t end;  // kNone when the output never closed it
  size_t order;
};

}  // namespace

CleanResult clean_decoded(const AnnotatedText &input,
                          const DecodeResult &output,
                          const CleanOptions &options) {
  CleanResult result;
  result.text.format = output.text.format;
  result.text.tokens = input.tokens;
  result.text.line_starts = input.line_starts;
  result.diagnostics = output.diagnostics;

  const auto &out_tokens = output.text.tokens;
  result.alignment = expand_and_fuzzy(
      anchor_align(input.tokens, out_tokens), input.tokens, out_tokens,
      options.fuzzy_threshold);

  std::vector<size_t> in_of(out_tokens.size(), kNone);
  size_t last_aligned = kNone;
  for (const AlignedPair &p : result.alignment.pairs) {
    in_of[p.output] = p.input;
    last_aligned = p.output;
  }

  auto project = [&](size_t o, Side side) -> std::optional<size_t> {
    if (o >= in_of.size()) return std::nullopt;
    if (in_of[o] != kNone) return in_of[o];
    if (last_aligned == kNone || o > last_aligned) return std::nullopt;
    for (size_t d = 1; d <= options.reanchor_window; ++d) {
      if (side == Side::After) {
        if (o >= d && in_of[o - d] != kNone) return in_of[o - d];
      } else if (o + d < in_of.size() && in_of[o + d] != kNone) {
        return in_of[o + d];
      }
    }
    return std::nullopt;
  };
  auto drop = [&](const TagEvent &e, const std::string &why) {
    result.diagnostics.push_back(
        {"dropped-tag", why + " (" + (e.chain.empty() ? "close" : e.chain) + ")",
         e.anchor});
  };

  const auto &events = output.text.events;
  std::vector<size_t> partner(events.size(), kNone);
  {
    std::vector<size_t> stack;
    for (size_t k = 0; k < events.size(); ++k) {
      if (events[k].kind == EventKind::Open) {
        stack.push_back(k);
      } else if (events[k].kind == EventKind::Close && !stack.empty()) {
        partner[k] = stack.back();
        partner[stack.back()] = k;
        stack.pop_back();
      }
    }
  }

  std::vector<ProjectedSpan> spans;
  std::vector<TagEvent> singles;  // Head and Zero events
  for (size_t k = 0; k < events.size(); ++k) {
    const TagEvent &e = events[k];
    switch (e.kind) {
      case EventKind::Open: {
        auto start = project(e.anchor, e.side);
        if (!start) {
          drop(e, "span start has no aligned input word");
          if (partner[k] != kNone) drop(events[partner[k]], "partner dropped");
          break;
        }
        if (partner[k] == kNone) {
          spans.push_back({e.chain, *start, kNone, k});
          break;
        }
        const TagEvent &close = events[partner[k]];
        auto end = project(close.anchor, close.side);
        if (!end || *end < *start) {
          drop(close, "span end has no aligned input word");
          drop(e, "partner dropped");
          break;
        }
        spans.push_back({e.chain, *start, *end, k});
        break;
      }
      case EventKind::Close:
        if (partner[k] == kNone) drop(e, "close without open");
        break;
      case EventKind::Head:
      case EventKind::Zero: {
        auto at = project(e.anchor, e.side);
        if (!at) {
          drop(e, "tag word has no aligned input word");
          break;
        }
        singles.push_back({e.kind, e.chain, *at, e.side});
        break;
      }
    }
  }

  std::stable_sort(spans.begin(), spans.end(),
                   [&](const ProjectedSpan &a, const ProjectedSpan &b) {
                     if (a.start != b.start) return a.start < b.start;
                     if (a.end != b.end) return a.end > b.end;
                     if (result.text.format == Format::Crac &&
                         a.label != b.label) {
                       return label_less(a.label, b.label);
                     }
                     return a.order < b.order;
                   });
  std::vector<const ProjectedSpan *> kept;
  for (const ProjectedSpan &s : spans) {
    bool crosses = std::any_of(kept.begin(), kept.end(),
                               [&](const ProjectedSpan *k) {
                                 return k->start < s.start && s.start <= k->end &&
                                        k->end < s.end;
                               });
    if (crosses) {
      result.diagnostics.push_back(
          {"dropped-tag", "projected span crosses another (" + s.label + ")",
           s.start});
      continue;
    }
    kept.push_back(&s);
  }
  for (const ProjectedSpan *s : kept) {
    result.text.events.push_back({EventKind::Open, s->label, s->start,
                                  Side::Before});
    if (s->end != kNone) {
      result.text.events.push_back({EventKind::Close, "", s->end, Side::After});
    }
  }
  // A zero in front of a word that does not start a line reads back as
  // following the previous word, so store it that way.
  for (TagEvent &e : singles) {
    if (e.kind == EventKind::Zero && e.side == Side::Before && e.anchor > 0 &&
        !std::binary_search(input.line_starts.begin(),
                            input.line_starts.end(), e.anchor)) {
      e.anchor -= 1;
      e.side = Side::After;
    }
    result.text.events.push_back(std::move(e));
  }
  canonicalize_events(result.text.events);
  return result;
}

CleanResult clean(std::string_view input_text, std::string_view model_output,
                  Format format, const CleanOptions &options) {
  AnnotatedText input = decode(input_text, format).text;
  return clean_decoded(input, decode(model_output, format), options);
}

}  // namespace corefkit
