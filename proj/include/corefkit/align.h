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

// Repair of model output: align output words to input words, then move the
// tags of the output onto the input so the text itself never changes.

#ifndef COREFKIT_ALIGN_H_
#define COREFKIT_ALIGN_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/diagnostics.h"
#include "corefkit/formats.h"

namespace corefkit {

enum class MatchKind { Anchor, Expanded, Fuzzy };

struct AlignedPair {
  size_t output = 0;
  size_t input = 0;
  MatchKind kind = MatchKind::Anchor;

  bool operator==(const AlignedPair &) const = default;
};

struct Alignment {
  std::vector<AlignedPair> pairs;  // ascending in both coordinates
  std::vector<size_t> unmatched_output;
  std::vector<size_t> unmatched_input;
};

// Words unique on both sides seed the alignment; the longest increasing run
// of them is kept and each gap is searched again with uniqueness counted
// inside the gap only.
Alignment anchor_align(std::span<const std::string> input,
                       std::span<const std::string> output);

// Grows every pair over equal neighbours, then pairs the words left in each
// gap greedily when their similarity reaches `threshold`.
Alignment expand_and_fuzzy(const Alignment &alignment,
                           std::span<const std::string> input,
                           std::span<const std::string> output,
                           double threshold = 0.5);

// Levenshtein distance over Unicode code points (UTF-8 input).
size_t edit_distance(std::string_view a, std::string_view b);
// 1 - distance / max length, in code points; 1 for two empty strings.
double similarity(std::string_view a, std::string_view b);

// Indices of a strictly increasing subsequence of maximum length.
std::vector<size_t> longest_increasing(std::span<const size_t> values);

struct CleanOptions {
  double fuzzy_threshold = 0.5;
  size_t reanchor_window = 1;
};

struct CleanResult {
  AnnotatedText text;  // tokens are exactly the input tokens
  Alignment alignment;
  Diagnostics diagnostics;
};

// `input_text` is decoded with the same format, so any tags it carries are
// ignored and only its words count.
CleanResult clean(std::string_view input_text, std::string_view model_output,
                  Format format, const CleanOptions &options = {});

// Same, over already decoded texts.
CleanResult clean_decoded(const AnnotatedText &input,
                          const DecodeResult &output,
                          const CleanOptions &options = {});

}  // namespace corefkit

#endif  // COREFKIT_ALIGN_H_
