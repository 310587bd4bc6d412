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

// Head-matched coreference scoring (MUC, B-cubed, CEAF-e and their CoNLL
// average) and corpus diagnostics.

#ifndef COREFKIT_METRICS_H_
#define COREFKIT_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corefkit/conllu.h"

namespace corefkit {

struct PRF {
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  static PRF from(double precision, double recall);
};

// Numerators and denominators, summed over documents before dividing.
struct MetricCounts {
  double recall_num = 0;
  double recall_den = 0;
  double precision_num = 0;
  double precision_den = 0;

  MetricCounts &operator+=(const MetricCounts &other);
  PRF prf() const;
};

struct DocumentCounts {
  MetricCounts muc;
  MetricCounts b3;
  MetricCounts ceaf_e;

  DocumentCounts &operator+=(const DocumentCounts &other);
};

// Pairs (gold index, pred index) of mentions with the same head, greedily in
// document order within each head.
std::vector<std::pair<size_t, size_t>> head_match(
    std::span<const Mention> gold, std::span<const Mention> pred);

// Clusters of mention ids. Ids shared between gold and pred denote the same
// mention.
using Clusters = std::vector<std::vector<size_t>>;

MetricCounts muc_counts(const Clusters &gold, const Clusters &pred);
MetricCounts b3_counts(const Clusters &gold, const Clusters &pred);
MetricCounts ceaf_e_counts(const Clusters &gold, const Clusters &pred);
// phi4 similarity of two clusters.
double phi4(const std::vector<size_t> &a, const std::vector<size_t> &b);

// Drops singleton chains on both sides, matches mentions by head and counts
// all three metrics.
DocumentCounts score_counts(const Document &gold, const Document &pred);

struct Scores {
  PRF muc;
  PRF b3;
  PRF ceaf_e;
  double conll_f1 = 0;  // percentage

  static Scores from(const DocumentCounts &counts);
};

Scores score(const Document &gold, const Document &pred);

struct ScoreReport {
  std::map<std::string, Scores> datasets;
  double macro_average = 0;  // percentage
  std::vector<std::string> warnings;
};

// Documents are paired by (dataset id, doc id). A gold document without a
// prediction is scored against an empty one and reported.
ScoreReport conll_f1(const Corpus &gold, const Corpus &pred);

struct DensityRow {
  double gold_per_100 = 0;
  double pred_per_100 = 0;
  double relative_error = 0;
  size_t gold_mentions = 0;
  size_t pred_mentions = 0;
  size_t gold_tokens = 0;
  size_t pred_tokens = 0;
};

struct DensityStats {
  std::map<std::string, DensityRow> datasets;
};

struct DensityOptions {
  bool include_singletons = true;
};

// Mentions per 100 surface tokens. `pred` may be null.
DensityStats density(const Corpus &gold, const Corpus *pred,
                     const DensityOptions &options = {});
// Mentions per 100 surface tokens of one document set.
double mentions_per_100(std::span<const Document> docs,
                        bool include_singletons = true);

struct DistanceCdf {
  std::vector<std::pair<size_t, double>> bins;  // distance, cumulative share
  size_t total = 0;

  // Share of non-first mentions whose antecedent lies within `budget` words.
  double coverage(size_t budget) const;
};

// Distances in surface words between every non-first mention head and the
// head of the closest earlier mention of its chain.
std::vector<size_t> antecedent_distances(const Document &doc);
DistanceCdf antecedent_cdf(const Corpus &corpus);

}  // namespace corefkit

#endif  // COREFKIT_METRICS_H_
