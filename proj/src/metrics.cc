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

#include "corefkit/metrics.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "corefkit/assignment.h"

namespace corefkit {
namespace {

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

PRF PRF::from(double precision, double recall) {
  PRF out{precision, recall, 0};
  if (precision + recall > 0) {
    out.f1 = 2 * precision * recall / (precision + recall);
  }
  return out;
}

MetricCounts &MetricCounts::operator+=(const MetricCounts &other) {
  recall_num += other.recall_num;
  recall_den += other.recall_den;
  precision_num += other.precision_num;
  precision_den += other.precision_den;
  return *this;
}

PRF MetricCounts::prf() const {
  return PRF::from(ratio(precision_num, precision_den),
                   ratio(recall_num, recall_den));
}

DocumentCounts &DocumentCounts::operator+=(const DocumentCounts &other) {
  muc += other.muc;
  b3 += other.b3;
  ceaf_e += other.ceaf_e;
  return *this;
}

std::vector<std::pair<size_t, size_t>> head_match(
    std::span<const Mention> gold, std::span<const Mention> pred) {
  using Key = std::pair<size_t, NodeId>;
  auto bucket = [](std::span<const Mention> ms) {
    std::vector<size_t> order(ms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return mention_less(ms[a], ms[b]);
    });
    std::map<Key, std::vector<size_t>> out;
    for (size_t i : order) out[{ms[i].sentence, ms[i].head}].push_back(i);
    return out;
  };
  auto g = bucket(gold);
  auto p = bucket(pred);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (const auto &[key, gs] : g) {
    auto it = p.find(key);
    if (it == p.end()) continue;
    for (size_t k = 0; k < std::min(gs.size(), it->second.size()); ++k) {
      pairs.emplace_back(gs[k], it->second[k]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

// Cluster index of every mention id, or -1.
std::map<size_t, size_t> owner_of(const Clusters &clusters) {
  std::map<size_t, size_t> owner;
  for (size_t c = 0; c < clusters.size(); ++c) {
    for (size_t id : clusters[c]) owner[id] = c;
  }
  return owner;
}

// Sum over `key` clusters of |K| minus the number of parts `other` cuts K
// into, and the sum of |K| - 1.
std::pair<double, double> muc_side(const Clusters &key, const Clusters &other) {
  auto owner = owner_of(other);
  double num = 0, den = 0;
  for (const auto &k : key) {
    if (k.empty()) continue;
    std::set<size_t> parts;
    size_t loose = 0;
    for (size_t id : k) {
      auto it = owner.find(id);
      if (it == owner.end()) {
        ++loose;
      } else {
        parts.insert(it->second);
      }
    }
    num += static_cast<double>(k.size()) - (parts.size() + loose);
    den += static_cast<double>(k.size()) - 1;
  }
  return {num, den};
}

std::pair<double, double> b3_side(const Clusters &key, const Clusters &other) {
  auto owner = owner_of(other);
  double num = 0, den = 0;
  for (const auto &k : key) {
    std::map<size_t, size_t> overlap;
    for (size_t id : k) {
      auto it = owner.find(id);
      if (it != owner.end()) ++overlap[it->second];
    }
    for (const auto &[c, n] : overlap) {
      num += static_cast<double>(n) * n / k.size();
    }
    den += k.size();
  }
  return {num, den};
}

}  // namespace

MetricCounts muc_counts(const Clusters &gold, const Clusters &pred) {
  auto [rn, rd] = muc_side(gold, pred);
  auto [pn, pd] = muc_side(pred, gold);
  return {rn, rd, pn, pd};
}

MetricCounts b3_counts(const Clusters &gold, const Clusters &pred) {
  auto [rn, rd] = b3_side(gold, pred);
  auto [pn, pd] = b3_side(pred, gold);
  return {rn, rd, pn, pd};
}

double phi4(const std::vector<size_t> &a, const std::vector<size_t> &b) {
  if (a.empty() && b.empty()) return 0;
  std::set<size_t> sa(a.begin(), a.end());
  size_t common = 0;
  for (size_t id : b) common += sa.count(id);
  return 2.0 * common / (a.size() + b.size());
}

MetricCounts ceaf_e_counts(const Clusters &gold, const Clusters &pred) {
  std::vector<std::vector<double>> w(gold.size(),
                                     std::vector<double>(pred.size()));
  for (size_t i = 0; i < gold.size(); ++i) {
    for (size_t j = 0; j < pred.size(); ++j) w[i][j] = phi4(gold[i], pred[j]);
  }
  double total = 0;
  std::vector<int> assign = max_weight_assignment(w);
  for (size_t i = 0; i < assign.size(); ++i) {
    if (assign[i] >= 0) total += w[i][assign[i]];
  }
  return {total, static_cast<double>(gold.size()), total,
          static_cast<double>(pred.size())};
}

DocumentCounts score_counts(const Document &gold, const Document &pred) {
  auto collect = [](const Document &doc, std::vector<Mention> &mentions,
                    std::vector<size_t> &cluster_of) {
    size_t c = 0;
    for (const auto &[id, chain] : doc.chains) {
      if (chain.mentions.size() < 2) continue;
      for (const Mention &m : chain.mentions) {
        mentions.push_back(m);
        cluster_of.push_back(c);
      }
      ++c;
    }
    return c;
  };
  std::vector<Mention> gm, pm;
  std::vector<size_t> gc, pc;
  size_t n_gold = collect(gold, gm, gc);
  size_t n_pred = collect(pred, pm, pc);

  std::vector<size_t> pred_id(pm.size());
  for (size_t j = 0; j < pm.size(); ++j) pred_id[j] = gm.size() + j;
  for (auto [g, p] : head_match(gm, pm)) pred_id[p] = g;

  Clusters gold_clusters(n_gold), pred_clusters(n_pred);
  for (size_t i = 0; i < gm.size(); ++i) gold_clusters[gc[i]].push_back(i);
  for (size_t j = 0; j < pm.size(); ++j) {
    pred_clusters[pc[j]].push_back(pred_id[j]);
  }

  DocumentCounts out;
  out.muc = muc_counts(gold_clusters, pred_clusters);
  out.b3 = b3_counts(gold_clusters, pred_clusters);
  out.ceaf_e = ceaf_e_counts(gold_clusters, pred_clusters);
  return out;
}

Scores Scores::from(const DocumentCounts &counts) {
  Scores s;
  s.muc = counts.muc.prf();
  s.b3 = counts.b3.prf();
  s.ceaf_e = counts.ceaf_e.prf();
  s.conll_f1 = 100.0 * (s.muc.f1 + s.b3.f1 + s.ceaf_e.f1) / 3.0;
  return s;
}

Scores score(const Document &gold, const Document &pred) {
  return Scores::from(score_counts(gold, pred));
}

namespace {

const Document *find_document(const Dataset &dataset, const Document &like,
                              size_t index) {
  if (like.doc_id.empty()) {
    return index < dataset.documents.size() ? &dataset.documents[index]
                                            : nullptr;
  }
  for (const Document &d : dataset.documents) {
    if (d.doc_id == like.doc_id) return &d;
  }
  return nullptr;
}

}  // namespace

ScoreReport conll_f1(const Corpus &gold, const Corpus &pred) {
  ScoreReport report;
  for (const Dataset &g : gold.datasets) {
    const Dataset *p = pred.find(g.dataset_id);
    if (p == nullptr) {
      report.warnings.push_back("dataset " + g.dataset_id +
                                " has no predictions");
    }
    DocumentCounts counts;
    for (size_t i = 0; i < g.documents.size(); ++i) {
      const Document &gd = g.documents[i];
      const Document *pd = p ? find_document(*p, gd, i) : nullptr;
      if (pd == nullptr) {
        if (p != nullptr) {
          report.warnings.push_back("document " + gd.doc_id + " of " +
                                    g.dataset_id +
                                    " missing from predictions");
        }
        counts += score_counts(gd, Document{});
      } else {
        counts += score_counts(gd, *pd);
      }
    }
    report.datasets[g.dataset_id] = Scores::from(counts);
  }
  for (const Dataset &p : pred.datasets) {
    if (gold.find(p.dataset_id) == nullptr) {
      report.warnings.push_back("dataset " + p.dataset_id +
                                " has no gold annotations; ignored");
    }
  }
  if (!report.datasets.empty()) {
    double sum = 0;
    for (const auto &[id, s] : report.datasets) sum += s.conll_f1;
    report.macro_average = sum / report.datasets.size();
  }
  return report;
}

namespace {

std::pair<size_t, size_t> mention_and_token_counts(
    std::span<const Document> docs, bool include_singletons) {
  size_t mentions = 0, tokens = 0;
  for (const Document &d : docs) {
    tokens += d.surface_size();
    for (const auto &[id, chain] : d.chains) {
      if (include_singletons || chain.mentions.size() > 1) {
        mentions += chain.mentions.size();
      }
    }
  }
  return {mentions, tokens};
}

}  // namespace

double mentions_per_100(std::span<const Document> docs,
                        bool include_singletons) {
  auto [m, t] = mention_and_token_counts(docs, include_singletons);
  return 100.0 * ratio(static_cast<double>(m), static_cast<double>(t));
}

DensityStats density(const Corpus &gold, const Corpus *pred,
                     const DensityOptions &options) {
  DensityStats stats;
  for (const Dataset &g : gold.datasets) {
    DensityRow row;
    std::tie(row.gold_mentions, row.gold_tokens) =
        mention_and_token_counts(g.documents, options.include_singletons);
    row.gold_per_100 = mentions_per_100(g.documents, options.include_singletons);
    if (const Dataset *p = pred ? pred->find(g.dataset_id) : nullptr) {
      std::tie(row.pred_mentions, row.pred_tokens) =
          mention_and_token_counts(p->documents, options.include_singletons);
      row.pred_per_100 =
          mentions_per_100(p->documents, options.include_singletons);
    }
    row.relative_error =
        row.gold_per_100 > 0
            ? (row.pred_per_100 - row.gold_per_100) / row.gold_per_100
            : 0.0;
    stats.datasets[g.dataset_id] = row;
  }
  return stats;
}

double DistanceCdf::coverage(size_t budget) const {
  auto it = std::upper_bound(
      bins.begin(), bins.end(), budget,
      [](size_t b, const std::pair<size_t, double> &bin) { return b < bin.first; });
  if (it == bins.begin()) return 0.0;
  return (it - 1)->second;
}

std::vector<size_t> antecedent_distances(const Document &doc) {
  std::vector<size_t> offset(doc.sentences.size() + 1, 0);
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    offset[s + 1] = offset[s] + doc.sentences[s].surface_size();
  }
  std::vector<size_t> out;
  for (const auto &[id, chain] : doc.chains) {
    std::vector<size_t> positions;
    for (const Mention &m : chain.mentions) {
      if (m.sentence >= doc.sentences.size()) continue;
      // An empty node sits at the word it follows.
      positions.push_back(offset[m.sentence] + m.head.word);
    }
    std::sort(positions.begin(), positions.end());
    for (size_t k = 1; k < positions.size(); ++k) {
      out.push_back(positions[k] - positions[k - 1]);
    }
  }
  return out;
}

DistanceCdf antecedent_cdf(const Corpus &corpus) {
  std::vector<size_t> all;
  for (const Dataset &d : corpus.datasets) {
    for (const Document &doc : d.documents) {
      auto ds = antecedent_distances(doc);
      all.insert(all.end(), ds.begin(), ds.end());
    }
  }
  std::sort(all.begin(), all.end());
  DistanceCdf cdf;
  cdf.total = all.size();
  for (size_t i = 0; i < all.size(); ++i) {
    if (i + 1 < all.size() && all[i + 1] == all[i]) continue;
    cdf.bins.emplace_back(all[i], static_cast<double>(i + 1) / all.size());
  }
  return cdf;
}

}  // namespace corefkit
