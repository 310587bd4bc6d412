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

// Slow reference implementations of the cluster metrics.

#ifndef COREFKIT_TESTS_METRIC_ORACLES_H_
#define COREFKIT_TESTS_METRIC_ORACLES_H_

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "corefkit/metrics.h"
#include "support/random_doc.h"

namespace corefkit::testing::oracle {

// Partition parts of `key` under `other`; ids missing from `other` count as
// parts of their own.
inline size_t parts(const std::vector<size_t> &key, const Clusters &other) {
  std::set<long> seen;
  long alone = -1;
  for (size_t m : key) {
    long owner = alone--;
    for (size_t c = 0; c < other.size(); ++c) {
      if (std::count(other[c].begin(), other[c].end(), m)) owner = c;
    }
    seen.insert(owner);
  }
  return seen.size();
}

inline std::pair<double, double> muc_oracle(const Clusters &gold,
                                     const Clusters &pred) {
  auto side = [](const Clusters &k, const Clusters &o) {
    double num = 0, den = 0;
    for (const auto &c : k) {
      num += c.size() - parts(c, o);
      den += c.size() - 1;
    }
    return den == 0 ? 0.0 : num / den;
  };
  return {side(gold, pred), side(pred, gold)};
}

inline size_t overlap(const std::vector<size_t> &a,
                      const std::vector<size_t> &b) {
  size_t n = 0;
  for (size_t x : a) n += std::count(b.begin(), b.end(), x);
  return n;
}

inline std::pair<double, double> b3_oracle(const Clusters &gold,
                                    const Clusters &pred) {
  auto side = [](const Clusters &k, const Clusters &o) {
    double sum = 0;
    size_t count = 0;
    for (const auto &c : k) {
      for (size_t m : c) {
        ++count;
        for (const auto &d : o) {
          if (std::count(d.begin(), d.end(), m)) {
            sum += static_cast<double>(overlap(c, d)) / c.size();
          }
        }
      }
    }
    return count == 0 ? 0.0 : sum / count;
  };
  return {side(gold, pred), side(pred, gold)};
}

// Best phi4 total over every injective mapping of the smaller side.
inline double ceaf_best(const Clusters &gold, const Clusters &pred) {
  const Clusters &small = gold.size() <= pred.size() ? gold : pred;
  const Clusters &large = gold.size() <= pred.size() ? pred : gold;
  std::vector<size_t> perm(large.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0;
  do {
    double total = 0;
    for (size_t k = 0; k < small.size(); ++k) {
      const auto &a = small[k], &b = large[perm[k]];
      total += 2.0 * overlap(a, b) / (a.size() + b.size());
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline Clusters random_clusters(std::mt19937_64 &rng, size_t universe,
                                size_t max_chains = 5) {
  Clusters out(pick(rng, 0, max_chains));
  for (size_t m = 0; m < universe; ++m) {
    if (out.empty() || pick(rng, 0, 3) == 0) continue;
    out[pick(rng, 0, out.size() - 1)].push_back(m);
  }
  std::erase_if(out, [](const auto &c) { return c.empty(); });
  return out;
}

}  // namespace corefkit::testing::oracle

#endif  // COREFKIT_TESTS_METRIC_ORACLES_H_
