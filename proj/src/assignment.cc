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

#include "corefkit/assignment.h"

#include <algorithm>
#include <limits>

namespace corefkit {

std::vector<int> max_weight_assignment(
    const std::vector<std::vector<double>> &weights) {
  const size_t rows = weights.size();
  size_t cols = 0;
  for (const auto &row : weights) cols = std::max(cols, row.size());
  const size_t n = std::max(rows, cols);
  if (n == 0) return {};

  double top = 0;
  for (const auto &row : weights) {
    for (double w : row) top = std::max(top, w);
  }
  // Square cost matrix, 1-based, minimising top - weight.
  auto cost = [&](size_t i, size_t j) {
    double w = (i <= rows && j <= weights[i - 1].size()) ? weights[i - 1][j - 1]
                                                         : 0.0;
    return top - w;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1), v(n + 1);
  std::vector<size_t> match(n + 1), way(n + 1);  // match[col] = row
  for (size_t i = 1; i <= n; ++i) {
    match[0] = i;
    size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      size_t i0 = match[j0], j1 = 0;
      double delta = inf;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> out(rows, -1);
  for (size_t j = 1; j <= n; ++j) {
    size_t i = match[j];
    if (i >= 1 && i <= rows && j <= weights[i - 1].size()) {
      out[i - 1] = static_cast<int>(j - 1);
    }
  }
  return out;
}

}  // namespace corefkit
