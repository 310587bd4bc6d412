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

#ifndef COREFKIT_ASSIGNMENT_H_
#define COREFKIT_ASSIGNMENT_H_

#include <vector>

namespace corefkit {

// Maximum-weight one-to-one assignment on a rectangular matrix of
// non-negative weights (Hungarian method, O(n^3)). Returns, for each row, the
// assigned column or -1.
std::vector<int> max_weight_assignment(
    const std::vector<std::vector<double>> &weights);

}  // namespace corefkit

#endif  // COREFKIT_ASSIGNMENT_H_
