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

#ifndef COREFKIT_DIAGNOSTICS_H_
#define COREFKIT_DIAGNOSTICS_H_

#include <optional>
#include <string>
#include <vector>

namespace corefkit {

// A non-fatal problem found while decoding, cleaning or merging model output.
struct Diagnostic {
  std::string code;     // short machine-readable tag, e.g. "unmatched-close"
  std::string message;
  std::optional<size_t> position;  // token index in the text being processed

  bool operator==(const Diagnostic &) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace corefkit

#endif  // COREFKIT_DIAGNOSTICS_H_
