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

// Window-local chain numbering. Chains visible in the context are shown to
// the model as 0..N-1; anything the model numbers N or above is a new chain.

#ifndef COREFKIT_REINDEX_H_
#define COREFKIT_REINDEX_H_

#include <map>
#include <string>

#include "corefkit/conllu.h"
#include "corefkit/diagnostics.h"
#include "corefkit/formats.h"

namespace corefkit {

struct IdMap {
  std::map<long, std::string> local_to_global;
  std::map<std::string, long> global_to_local;
  size_t n_context = 0;

  // Adds a pair to both directions.
  void bind(long local, const std::string &global);
  bool operator==(const IdMap &) const = default;
};

// Hands out "e<n>" chain ids in increasing order.
class ChainIdAllocator {
 public:
  explicit ChainIdAllocator(long next = 1) : next_(next) {}
  // Starts after the largest numeric "e<n>" id used in `doc`.
  static ChainIdAllocator after(const Document &doc);

  std::string next();
  long peek() const { return next_; }

 private:
  long next_;
};

struct Localized {
  AnnotatedText text;
  IdMap map;
};

// Renumbers the labels of `context` (global chain ids) by first appearance.
Localized localize(const AnnotatedText &context);

// Maps local labels back to global chain ids. Labels below N go through the
// map; every other distinct label gets one fresh id and is added to the map.
// Non-numeric labels are dropped, together with the Close of a dropped Open.
AnnotatedText globalize(const AnnotatedText &predicted, IdMap &map,
                        ChainIdAllocator &allocator, Diagnostics *diagnostics);

}  // namespace corefkit

#endif  // COREFKIT_REINDEX_H_
