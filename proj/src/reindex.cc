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

#include "corefkit/reindex.h"

#include <algorithm>
#include <limits>
#include <vector>

#include "corefkit/text_util.h"

namespace corefkit {

void IdMap::bind(long local, const std::string &global) {
  local_to_global[local] = global;
  global_to_local[global] = local;
}

ChainIdAllocator ChainIdAllocator::after(const Document &doc) {
  long top = 0;
  for (const auto &[id, chain] : doc.chains) {
    if (id.size() > 1 && id[0] == 'e') {
      if (auto n = parse_uint(std::string_view(id).substr(1))) {
        top = std::max(top, *n);
      }
    }
  }
  return ChainIdAllocator(top + 1);
}

std::string ChainIdAllocator::next() { return "e" + std::to_string(next_++); }

Localized localize(const AnnotatedText &context) {
  Localized out;
  out.text = context;
  for (TagEvent &e : out.text.events) {
    if (e.kind == EventKind::Close) continue;
    auto it = out.map.global_to_local.find(e.chain);
    long local;
    if (it == out.map.global_to_local.end()) {
      local = static_cast<long>(out.map.n_context++);
      out.map.bind(local, e.chain);
    } else {
      local = it->second;
    }
    e.chain = std::to_string(local);
  }
  return out;
}

AnnotatedText globalize(const AnnotatedText &predicted, IdMap &map,
                        ChainIdAllocator &allocator,
                        Diagnostics *diagnostics) {
  AnnotatedText out = predicted;
  out.events.clear();
  // Opens whose label was rejected; their Close goes too.
  std::vector<bool> open_dropped;
  for (const TagEvent &e : predicted.events) {
    if (e.kind == EventKind::Close) {
      bool dropped = !open_dropped.empty() && open_dropped.back();
      if (!open_dropped.empty()) open_dropped.pop_back();
      if (!dropped) out.events.push_back(e);
      continue;
    }
    auto local = parse_uint(e.chain);
    if (!local) {
      if (diagnostics) {
        diagnostics->push_back({"bad-index",
                                "chain index '" + e.chain + "' is not a number",
                                e.anchor});
      }
      if (e.kind == EventKind::Open) open_dropped.push_back(true);
      continue;
    }
    if (e.kind == EventKind::Open) open_dropped.push_back(false);
    auto it = map.local_to_global.find(*local);
    TagEvent g = e;
    if (it != map.local_to_global.end()) {
      g.chain = it->second;
    } else {
      g.chain = allocator.next();
      map.bind(*local, g.chain);
    }
    out.events.push_back(std::move(g));
  }
  return out;
}

}  // namespace corefkit
