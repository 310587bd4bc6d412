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

#ifndef COREFKIT_TESTS_TEST_UTIL_H_
#define COREFKIT_TESTS_TEST_UTIL_H_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "corefkit/conllu.h"

namespace corefkit::testing {

inline std::string data_path(const std::string &name) {
  return std::string(COREFKIT_TEST_DATA) + "/" + name;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document lison_document() {
  return parse_conllu(read_file(data_path("lison.conllu"))).documents.at(0);
}

}  // namespace corefkit::testing

#endif  // COREFKIT_TESTS_TEST_UTIL_H_
