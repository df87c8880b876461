// Copyright 2026 The Realword Authors.
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

// Writes the bundled demo corpus to stdout. data/demo/corpus.txt is this
// program's output; test_corpus checks that the two still agree.

#include <iostream>

#include "demo_language.h"

int main() {
  using namespace realword::demo;
  const auto res = load_resources();
  const Generator gen(res.lexicon);
  std::cout << render_corpus(gen.generate(kCorpusSentences, kCorpusSeed));
  return 0;
}
