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

// Runs every acceptance criterion and prints one line per criterion.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "acceptance.h"

int main(int argc, char** argv) {
  CLI::App app{"realword acceptance suite"};
  std::size_t jobs = 1;
  if (const char* env = std::getenv("REALWORD_JOBS")) jobs = std::stoul(env);
  std::vector<int> only;
  app.add_option("--jobs", jobs, "worker threads for the corrector");
  app.add_option("--only", only, "criteria to run (default all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  realword::acceptance::Options options;
  options.jobs = jobs;
  options.only = only;
  const auto results = realword::acceptance::run(options, [](const auto& r) {
    std::cout << realword::acceptance::format(r) << std::endl;
  });
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  return realword::acceptance::exit_code(results);
}
