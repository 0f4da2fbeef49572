// Copyright 2026 The fairmatch Authors.
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

// The invariant suite behind `fairmatch verify`, reusable from tests.

#ifndef FAIRMATCH_VERIFY_HPP_
#define FAIRMATCH_VERIFY_HPP_

#include <string>
#include <vector>

#include "fairmatch/instance.hpp"
#include "fairmatch/oracle.hpp"

namespace fairmatch {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // why it failed, or why it was skipped
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool AllPassed() const;
};

struct VerifyOptions {
  bool oracle = false;        // add brute-force comparisons
  std::int64_t oracle_limit = DefaultOracleLimit();
};

// Runs every applicable mechanism invariant on `inst`. Indivisible checks are
// skipped for capacitated instances. With the oracle enabled, an instance
// above the limit makes this throw OracleSizeError.
VerifyReport VerifyInstance(const Instance& inst, const VerifyOptions& options);

}  // namespace fairmatch

#endif  // FAIRMATCH_VERIFY_HPP_
