// Copyright 2026 The wsc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Reduced-size invariant suite behind `wsc selftest`.

#ifndef WSC_TOOLS_SELFTEST_H_
#define WSC_TOOLS_SELFTEST_H_

#include <functional>
#include <string>
#include <vector>

namespace wsc::cli {

// Injection points for mutation testing: a corrupted x cot x formula must be
// caught by the triangle-comparison or round-trip properties.
struct SelfTestHooks {
  std::function<double(double)> x_cot_x;  // defaults to wsc::XCotX
};

struct SelfTestOptions {
  int samples = 100;
  uint64_t seed = 7;
  SelfTestHooks hooks;
};

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<PropertyResult> RunSelfTest(const SelfTestOptions& options);

}  // namespace wsc::cli

#endif  // WSC_TOOLS_SELFTEST_H_
