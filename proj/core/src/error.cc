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

#include "wsc/error.h"

namespace wsc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kManifoldMismatch: return "manifold-mismatch";
    case ErrorCode::kBaseMismatch: return "base-mismatch";
    case ErrorCode::kInvalidPoint: return "invalid-point";
    case ErrorCode::kUndefinedLog: return "undefined-logarithm";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kCurvedManifold: return "curved-manifold";
    case ErrorCode::kStepTooLarge: return "step-too-large";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kNoContraction: return "no-contraction";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace wsc
