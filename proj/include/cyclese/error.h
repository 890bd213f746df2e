// Copyright 2026 The CycleSE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLESE_ERROR_H_
#define CYCLESE_ERROR_H_

#include <stdexcept>
#include <string>

namespace cyclese {

enum class ErrorCode {
  kFormat,
  kUnsupported,
  kConfig,
  kDimension,
  kDegenerate,
  kNumeric,
  kState,
  kData,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All toolkit failures surface as this exception type; the code tells
// callers (and the CLI exit path) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + " error: " +
                           what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kDegenerate: return "degenerate-stats";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kState: return "state";
    case ErrorCode::kData: return "data";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace cyclese

#endif  // CYCLESE_ERROR_H_
