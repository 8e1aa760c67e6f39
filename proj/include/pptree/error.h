/*
 * Copyright 2026 The PPTree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PPTREE_ERROR_H_
#define PPTREE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pptree {

// Failure categories surfaced by the library. The HTTP layer maps these onto
// status codes, the CLI onto exit codes.
enum class ErrorCode {
  kInvalidArgument,
  kDegenerateGrouping,
  kNoVariation,
  kSingularScatter,
  kNoSeparation,
  kEmptyGroup,
  kEmptySubset,
  kNoCandidateSplits,
  kDimensionMismatch,
  kParse,
  kIo,
  kNotFound,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pptree

#endif  // PPTREE_ERROR_H_
