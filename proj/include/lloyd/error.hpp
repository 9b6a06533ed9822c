// Copyright 2026 The lloydclust Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace lloyd {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidSize,
  kNegativeWeight,
  kSelfLoop,
  kMalformedOffsets,
  kNotSquare,
  kParseError,
  kIoError,
  kEmptySeedSet,
  kInvalidSeed,
  kDuplicateCenter,
  kUnreachableNode,
  kDisconnectedCluster,
  kUnassignedNode,
  kInfiniteDistance,
  kSingularDiagonal,
  kRankDeficientCluster,
  kSingularCoarseSolve,
  kDivergentRho,
  kTooLarge,
  kNotSpd,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lloyd
