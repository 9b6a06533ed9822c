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

#include "lloyd/error.hpp"

namespace lloyd {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidSize: return "InvalidSize";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kMalformedOffsets: return "MalformedOffsets";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEmptySeedSet: return "EmptySeedSet";
    case ErrorCode::kInvalidSeed: return "InvalidSeed";
    case ErrorCode::kDuplicateCenter: return "DuplicateCenter";
    case ErrorCode::kUnreachableNode: return "UnreachableNode";
    case ErrorCode::kDisconnectedCluster: return "DisconnectedCluster";
    case ErrorCode::kUnassignedNode: return "UnassignedNode";
    case ErrorCode::kInfiniteDistance: return "InfiniteDistance";
    case ErrorCode::kSingularDiagonal: return "SingularDiagonal";
    case ErrorCode::kRankDeficientCluster: return "RankDeficientCluster";
    case ErrorCode::kSingularCoarseSolve: return "SingularCoarseSolve";
    case ErrorCode::kDivergentRho: return "DivergentRho";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotSpd: return "NotSPD";
  }
  return "Unknown";
}

}  // namespace lloyd
