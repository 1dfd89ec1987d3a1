// Copyright 2026 The fosgkit Authors.
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

#include "fosg/status.h"

namespace fosg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kStepAtTerminal: return "StepAtTerminal";
    case ErrorCode::kIllegalAction: return "IllegalAction";
    case ErrorCode::kMissingChancePolicy: return "MissingChancePolicy";
    case ErrorCode::kNotSerial: return "NotSerial";
    case ErrorCode::kDepthExceeded: return "DepthExceeded";
    case ErrorCode::kThickPublicSets: return "ThickPublicSets";
    case ErrorCode::kImperfectRecall: return "ImperfectRecall";
    case ErrorCode::kNotOneTimeable: return "NotOneTimeable";
    case ErrorCode::kInvalidTiming: return "InvalidTiming";
    case ErrorCode::kNotTimeable: return "NotTimeable";
    case ErrorCode::kMissingPolicy: return "MissingPolicy";
    case ErrorCode::kNotZeroSum: return "NotZeroSum";
    case ErrorCode::kUnknownPublicState: return "UnknownPublicState";
    case ErrorCode::kInconsistentPbs: return "InconsistentPBS";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace fosg
