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

#ifndef FOSG_STATUS_H_
#define FOSG_STATUS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fosg {

// Error kinds raised by the library. The numeric values are mirrored by
// fosg_status in the C header and must stay in sync with it.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kParseError = 2,
  kValidation = 3,
  kStepAtTerminal = 4,
  kIllegalAction = 5,
  kMissingChancePolicy = 6,
  kNotSerial = 7,
  kDepthExceeded = 8,
  kThickPublicSets = 9,
  kImperfectRecall = 10,
  kNotOneTimeable = 11,
  kInvalidTiming = 12,
  kNotTimeable = 13,
  kMissingPolicy = 14,
  kNotZeroSum = 15,
  kUnknownPublicState = 16,
  kInconsistentPbs = 17,
  kInfeasible = 18,
  kUnbounded = 19,
  kInvalidPlan = 20,
  kIo = 21,
  kInternal = 22,
};

std::string_view ErrorCodeName(ErrorCode code);

class FosgError : public std::runtime_error {
 public:
  FosgError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw FosgError(code, message);
}

}  // namespace fosg

#endif  // FOSG_STATUS_H_
