// Copyright 2026 The qlut Authors
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

#ifndef QLUT_ERRORS_H
#define QLUT_ERRORS_H

#include <stdexcept>
#include <string>

namespace qlut {

enum class ErrorCode {
    NonPowerOfTwo,
    OrderingViolation,
    InvalidParams,
    InvalidTable,
    KOutOfRange,
    TooManyQubits,
    PlacementOverflow,
    InitialErrorTooLarge,
    DegenerateInput,
    ConfigParse,
    IoError,
    Internal,
};

const char *error_code_name(ErrorCode code);

/// Exception type thrown by every module. The code mirrors the error names used
/// in the public API documentation so callers can dispatch on it.
struct QlutError : std::runtime_error {
    ErrorCode code;
    QlutError(ErrorCode code, const std::string &message);
};

}  // namespace qlut

#endif
