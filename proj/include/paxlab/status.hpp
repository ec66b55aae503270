// Copyright 2026 The paxlab Authors
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

namespace paxlab {

enum class ErrorCode {
  kEmptyColumn,
  kNotEnoughValues,
  kInvalidConfig,
  kEncodingOverflow,
  kBadMagic,
  kTruncatedFile,
  kUnsupportedVersion,
  kIndexOutOfRange,
  kInvalidProjection,
  kDecodeError,
  kTypeMismatch,
  kSchemaMismatch,
  kInvalidLevels,
  kIoError,
};

const char* error_code_name(ErrorCode code);

// Every failure in the library surfaces as a PaxError. The C API maps the
// code onto pax_status.
class PaxError : public std::runtime_error {
 public:
  PaxError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw PaxError(code, message);
}

}  // namespace paxlab
