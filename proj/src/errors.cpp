// Copyright 2026 The qclone Authors
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

#include "qclone/errors.hpp"

namespace qclone {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::SameWire: return "SameWire";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::NonAffine: return "NonAffine";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qclone
