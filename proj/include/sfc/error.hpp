// Copyright 2026 The SFC Authors. All rights reserved.
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

#ifndef SFC_ERROR_HPP_
#define SFC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sfc {

// Dimension or precondition violations on in-memory values.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bad configuration (unsupported dims, precision overflow, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or mismatched files (magic, digest, tensor layout).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Corrupt, truncated or inconsistent coded streams.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sfc

#endif  // SFC_ERROR_HPP_
