// Copyright 2026 The adaptix authors.
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
// =============================================================================

#ifndef ADAPTIX_ERRORS_HPP_
#define ADAPTIX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace adaptix {

// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: unknown kinds, invalid hyperparameters, mismatched configs.
struct ConfigError : Error {
  using Error::Error;
};

// Malformed text input (LibSVM, CSV, TOML). Carries a 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_no)
      : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  int line;
};

// Vector/matrix length mismatch.
struct DimensionError : Error {
  using Error::Error;
};

// Non-finite objective/gradient evaluation where finiteness is required.
struct EvalError : Error {
  using Error::Error;
};

}  // namespace adaptix

#endif  // ADAPTIX_ERRORS_HPP_
