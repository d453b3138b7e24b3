/*
 * Copyright 2026 The asplund-morph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asplund {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition. The CLI maps these to exit code 1.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree in dimensions or grey scale.
class ShapeError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A value lies outside the range an operation is defined on.
class DomainError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// An out-of-range tuning parameter (rank, tolerance, threshold, ...).
class ParameterError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Scene synthesis could not place the requested patterns.
class GenerationError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Probe extraction hit a pixel that cannot be a probe value.
class ExtractionError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// The bisection oracle could not bracket a bound.
class OracleFailure : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure. The CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content; carries the byte offset where decoding stopped.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : IoError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace asplund
