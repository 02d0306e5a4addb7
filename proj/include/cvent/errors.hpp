// Copyright 2026 The cvent Authors
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
#include <vector>

namespace cvent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension or mode-count mismatch, out-of-range modes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Text or file contents that cannot be parsed.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Data that parses but violates a state invariant (normalization,
/// Hermiticity, trace).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A moment was requested beyond what a truncated Fock space can represent.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A moment matrix disagrees with its own adjoint beyond tolerance.
class DataQualityError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (matrix dimension, exponent) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// One or more moments needed for a computation are not available from the
/// provider. `keys()` holds the canonical text form of every missing key.
class MissingMomentError : public Error {
 public:
  explicit MissingMomentError(std::vector<std::string> keys);

  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

}  // namespace cvent
