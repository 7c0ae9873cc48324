// Copyright 2026 The superzeno Authors
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

namespace superzeno {

// Caller violated a precondition (bad dimension, bad index, negative time).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of an operation (e.g. a matrix that
// should be PSD has a clearly negative eigenvalue).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Physical configuration cannot support the request (e.g. coupling gate with
// zero scalar coupling).
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDecomposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Measured data is inconsistent with the model that is supposed to explain it.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config file problems; carries the offending line (0 when not tied to one).
class ConfigFileError : public std::runtime_error {
 public:
  ConfigFileError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                           what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace superzeno
