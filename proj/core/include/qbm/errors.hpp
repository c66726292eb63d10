// Copyright 2026 The qbm Authors
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

/// @file
/// Exception hierarchy shared by all qbm modules.

#include <stdexcept>
#include <string>

namespace qbm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical parameter or argument (non-positive mass, negative
/// temperature, t < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters or times outside the regime where a formula is valid.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Input outside the hypotheses of a theorem check.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant violated (e.g. a factorization that must exist does
/// not, or a constructed state fails a check it was built to satisfy).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Coefficient matrix is not positive semidefinite.
class NotDecomposableError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or command-line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbm
