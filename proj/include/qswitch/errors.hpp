// Copyright 2026 The qswitch Authors
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

namespace qswitch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was not met (dimension mismatch,
/// non-Hermitian input, non-trace-preserving Kraus set, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (negative time,
/// out-of-range index, probability outside [0, 1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested post-selection branch has (numerically) zero probability.
class DegenerateBranchError : public Error {
 public:
  DegenerateBranchError(const std::string& what, double probability)
      : Error(what), probability_(probability) {}
  double probability() const { return probability_; }

 private:
  double probability_;
};

/// A closed-form expression has a vanishing denominator.
class SingularExpressionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class RootError : public Error {
 public:
  using Error::Error;
};

class InversionError : public Error {
 public:
  InversionError(const std::string& what, double condition_number)
      : Error(what), condition_number_(condition_number) {}
  double condition_number() const { return condition_number_; }

 private:
  double condition_number_;
};

/// A map expected to be linear and Hermiticity preserving is not.
class LinearityError : public Error {
 public:
  using Error::Error;
};

}  // namespace qswitch
