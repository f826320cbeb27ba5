// Copyright 2026 The corrcat Authors
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

namespace corrcat {

/// Mismatched or malformed system layouts (wrong factor set, bad index).
class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that fails the density-matrix invariants beyond tolerance.
class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Total dimension exceeds the dense-matrix cap.
class DimensionCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An instrument that touches factors not owned by the acting party.
class LocalityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator sets that violate completeness.
class ChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotConvertibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a rate has a vanishing denominator (the rate diverges).
class DivergentRateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A verified precondition of a composite construction did not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrcat
