// Copyright 2026 The fidroute Authors
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

namespace fidroute {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numeric argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested capacity or probability cannot be realized by the channel.
class UnreachableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Mismatched grids, infeasible generator settings, bad run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A loaded structure violates its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// No path (or star) with nonzero fidelity exists for the query.
class NoRouteError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive reference computation would exceed its enumeration cap.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace fidroute
