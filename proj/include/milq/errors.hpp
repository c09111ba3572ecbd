// Copyright 2026 The milq Authors.
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

namespace milq {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data: unknown ids, malformed files, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The time horizon (t_max) or another sizing parameter is too small.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Schedule evaluation did not reach a fixed point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// No external MILP solver command is configured.
class SolverUnavailable : public Error {
 public:
  using Error::Error;
};

/// The external solver ran but failed, or reported no usable solution.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace milq
