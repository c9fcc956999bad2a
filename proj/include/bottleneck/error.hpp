// Copyright 2026 The bottleneck-robustness Authors
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

#ifndef BOTTLENECK_ERROR_HPP_
#define BOTTLENECK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bottleneck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph data: empty matrix, non-finite weight, unknown edge,
/// mismatched perturbation domain.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Text that could not be read as a cost matrix.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// No matching saturates every agent.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because of factorial growth.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace bottleneck

#endif  // BOTTLENECK_ERROR_HPP_
