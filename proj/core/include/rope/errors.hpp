// Copyright 2026 The ROPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROPE_ERRORS_HPP_
#define ROPE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rope {

class IoError : public std::runtime_error {
 public:
  enum class Kind { kUnreadable, kUnsupportedFormat, kDimensionOverflow };

  IoError(Kind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Thrown when the illumination solver fails to reach its tolerance within
/// the step budget. Carries the final relative residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string &message, double residual, int steps)
      : std::runtime_error(message), residual_(residual), steps_(steps) {}

  double residual() const { return residual_; }
  int steps() const { return steps_; }

 private:
  double residual_;
  int steps_;
};

}  // namespace rope

#endif  // ROPE_ERRORS_HPP_
