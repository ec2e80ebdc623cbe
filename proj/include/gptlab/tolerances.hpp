// Copyright 2026 The gptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace gptlab {

/// Numerical slack used throughout the library.
///
/// `eps_feas` bounds constraint violations accepted from the LP engine and
/// membership tests; `eps_eq` is the slack for comparing values, states and
/// matrices. Every operation that makes a numerical decision takes one of
/// these by const reference.
struct Tolerances {
  double eps_feas = 1e-9;
  double eps_eq = 1e-7;

  void validate() const {
    if (!(eps_feas > 0.0 && eps_feas <= eps_eq && eps_eq < 1.0)) {
      throw std::invalid_argument("tolerances must satisfy 0 < eps_feas <= eps_eq < 1");
    }
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace gptlab
