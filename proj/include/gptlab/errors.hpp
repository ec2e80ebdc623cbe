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
#include <string>

namespace gptlab {

/// Base class of every error raised by the library.
class GptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs with inconsistent shapes.
class DimensionError : public GptError {
 public:
  using GptError::GptError;
};

/// A geometric object failed validation (not a state space, not a channel, ...).
class ValidationError : public GptError {
 public:
  using GptError::GptError;
};

/// A requested computation is outside the supported envelope.
class UnsupportedError : public GptError {
 public:
  using GptError::GptError;
};

/// A programming construction has no valid realization.
class ProgrammingError : public GptError {
 public:
  using GptError::GptError;
};

/// A serialized object is malformed; the message names the offending field.
class FormatError : public GptError {
 public:
  using GptError::GptError;
};

}  // namespace gptlab
