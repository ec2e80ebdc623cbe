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

// JSON formats.
//
//   theory:    {"name": str, "dim": d, "extreme_points": [[...], ...], "unit_effect": [...]}
//   channel:   {"source": name, "target": name, "matrix": [[...], ...]}
//   partition: {"space": name, "blocks": [[indices], ...]}
//   instance:  {"system": theory, "apparatus": theory, "channel": channel,
//               "programs": [{"index": i | "state": [...], "dynamics": [[...], ...]}, ...]}
//
// Parse errors throw FormatError with a JSON pointer to the offending field.

#include <string>

#include <json.hpp>

#include "gptlab/channels.hpp"
#include "gptlab/programming.hpp"
#include "gptlab/structure.hpp"

namespace gptlab::io {

using Json = nlohmann::json;

Json theory_to_json(const StateSpace& space);
StateSpace theory_from_json(const Json& j, const Tolerances& tol = default_tolerances());

Json channel_to_json(const Channel& c);
Channel channel_from_json(const Json& j, const StateSpace& source, const StateSpace& target,
                          const Tolerances& tol = default_tolerances());

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j, const StateSpace& space);

Json instance_to_json(const ProgrammingInstance& inst);
ProgrammingInstance instance_from_json(const Json& j, const Tolerances& tol = default_tolerances());

Json observable_to_json(const Observable& obs);

/// Reads and parses a file; unreadable or unparsable files throw FormatError.
Json read_json_file(const std::string& path);

}  // namespace gptlab::io
