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

#include "gptlab/io.hpp"

#include <fstream>
#include <sstream>

#include "gptlab/errors.hpp"

namespace gptlab::io {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + "/" + key + ": missing field");
  return *it;
}

Vec vector_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of numbers");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw FormatError(where + "/" + std::to_string(i) + ": expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

std::vector<Vec> rows_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of arrays");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_of(j[i], where + "/" + std::to_string(i)));
  return out;
}

Matrix matrix_of(const Json& j, const std::string& where) {
  auto rows = rows_of(j, where);
  if (rows.empty()) throw FormatError(where + ": empty matrix");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != rows[0].size()) throw FormatError(where + "/" + std::to_string(i) + ": ragged matrix row");
  return Matrix::from_rows(rows);
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(Vec(m.row(r).begin(), m.row(r).end()));
  return rows;
}

std::size_t index_of(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw FormatError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

// Re-raises validation failures of a parsed object as format errors at `where`.
template <class F>
auto at(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const GptError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

}  // namespace

Json theory_to_json(const StateSpace& space) {
  return Json{{"name", space.name()},
              {"dim", space.dim()},
              {"extreme_points", space.extreme_points()},
              {"unit_effect", space.unit()}};
}

namespace {

StateSpace theory_from_json_at(const Json& j, const std::string& where, const Tolerances& tol) {
  std::string name;
  if (j.is_object() && j.contains("name")) {
    if (!j["name"].is_string()) throw FormatError(where + "/name: expected a string");
    name = j["name"].get<std::string>();
  }
  auto pts = rows_of(field(j, "extreme_points", where), where + "/extreme_points");
  auto unit = vector_of(field(j, "unit_effect", where), where + "/unit_effect");
  if (j.contains("dim")) {
    const std::size_t d = index_of(j["dim"], where + "/dim");
    if (d != unit.size()) throw FormatError(where + "/dim: does not match the unit effect length");
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].size() != unit.size())
      throw FormatError(where + "/extreme_points/" + std::to_string(i) + ": wrong length");
  return at(where + "/extreme_points", [&] { return make_state_space(pts, unit, name, tol); });
}

}  // namespace

StateSpace theory_from_json(const Json& j, const Tolerances& tol) { return theory_from_json_at(j, "", tol); }

Json channel_to_json(const Channel& c) {
  return Json{{"source", c.source().name()}, {"target", c.target().name()}, {"matrix", matrix_json(c.matrix())}};
}

Channel channel_from_json(const Json& j, const StateSpace& source, const StateSpace& target, const Tolerances& tol) {
  Matrix m = matrix_of(field(j, "matrix", ""), "/matrix");
  return at("/matrix", [&] { return make_channel(std::move(m), source, target, tol); });
}

Json partition_to_json(const Partition& p) { return Json{{"space", p.space.name()}, {"blocks", p.blocks}}; }

Partition partition_from_json(const Json& j, const StateSpace& space) {
  const Json& blocks = field(j, "blocks", "");
  if (!blocks.is_array()) throw FormatError("/blocks: expected an array");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string where = "/blocks/" + std::to_string(b);
    if (!blocks[b].is_array()) throw FormatError(where + ": expected an array of indices");
    out.emplace_back();
    for (std::size_t k = 0; k < blocks[b].size(); ++k)
      out.back().push_back(index_of(blocks[b][k], where + "/" + std::to_string(k)));
  }
  return at("/blocks", [&] { return make_partition(space, std::move(out)); });
}

Json instance_to_json(const ProgrammingInstance& inst) {
  Json programs = Json::array();
  for (const auto& p : inst.programs) {
    Json entry;
    bool found = false;
    for (std::size_t i = 0; i < inst.apparatus.size() && !found; ++i)
      if (!p.mixed && inst.apparatus.extreme_points()[i] == p.state.coords) {
        entry["index"] = i;
        found = true;
      }
    if (!found) entry["state"] = p.state.coords;
    entry["dynamics"] = matrix_json(p.dynamics.matrix());
    programs.push_back(std::move(entry));
  }
  return Json{{"system", theory_to_json(inst.system)},
              {"apparatus", theory_to_json(inst.apparatus)},
              {"channel", channel_to_json(inst.total_channel)},
              {"programs", std::move(programs)}};
}

ProgrammingInstance instance_from_json(const Json& j, const Tolerances& tol) {
  const StateSpace sys = theory_from_json_at(field(j, "system", ""), "/system", tol);
  const StateSpace app = theory_from_json_at(field(j, "apparatus", ""), "/apparatus", tol);
  Matrix total = matrix_of(field(field(j, "channel", ""), "matrix", "/channel"), "/channel/matrix");
  const Json& progs = field(j, "programs", "");
  if (!progs.is_array()) throw FormatError("/programs: expected an array");
  std::vector<Program> programs;
  for (std::size_t k = 0; k < progs.size(); ++k) {
    const std::string where = "/programs/" + std::to_string(k);
    State s;
    if (progs[k].is_object() && progs[k].contains("index")) {
      const std::size_t i = index_of(progs[k]["index"], where + "/index");
      if (i >= app.size()) throw FormatError(where + "/index: out of range");
      s = app.pure_state(i);
    } else {
      s = State{vector_of(field(progs[k], "state", where), where + "/state")};
    }
    Matrix dyn = matrix_of(field(progs[k], "dynamics", where), where + "/dynamics");
    Channel c = at(where + "/dynamics", [&] { return make_channel(std::move(dyn), sys, sys, tol); });
    programs.push_back(Program{std::move(s), std::move(c), false});
  }
  return at("/channel/matrix",
            [&] { return make_programming_instance(sys, app, std::move(total), std::move(programs), true, tol); });
}

Json observable_to_json(const Observable& obs) {
  Json effects = Json::array();
  for (const auto& e : obs.effects()) effects.push_back(e.coords);
  return Json{{"labels", obs.labels()}, {"effects", std::move(effects)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace gptlab::io
