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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gptlab/cli.hpp"
#include "gptlab/io.hpp"
#include "gptlab/polygon.hpp"

using namespace gptlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gptlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Files {
  Files() {
    write("cli_square.json", run({"polygon", "--sides", "4"}).out);
    write("cli_pentagon.json", run({"polygon", "--sides", "5"}).out);
    write("cli_d3.json", run({"simplex", "--size", "3"}).out);
  }
};

const Files& files() {
  static Files f;
  return f;
}

}  // namespace

TEST_CASE("theory emitters") {
  files();
  const auto sq = io::theory_from_json(io::read_json_file("cli_square.json"));
  CHECK(sq.same_as(polygon_theory(4).space, 1e-12));
  CHECK(run({"polygon", "--sides", "2"}).code == kExitUsage);
  CHECK(run({"polygon"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"no-such-command"}).code == kExitUsage);
  CHECK(run({"--format", "xml", "polygon", "--sides", "4"}).code == kExitUsage);
}

TEST_CASE("game rows") {
  const auto r = run({"game", "--sides", "4", "--system", "8"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "M\tN\tlp_value\tclosed_form\tbaseline\tverdict\n4\t8\t0.5\t0.5\t0.5\tPASS\n");
  const auto five = run({"game", "--sides", "5", "--system", "5"});
  CHECK(five.out.find("0.447213595") != std::string::npos);
  CHECK(run({"game", "--sides", "5", "--system", "3"}).code == kExitUsage);

  const auto sweep = run({"sweep-game", "--sides-from", "3", "--sides-to", "12"});
  CHECK(sweep.code == kExitPass);
  std::istringstream lines(sweep.out);
  std::string line;
  std::size_t rows = 0;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.rfind(std::to_string(rows + 2) + "\t", 0) == 0);
    CHECK(line.substr(line.size() - 4) == "PASS");
  }
  CHECK(rows == 10);
}

TEST_CASE("structure commands") {
  files();
  const auto qc = run({"qc-find", "--theory", "cli_square.json", "--max-degree", "2"});
  CHECK(qc.code == kExitPass);
  CHECK(qc.out == "degree\tblocks\n2\t0,1|2,3\n2\t0,3|1,2\n");
  const auto pen = run({"qc-find", "--theory", "cli_pentagon.json", "--max-degree", "3"});
  CHECK(pen.out == "degree\tblocks\n");
  const auto dec = run({"--format", "json", "decompose", "--theory", "cli_square.json"});
  CHECK(io::Json::parse(dec.out)["blocks"].size() == 4);
}

TEST_CASE("distinguish and fidelity") {
  files();
  const auto no = run({"distinguish", "--theory", "cli_pentagon.json", "--states", "0,1"});
  CHECK(no.code == kExitFail);
  CHECK(no.out == "NOT_DISTINGUISHABLE\n");
  const auto yes = run({"distinguish", "--theory", "cli_square.json", "--states", "0,2"});
  CHECK(yes.code == kExitPass);
  CHECK(yes.out.rfind("DISTINGUISHABLE", 0) == 0);
  CHECK(run({"distinguish", "--theory", "cli_square.json", "--states", "0,9"}).code == kExitUsage);
  CHECK(run({"distinguish", "--theory", "missing.json", "--states", "0,1"}).code == kExitUsage);

  const auto f = run({"--format", "json", "fidelity", "--theory", "cli_pentagon.json", "--a", "0", "--b", "2"});
  const auto j = io::Json::parse(f.out);
  CHECK(j["fidelity"].get<double>() == 0.0);
  CHECK(j["certified_zero"].get<bool>());
}

TEST_CASE("programming commands") {
  files();
  const auto built = run({"--output", "cli_inst.json", "program-build-channel", "--system", "cli_d3.json",
                          "--apparatus", "cli_d3.json", "--programs", "0,1,2", "--perms", "0,1,2;1,2,0;2,0,1"});
  CHECK(built.code == kExitPass);
  CHECK(built.out.empty());
  CHECK(run({"program-verify", "--instance", "cli_inst.json"}).code == kExitPass);
  CHECK(run({"audit", "--instance", "cli_inst.json"}).code == kExitPass);

  // Square blocks cannot carry different dynamics through a reversible map.
  const auto rev = run({"program-build-reversible", "--system", "cli_d3.json", "--apparatus", "cli_square.json",
                        "--blocks", "0,1|2,3", "--perms", "0,1,2;1,2,0"});
  CHECK(rev.code == kExitFail);
  CHECK(rev.err.find("residual") != std::string::npos);
  CHECK(run({"program-build-reversible", "--system", "cli_d3.json", "--apparatus", "cli_square.json", "--blocks",
             "0,2|1,3", "--perms", "0,1,2;1,2,0"})
            .code == kExitFail);  // not quasi-classical

  // Claim program 0 implements a slightly perturbed dynamics.
  auto j = io::read_json_file("cli_inst.json");
  j["programs"][0]["dynamics"] = io::Json::parse("[[0.99999, 0, 0.00001], [0.00001, 0.99999, 0], [0, 0.00001, 0.99999]]");
  write("cli_inst_perturbed.json", j.dump());
  CHECK(run({"program-verify", "--instance", "cli_inst_perturbed.json"}).code == kExitFail);
  CHECK(run({"--tol", "1e-3", "program-verify", "--instance", "cli_inst_perturbed.json"}).code == kExitPass);
  setenv("GPTLAB_TOL", "1e-3", 1);
  CHECK(run({"program-verify", "--instance", "cli_inst_perturbed.json"}).code == kExitPass);
  setenv("GPTLAB_TOL", "not-a-number", 1);
  CHECK(run({"program-verify", "--instance", "cli_inst_perturbed.json"}).code == kExitUsage);
  unsetenv("GPTLAB_TOL");

  write("cli_bad.json", "{\"system\": 3}");
  const auto bad = run({"audit", "--instance", "cli_bad.json"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("/system") != std::string::npos);
}

TEST_CASE("deterministic output") {
  files();
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--seed", "9", "ic", "--theory", "cli_pentagon.json", "--count", "4"},
           {"sweep-game", "--sides-from", "3", "--sides-to", "9"},
           {"--format", "json", "qc-find", "--theory", "cli_square.json", "--max-degree", "4"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == kExitPass);
    CHECK(a.out == b.out);
  }
  CHECK(run({"--seed", "1", "ic", "--theory", "cli_pentagon.json"}).out !=
        run({"--seed", "2", "ic", "--theory", "cli_pentagon.json"}).out);

  run({"--output", "cli_game.tsv", "game", "--sides", "6", "--system", "6"});
  CHECK(slurp("cli_game.tsv") == run({"game", "--sides", "6", "--system", "6"}).out);
}
