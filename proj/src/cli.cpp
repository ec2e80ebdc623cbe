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

#include "gptlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "gptlab/errors.hpp"
#include "gptlab/fidelity.hpp"
#include "gptlab/io.hpp"
#include "gptlab/polygon.hpp"
#include "gptlab/programming.hpp"
#include "gptlab/structure.hpp"

namespace gptlab {

namespace {

struct Config {
  std::string format = "tsv";
  std::uint64_t seed = 0;
  double tol = -1.0;
  std::string output;
  Tolerances tolerances;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  if (std::string(buf) == "-0") return "0";
  return buf;
}

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

std::string join_vec(const Vec& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "\t" : "") + fmt(v[k]);
  return s;
}

std::string blocks_str(const std::vector<std::vector<std::size_t>>& blocks) {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) s += (b ? "|" : "") + join(blocks[b]);
  return s;
}

class UsageError : public GptError {
 public:
  using GptError::GptError;
};

std::vector<std::size_t> parse_indices(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(flag + ": expected comma-separated indices, got '" + text + "'");
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw UsageError(flag + ": empty index list");
  return out;
}

std::vector<std::vector<std::size_t>> parse_groups(const std::string& text, char sep, const std::string& flag) {
  std::vector<std::vector<std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(parse_indices(item, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

StateSpace load_theory(const std::string& path, const Tolerances& tol) {
  const auto j = io::read_json_file(path);
  try {
    return io::theory_from_json(j, tol);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

ProgrammingInstance load_instance(const std::string& path, const Tolerances& tol) {
  const auto j = io::read_json_file(path);
  try {
    return io::instance_from_json(j, tol);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::size_t checked_index(const StateSpace& s, std::size_t i, const std::string& flag) {
  if (i >= s.size())
    throw UsageError(flag + ": index " + std::to_string(i) + " out of range (theory has " + std::to_string(s.size()) +
                     " pure states)");
  return i;
}

std::vector<Channel> permutation_dynamics(const StateSpace& system, const std::string& perms, const Tolerances& tol) {
  std::vector<Channel> out;
  for (const auto& p : parse_groups(perms, ';', "--perms")) {
    try {
      out.push_back(vertex_permutation_channel(system, p, tol));
    } catch (const GptError& e) {
      throw UsageError(std::string("--perms: ") + e.what());
    }
  }
  return out;
}

void emit_json(std::ostream& out, const io::Json& j) { out << j.dump(2) << "\n"; }

io::Json game_json(const GameReport& r) {
  return io::Json{{"M", r.sides},
                  {"N", r.system_size},
                  {"permutations", r.permutations},
                  {"achieved", r.achieved},
                  {"lp_value", r.lp_value},
                  {"closed_form", r.closed_form},
                  {"baseline", r.baseline},
                  {"optimal_observable", io::observable_to_json(r.optimal_observable)},
                  {"verdict", r.pass() ? "PASS" : "FAIL"}};
}

const char* kGameHeader = "M\tN\tlp_value\tclosed_form\tbaseline\tverdict\n";

std::string game_row(const GameReport& r) {
  return std::to_string(r.sides) + "\t" + std::to_string(r.system_size) + "\t" + fmt(r.lp_value) + "\t" +
         fmt(r.closed_form) + "\t" + fmt(r.baseline) + "\t" + (r.pass() ? "PASS" : "FAIL") + "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out_stream, std::ostream& err) {
  CLI::App app{"gptlab: polytopic generalized probabilistic theories", "gptlab"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--tol", cfg.tol, "Override eps_eq (also GPTLAB_TOL)");
  app.add_option("--output", cfg.output, "Write output to this file");
  app.fallthrough();

  std::function<int(std::ostream&)> action;
  std::size_t sides = 0, size = 0, system_n = 0, max_degree = 2, a = 0, b = 0, from = 3, to = 12, count = 3;
  std::string theory, states, instance, system_path, apparatus_path, blocks, perms, assignment, programs;

  auto* poly = app.add_subcommand("polygon", "Emit a regular polygon theory");
  poly->add_option("--sides", sides)->required();
  poly->callback([&] {
    action = [&](std::ostream& out) {
      if (sides < 3) throw UsageError("--sides must be at least 3");
      emit_json(out, io::theory_to_json(polygon_theory(sides).space));
      return kExitPass;
    };
  });

  auto* simp = app.add_subcommand("simplex", "Emit a classical simplex theory");
  simp->add_option("--size", size)->required();
  simp->callback([&] {
    action = [&](std::ostream& out) {
      if (size == 0) throw UsageError("--size must be positive");
      emit_json(out, io::theory_to_json(simplex(size)));
      return kExitPass;
    };
  });

  auto* dist = app.add_subcommand("distinguish", "Perfect distinguishability of pure states");
  dist->add_option("--theory", theory)->required();
  dist->add_option("--states", states)->required();
  dist->callback([&] {
    action = [&](std::ostream& out) {
      const auto sp = load_theory(theory, cfg.tolerances);
      std::vector<State> list;
      for (auto i : parse_indices(states, "--states")) list.push_back(sp.pure_state(checked_index(sp, i, "--states")));
      std::optional<Observable> obs;
      try {
        obs = find_distinguishing_observable(sp, list, cfg.tolerances);
      } catch (const ValidationError& e) {
        throw UsageError(std::string("--states: ") + e.what());
      }
      if (cfg.format == "json") {
        io::Json j{{"verdict", obs ? "DISTINGUISHABLE" : "NOT_DISTINGUISHABLE"}};
        if (obs) j["observable"] = io::observable_to_json(*obs);
        emit_json(out, j);
      } else {
        out << (obs ? "DISTINGUISHABLE" : "NOT_DISTINGUISHABLE") << "\n";
        if (obs)
          for (std::size_t k = 0; k < obs->size(); ++k) out << "effect" << k << "\t" << join_vec((*obs)[k].coords) << "\n";
      }
      return obs ? kExitPass : kExitFail;
    };
  });

  auto* fid = app.add_subcommand("fidelity", "Fidelity between two pure states");
  fid->add_option("--theory", theory)->required();
  fid->add_option("--a", a)->required();
  fid->add_option("--b", b)->required();
  fid->callback([&] {
    action = [&](std::ostream& out) {
      const auto sp = load_theory(theory, cfg.tolerances);
      const auto r = fidelity(sp, sp.pure_state(checked_index(sp, a, "--a")), sp.pure_state(checked_index(sp, b, "--b")),
                              cfg.tolerances);
      if (cfg.format == "json") {
        emit_json(out, io::Json{{"a", a},
                                {"b", b},
                                {"fidelity", r.value},
                                {"certified_zero", r.certified_zero},
                                {"exact", r.exact},
                                {"witness", io::observable_to_json(r.witness_observable)}});
      } else {
        out << "a\tb\tfidelity\tcertified_zero\texact\n"
            << a << "\t" << b << "\t" << fmt(r.value) << "\t" << (r.certified_zero ? "true" : "false") << "\t"
            << (r.exact ? "true" : "false") << "\n";
      }
      return kExitPass;
    };
  });

  auto* dec = app.add_subcommand("decompose", "Equivalence classes of pure states");
  dec->add_option("--theory", theory)->required();
  dec->callback([&] {
    action = [&](std::ostream& out) {
      const auto p = equivalence_decomposition(load_theory(theory, cfg.tolerances), cfg.tolerances);
      if (cfg.format == "json") {
        emit_json(out, io::partition_to_json(p));
      } else {
        out << "class\tmembers\n";
        for (std::size_t z = 0; z < p.degree(); ++z) out << z << "\t" << join(p.blocks[z]) << "\n";
      }
      return kExitPass;
    };
  });

  auto* qc = app.add_subcommand("qc-find", "Enumerate quasi-classical decompositions");
  qc->add_option("--theory", theory)->required();
  qc->add_option("--max-degree", max_degree)->required();
  qc->callback([&] {
    action = [&](std::ostream& out) {
      if (max_degree < 2) throw UsageError("--max-degree must be at least 2");
      const auto found =
          enumerate_quasiclassical_decompositions(load_theory(theory, cfg.tolerances), max_degree, cfg.tolerances);
      if (cfg.format == "json") {
        io::Json arr = io::Json::array();
        for (const auto& s : found)
          arr.push_back({{"degree", s.partition.degree()},
                         {"blocks", s.partition.blocks},
                         {"witness", io::observable_to_json(s.witness)}});
        emit_json(out, arr);
      } else {
        out << "degree\tblocks\n";
        for (const auto& s : found) out << s.partition.degree() << "\t" << blocks_str(s.partition.blocks) << "\n";
      }
      return kExitPass;
    };
  });

  auto* ic = app.add_subcommand("ic", "Observable separating random mixed states");
  ic->add_option("--theory", theory)->required();
  ic->add_option("--count", count, "Number of random target states");
  ic->callback([&] {
    action = [&](std::ostream& out) {
      if (count < 2) throw UsageError("--count must be at least 2");
      const auto sp = load_theory(theory, cfg.tolerances);
      std::mt19937_64 rng(cfg.seed);
      std::exponential_distribution<double> expo(1.0);
      std::vector<State> targets;
      for (std::size_t t = 0; t < count; ++t) {
        Vec w(sp.size());
        double tot = 0.0;
        for (auto& x : w) tot += (x = expo(rng));
        for (auto& x : w) x /= tot;
        targets.push_back(mix(sp, w));
      }
      const auto obs = informationally_complete_observable(sp, targets, cfg.seed, cfg.tolerances);
      out << "target\tdistribution\n";
      for (std::size_t t = 0; t < count; ++t) out << t << "\t" << join_vec(obs.distribution(targets[t])) << "\n";
      return kExitPass;
    };
  });

  auto* rev = app.add_subcommand("program-build-reversible", "Reversible programmer from a quasi-classical split");
  rev->add_option("--system", system_path)->required();
  rev->add_option("--apparatus", apparatus_path)->required();
  rev->add_option("--blocks", blocks, "Apparatus blocks, e.g. 0,1|2,3")->required();
  rev->add_option("--perms", perms, "System permutations, e.g. 0,1,2;1,2,0")->required();
  rev->add_option("--assignment", assignment, "Permutation index per block (default: in order)");
  rev->callback([&] {
    action = [&](std::ostream& out) {
      const auto sys = load_theory(system_path, cfg.tolerances);
      const auto app_sp = load_theory(apparatus_path, cfg.tolerances);
      Partition part;
      try {
        part = make_partition(app_sp, parse_groups(blocks, '|', "--blocks"));
      } catch (const ValidationError& e) {
        throw UsageError(std::string("--blocks: ") + e.what());
      }
      const auto dyn = permutation_dynamics(sys, perms, cfg.tolerances);
      std::vector<std::size_t> assign;
      if (assignment.empty())
        for (std::size_t z = 0; z < part.degree(); ++z) assign.push_back(z);
      else
        assign = parse_indices(assignment, "--assignment");
      auto witness = quasiclassical_witness(part, cfg.tolerances);
      if (!witness) {
        err << "blocks " << blocks << " are not a quasi-classical decomposition\n";
        return kExitFail;
      }
      const auto inst = build_reversible_programmer(sys, {part, *witness}, dyn, assign, cfg.tolerances);
      emit_json(out, io::instance_to_json(inst));
      return kExitPass;
    };
  });

  auto* chp = app.add_subcommand("program-build-channel", "Measure-and-prepare programmer");
  chp->add_option("--system", system_path)->required();
  chp->add_option("--apparatus", apparatus_path)->required();
  chp->add_option("--programs", programs, "Apparatus pure-state indices")->required();
  chp->add_option("--perms", perms, "One system permutation per program")->required();
  chp->callback([&] {
    action = [&](std::ostream& out) {
      const auto sys = load_theory(system_path, cfg.tolerances);
      const auto app_sp = load_theory(apparatus_path, cfg.tolerances);
      std::vector<State> progs;
      for (auto i : parse_indices(programs, "--programs"))
        progs.push_back(app_sp.pure_state(checked_index(app_sp, i, "--programs")));
      const auto dyn = permutation_dynamics(sys, perms, cfg.tolerances);
      if (dyn.size() != progs.size()) throw UsageError("--perms: need one permutation per program");
      const auto inst = build_channel_programmer(sys, app_sp, progs, std::nullopt, dyn, {}, cfg.tolerances);
      emit_json(out, io::instance_to_json(inst));
      return kExitPass;
    };
  });

  auto* ver = app.add_subcommand("program-verify", "Check every program of an instance");
  ver->add_option("--instance", instance)->required();
  ver->callback([&] {
    action = [&](std::ostream& out) {
      const auto inst = load_instance(instance, cfg.tolerances);
      bool all = true;
      io::Json arr = io::Json::array();
      if (cfg.format != "json") out << "program\tverified\n";
      for (std::size_t k = 0; k < inst.programs.size(); ++k) {
        const bool ok = verify_program(inst, k, cfg.tolerances);
        all = all && ok;
        if (cfg.format == "json")
          arr.push_back({{"program", k}, {"verified", ok}});
        else
          out << k << "\t" << (ok ? "PASS" : "FAIL") << "\n";
      }
      if (cfg.format == "json") emit_json(out, arr);
      return all ? kExitPass : kExitFail;
    };
  });

  auto* aud = app.add_subcommand("audit", "No-programming audit over program pairs");
  aud->add_option("--instance", instance)->required();
  aud->callback([&] {
    action = [&](std::ostream& out) {
      const auto inst = load_instance(instance, cfg.tolerances);
      const auto rep = no_programming_audit(inst, cfg.tolerances);
      if (cfg.format == "json") {
        io::Json pairs = io::Json::array();
        for (const auto& p : rep.pairs)
          pairs.push_back({{"first", p.first},
                           {"second", p.second},
                           {"distinct_dynamics", p.distinct_dynamics},
                           {"distinguishable", p.distinguishable},
                           {"verdict", p.ok() ? "PASS" : "FAIL"}});
        emit_json(out, {{"unverified", rep.unverified}, {"pairs", pairs}, {"verdict", rep.pass() ? "PASS" : "FAIL"}});
      } else {
        out << "first\tsecond\tdistinct_dynamics\tdistinguishable\tverdict\n";
        for (const auto& p : rep.pairs)
          out << p.first << "\t" << p.second << "\t" << (p.distinct_dynamics ? "true" : "false") << "\t"
              << (p.distinguishable ? "true" : "false") << "\t" << (p.ok() ? "PASS" : "FAIL") << "\n";
        if (!rep.unverified.empty()) out << "unverified\t" << join(rep.unverified) << "\n";
      }
      return rep.pass() ? kExitPass : kExitFail;
    };
  });

  auto* game = app.add_subcommand("game", "Polygon programming game");
  game->add_option("--sides", sides)->required();
  game->add_option("--system", system_n)->required();
  game->callback([&] {
    action = [&](std::ostream& out) {
      if (sides < 3) throw UsageError("--sides must be at least 3");
      if (system_n < sides) throw UsageError("--system must be at least --sides");
      const auto r = run_game(system_n, sides, cfg.tolerances);
      if (cfg.format == "json")
        emit_json(out, game_json(r));
      else
        out << kGameHeader << game_row(r);
      return r.pass() ? kExitPass : kExitFail;
    };
  });

  auto* sweep = app.add_subcommand("sweep-game", "Polygon game over a range of sides");
  sweep->add_option("--sides-from", from);
  sweep->add_option("--sides-to", to);
  sweep->add_option("--system", system_n, "System size (default: M for each row)");
  sweep->callback([&] {
    action = [&](std::ostream& out) {
      if (from < 3 || to < from) throw UsageError("--sides-from/--sides-to: need 3 <= from <= to");
      if (system_n != 0 && system_n < to) throw UsageError("--system must be at least --sides-to");
      std::vector<std::future<GameReport>> jobs;
      for (std::size_t m = from; m <= to; ++m)
        jobs.push_back(std::async(std::launch::async, [m, n = system_n, tol = cfg.tolerances] {
          return run_game(n == 0 ? m : n, m, tol);
        }));
      bool all = true;
      io::Json arr = io::Json::array();
      if (cfg.format != "json") out << kGameHeader;
      for (auto& j : jobs) {
        const auto r = j.get();
        all = all && r.pass();
        if (cfg.format == "json")
          arr.push_back(game_json(r));
        else
          out << game_row(r);
      }
      if (cfg.format == "json") emit_json(out, arr);
      return all ? kExitPass : kExitFail;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_stream, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (const char* env = std::getenv("GPTLAB_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0') throw UsageError(std::string("GPTLAB_TOL: not a number: ") + env);
      cfg.tolerances.eps_eq = v;
    }
    if (cfg.tol > 0.0) cfg.tolerances.eps_eq = cfg.tol;
    try {
      cfg.tolerances.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (cfg.output.empty()) return action(out_stream);
    std::ostringstream buf;
    const int code = action(buf);
    std::ofstream file(cfg.output);
    if (!file) throw UsageError("--output: cannot write " + cfg.output);
    file << buf.str();
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProgrammingError& e) {
    err << "construction failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const GptError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace gptlab
