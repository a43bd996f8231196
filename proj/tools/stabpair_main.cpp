// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: analyze a pair, compute a nearby admissible pair,
// sweep over target ranks, and generate test instances.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stabpair/gallery.hpp"
#include "stabpair/matrix_io.hpp"
#include "stabpair/pencil.hpp"
#include "stabpair/serialize.hpp"
#include "stabpair/solver.hpp"

namespace {

using namespace stabpair;

MatrixPair load_pair(const std::string& e_path, const std::string& a_path) {
  MatrixPair pair;
  pair.A = read_matrix_file(a_path);
  if (e_path.empty()) {
    pair.E = Matrix::Identity(pair.A.rows(), pair.A.cols());
  } else {
    pair.E = read_matrix_file(e_path);
  }
  require_valid(pair);
  return pair;
}

json input_facts(const std::string& e_path, const std::string& a_path,
                 const MatrixPair& pair, const Tolerances& tol) {
  return json{{"E_path", e_path.empty() ? "(identity)" : e_path},
              {"A_path", a_path},
              {"n", pair.n()},
              {"rank_E", numerical_rank(pair.E, tol)}};
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

std::vector<Index> parse_rank_list(const std::string& spec, Index n) {
  std::vector<Index> ranks;
  std::string token;
  std::istringstream stream(spec);
  while (std::getline(stream, token, ',')) {
    try {
      const long value = std::stol(token);
      if (value < 1 || value > n) {
        throw std::invalid_argument("");
      }
      ranks.push_back(static_cast<Index>(value));
    } catch (const std::exception&) {
      throw std::invalid_argument("--ranks: '" + token +
                                  "' is not a rank in [1, " +
                                  std::to_string(n) + "]");
    }
  }
  if (ranks.empty()) {
    throw std::invalid_argument("--ranks: empty rank list");
  }
  return ranks;
}

json sweep_table_json(const SweepResult& sweep) {
  // mark the best row: smallest error, ties to the smaller r
  Index best_r = sweep.table.front().r;
  double best_error = sweep.table.front().error;
  for (const SweepEntry& entry : sweep.table) {
    if (entry.error < best_error) {
      best_error = entry.error;
      best_r = entry.r;
    }
  }
  json rows = json::array();
  for (const SweepEntry& entry : sweep.table) {
    json row = entry;
    row["best"] = entry.r == best_r;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct SolverFlags {
  Index rank = -1;  // -1: default to the numerical rank of E
  SolverConfig cfg;
  std::string trace_path;
  std::string out_prefix;
  std::string init_path;

  void add_to(CLI::App* cmd, bool with_rank) {
    if (with_rank) {
      cmd->add_option("--rank,-r", rank, "target rank of E_hat (default: numerical rank of E)");
    }
    cmd->add_option("--max-iter", cfg.max_outer_iters, "outer iteration cap");
    cmd->add_option("--time-limit", cfg.time_limit_seconds,
                    "wall-clock budget in seconds (default 60)");
    cmd->add_option("--tol", cfg.rel_decrease_tol,
                    "relative decrease stopping tolerance (default 1e-8)");
    cmd->add_option("--inner-steps", cfg.inner_fgm_steps,
                    "fast-gradient steps per outer iteration (default 20)");
  }
};

int run_analyze(const std::string& e_path, const std::string& a_path,
                const Tolerances& tol) {
  if (!tol.valid()) {
    throw std::invalid_argument(
        "tolerances must be strictly positive with rank-rtol < 1");
  }
  const MatrixPair pair = load_pair(e_path, a_path);
  const AdmissibilityReport report = analyze_admissibility(pair, tol);
  json j = report;
  j["schema"] = 1;
  j["input"] = input_facts(e_path, a_path, pair, tol);
  emit(j);
  return report.admissible ? 0 : 1;
}

int run_stabilize(const std::string& e_path, const std::string& a_path,
                  SolverFlags& flags) {
  const MatrixPair pair = load_pair(e_path, a_path);
  const Tolerances tol;
  Index r = flags.rank;
  if (r < 0) {
    r = std::clamp<Index>(numerical_rank(pair.E, tol), 1, pair.n());
  }

  std::optional<ParamState> init;
  if (!flags.init_path.empty()) {
    std::ifstream in(flags.init_path);
    if (!in) {
      throw std::invalid_argument("--init: cannot open " + flags.init_path);
    }
    init = json::parse(in).get<ParamState>();
  }

  const SolveResult result =
      bcd_solve(pair, r, flags.cfg, init ? &*init : nullptr);

  const std::string e_hat_path = flags.out_prefix + ".Ehat";
  const std::string a_hat_path = flags.out_prefix + ".Ahat";
  write_matrix_file(e_hat_path, result.pair.E);
  write_matrix_file(a_hat_path, result.pair.A);
  json outputs{{"E_hat", e_hat_path}, {"A_hat", a_hat_path}};
  if (!flags.trace_path.empty()) {
    std::ofstream csv(flags.trace_path);
    if (!csv) {
      throw std::invalid_argument("--trace: cannot open " + flags.trace_path);
    }
    write_trace_csv(csv, result.trace);
    outputs["trace_csv"] = flags.trace_path;
  }

  json config = flags.cfg;
  config["rank"] = r;
  json j{{"schema", 1},
         {"command", "stabilize"},
         {"input", input_facts(e_path, a_path, pair, tol)},
         {"config", config},
         {"result",
          {{"error", result.error},
           {"termination", termination_name(result.termination)},
           {"iterations", result.trace.back().iter},
           {"elapsed_seconds", result.trace.back().elapsed_seconds}}},
         {"outputs", outputs},
         {"admissibility", result.report},
         {"state", result.state}};
  emit(j);
  return 0;
}

int run_sweep(const std::string& e_path, const std::string& a_path,
              const std::string& ranks_spec, SolverFlags& flags) {
  const MatrixPair pair = load_pair(e_path, a_path);
  const Tolerances tol;

  SweepResult sweep;
  if (ranks_spec == "full") {
    sweep = rank_sweep(pair, flags.cfg, SweepMode::full);
  } else if (ranks_spec == "auto") {
    sweep = rank_sweep(pair, flags.cfg, SweepMode::adaptive);
  } else {
    sweep = sweep_ranks(pair, parse_rank_list(ranks_spec, pair.n()), flags.cfg);
  }

  json outputs = json::object();
  if (!flags.out_prefix.empty()) {
    const std::string e_hat_path = flags.out_prefix + ".Ehat";
    const std::string a_hat_path = flags.out_prefix + ".Ahat";
    write_matrix_file(e_hat_path, sweep.best.pair.E);
    write_matrix_file(a_hat_path, sweep.best.pair.A);
    outputs = {{"E_hat", e_hat_path}, {"A_hat", a_hat_path}};
  }

  json config = flags.cfg;
  config["ranks"] = ranks_spec;
  json j{{"schema", 1},
         {"command", "sweep"},
         {"input", input_facts(e_path, a_path, pair, tol)},
         {"config", config},
         {"table", sweep_table_json(sweep)},
         {"result",
          {{"error", sweep.best.error},
           {"rank", sweep.best.state.r},
           {"termination", termination_name(sweep.best.termination)}}},
         {"outputs", outputs},
         {"admissibility", sweep.best.report},
         {"state", sweep.best.state}};
  emit(j);
  return 0;
}

int write_instance(const std::string& family, const MatrixPair& pair,
                   const std::string& prefix) {
  const std::string e_path = prefix + ".E";
  const std::string a_path = prefix + ".A";
  write_matrix_file(e_path, pair.E);
  write_matrix_file(a_path, pair.A);
  json j{{"schema", 1},
         {"command", "gen"},
         {"family", family},
         {"n", pair.n()},
         {"rank_E", numerical_rank(pair.E)},
         {"outputs", {{"E", e_path}, {"A", a_path}}}};
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nearest admissible descriptor pairs: analyzer and solver"};
  app.require_subcommand(1);

  // analyze
  std::string e_path, a_path;
  Tolerances tol;
  auto* analyze = app.add_subcommand(
      "analyze", "admissibility report for a pair (JSON on stdout)");
  analyze->add_option("--A", a_path, "A matrix file")->required();
  analyze->add_option("--E", e_path, "E matrix file (default: identity)");
  analyze->add_option("--rank-rtol", tol.rank_rtol,
                      "relative singular-value cutoff (default 1e-9)");
  analyze->add_option("--eig-atol", tol.eig_atol,
                      "infinite-eigenvalue cutoff (default 1e-10)");
  analyze->add_option("--stability-tol", tol.stability_tol,
                      "unit-circle slack (default 1e-8)");

  // stabilize
  SolverFlags stab_flags;
  stab_flags.out_prefix = "out";
  auto* stabilize = app.add_subcommand(
      "stabilize", "compute a nearby admissible pair of the requested rank");
  stabilize->add_option("--A", a_path, "A matrix file")->required();
  stabilize->add_option("--E", e_path, "E matrix file (default: identity)");
  stab_flags.add_to(stabilize, /*with_rank=*/true);
  stabilize->add_option("--trace", stab_flags.trace_path,
                        "write the per-iteration error history as CSV");
  stabilize->add_option("--out", stab_flags.out_prefix,
                        "output prefix for .Ehat/.Ahat (default 'out')");
  stabilize->add_option("--init", stab_flags.init_path,
                        "restart from a serialized state (JSON)");

  // sweep
  SolverFlags sweep_flags;
  std::string ranks_spec = "auto";
  auto* sweep = app.add_subcommand(
      "sweep", "solve across target ranks and report the per-rank errors");
  sweep->add_option("--A", a_path, "A matrix file")->required();
  sweep->add_option("--E", e_path, "E matrix file (default: identity)");
  sweep->add_option("--ranks", ranks_spec,
                    "'full', 'auto' or a comma-separated rank list");
  sweep_flags.add_to(sweep, /*with_rank=*/false);
  sweep->add_option("--out", sweep_flags.out_prefix,
                    "write the best pair to <prefix>.Ehat/.Ahat");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a test instance");
  gen->require_subcommand(1);
  Index gen_n = 10, gen_k = 3, gen_p = 0;
  double gen_alpha = 0.2;
  std::string gen_prefix = "instance", fixture_name;
  std::optional<double> fixture_param;
  double fixture_param_value = 0.0;

  auto* gen_grcar = gen->add_subcommand("grcar", "(I_n, grcar(n, k))");
  gen_grcar->add_option("--n", gen_n, "dimension")->required();
  gen_grcar->add_option("--k", gen_k, "superdiagonal count (default 3)");
  gen_grcar->add_option("--out", gen_prefix, "output prefix");

  auto* gen_ones = gen->add_subcommand("ones", "(I_n, alpha * ones)");
  gen_ones->add_option("--n", gen_n, "dimension")->required();
  gen_ones->add_option("--alpha", gen_alpha, "scale (default 0.2)");
  gen_ones->add_option("--out", gen_prefix, "output prefix");

  auto* gen_rankdef = gen->add_subcommand(
      "rankdef-e", "(rank-deficient identity E, grcar(n, k))");
  gen_rankdef->add_option("--n", gen_n, "dimension")->required();
  gen_rankdef->add_option("--p", gen_p, "zeroed leading pivots")->required();
  gen_rankdef->add_option("--k", gen_k, "superdiagonal count (default 3)");
  gen_rankdef->add_option("--out", gen_prefix, "output prefix");

  auto* gen_fixture = gen->add_subcommand("fixture", "hand-built small pair");
  gen_fixture->add_option("--name", fixture_name, "fixture name")->required();
  auto* param_opt =
      gen_fixture->add_option("--param", fixture_param_value,
                              "fixture parameter (eps1 / eps2 / delta)");
  gen_fixture->add_option("--out", gen_prefix, "output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(e_path, a_path, tol);
    }
    if (stabilize->parsed()) {
      return run_stabilize(e_path, a_path, stab_flags);
    }
    if (sweep->parsed()) {
      return run_sweep(e_path, a_path, ranks_spec, sweep_flags);
    }
    if (gen_grcar->parsed()) {
      MatrixPair pair{Matrix::Identity(gen_n, gen_n), grcar(gen_n, gen_k)};
      return write_instance("grcar", pair, gen_prefix);
    }
    if (gen_ones->parsed()) {
      return write_instance("ones", scaled_ones(gen_n, gen_alpha), gen_prefix);
    }
    if (gen_rankdef->parsed()) {
      MatrixPair pair{rank_deficient_identity(gen_n, gen_p),
                      grcar(gen_n, gen_k)};
      return write_instance("rankdef-e", pair, gen_prefix);
    }
    if (gen_fixture->parsed()) {
      if (param_opt->count() > 0) {
        fixture_param = fixture_param_value;
      }
      return write_instance("fixture:" + fixture_name,
                            fixture(fixture_name, fixture_param), gen_prefix);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}
