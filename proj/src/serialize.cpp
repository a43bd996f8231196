// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#include "stabpair/serialize.hpp"

#include <iomanip>
#include <ostream>

namespace stabpair {

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < M.cols(); ++j) {
      row.push_back(M(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("matrix_from_json: expected an array of rows");
  }
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows > 0 ? static_cast<Index>(j.at(0).size()) : 0;
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix_from_json: ragged rows");
    }
    for (Index k = 0; k < cols; ++k) {
      M(i, k) = row.at(static_cast<size_t>(k)).get<double>();
    }
  }
  return M;
}

void to_json(json& j, const SpectrumEntry& entry) {
  j = json{{"re", entry.value.real()},
           {"im", entry.value.imag()},
           {"modulus", entry.modulus},
           {"on_unit_circle", entry.on_unit_circle}};
}

void to_json(json& j, const AdmissibilityReport& report) {
  j = json{{"regular", report.regular},
           {"rank_E", report.rank_E},
           {"finite_count", report.finite_count},
           {"infinite_count", report.infinite_count},
           {"index_at_most_one", report.index_at_most_one},
           {"stable", report.stable},
           {"admissible", report.admissible},
           {"spectrum", report.spectrum},
           {"warnings", report.warnings}};
}

void to_json(json& j, const ParamState& state) {
  j = json{{"W", matrix_to_json(state.W)},
           {"T", matrix_to_json(state.T)},
           {"U", matrix_to_json(state.U)},
           {"B", matrix_to_json(state.B)},
           {"r", state.r}};
}

void from_json(const json& j, ParamState& state) {
  state.W = matrix_from_json(j.at("W"));
  state.T = matrix_from_json(j.at("T"));
  state.U = matrix_from_json(j.at("U"));
  state.B = matrix_from_json(j.at("B"));
  state.r = j.at("r").get<Index>();
  require_valid(state);
}

void to_json(json& j, const SweepEntry& entry) {
  j = json{{"r", entry.r},
           {"error", entry.error},
           {"seconds", entry.seconds},
           {"termination", termination_name(entry.termination)}};
}

void to_json(json& j, const SolverConfig& cfg) {
  j = json{{"max_outer_iters", cfg.max_outer_iters},
           {"time_limit_seconds", cfg.time_limit_seconds},
           {"rel_decrease_tol", cfg.rel_decrease_tol},
           {"inner_fgm_steps", cfg.inner_fgm_steps},
           {"ridge", cfg.ridge},
           {"momentum_restart", cfg.momentum_restart}};
}

void write_trace_csv(std::ostream& out,
                     const std::vector<IterationTrace>& trace) {
  out << "iter,error,elapsed_s,err_after_W,err_after_T,err_after_UB\n";
  out << std::setprecision(17);
  for (const IterationTrace& row : trace) {
    out << row.iter << "," << row.error << "," << row.elapsed_seconds << ","
        << row.block_errors[0] << "," << row.block_errors[1] << ","
        << row.block_errors[2] << "\n";
  }
}

}  // namespace stabpair
