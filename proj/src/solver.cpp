// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#include "stabpair/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace stabpair {

namespace {

constexpr double kFgmAlpha0 = 0.1;

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Solve X * G = H (G symmetric PSD, shared across the rows of X). Falls back
// to G + shift I when G is numerically singular.
Matrix solve_rows(const Matrix& G, const Matrix& H, double shift,
                  bool* used_ridge) {
  Eigen::LDLT<Matrix> ldlt(G);
  bool singular = ldlt.info() != Eigen::Success;
  if (!singular) {
    const auto& d = ldlt.vectorD();
    const double dmax = d.maxCoeff();
    singular = !(dmax > 0.0) || d.minCoeff() <= dmax * 1e-14;
  }
  if (singular) {
    Matrix Gr = G;
    Gr.diagonal().array() += shift;
    ldlt.compute(Gr);
    if (used_ridge != nullptr) {
      *used_ridge = true;
    }
  }
  return ldlt.solve(H.transpose()).transpose();
}

// Same normal equations with the unknown on the left: G * X = H.
Matrix solve_cols(const Matrix& G, const Matrix& H, double shift,
                  bool* used_ridge) {
  Eigen::LDLT<Matrix> ldlt(G);
  bool singular = ldlt.info() != Eigen::Success;
  if (!singular) {
    const auto& d = ldlt.vectorD();
    const double dmax = d.maxCoeff();
    singular = !(dmax > 0.0) || d.minCoeff() <= dmax * 1e-14;
  }
  if (singular) {
    Matrix Gr = G;
    Gr.diagonal().array() += shift;
    ldlt.compute(Gr);
    if (used_ridge != nullptr) {
      *used_ridge = true;
    }
  }
  return ldlt.solve(H);
}

void require_matching(const ParamState& state, const MatrixPair& target) {
  require_valid(state);
  require_valid(target);
  if (state.n() != target.n()) {
    throw std::invalid_argument("state and target dimensions differ");
  }
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::time_limit:
      return "time_limit";
    case Termination::iter_limit:
      return "iter_limit";
  }
  return "unknown";
}

ParamState update_W(const ParamState& state, const MatrixPair& target,
                    const SolverConfig& cfg, bool* used_ridge) {
  require_matching(state, target);
  const Index n = state.n();
  const Index r = state.r;

  // M_E = diag(I_r, 0) T, M_A = diag(U B, I_{n-r}) T.
  Matrix ME = Matrix::Zero(n, n);
  ME.topRows(r) = state.T.topRows(r);
  Matrix MA(n, n);
  MA.topRows(r).noalias() = state.U * state.B * state.T.topRows(r);
  MA.bottomRows(n - r) = state.T.bottomRows(n - r);

  const Matrix G = ME * ME.transpose() + MA * MA.transpose();
  const Matrix H = target.E * ME.transpose() + target.A * MA.transpose();

  ParamState out = state;
  out.W = solve_rows(G, H, cfg.ridge * static_cast<double>(n), used_ridge);
  return out;
}

ParamState update_T(const ParamState& state, const MatrixPair& target,
                    const SolverConfig& cfg, bool* used_ridge) {
  require_matching(state, target);
  const Index n = state.n();
  const Index r = state.r;

  // N_E = W diag(I_r, 0), N_A = W diag(U B, I_{n-r}).
  Matrix NE = Matrix::Zero(n, n);
  NE.leftCols(r) = state.W.leftCols(r);
  Matrix NA(n, n);
  NA.leftCols(r).noalias() = state.W.leftCols(r) * (state.U * state.B);
  NA.rightCols(n - r) = state.W.rightCols(n - r);

  const Matrix G = NE.transpose() * NE + NA.transpose() * NA;
  const Matrix H = NE.transpose() * target.E + NA.transpose() * target.A;

  ParamState out = state;
  out.T = solve_cols(G, H, cfg.ridge * static_cast<double>(n), used_ridge);
  return out;
}

std::pair<Matrix, Matrix> gradient_UB(const ParamState& state,
                                      const MatrixPair& target) {
  const ReducedData data = reduced_data(state, target);
  const Matrix residual = data.R - data.P * (state.U * state.B) * data.Q;
  const Matrix core = data.P.transpose() * residual * data.Q.transpose();
  Matrix grad_U = -2.0 * core * state.B.transpose();
  Matrix grad_B = -2.0 * state.U.transpose() * core;
  return {std::move(grad_U), std::move(grad_B)};
}

ParamState fgm_update_UB(const ParamState& state, const MatrixPair& target,
                         const SolverConfig& cfg) {
  require_matching(state, target);
  const ReducedData data = reduced_data(state, target);

  // Everything the inner loop needs reduces to r x r products.
  const Matrix PtP = data.P.transpose() * data.P;
  const Matrix QQt = data.Q * data.Q.transpose();
  const Matrix PtRQt = data.P.transpose() * data.R * data.Q.transpose();
  const double R_sq = data.R.squaredNorm();
  const double norm_PtP = spectral_norm(PtP);
  const double L_B = 2.0 * norm_PtP * spectral_norm(QQt);

  const auto g_value = [&](const Matrix& U, const Matrix& B) {
    const Matrix X = U * B;
    return R_sq - 2.0 * PtRQt.cwiseProduct(X).sum() +
           (PtP * X * QQt).cwiseProduct(X).sum();
  };
  // core = P^T (R - P U B Q) Q^T evaluated at the extrapolated point
  const auto core_at = [&](const Matrix& U, const Matrix& B) {
    return Matrix(PtRQt - PtP * (U * B) * QQt);
  };

  Matrix U = state.U;
  Matrix B = state.B;
  Matrix Uy = U;
  Matrix By = B;
  double g_cur = g_value(U, B);
  Matrix best_U = U;
  Matrix best_B = B;
  double g_best = g_cur;

  double alpha = kFgmAlpha0;
  for (Index k = 0; k < cfg.inner_fgm_steps; ++k) {
    const double L_U =
        2.0 * norm_PtP * spectral_norm(Matrix(By * QQt * By.transpose()));
    const Matrix core = core_at(Uy, By);
    // zero Lipschitz bound means the block cannot move: skip its step
    const Matrix U_next =
        L_U > 0.0
            ? polar_orthogonal_factor(
                  Matrix(Uy + (2.0 / L_U) * core * By.transpose()))
            : U;
    const Matrix B_next =
        L_B > 0.0
            ? project_psd_contraction(
                  Matrix(By + (2.0 / L_B) * Uy.transpose() * core))
            : B;
    const double g_next = g_value(U_next, B_next);

    const double alpha_sq = alpha * alpha;
    const double alpha_next =
        0.5 * (std::sqrt(alpha_sq * alpha_sq + 4.0 * alpha_sq) - alpha_sq);
    const double beta = alpha * (1.0 - alpha) / (alpha_sq + alpha_next);

    if (g_next > g_cur && cfg.momentum_restart) {
      Uy = U_next;
      By = B_next;
      alpha = kFgmAlpha0;
    } else {
      Uy = U_next + beta * (U_next - U);
      By = B_next + beta * (B_next - B);
      alpha = alpha_next;
    }
    U = U_next;
    B = B_next;
    g_cur = g_next;
    if (g_next < g_best) {
      g_best = g_next;
      best_U = U_next;
      best_B = B_next;
    }
  }

  ParamState out = state;
  out.U = best_U;
  out.B = best_B;
  return out;
}

SolveResult bcd_solve(const MatrixPair& target, Index r,
                      const SolverConfig& cfg, const ParamState* init) {
  require_valid(target);
  if (!cfg.valid()) {
    throw std::invalid_argument("bcd_solve: invalid SolverConfig");
  }
  if (r < 1 || r > target.n()) {
    throw std::invalid_argument("bcd_solve: rank r must satisfy 1 <= r <= n");
  }

  const auto t0 = Clock::now();
  ParamState state = init != nullptr ? *init : initialize(target, r);
  if (init != nullptr) {
    require_matching(state, target);
    if (state.r != r) {
      throw std::invalid_argument("bcd_solve: initial state has a different rank");
    }
  }

  SolveResult result;
  double e_prev = objective(state, target);
  result.trace.push_back(
      {0, e_prev, seconds_since(t0), {e_prev, e_prev, e_prev}, false});

  Termination termination = Termination::iter_limit;
  for (Index i = 1; i <= cfg.max_outer_iters; ++i) {
    bool ridge_used = false;
    state = update_W(state, target, cfg, &ridge_used);
    const double e_W = objective(state, target);
    state = update_T(state, target, cfg, &ridge_used);
    const double e_T = objective(state, target);
    state = fgm_update_UB(state, target, cfg);
    const double e_UB = objective(state, target);

    result.trace.push_back(
        {i, e_UB, seconds_since(t0), {e_W, e_T, e_UB}, ridge_used});

    // <= so that an exact fit (e identically zero) counts as converged
    if (e_prev - e_UB <= cfg.rel_decrease_tol * e_prev) {
      termination = Termination::converged;
      e_prev = e_UB;
      break;
    }
    e_prev = e_UB;
    if (seconds_since(t0) >= cfg.time_limit_seconds) {
      termination = Termination::time_limit;
      break;
    }
  }

  result.state = state;
  result.pair = assemble(state);
  result.delta_E = result.pair.E - target.E;
  result.delta_A = result.pair.A - target.A;
  result.error = result.delta_E.squaredNorm() + result.delta_A.squaredNorm();
  result.termination = termination;
  result.report = analyze_admissibility(result.pair);
  for (auto& warning : state_warnings(state)) {
    result.report.warnings.push_back(std::move(warning));
  }
  return result;
}

SweepResult sweep_ranks(const MatrixPair& target,
                        const std::vector<Index>& ranks,
                        const SolverConfig& cfg) {
  require_valid(target);
  if (ranks.empty()) {
    throw std::invalid_argument("sweep_ranks: empty rank list");
  }

  SweepResult sweep;
  bool have_best = false;
  for (const Index r : ranks) {
    const auto t0 = Clock::now();
    SolveResult solve = bcd_solve(target, r, cfg);
    const double seconds = seconds_since(t0);
    sweep.table.push_back({r, solve.error, seconds, solve.termination});
    if (!have_best || solve.error < sweep.best.error) {
      sweep.best = std::move(solve);
      have_best = true;
    }
  }
  std::sort(sweep.table.begin(), sweep.table.end(),
            [](const SweepEntry& a, const SweepEntry& b) { return a.r < b.r; });
  return sweep;
}

SweepResult rank_sweep(const MatrixPair& target, const SolverConfig& cfg,
                       SweepMode mode) {
  require_valid(target);
  const Index n = target.n();
  if (n < 1) {
    throw std::invalid_argument("rank_sweep: empty pair");
  }

  if (mode == SweepMode::full) {
    std::vector<Index> ranks(static_cast<size_t>(n));
    for (Index r = 1; r <= n; ++r) {
      ranks[static_cast<size_t>(r - 1)] = r;
    }
    return sweep_ranks(target, ranks, cfg);
  }

  // Adaptive: start at the numerical rank of E, then move to neighboring
  // ranks while the error keeps improving.
  const Index r0 = std::clamp<Index>(numerical_rank(target.E), 1, n);
  std::vector<Index> visited{r0};
  SweepResult sweep = sweep_ranks(target, visited, cfg);

  const auto error_at = [&sweep](Index r) {
    for (const SweepEntry& entry : sweep.table) {
      if (entry.r == r) {
        return entry.error;
      }
    }
    return std::numeric_limits<double>::infinity();
  };

  for (const int direction : {-1, +1}) {
    double last = error_at(r0);
    for (Index r = r0 + direction; r >= 1 && r <= n; r += direction) {
      SweepResult one = sweep_ranks(target, {r}, cfg);
      sweep.table.push_back(one.table.front());
      const double err = one.table.front().error;
      if (err < sweep.best.error) {
        sweep.best = std::move(one.best);
      }
      if (err >= last) {
        break;  // error stopped improving in this direction
      }
      last = err;
    }
  }
  std::sort(sweep.table.begin(), sweep.table.end(),
            [](const SweepEntry& a, const SweepEntry& b) { return a.r < b.r; });
  return sweep;
}

}  // namespace stabpair
