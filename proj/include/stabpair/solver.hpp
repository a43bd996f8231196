// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "stabpair/param.hpp"
#include "stabpair/pencil.hpp"
#include "stabpair/types.hpp"

namespace stabpair {

/// Run controls for the block coordinate descent.
struct SolverConfig {
  Index max_outer_iters = 100000;
  double time_limit_seconds = 60.0;
  double rel_decrease_tol = 1e-8;  ///< stop when e(i) - e(i+1) < tol * e(i)
  Index inner_fgm_steps = 20;      ///< fast-gradient steps per outer iteration
  double ridge = 1e-12;            ///< regularization floor, applied as ridge * n
  bool momentum_restart = true;

  bool valid() const {
    return max_outer_iters > 0 && time_limit_seconds > 0.0 &&
           rel_decrease_tol > 0.0 && rel_decrease_tol < 1.0 &&
           inner_fgm_steps > 0 && ridge > 0.0;
  }
};

/// One outer iteration of the descent. block_errors holds the objective after
/// the W, T and (U, B) updates in that order; error repeats the last of them.
struct IterationTrace {
  Index iter = 0;
  double error = 0.0;
  double elapsed_seconds = 0.0;
  std::array<double, 3> block_errors{};
  bool ridge_applied = false;  ///< a least-squares system needed the ridge fallback
};

enum class Termination { converged, time_limit, iter_limit };

const char* termination_name(Termination t);

struct SolveResult {
  ParamState state;
  MatrixPair pair;      ///< assembled (E_hat, A_hat)
  double error = 0.0;   ///< ||delta_E||_F^2 + ||delta_A||_F^2
  Matrix delta_E;       ///< E_hat - E
  Matrix delta_A;       ///< A_hat - A
  std::vector<IterationTrace> trace;
  Termination termination = Termination::iter_limit;
  AdmissibilityReport report;  ///< analyzer verdict on the output pair
};

/// Exact least-squares minimizer over W with T, U, B fixed. The normal
/// equations W G = H share one factorization across the rows of W; a
/// numerically singular G gets ridge * n added to its diagonal (reported
/// through used_ridge) instead of aborting.
ParamState update_W(const ParamState& state, const MatrixPair& target,
                    const SolverConfig& cfg, bool* used_ridge = nullptr);

/// Mirror of update_W for T with W, U, B fixed (columns decouple).
ParamState update_T(const ParamState& state, const MatrixPair& target,
                    const SolverConfig& cfg, bool* used_ridge = nullptr);

/// Gradients of g(U, B) = ||R - P U B Q||_F^2 at the state's (U, B):
///   grad_U = -2 P^T (R - P U B Q) Q^T B^T
///   grad_B = -2 U^T P^T (R - P U B Q) Q^T
std::pair<Matrix, Matrix> gradient_UB(const ParamState& state,
                                      const MatrixPair& target);

/// A few accelerated projected-gradient steps on (U, B) with per-block step
/// sizes 1/L_U, 1/L_B, L_U = 2 ||P^T P|| ||B Q Q^T B^T|| and
/// L_B = 2 ||P^T P|| ||Q Q^T||. Each step projects U onto the orthogonal
/// matrices and B onto the PSD contractions; momentum restarts whenever the
/// objective increases. Returns the best iterate seen, so the block never
/// increases the objective.
ParamState fgm_update_UB(const ParamState& state, const MatrixPair& target,
                         const SolverConfig& cfg);

/// Block coordinate descent: cycle exact W and T updates with the (U, B)
/// fast-gradient block, recording the error history e(i). Stops on the
/// relative-decrease test, the wall-clock limit or the iteration cap.
/// A custom initial state may be supplied; by default the closed-form
/// initialization is used.
SolveResult bcd_solve(const MatrixPair& target, Index r,
                      const SolverConfig& cfg = {},
                      const ParamState* init = nullptr);

enum class SweepMode { full, adaptive };

struct SweepEntry {
  Index r = 0;
  double error = 0.0;
  double seconds = 0.0;
  Termination termination = Termination::iter_limit;
};

struct SweepResult {
  SolveResult best;
  std::vector<SweepEntry> table;  ///< ascending in r
};

/// Solves the rank-constrained problem for the given ranks and keeps the
/// best (smallest-error) solution; ties go to the smaller rank.
SweepResult sweep_ranks(const MatrixPair& target,
                        const std::vector<Index>& ranks,
                        const SolverConfig& cfg = {});

/// full: solve every r = 1..n. adaptive: start at the numerical rank of E and
/// expand to neighboring ranks while the error keeps improving, exploiting
/// the observed monotone behavior of the error in r.
SweepResult rank_sweep(const MatrixPair& target, const SolverConfig& cfg = {},
                       SweepMode mode = SweepMode::full);

}  // namespace stabpair
