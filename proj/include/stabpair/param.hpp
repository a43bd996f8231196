// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "stabpair/numerics.hpp"
#include "stabpair/types.hpp"

namespace stabpair {

/// Decision variables of the parametrized problem: pairs of the form
///   E = W diag(I_r, 0) T,   A = W diag(U B, I_{n-r}) T
/// with W, T invertible n x n, U orthogonal r x r and B a symmetric PSD
/// contraction r x r. Every such pair is regular, of index at most one and
/// stable with rank(E) = r, and conversely every such pair admits this form.
struct ParamState {
  Matrix W;
  Matrix T;
  Matrix U;
  Matrix B;
  Index r = 0;

  Index n() const { return W.rows(); }
};

/// Precomputed blocks for the (U, B) subproblem: with P the first r columns
/// of W, Q the first r rows of T and R = A - W_2 T_2 (trailing blocks), the
/// A-term of the objective equals ||R - P (U B) Q||_F^2.
struct ReducedData {
  Matrix P;  ///< n x r
  Matrix Q;  ///< r x n
  Matrix R;  ///< n x n
};

/// Throws std::invalid_argument on shape violations (W, T not n x n;
/// U, B not r x r; r outside [1, n]).
void require_valid(const ParamState& state);

/// Assembles (E_hat, A_hat) from the parametrization.
MatrixPair assemble(const ParamState& state);

/// ||E - E_hat||_F^2 + ||A - A_hat||_F^2 against the target pair.
double objective(const ParamState& state, const MatrixPair& target);

ReducedData reduced_data(const ParamState& state, const MatrixPair& target);

/// Paper-of-record initialization: W = T = I_n and (U, B) the closed-form
/// minimizer of ||A_{1:r,1:r} - U B||_F^2 over the feasible set, i.e.
/// U = polar_orthogonal_factor(A_{1:r,1:r}) and
/// B = project_psd_contraction(U^T A_{1:r,1:r}).
ParamState initialize(const MatrixPair& target, Index r);

/// Soft invariant checks: U orthogonality drift, B symmetry/eigenvalue range,
/// near-singular W or T. Violations are reported as warnings, not errors.
std::vector<std::string> state_warnings(const ParamState& state,
                                        const Tolerances& tol = {});

}  // namespace stabpair
