// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#include "stabpair/param.hpp"

#include <sstream>

namespace stabpair {

void require_valid(const ParamState& state) {
  const Index n = state.W.rows();
  if (state.W.cols() != n || state.T.rows() != n || state.T.cols() != n) {
    throw std::invalid_argument("ParamState: W and T must be square n x n");
  }
  if (state.r < 1 || state.r > n) {
    throw std::invalid_argument("ParamState: rank r must satisfy 1 <= r <= n");
  }
  if (state.U.rows() != state.r || state.U.cols() != state.r ||
      state.B.rows() != state.r || state.B.cols() != state.r) {
    throw std::invalid_argument("ParamState: U and B must be r x r");
  }
  if (!state.W.allFinite() || !state.T.allFinite() || !state.U.allFinite() ||
      !state.B.allFinite()) {
    throw std::invalid_argument("ParamState: non-finite entries");
  }
}

MatrixPair assemble(const ParamState& state) {
  require_valid(state);
  const Index n = state.n();
  const Index r = state.r;
  const auto P = state.W.leftCols(r);
  const auto Q = state.T.topRows(r);
  MatrixPair pair;
  pair.E.noalias() = P * Q;
  pair.A.noalias() = P * (state.U * state.B) * Q;
  pair.A.noalias() += state.W.rightCols(n - r) * state.T.bottomRows(n - r);
  return pair;
}

double objective(const ParamState& state, const MatrixPair& target) {
  require_valid(target);
  const MatrixPair hat = assemble(state);
  if (hat.n() != target.n()) {
    throw std::invalid_argument("objective: state and target dimensions differ");
  }
  return (target.E - hat.E).squaredNorm() + (target.A - hat.A).squaredNorm();
}

ReducedData reduced_data(const ParamState& state, const MatrixPair& target) {
  require_valid(state);
  require_valid(target);
  if (state.n() != target.n()) {
    throw std::invalid_argument(
        "reduced_data: state and target dimensions differ");
  }
  const Index n = state.n();
  const Index r = state.r;
  ReducedData data;
  data.P = state.W.leftCols(r);
  data.Q = state.T.topRows(r);
  data.R = target.A;
  data.R.noalias() -= state.W.rightCols(n - r) * state.T.bottomRows(n - r);
  return data;
}

ParamState initialize(const MatrixPair& target, Index r) {
  require_valid(target);
  const Index n = target.n();
  if (r < 1 || r > n) {
    throw std::invalid_argument("initialize: rank r must satisfy 1 <= r <= n");
  }
  ParamState state;
  state.W = Matrix::Identity(n, n);
  state.T = Matrix::Identity(n, n);
  state.r = r;
  const Matrix A11 = target.A.topLeftCorner(r, r);
  state.U = polar_orthogonal_factor(A11);
  state.B = project_psd_contraction(Matrix(state.U.transpose() * A11));
  return state;
}

std::vector<std::string> state_warnings(const ParamState& state,
                                        const Tolerances& tol) {
  require_valid(state);
  std::vector<std::string> warnings;

  const double ortho_drift =
      (state.U.transpose() * state.U - Matrix::Identity(state.r, state.r))
          .norm();
  if (ortho_drift > 1e-10) {
    std::ostringstream os;
    os << "U drifted from orthogonality: ||U^T U - I||_F = " << ortho_drift;
    warnings.push_back(os.str());
  }

  const double asym = (state.B - state.B.transpose()).norm();
  if (asym > 1e-10) {
    std::ostringstream os;
    os << "B is not symmetric: ||B - B^T||_F = " << asym;
    warnings.push_back(os.str());
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(state.B);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo < -1e-12 || hi > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "B eigenvalues outside [0, 1]: range [" << lo << ", " << hi << "]";
      warnings.push_back(os.str());
    }
  }

  for (const auto* factor : {&state.W, &state.T}) {
    Eigen::JacobiSVD<Matrix> svd(*factor);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0) || sv(sv.size() - 1) <= tol.rank_rtol * sv(0)) {
      warnings.push_back(factor == &state.W
                             ? "W is numerically singular: assembled rank may "
                               "fall below r"
                             : "T is numerically singular: assembled rank may "
                               "fall below r");
    }
  }
  return warnings;
}

}  // namespace stabpair
