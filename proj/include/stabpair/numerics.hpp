// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "stabpair/types.hpp"

namespace stabpair {

/// Thresholds shared by rank decisions and spectral verdicts.
struct Tolerances {
  double rank_rtol = 1e-9;      ///< singular values below rank_rtol * sigma_1 count as zero
  double eig_atol = 1e-10;      ///< |beta| cutoff (scaled by matrix norms) for infinite eigenvalues
  double stability_tol = 1e-8;  ///< slack on |lambda| <= 1 verdicts

  bool valid() const {
    return rank_rtol > 0.0 && rank_rtol < 1.0 && eig_atol > 0.0 &&
           stability_tol > 0.0;
  }
};

/// Count of singular values above rank_rtol * sigma_1. Zero matrices have rank 0.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& M,
                     const Tolerances& tol = {}) {
  if (!M.allFinite()) {
    throw std::invalid_argument("numerical_rank: non-finite entries");
  }
  if (M.rows() == 0 || M.cols() == 0) {
    return 0;
  }
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(M.derived());
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0)) {
    return 0;
  }
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.rank_rtol * sv(0)) {
      ++rank;
    }
  }
  return rank;
}

/// Largest singular value.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real spectral_norm(
    const Eigen::MatrixBase<Derived>& M) {
  if (!M.allFinite()) {
    throw std::invalid_argument("spectral_norm: non-finite entries");
  }
  if (M.rows() == 0 || M.cols() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(M.derived());
  return svd.singularValues()(0);
}

/// Orthogonal factor Q of the polar decomposition M = Q H: the Frobenius-nearest
/// orthogonal matrix to M. For rank-deficient M the minimizer is not unique;
/// this returns the product of the singular-vector factors, which is a valid
/// minimizer and deterministic for a fixed input.
template <typename Derived>
typename Derived::PlainObject polar_orthogonal_factor(
    const Eigen::MatrixBase<Derived>& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("polar_orthogonal_factor: matrix must be square");
  }
  if (!M.allFinite()) {
    throw std::invalid_argument("polar_orthogonal_factor: non-finite entries");
  }
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(
      M.derived(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Frobenius projection onto {B : B symmetric, B >= 0, ||B|| <= 1}:
/// symmetrize, then clip every eigenvalue into [0, 1].
template <typename Derived>
typename Derived::PlainObject project_psd_contraction(
    const Eigen::MatrixBase<Derived>& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("project_psd_contraction: matrix must be square");
  }
  if (!M.allFinite()) {
    throw std::invalid_argument("project_psd_contraction: non-finite entries");
  }
  using Plain = typename Derived::PlainObject;
  const Plain sym = (M.derived() + M.derived().adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Plain> es(sym);
  const auto clipped = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0).eval();
  Plain out = es.eigenvectors() * clipped.asDiagonal() *
              es.eigenvectors().adjoint();
  // kill the asymmetry left by the reassembly round-off
  out = ((out + out.adjoint()) * 0.5).eval();
  return out;
}

}  // namespace stabpair
