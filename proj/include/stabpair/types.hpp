// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace stabpair {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A square matrix pair (E, A) describing the pencil z*E - A of the
/// difference equation E x(k+1) = A x(k).
struct MatrixPair {
  Matrix E;
  Matrix A;

  Index n() const { return E.rows(); }
};

/// Throws std::invalid_argument unless E and A are square, of identical
/// dimension, and finite-valued.
inline void require_valid(const MatrixPair& pair) {
  if (pair.E.rows() != pair.E.cols() || pair.A.rows() != pair.A.cols() ||
      pair.E.rows() != pair.A.rows()) {
    throw std::invalid_argument(
        "MatrixPair: E and A must be square matrices of identical dimension");
  }
  if (!pair.E.allFinite() || !pair.A.allFinite()) {
    throw std::invalid_argument("MatrixPair: non-finite entries");
  }
}

}  // namespace stabpair
