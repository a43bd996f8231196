// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#include "stabpair/gallery.hpp"

#include <stdexcept>

namespace stabpair {

namespace {

MatrixPair ex1_base() {
  Matrix E = Matrix::Zero(3, 3);
  E(0, 0) = 1.0;
  Matrix A(3, 3);
  A << 0.5, 0.0, 2.0,
       0.0, 1.0, 0.0,
       0.0, 0.0, 1.0;
  return {E, A};
}

double param_or(const std::optional<double>& param, double fallback) {
  return param.has_value() ? *param : fallback;
}

}  // namespace

Matrix grcar(Index n, Index k) {
  if (n < 1 || k < 1 || k >= n) {
    throw std::invalid_argument("grcar: need 1 <= k < n");
  }
  Matrix A = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (i > 0) {
      A(i, i - 1) = -1.0;
    }
    for (Index j = i; j <= std::min(i + k, n - 1); ++j) {
      A(i, j) = 1.0;
    }
  }
  return A;
}

MatrixPair scaled_ones(Index n, double alpha) {
  if (n < 1 || !(alpha > 0.0)) {
    throw std::invalid_argument("scaled_ones: need n >= 1 and alpha > 0");
  }
  return {Matrix::Identity(n, n), Matrix::Constant(n, n, alpha)};
}

Matrix rank_deficient_identity(Index n, Index p) {
  if (n < 1 || p < 0 || p > n - 1) {
    throw std::invalid_argument(
        "rank_deficient_identity: need 0 <= p <= n-1");
  }
  Matrix E = Matrix::Zero(n, n);
  for (Index i = p; i < n; ++i) {
    E(i, i) = 1.0;
  }
  return E;
}

MatrixPair fixture(const std::string& name, std::optional<double> param) {
  if (name == "ex1" || name == "sigma1" || name == "sigma2" ||
      name == "sigma_mid") {
    if (param.has_value()) {
      throw std::invalid_argument("fixture: '" + name +
                                  "' does not take a parameter");
    }
  }

  if (name == "ex1") {
    return ex1_base();
  }
  if (name == "ex1_index2") {
    const double eps2 = param_or(param, 0.1);
    if (!(eps2 > 0.0)) {
      throw std::invalid_argument("fixture: ex1_index2 needs eps2 > 0");
    }
    MatrixPair pair = ex1_base();
    pair.E(1, 2) = eps2;
    return pair;
  }
  if (name == "ex1_unstable") {
    const double eps1 = param_or(param, 0.5);
    if (!(eps1 > 0.0 && eps1 < 1.0)) {
      throw std::invalid_argument("fixture: ex1_unstable needs 0 < eps1 < 1");
    }
    MatrixPair pair = ex1_base();
    pair.E(1, 1) = eps1;
    return pair;
  }
  if (name == "ex1_singular_limit") {
    const double delta = param_or(param, 1.0);
    MatrixPair pair = ex1_base();
    pair.A(2, 2) = 1.0 - delta;
    return pair;
  }
  if (name == "sigma1") {
    Matrix A(2, 2);
    A << 0.5, 2.0, 0.0, 1.0;
    return {Matrix::Identity(2, 2), A};
  }
  if (name == "sigma2") {
    Matrix A(2, 2);
    A << 0.5, 0.0, -2.0, 1.0;
    return {Matrix::Identity(2, 2), A};
  }
  if (name == "sigma_mid") {
    Matrix A(2, 2);
    A << 0.5, 1.0, -1.0, 1.0;
    return {Matrix::Identity(2, 2), A};
  }
  throw std::invalid_argument("fixture: unknown name '" + name + "'");
}

}  // namespace stabpair
