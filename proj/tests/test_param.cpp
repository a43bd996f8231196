// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "stabpair/gallery.hpp"
#include "stabpair/param.hpp"
#include "stabpair/pencil.hpp"

using namespace stabpair;

namespace {

ParamState identity_state(Index n, Index r) {
  ParamState s;
  s.W = Matrix::Identity(n, n);
  s.T = Matrix::Identity(n, n);
  s.U = Matrix::Identity(r, r);
  s.B = Matrix::Zero(r, r);
  s.r = r;
  return s;
}

}  // namespace

TEST_CASE("assemble: identity factors") {
  ParamState s = identity_state(4, 2);
  const MatrixPair pair = assemble(s);
  Matrix E_expected = Matrix::Zero(4, 4);
  E_expected(0, 0) = E_expected(1, 1) = 1.0;
  Matrix A_expected = Matrix::Zero(4, 4);
  A_expected(2, 2) = A_expected(3, 3) = 1.0;
  CHECK((pair.E - E_expected).norm() == 0.0);
  CHECK((pair.A - A_expected).norm() == 0.0);

  ParamState full = identity_state(3, 3);
  full.B = Matrix::Identity(3, 3);
  const MatrixPair id = assemble(full);
  CHECK((id.E - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK((id.A - Matrix::Identity(3, 3)).norm() == 0.0);

  ParamState half = identity_state(2, 1);
  half.U(0, 0) = 1.0;
  half.B(0, 0) = 0.5;
  const MatrixPair p = assemble(half);
  CHECK(p.E(0, 0) == 1.0);
  CHECK(p.E(1, 1) == 0.0);
  CHECK(p.A(0, 0) == 0.5);
  CHECK(p.A(1, 1) == 1.0);
}

TEST_CASE("objective on explicit diagonal targets") {
  ParamState half = identity_state(2, 1);
  half.B(0, 0) = 0.5;
  MatrixPair target{Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  target.E(0, 0) = 1.0;
  target.A.diagonal() << 0.5, 1.0;
  CHECK(objective(half, target) == doctest::Approx(0.0));

  target.E = Matrix::Identity(2, 2);  // now E differs by one unit entry
  CHECK(objective(half, target) == doctest::Approx(1.0));
}

TEST_CASE("objective cross-checked by plain-loop sums") {
  const MatrixPair target{Matrix::Identity(10, 10), grcar(10, 3)};
  const ParamState s = initialize(target, 10);
  const double obj = objective(s, target);

  // with W = T = I and r = n the E-term vanishes and the A-term is
  // ||A - U B||_F^2
  const Matrix UB = oracles::naive_mul(s.U, s.B);
  const double expected = oracles::naive_frobenius_sq(Matrix(target.A - UB));
  CHECK(obj == doctest::Approx(expected).epsilon(1e-12));

  auto rng = oracles::seeded_rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 5;
    const Index r = 1 + trial % n;
    ParamState state;
    state.W = oracles::random_matrix(n, n, rng);
    state.T = oracles::random_matrix(n, n, rng);
    state.U = oracles::random_orthogonal(r, rng);
    state.B = project_psd_contraction(oracles::random_matrix(r, r, rng));
    state.r = r;
    MatrixPair tgt{oracles::random_matrix(n, n, rng),
                   oracles::random_matrix(n, n, rng)};

    const MatrixPair hat = assemble(state);
    const double by_loops =
        oracles::naive_frobenius_sq(Matrix(tgt.E - hat.E)) +
        oracles::naive_frobenius_sq(Matrix(tgt.A - hat.A));
    CHECK(objective(state, tgt) == doctest::Approx(by_loops).epsilon(1e-12));
  }
}

TEST_CASE("reduced data blocks and the split objective") {
  auto rng = oracles::seeded_rng(32);

  // r = n: P = W, Q = T, R = A
  {
    const Index n = 4;
    ParamState s;
    s.W = oracles::random_matrix(n, n, rng);
    s.T = oracles::random_matrix(n, n, rng);
    s.U = oracles::random_orthogonal(n, rng);
    s.B = project_psd_contraction(oracles::random_matrix(n, n, rng));
    s.r = n;
    MatrixPair tgt{oracles::random_matrix(n, n, rng),
                   oracles::random_matrix(n, n, rng)};
    const ReducedData d = reduced_data(s, tgt);
    CHECK((d.P - s.W).norm() == 0.0);
    CHECK((d.Q - s.T).norm() == 0.0);
    CHECK((d.R - tgt.A).norm() == 0.0);
  }

  // W = T = I, r < n: P = [I; 0], Q = [I | 0], R = A - diag(0, I)
  {
    const Index n = 5, r = 2;
    ParamState s = identity_state(n, r);
    MatrixPair tgt{oracles::random_matrix(n, n, rng),
                   oracles::random_matrix(n, n, rng)};
    const ReducedData d = reduced_data(s, tgt);
    CHECK((d.P.topRows(r) - Matrix::Identity(r, r)).norm() == 0.0);
    CHECK(d.P.bottomRows(n - r).norm() == 0.0);
    CHECK((d.Q.leftCols(r) - Matrix::Identity(r, r)).norm() == 0.0);
    CHECK(d.Q.rightCols(n - r).norm() == 0.0);
    Matrix trailing = Matrix::Zero(n, n);
    trailing.bottomRightCorner(n - r, n - r) =
        Matrix::Identity(n - r, n - r);
    CHECK((d.R - (tgt.A - trailing)).norm() == 0.0);
  }

  // split-form consistency: objective == E-term + ||R - P U B Q||_F^2
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 5;
    const Index r = 1 + trial % n;
    ParamState s;
    s.W = oracles::random_matrix(n, n, rng);
    s.T = oracles::random_matrix(n, n, rng);
    s.U = oracles::random_orthogonal(r, rng);
    s.B = project_psd_contraction(oracles::random_matrix(r, r, rng));
    s.r = r;
    MatrixPair tgt{oracles::random_matrix(n, n, rng),
                   oracles::random_matrix(n, n, rng)};

    const ReducedData d = reduced_data(s, tgt);
    const double e_term =
        (tgt.E - Matrix(d.P * d.Q)).squaredNorm();
    const double a_term =
        (d.R - Matrix(d.P * (s.U * s.B) * d.Q)).squaredNorm();
    CHECK(objective(s, tgt) ==
          doctest::Approx(e_term + a_term).epsilon(1e-10));
  }
}

TEST_CASE("initialization") {
  // A = I: polar factor and contraction are both the identity
  MatrixPair id{Matrix::Identity(3, 3), Matrix::Identity(3, 3)};
  const ParamState s = initialize(id, 3);
  CHECK((s.W - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK((s.T - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK((s.U - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((s.B - Matrix::Identity(3, 3)).norm() < 1e-12);

  // scalar corner: A11 = -3 gives U = [-1] and B clipped to [1]
  MatrixPair neg{Matrix::Identity(2, 2), Matrix::Zero(2, 2)};
  neg.A(0, 0) = -3.0;
  const ParamState t = initialize(neg, 1);
  CHECK(t.U(0, 0) == doctest::Approx(-1.0));
  CHECK(t.B(0, 0) == doctest::Approx(1.0));
  // grid oracle over u in {-1, +1}, b in [0, 1]
  double best = 1e100;
  double best_u = 0.0, best_b = 0.0;
  for (const double u : {-1.0, 1.0}) {
    for (int i = 0; i <= 1000; ++i) {
      const double b = i / 1000.0;
      const double distance = std::abs(-3.0 - u * b);
      if (distance < best) {
        best = distance;
        best_u = u;
        best_b = b;
      }
    }
  }
  CHECK(t.U(0, 0) == doctest::Approx(best_u));
  CHECK(t.B(0, 0) == doctest::Approx(best_b));

  // orthogonal A11: U = A11, B = I
  auto rng = oracles::seeded_rng(33);
  const Matrix Q = oracles::random_orthogonal(3, rng);
  MatrixPair orth{Matrix::Identity(3, 3), Q};
  const ParamState o = initialize(orth, 3);
  CHECK((o.U - Q).norm() < 1e-10);
  CHECK((o.B - Matrix::Identity(3, 3)).norm() < 1e-10);

  CHECK_THROWS_AS(initialize(id, 0), std::invalid_argument);
  CHECK_THROWS_AS(initialize(id, 4), std::invalid_argument);
}

TEST_CASE("objective is invariant under the (W a, T / a) rescaling") {
  auto rng = oracles::seeded_rng(34);
  const Index n = 5, r = 3;
  ParamState s;
  s.W = oracles::well_conditioned(n, rng);
  s.T = oracles::well_conditioned(n, rng);
  s.U = oracles::random_orthogonal(r, rng);
  s.B = project_psd_contraction(oracles::random_matrix(r, r, rng));
  s.r = r;
  MatrixPair tgt{oracles::random_matrix(n, n, rng),
                 oracles::random_matrix(n, n, rng)};

  ParamState scaled = s;
  scaled.W *= 2.0;
  scaled.T /= 2.0;
  CHECK(objective(s, tgt) ==
        doctest::Approx(objective(scaled, tgt)).epsilon(1e-12));
}

TEST_CASE("a known admissible pair is reached with objective zero") {
  // ex1 factors exactly: W carries the coupling entry, T = I
  const MatrixPair target = fixture("ex1");
  ParamState s;
  s.W = Matrix::Identity(3, 3);
  s.W(0, 2) = 2.0;
  s.T = Matrix::Identity(3, 3);
  s.U = Matrix::Identity(1, 1);
  s.B = Matrix::Constant(1, 1, 0.5);
  s.r = 1;
  CHECK(objective(s, target) == doctest::Approx(0.0));
  CHECK(analyze_admissibility(assemble(s)).admissible);
}

TEST_CASE("assembled rank never exceeds r") {
  auto rng = oracles::seeded_rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 3 + trial % 4;
    const Index r = 1 + trial % n;
    ParamState s;
    s.W = oracles::well_conditioned(n, rng);
    s.T = oracles::well_conditioned(n, rng);
    s.U = oracles::random_orthogonal(r, rng);
    s.B = project_psd_contraction(oracles::random_matrix(r, r, rng));
    s.r = r;
    CHECK(numerical_rank(assemble(s).E) == r);

    // degenerate W: rank can only drop
    ParamState degenerate = s;
    degenerate.W.col(0).setZero();
    CHECK(numerical_rank(assemble(degenerate).E) <= r);
  }
}

TEST_CASE("state warnings flag near-singular factors") {
  ParamState s = identity_state(3, 2);
  s.U = Matrix::Identity(2, 2);
  CHECK(state_warnings(s).empty());

  s.W(2, 2) = 0.0;  // W now singular
  const auto warnings = state_warnings(s);
  CHECK(!warnings.empty());
}
