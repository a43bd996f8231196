// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "stabpair/types.hpp"

namespace stabpair {

/// Grcar test matrix: -1 on the first subdiagonal, +1 on the main diagonal
/// and the first k superdiagonals. Requires 1 <= k < n.
Matrix grcar(Index n, Index k);

/// The pair (I_n, alpha * e e^T) with e the all-ones vector. Unstable as a
/// standard pair whenever alpha > 1/n.
MatrixPair scaled_ones(Index n, double alpha);

/// Identity with the first p diagonal entries zeroed; rank n - p.
/// Requires 0 <= p <= n-1.
Matrix rank_deficient_identity(Index n, Index p);

/// Small hand-built pairs exercising the regularity / index / stability
/// boundary cases:
///   ex1                      3x3 admissible pair of rank-1 E, index one,
///                            single finite eigenvalue 1/2
///   ex1_index2(eps2)         ex1 with E(2,3) = eps2 > 0: still regular and
///                            stable but of index two (default eps2 = 0.1)
///   ex1_unstable(eps1)       ex1 with E(2,2) = eps1 in (0,1): index one but
///                            an extra finite eigenvalue 1/eps1 outside the
///                            unit disc (default eps1 = 0.5)
///   ex1_singular_limit(delta) ex1 with A(3,3) = 1 - delta: loses regularity
///                            at delta = 1 (default delta = 1)
///   sigma1, sigma2           stable standard pairs whose midpoint is not
///   sigma_mid                the midpoint; eigenvalues 0.75 +- 0.97i
MatrixPair fixture(const std::string& name,
                   std::optional<double> param = std::nullopt);

}  // namespace stabpair
