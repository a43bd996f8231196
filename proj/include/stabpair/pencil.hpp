// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stabpair/numerics.hpp"
#include "stabpair/types.hpp"

namespace stabpair {

/// Raised when an operation needs a regular pencil but det(z E - A) vanishes
/// identically (numerically).
struct SingularPencilError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One finite eigenvalue of the pencil z E - A.
struct SpectrumEntry {
  Complex value;
  double modulus = 0.0;
  bool on_unit_circle = false;  ///< | |value| - 1 | <= stability_tol
};

/// Outcome of the regularity probe. The pencil determinant det(z E - A) is a
/// polynomial of degree <= n; it is identically zero iff it vanishes at n+1
/// distinct points, so we evaluate it at 2n+1 deterministic sample points and
/// declare the pencil singular only if every evaluation falls below a
/// scale-aware threshold.
struct RegularityCheck {
  bool regular = false;
  Complex witness;              ///< sample point with the largest |det|
  double log10_max_det = 0.0;   ///< log10 |det| at the witness
  double log10_threshold = 0.0; ///< log10 of the singularity threshold
  std::string warning;          ///< nonempty for near-singular pencils

  explicit operator bool() const { return regular; }
};

/// Verdicts for a pair: admissible <=> regular && index <= 1 && stable.
struct AdmissibilityReport {
  bool regular = false;
  Index rank_E = 0;
  Index finite_count = 0;
  Index infinite_count = 0;
  bool index_at_most_one = false;
  bool stable = false;
  bool admissible = false;
  std::vector<SpectrumEntry> spectrum;
  std::vector<std::string> warnings;
};

/// Decides det(z E - A) != 0 for some z by sampling the determinant on a
/// circle of radius 1 + ||A|| / (||E|| + eps). Never throws on singular input;
/// ill-conditioned pencils get a warning instead.
RegularityCheck is_regular(const MatrixPair& pair, const Tolerances& tol = {});

/// All finite eigenvalues of a regular pencil, from the generalized real Schur
/// (QZ) reduction. Eigenvalue pairs (alpha, beta) with
/// |beta| > eig_atol * (||E|| + ||A||) yield lambda = alpha / beta; the rest
/// count as infinite. Sorted by (real, imag). Throws SingularPencilError when
/// the regularity probe fails.
std::vector<SpectrumEntry> finite_spectrum(const MatrixPair& pair,
                                           const Tolerances& tol = {});

/// True iff the regular pair has index at most one, i.e. the infinite part of
/// the pencil carries no nilpotent coupling. Test: with Z an orthonormal basis
/// of ker(E), the compound [E | A Z] must have full row rank n. Nonsingular E
/// (index 0) returns true. Throws SingularPencilError on singular pencils.
bool index_at_most_one(const MatrixPair& pair, const Tolerances& tol = {});

/// Full verdict: regularity, rank of E, finite spectrum, index test and
/// stability (all finite eigenvalues in the closed unit disc, the ones on the
/// circle semisimple). Degrades to warnings instead of throwing.
AdmissibilityReport analyze_admissibility(const MatrixPair& pair,
                                          const Tolerances& tol = {});

}  // namespace stabpair
