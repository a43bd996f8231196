// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#include "stabpair/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace stabpair {

namespace {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
// Eigenvalues closer than this are one cluster for the semisimplicity check.
constexpr double kClusterTol = 1e-6;
// A regular verdict within this many decades of the threshold is flagged.
constexpr double kNearSingularDecades = 6.0;

// Eigenvalue pairs of X v = theta Y v from the real generalized Schur form:
// theta_i = alphas_i / betas_i, with conjugate pairs coming from the 2x2
// diagonal blocks of S. ok stays false when the QZ iteration fails.
struct QzPairs {
  bool ok = false;
  ComplexVector alphas;
  Vector betas;
};

QzPairs qz_eigenvalue_pairs(const Matrix& X, const Matrix& Y) {
  const Index n = X.rows();
  QzPairs out;
  Eigen::RealQZ<Matrix> qz;
  qz.compute(X, Y, /*computeQZ=*/false);
  if (qz.info() != Eigen::Success) {
    return out;
  }
  const Matrix& S = qz.matrixS();
  const Matrix& T = qz.matrixT();
  out.alphas.resize(n);
  out.betas.resize(n);
  Index i = 0;
  while (i < n) {
    if (i == n - 1 || S(i + 1, i) == 0.0) {
      out.alphas(i) = S(i, i);
      out.betas(i) = T(i, i);
      ++i;
    } else {
      // scale the 2x2 block by diag(T) so no division by T entries is needed
      const double a = T(i, i);
      const double b = T(i + 1, i + 1);
      const double beta = a * b;
      const Eigen::Matrix2d S2 =
          S.block<2, 2>(i, i) * Eigen::Vector2d(b, a).asDiagonal();
      const double p = 0.5 * (S2(0, 0) - S2(1, 1));
      const double z = std::sqrt(std::abs(p * p + S2(1, 0) * S2(0, 1)));
      const Complex alpha(S2(1, 1) + p, beta > 0 ? z : -z);
      out.alphas(i) = std::conj(alpha);
      out.alphas(i + 1) = alpha;
      out.betas(i) = beta;
      out.betas(i + 1) = beta;
      i += 2;
    }
  }
  out.ok = true;
  return out;
}

// log10 |det(M)| from an LU factorization, -inf for an exactly singular M.
double log10_abs_det(const ComplexMatrix& M) {
  Eigen::PartialPivLU<ComplexMatrix> lu(M);
  double acc = 0.0;
  for (Index i = 0; i < M.rows(); ++i) {
    const double a = std::abs(lu.matrixLU()(i, i));
    if (a == 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
    acc += std::log10(a);
  }
  return acc;
}

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

RegularityCheck is_regular(const MatrixPair& pair, const Tolerances& tol) {
  require_valid(pair);
  RegularityCheck out;
  const Index n = pair.n();
  if (n == 0) {
    out.regular = true;  // det of the empty pencil is 1
    return out;
  }

  const double norm_E = spectral_norm(pair.E);
  const double norm_A = spectral_norm(pair.A);
  if (norm_E + norm_A == 0.0) {
    out.warning = "zero pair: det(z E - A) vanishes identically";
    out.log10_max_det = -std::numeric_limits<double>::infinity();
    out.log10_threshold = -std::numeric_limits<double>::infinity();
    return out;
  }

  out.log10_threshold = std::log10(static_cast<double>(n) * kMachineEps) +
                        static_cast<double>(n) * std::log10(norm_E + norm_A);

  const double radius = 1.0 + norm_A / (norm_E + kMachineEps);
  const Index samples = 2 * n + 1;
  const ComplexMatrix Ec = pair.E.cast<Complex>();
  const ComplexMatrix Ac = pair.A.cast<Complex>();

  double best = -std::numeric_limits<double>::infinity();
  Complex best_lambda;
  for (Index j = 0; j < samples; ++j) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(j) / samples;
    const Complex lambda = radius * Complex(std::cos(theta), std::sin(theta));
    const double d = log10_abs_det(lambda * Ec - Ac);
    if (d > best) {
      best = d;
      best_lambda = lambda;
    }
  }

  out.log10_max_det = best;
  out.witness = best_lambda;
  out.regular = best > out.log10_threshold;
  if (out.regular && best - out.log10_threshold < kNearSingularDecades) {
    std::ostringstream os;
    os << "pencil is close to singular: max |det(z E - A)| over the sample "
          "circle is within "
       << kNearSingularDecades << " decades of the singularity threshold";
    out.warning = os.str();
  }
  return out;
}

std::vector<SpectrumEntry> finite_spectrum(const MatrixPair& pair,
                                           const Tolerances& tol) {
  const RegularityCheck reg = is_regular(pair, tol);
  if (!reg.regular) {
    throw SingularPencilError(
        "finite_spectrum: pencil is numerically singular, the spectrum is "
        "undefined");
  }

  // QZ on (A, E): A v = lambda E v <=> det(lambda E - A) = 0. RealQZ can
  // fail to converge on degenerate pencils (e.g. A = 0); the reversed order
  // computes theta = 1/lambda and covers exactly those cases.
  QzPairs qz = qz_eigenvalue_pairs(pair.A, pair.E);
  bool swapped = false;
  if (!qz.ok) {
    qz = qz_eigenvalue_pairs(pair.E, pair.A);
    swapped = true;
  }
  if (!qz.ok) {
    throw std::runtime_error(
        "finite_spectrum: the QZ iteration did not converge in either pencil "
        "order");
  }

  const double scale = spectral_norm(pair.E) + spectral_norm(pair.A);
  const double cutoff = tol.eig_atol * scale;

  std::vector<SpectrumEntry> spectrum;
  for (Index i = 0; i < pair.n(); ++i) {
    const Complex numerator = swapped ? Complex(qz.betas(i)) : qz.alphas(i);
    const Complex denominator = swapped ? qz.alphas(i) : Complex(qz.betas(i));
    if (std::abs(denominator) > cutoff) {
      SpectrumEntry entry;
      entry.value = numerator / denominator;
      entry.modulus = std::abs(entry.value);
      entry.on_unit_circle = std::abs(entry.modulus - 1.0) <= tol.stability_tol;
      spectrum.push_back(entry);
    }
  }
  std::sort(spectrum.begin(), spectrum.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              if (a.value.real() != b.value.real()) {
                return a.value.real() < b.value.real();
              }
              return a.value.imag() < b.value.imag();
            });
  return spectrum;
}

bool index_at_most_one(const MatrixPair& pair, const Tolerances& tol) {
  const RegularityCheck reg = is_regular(pair, tol);
  if (!reg.regular) {
    throw SingularPencilError(
        "index_at_most_one: pencil is numerically singular, the index is "
        "undefined");
  }
  const Index n = pair.n();
  Eigen::JacobiSVD<Matrix> svd(pair.E, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  if (n > 0 && sv(0) > 0.0) {
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > tol.rank_rtol * sv(0)) {
        ++rank;
      }
    }
  }
  if (rank == n) {
    return true;  // E nonsingular: index 0
  }
  const Matrix Z = svd.matrixV().rightCols(n - rank);  // orthonormal ker(E)
  Matrix compound(n, n + (n - rank));
  compound.leftCols(n) = pair.E;
  compound.rightCols(n - rank).noalias() = pair.A * Z;
  return numerical_rank(compound, tol) == n;
}

AdmissibilityReport analyze_admissibility(const MatrixPair& pair,
                                          const Tolerances& tol) {
  require_valid(pair);
  AdmissibilityReport report;
  const Index n = pair.n();
  report.rank_E = numerical_rank(pair.E, tol);

  const RegularityCheck reg = is_regular(pair, tol);
  report.regular = reg.regular;
  if (!reg.warning.empty()) {
    report.warnings.push_back(reg.warning);
  }
  if (!report.regular) {
    report.warnings.push_back(
        "pencil numerically singular: spectrum, index and stability verdicts "
        "are undefined");
    return report;
  }

  try {
    report.spectrum = finite_spectrum(pair, tol);
  } catch (const std::runtime_error& e) {
    report.warnings.push_back(std::string(e.what()) +
                              "; stability cannot be certified");
    return report;
  }
  report.finite_count = static_cast<Index>(report.spectrum.size());
  report.infinite_count = n - report.finite_count;
  report.index_at_most_one = index_at_most_one(pair, tol);

  bool stable = true;
  for (const SpectrumEntry& entry : report.spectrum) {
    if (entry.modulus > 1.0 + tol.stability_tol) {
      stable = false;
      std::ostringstream os;
      os << "finite eigenvalue " << format_complex(entry.value)
         << " outside the closed unit disc";
      report.warnings.push_back(os.str());
    }
  }

  // Eigenvalues on the unit circle must be semisimple: per cluster, the
  // geometric multiplicity n - rank(lambda E - A) must reach the algebraic one.
  std::vector<Complex> boundary;
  for (const SpectrumEntry& entry : report.spectrum) {
    if (entry.on_unit_circle) {
      boundary.push_back(entry.value);
    }
  }
  if (stable && !boundary.empty()) {
    std::ostringstream note;
    note << "unit-circle eigenvalue(s) present: semisimplicity decided with "
            "clustering tolerance "
         << kClusterTol;
    report.warnings.push_back(note.str());

    std::vector<std::vector<Complex>> clusters;
    for (const Complex& lambda : boundary) {
      bool placed = false;
      for (auto& cluster : clusters) {
        for (const Complex& member : cluster) {
          if (std::abs(lambda - member) <= kClusterTol) {
            cluster.push_back(lambda);
            placed = true;
            break;
          }
        }
        if (placed) {
          break;
        }
      }
      if (!placed) {
        clusters.push_back({lambda});
      }
    }

    const ComplexMatrix Ec = pair.E.cast<Complex>();
    const ComplexMatrix Ac = pair.A.cast<Complex>();
    for (const auto& cluster : clusters) {
      Complex rep = 0.0;
      for (const Complex& member : cluster) {
        rep += member;
      }
      rep /= static_cast<double>(cluster.size());
      const Index geometric = n - numerical_rank(ComplexMatrix(rep * Ec - Ac), tol);
      const Index algebraic = static_cast<Index>(cluster.size());
      if (geometric < algebraic) {
        stable = false;
        std::ostringstream os;
        os << "unit-circle eigenvalue cluster near " << format_complex(rep)
           << " is not semisimple (geometric " << geometric << " < algebraic "
           << algebraic << ")";
        report.warnings.push_back(os.str());
      }
    }
  }

  report.stable = stable;
  report.admissible =
      report.regular && report.index_at_most_one && report.stable;
  return report;
}

}  // namespace stabpair
