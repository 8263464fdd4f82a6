// Copyright 2026 The gapmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gap/errors.hpp"

namespace gap {

void require_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) throw NonFinite();
}

HermitianOperator validate_hermitian(const ComplexMatrix& raw, double tol) {
  if (raw.rows() != raw.cols()) throw DimMismatch(raw.rows(), raw.cols());
  if (raw.rows() == 0) throw FormatError("empty matrix");
  require_finite(raw);
  const double deviation = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > tol) throw AsymmetryExceeded(deviation);
  ComplexMatrix sym = (raw + raw.adjoint()) * 0.5;
  // Make conj-symmetry exact rather than exact-up-to-rounding.
  for (Index j = 0; j < sym.cols(); ++j) {
    sym(j, j) = Complex(sym(j, j).real(), 0.0);
    for (Index i = j + 1; i < sym.rows(); ++i) sym(j, i) = std::conj(sym(i, j));
  }
  return HermitianOperator(std::move(sym));
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One unitary rotation G acting on the (p, q) plane such that (G* A G)_pq = 0.
// Writing a_pq = r e^{iφ}, G = diag(1, e^{-iφ}) R with R the real Jacobi
// rotation for the symmetric 2x2 block [[a_pp, r], [r, a_qq]].
void rotate(ComplexMatrix& a, ComplexMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{iφ}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * std::conj(phase);
  const Complex gqq = c * std::conj(phase);

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {  // A <- A G
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (Index k = 0; k < n; ++k) {  // A <- G* A
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (Index k = 0; k < n; ++k) {  // V <- V G
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

void fix_phase(ComplexMatrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double m = std::abs(vectors(i, j));
      if (m > best_abs) {
        best_abs = m;
        best = i;
      }
    }
    if (best_abs <= 0.0) continue;
    const Complex unphase = std::conj(vectors(best, j)) / best_abs;
    vectors.col(j) *= unphase;
    vectors(best, j) = Complex(vectors(best, j).real(), 0.0);
  }
}

// Sort eigenpairs by descending eigenvalue; stable so that ties keep the
// solver's order.
SpectralDecomposition sorted(const RealVector& values, const ComplexMatrix& vectors) {
  std::vector<Index> order(values.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return values(x) > values(y); });
  SpectralDecomposition sd;
  sd.eigenvalues.resize(values.size());
  sd.eigenvectors.resize(vectors.rows(), vectors.cols());
  for (Index k = 0; k < values.size(); ++k) {
    sd.eigenvalues(k) = values(order[k]);
    sd.eigenvectors.col(k) = vectors.col(order[k]);
  }
  return sd;
}

}  // namespace

SpectralDecomposition eigh(const HermitianOperator& h, const JacobiOptions& opts) {
  ComplexMatrix a = h.matrix();
  const Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  const double target = opts.tolerance * scale;

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ >= opts.max_sweeps) {
      throw ConvergenceFailure("Jacobi eigensolver did not converge in " +
                               std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (Index p = 0; p < n - 1; ++p)
      for (Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  RealVector values = a.diagonal().real();
  fix_phase(v);
  return sorted(values, v);
}

DensityOperator::DensityOperator(SpectralDecomposition sd) : sd_(std::move(sd)) {
  matrix_ = sd_.reconstruct();
}

DensityOperator DensityOperator::from_spectral(SpectralDecomposition sd,
                                               double trace_tolerance) {
  if (sd.eigenvalues.size() == 0) throw FormatError("empty spectrum");
  if (sd.eigenvectors.rows() != sd.eigenvalues.size() ||
      sd.eigenvectors.cols() != sd.eigenvalues.size())
    throw DimMismatch(sd.eigenvalues.size(), sd.eigenvectors.cols());
  if (!sd.eigenvalues.allFinite()) throw NonFinite();
  for (Index k = 0; k < sd.eigenvalues.size(); ++k) {
    double& p = sd.eigenvalues(k);
    if (p < 0.0) {
      if (-p > kClampTolerance) throw NotPositive(p);
      p = 0.0;
    }
  }
  const double trace = sd.eigenvalues.sum();
  if (std::abs(trace - 1.0) > trace_tolerance) throw TraceNotOne(trace);
  sd.eigenvalues /= trace;
  return DensityOperator(sorted(sd.eigenvalues, sd.eigenvectors));
}

DensityOperator DensityOperator::from_matrix(const ComplexMatrix& m, double hermitian_tol,
                                             double trace_tolerance) {
  return from_spectral(eigh(validate_hermitian(m, hermitian_tol)), trace_tolerance);
}

DensityOperator maximally_mixed(Index dim) {
  SpectralDecomposition sd{RealVector::Constant(dim, 1.0 / static_cast<double>(dim)),
                           ComplexMatrix::Identity(dim, dim)};
  return DensityOperator::from_spectral(std::move(sd));
}

DensityOperator pure_state(const StateVector& phi) {
  const double norm = phi.norm();
  if (!(norm > 0.0)) throw ZeroVector();
  const StateVector unit = phi / norm;
  return DensityOperator::from_matrix(unit * unit.adjoint());
}

DensityOperator diagonal_density(const RealVector& probabilities) {
  const Index d = probabilities.size();
  return DensityOperator::from_spectral({probabilities, ComplexMatrix::Identity(d, d)});
}

DensityOperator convex_mix(const DensityOperator& a, const DensityOperator& b, double t) {
  if (a.dim() != b.dim()) throw DimMismatch(a.dim(), b.dim());
  return DensityOperator::from_matrix((1.0 - t) * a.matrix() + t * b.matrix());
}

DensityOperator thermal_state(const HermitianOperator& h, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) throw Error("beta must be finite and >= 0");
  SpectralDecomposition sd = eigh(h);
  // Energies are sorted descending, so the ground state sits at the end.
  const double e_min = sd.eigenvalues.minCoeff();
  RealVector weights(sd.dim());
  for (Index k = 0; k < sd.dim(); ++k)
    weights(k) = std::exp(-beta * (sd.eigenvalues(k) - e_min));
  sd.eigenvalues = weights / weights.sum();
  return DensityOperator::from_spectral(std::move(sd));
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimMismatch(m.rows(), m.cols());
  require_finite(m);
  if (m.size() == 0) return 0.0;
  const double magnitude = m.cwiseAbs().maxCoeff();
  if (magnitude == 0.0) return 0.0;
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym <= 1e-14 * magnitude) {
    return eigh(validate_hermitian(m, asym)).eigenvalues.cwiseAbs().sum();
  }
  const ComplexMatrix gram = m.adjoint() * m;
  const RealVector sq = eigh(validate_hermitian(gram, 1e-12 * gram.norm())).eigenvalues;
  double total = 0.0;
  for (Index k = 0; k < sq.size(); ++k) total += std::sqrt(std::max(sq(k), 0.0));
  return total;
}

SpectralDecomposition sampling_spectrum(const DensityOperator& rho, double cutoff) {
  SpectralDecomposition sd = rho.spectral();
  for (Index n = 0; n < sd.dim(); ++n)
    if (sd.eigenvalues(n) <= cutoff) sd.eigenvalues(n) = 0.0;
  return sd;
}

SupportRestriction support_restriction(const DensityOperator& rho, double cutoff) {
  if (!(cutoff >= 0.0 && cutoff < 1.0)) throw Error("support cutoff must lie in [0, 1)");
  const RealVector& p = rho.probabilities();
  Index k = 0;
  while (k < p.size() && p(k) > cutoff) ++k;  // p is sorted descending
  if (k == 0) throw EmptySupport();
  SupportRestriction s;
  s.ambient_dim = rho.dim();
  s.basis = rho.eigenvectors().leftCols(k);
  s.eigenvalues = p.head(k);
  return s;
}

}  // namespace gap
