// Copyright 2026 The clonebound Authors
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

#ifndef CLONEBOUND_MEASURE_HPP
#define CLONEBOUND_MEASURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "clonebound/matkernel.hpp"
#include "clonebound/random.hpp"
#include "clonebound/states.hpp"

namespace clonebound {

/// Generalized measurement {E_a}: PSD elements summing to the identity.
class POVM {
 public:
  explicit POVM(std::vector<ComplexMatrix> elements, const Tolerances& tol = {})
      : elements_(std::move(elements)) {
    detail::require(!elements_.empty(), ErrorCode::InvalidPOVM, "POVM: no elements");
    const Index d = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (auto& e : elements_) {
      detail::require(e.rows() == d && e.cols() == d, ErrorCode::InvalidPOVM,
                      "POVM: elements must share one square dimension");
      detail::require(e.allFinite(), ErrorCode::InvalidPOVM, "POVM: non-finite element");
      detail::require(is_hermitian(e, tol.herm), ErrorCode::InvalidPOVM, "POVM: element not Hermitian");
      e = (0.5 * (e + e.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(e, Eigen::EigenvaluesOnly);
      detail::require(solver.eigenvalues().minCoeff() >= -tol.psd, ErrorCode::InvalidPOVM,
                      "POVM: element not positive semidefinite");
      sum += e;
    }
    detail::require((sum - ComplexMatrix::Identity(d, d)).norm() <= 1e-9, ErrorCode::InvalidPOVM,
                    "POVM: elements do not sum to identity");
  }

  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  Index dim() const noexcept { return elements_.front().rows(); }
  std::size_t outcomes() const noexcept { return elements_.size(); }

  /// Measurement in the computational basis of C^d.
  static POVM computational(Index d) {
    std::vector<ComplexMatrix> els;
    for (Index k = 0; k < d; ++k) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(k, k) = 1.0;
      els.push_back(e);
    }
    return POVM(std::move(els));
  }

 private:
  std::vector<ComplexMatrix> elements_;
};

/// Orthogonal measurement {Pi_a}: mutually orthogonal projectors summing to 1.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors)
      : projectors_(std::move(projectors)) {
    detail::require(!projectors_.empty(), ErrorCode::NotProjector, "ProjectiveMeasurement: empty");
    const Index d = projectors_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t a = 0; a < projectors_.size(); ++a) {
      const auto& p = projectors_[a];
      detail::require(p.rows() == d && p.cols() == d, ErrorCode::DimMismatch,
                      "ProjectiveMeasurement: projectors must share one dimension");
      detail::require(hermiticity_residual(p) <= 1e-9 && (p * p - p).norm() <= 1e-9,
                      ErrorCode::NotProjector, "ProjectiveMeasurement: element is not a projector");
      for (std::size_t b = 0; b < a; ++b) {
        detail::require((p * projectors_[b]).norm() <= 1e-9, ErrorCode::NotProjector,
                        "ProjectiveMeasurement: projectors are not mutually orthogonal");
      }
      sum += p;
    }
    detail::require((sum - ComplexMatrix::Identity(d, d)).norm() <= 1e-9, ErrorCode::NotProjector,
                    "ProjectiveMeasurement: projectors do not sum to identity");
  }

  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  Index dim() const noexcept { return projectors_.front().rows(); }
  std::size_t outcomes() const noexcept { return projectors_.size(); }

 private:
  std::vector<ComplexMatrix> projectors_;
};

namespace detail {

inline std::vector<double> born_probabilities(const std::vector<ComplexMatrix>& elements,
                                              const DensityMatrix& rho) {
  std::vector<double> p;
  p.reserve(elements.size());
  double total = 0.0;
  for (const auto& e : elements) {
    require(e.rows() == rho.dim(), ErrorCode::DimMismatch, "probabilities: dimension mismatch");
    double pa = (e * rho.op()).trace().real();
    require(pa >= -1e-12, ErrorCode::InvalidPOVM, "probabilities: negative outcome probability");
    pa = std::max(pa, 0.0);
    p.push_back(pa);
    total += pa;
  }
  require(std::abs(total - 1.0) <= 1e-9, ErrorCode::InvalidPOVM,
          "probabilities: outcome probabilities do not sum to 1");
  return p;
}

}  // namespace detail

/// Born rule p(a|rho) = Tr(E_a rho).
inline std::vector<double> probabilities(const POVM& povm, const DensityMatrix& rho) {
  return detail::born_probabilities(povm.elements(), rho);
}

inline std::vector<double> probabilities(const ProjectiveMeasurement& pm, const DensityMatrix& rho) {
  return detail::born_probabilities(pm.projectors(), rho);
}

/// Projective realization of a POVM on the system extended by an m-level
/// ancilla prepared in |0><0|: Tr(E_a rho) = Tr(Pi_a (rho (x) sigma)).
struct DilationResult {
  ProjectiveMeasurement measurement;
  DensityMatrix ancilla;
  ComplexMatrix unitary;  // U with U(|psi>|0>) = sum_a sqrt(E_a)|psi> |a>
};

inline DilationResult naimark_dilate(const POVM& povm) {
  const Index d = povm.dim();
  const auto m = static_cast<Index>(povm.outcomes());
  const Index n = d * m;
  detail::require_dim_cap(n, "naimark_dilate");

  // Isometry J = sum_a sqrt(E_a) (x) |a>, rows indexed by i*m + a.
  ComplexMatrix iso = ComplexMatrix::Zero(n, d);
  for (Index a = 0; a < m; ++a) {
    const ComplexMatrix root = sqrt_psd(povm.elements()[std::size_t(a)]);
    for (Index i = 0; i < d; ++i) iso.row(i * m + a) = root.row(i);
  }

  // Columns j*m of U carry J; the rest is an orthonormal completion built by
  // Gram-Schmidt over the standard basis in index order.
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  std::vector<ComplexVector> basis;
  for (Index j = 0; j < d; ++j) {
    u.col(j * m) = iso.col(j);
    basis.push_back(iso.col(j));
  }
  Index next_free = 0;
  auto advance = [&] {
    while (next_free < n && next_free % m == 0) ++next_free;
  };
  advance();
  for (Index k = 0; k < n && next_free < n; ++k) {
    ComplexVector v = ComplexVector::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b * b.dot(v);
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    basis.push_back(v);
    u.col(next_free++) = v;
    advance();
  }
  detail::require(is_unitary(u), ErrorCode::NumericalInconsistency,
                  "naimark_dilate: unitary completion failed");

  std::vector<ComplexMatrix> projectors;
  for (Index a = 0; a < m; ++a) {
    ComplexMatrix sel = ComplexMatrix::Zero(m, m);
    sel(a, a) = 1.0;
    ComplexMatrix pi = u.adjoint() * kron(ComplexMatrix::Identity(d, d), sel) * u;
    projectors.push_back(0.5 * (pi + pi.adjoint()));
  }
  return {ProjectiveMeasurement(std::move(projectors)), DensityMatrix::basis(m, 0), u};
}

/// Outcome distribution of the dilated measurement on rho (x) sigma.
inline std::vector<double> dilated_probabilities(const DilationResult& dil, const DensityMatrix& rho) {
  return probabilities(dil.measurement, tensor(rho, dil.ancilla));
}

/// |<x|Pi|x> - <y|Pi|y>| for an orthogonal projector Pi.
inline double projector_gap(const PureState& x, const PureState& y, const ComplexMatrix& pi) {
  detail::require(x.dim() == y.dim() && pi.rows() == x.dim() && pi.cols() == x.dim(),
                  ErrorCode::DimMismatch, "projector_gap: dimension mismatch");
  detail::require(pi.allFinite() && hermiticity_residual(pi) <= 1e-9 && (pi * pi - pi).norm() <= 1e-9,
                  ErrorCode::NotProjector, "projector_gap: operator is not an orthogonal projector");
  const double px = x.amp().dot(pi * x.amp()).real();
  const double py = y.amp().dot(pi * y.amp()).real();
  return std::abs(px - py);
}

/// Random POVM: Ginibre positives G_a G_a^dagger normalized by S^{-1/2} (.) S^{-1/2}.
inline POVM random_povm(Index d, std::size_t outcomes, Rng& rng) {
  detail::require(d >= 1 && outcomes >= 1, ErrorCode::InvalidArgument,
                  "random_povm: need d >= 1 and at least one outcome");
  if (outcomes == 1) return POVM({ComplexMatrix::Identity(d, d)});
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t a = 0; a < outcomes; ++a) {
    const ComplexMatrix g = ginibre(d, d, rng);
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  const auto eig = hermitian_eig(total);
  const ComplexMatrix inv_root =
      eig.vectors * eig.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
      eig.vectors.adjoint();
  for (auto& e : raw) {
    e = inv_root * e * inv_root;
    e = (0.5 * (e + e.adjoint())).eval();
  }
  return POVM(std::move(raw));
}

inline POVM random_povm(Index d, std::size_t outcomes, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_povm(d, outcomes, rng);
}

/// Rank-r orthogonal projector onto the span of r Haar-random orthonormal vectors.
inline ComplexMatrix random_projector(Index d, Index rank, Rng& rng) {
  detail::require(rank >= 0 && rank <= d, ErrorCode::BadRank, "random_projector: bad rank");
  const ComplexMatrix q = haar_unitary(d, rng).leftCols(rank);
  return q * q.adjoint();
}

}  // namespace clonebound

#endif  // CLONEBOUND_MEASURE_HPP
