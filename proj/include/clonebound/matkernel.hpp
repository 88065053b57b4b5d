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

#ifndef CLONEBOUND_MATKERNEL_HPP
#define CLONEBOUND_MATKERNEL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clonebound/errors.hpp"

namespace clonebound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest matrix dimension any operation will accept.
inline constexpr Index kMaxDim = 4096;

/// Numerical tolerances shared by the validation checks. Hermiticity and
/// positivity are absolute; reconstruction is relative to the Frobenius norm.
struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double recon = 1e-9;
};

/// Ordered subsystem dimensions of a tensor-product space, e.g. {d_A, d_B, d_E}.
class DimSpec {
 public:
  DimSpec() = default;
  DimSpec(std::initializer_list<Index> dims) : dims_(dims) { validate(); }
  explicit DimSpec(std::vector<Index> dims) : dims_(std::move(dims)) { validate(); }

  std::size_t size() const noexcept { return dims_.size(); }
  Index operator[](std::size_t i) const { return dims_.at(i); }
  std::span<const Index> dims() const noexcept { return dims_; }

  Index total() const noexcept {
    return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>{});
  }

 private:
  void validate() const {
    for (Index d : dims_) {
      detail::require(d > 0, ErrorCode::InvalidArgument, "subsystem dimensions must be positive");
    }
  }

  std::vector<Index> dims_;
};

namespace detail {

inline void require_finite(const ComplexMatrix& m, const char* who) {
  require(m.allFinite(), ErrorCode::NonFinite, std::string(who) + ": matrix has NaN/Inf entries");
}

inline void require_square(const ComplexMatrix& m, const char* who) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::NotSquare,
          std::string(who) + ": matrix must be square and nonempty");
}

inline void require_dim_cap(Index dim, const char* who) {
  require(dim <= kMaxDim, ErrorCode::DimTooLarge,
          std::string(who) + ": dimension " + std::to_string(dim) + " exceeds cap " +
              std::to_string(kMaxDim));
}

}  // namespace detail

inline double hermiticity_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = Tolerances{}.herm) {
  return m.rows() == m.cols() && hermiticity_residual(m) <= tol * std::max(1.0, m.norm());
}

/// ||u^dagger u - 1||_F relative to ||1||_F.
inline double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const auto n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() / std::sqrt(double(n));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = Tolerances{}.recon) {
  return u.allFinite() && unitarity_residual(u) <= tol;
}

inline void require_unitary(const ComplexMatrix& u, const char* who, const Tolerances& tol = {}) {
  detail::require_finite(u, who);
  detail::require(is_unitary(u, tol.recon), ErrorCode::NotUnitary,
                  std::string(who) + ": matrix is not unitary");
}

struct HermitianEig {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are orthonormal eigenvectors
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized
/// before solving, so residual anti-Hermitian noise below tolerance is dropped.
inline HermitianEig hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = {}) {
  detail::require_square(m, "hermitian_eig");
  detail::require_finite(m, "hermitian_eig");
  detail::require_dim_cap(m.rows(), "hermitian_eig");
  detail::require(is_hermitian(m, tol.herm), ErrorCode::NotHermitian,
                  "hermitian_eig: ||m - m^dagger|| exceeds tolerance");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  detail::require(solver.info() == Eigen::Success, ErrorCode::NumericalInconsistency,
                  "hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Eigenvalues smaller than this are indistinguishable from solver noise.
inline double eigen_noise_floor(const RealVector& values) {
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  return 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

/// Principal square root of a positive semidefinite matrix.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m, const Tolerances& tol = {}) {
  const auto eig = hermitian_eig(m, tol);
  detail::require(eig.values.minCoeff() >= -tol.psd, ErrorCode::NotPSD,
                  "sqrt_psd: eigenvalue below -tol_psd");
  const double floor = eigen_noise_floor(eig.values);
  RealVector roots(eig.values.size());
  for (Index k = 0; k < roots.size(); ++k) {
    roots[k] = eig.values[k] > floor ? std::sqrt(eig.values[k]) : 0.0;
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  detail::require_dim_cap(std::max(rows, cols), "kron");
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// k-fold tensor power; kron_power(a, 0) is the 1x1 identity.
inline ComplexMatrix kron_power(const ComplexMatrix& a, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

/// Traces out every subsystem not listed in `keep`. Kept subsystems appear in
/// the result in their original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                                   std::vector<std::size_t> keep) {
  detail::require_square(m, "partial_trace");
  detail::require(m.rows() == dims.total(), ErrorCode::DimMismatch,
                  "partial_trace: matrix dimension does not match product of subsystem dims");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto k : keep) {
    detail::require(k < dims.size(), ErrorCode::DimMismatch,
                    "partial_trace: kept subsystem index out of range");
  }

  const std::size_t n = dims.size();
  std::vector<Index> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  // Offsets into the full index for every multi-index over kept / traced factors.
  auto offsets = [&](const std::vector<std::size_t>& which) {
    std::vector<Index> off{0};
    for (auto s : which) {
      std::vector<Index> next;
      next.reserve(off.size() * dims[s]);
      for (Index base : off) {
        for (Index digit = 0; digit < dims[s]; ++digit) next.push_back(base + digit * stride[s]);
      }
      off = std::move(next);
    }
    return off;
  };
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
  }
  const auto kept_off = offsets(keep);
  const auto traced_off = offsets(traced);

  const auto dk = static_cast<Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a) {
    for (Index b = 0; b < dk; ++b) {
      Complex acc{0.0, 0.0};
      for (Index t : traced_off) acc += m(kept_off[a] + t, kept_off[b] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

/// exp(i h) for Hermitian h.
inline ComplexMatrix unitary_exp(const ComplexMatrix& h, const Tolerances& tol = {}) {
  const auto eig = hermitian_eig(h, tol);
  ComplexVector phases(eig.values.size());
  for (Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, eig.values[k]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

/// u^t along the path W diag(exp(i t theta_k)) W^dagger with eigenphases
/// theta_k in (-pi, pi]. Continuous in t, identity at t = 0 and u at t = 1.
inline ComplexMatrix unitary_power(const ComplexMatrix& u, double t, const Tolerances& tol = {}) {
  detail::require_square(u, "unitary_power");
  detail::require_dim_cap(u.rows(), "unitary_power");
  require_unitary(u, "unitary_power", tol);
  detail::require(t >= 0.0 && t <= 1.0, ErrorCode::OutOfRange, "unitary_power: t must lie in [0, 1]");
  // The Schur form of a normal matrix is diagonal with a unitary basis, which
  // stays orthonormal even for degenerate eigenphases.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  detail::require(schur.info() == Eigen::Success, ErrorCode::NumericalInconsistency,
                  "unitary_power: Schur decomposition failed");
  const ComplexMatrix& basis = schur.matrixU();
  const ComplexMatrix& tri = schur.matrixT();
  ComplexVector phases(u.rows());
  for (Index k = 0; k < u.rows(); ++k) {
    double theta = std::arg(tri(k, k));
    if (theta <= -std::numbers::pi) theta = std::numbers::pi;
    phases[k] = std::polar(1.0, t * theta);
  }
  return basis * phases.asDiagonal() * basis.adjoint();
}

}  // namespace clonebound

#endif  // CLONEBOUND_MATKERNEL_HPP
