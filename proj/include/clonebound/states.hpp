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

#ifndef CLONEBOUND_STATES_HPP
#define CLONEBOUND_STATES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "clonebound/matkernel.hpp"
#include "clonebound/random.hpp"

namespace clonebound {

/// Trace-one, positive semidefinite, Hermitian operator. Construction
/// validates the input and symmetrizes it. The trace is rescaled only when it
/// is off by more than rounding, so a serialized state reloads bit for bit.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& op, const Tolerances& tol = {}) {
    detail::require_square(op, "DensityMatrix");
    detail::require_finite(op, "DensityMatrix");
    detail::require_dim_cap(op.rows(), "DensityMatrix");
    detail::require(is_hermitian(op, tol.herm), ErrorCode::NotHermitian,
                    "DensityMatrix: operator is not Hermitian");
    const Complex tr = op.trace();
    detail::require(std::abs(tr - Complex(1.0, 0.0)) <= 1e-10, ErrorCode::BadTrace,
                    "DensityMatrix: trace differs from 1 by more than 1e-10");
    op_ = 0.5 * (op + op.adjoint());
    if (std::abs(tr.real() - 1.0) > 1e-14) op_ /= tr.real();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op_, Eigen::EigenvaluesOnly);
    detail::require(solver.eigenvalues().minCoeff() >= -tol.psd, ErrorCode::NotPSD,
                    "DensityMatrix: operator has a negative eigenvalue");
  }

  const ComplexMatrix& op() const noexcept { return op_; }
  Index dim() const noexcept { return op_.rows(); }

  double purity() const { return (op_ * op_).trace().real(); }

  /// Maximally mixed state 1/d.
  static DensityMatrix maximally_mixed(Index d) {
    return DensityMatrix(ComplexMatrix::Identity(d, d) / double(d));
  }

  /// |k><k| on C^d.
  static DensityMatrix basis(Index d, Index k) {
    detail::require(k >= 0 && k < d, ErrorCode::OutOfRange, "DensityMatrix::basis: index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(k, k) = 1.0;
    return DensityMatrix(m);
  }

 private:
  ComplexMatrix op_;
};

/// Unit vector in C^d.
class PureState {
 public:
  explicit PureState(const ComplexVector& amp) {
    detail::require(amp.size() > 0, ErrorCode::InvalidArgument, "PureState: empty vector");
    detail::require(amp.allFinite(), ErrorCode::NonFinite, "PureState: non-finite amplitude");
    detail::require_dim_cap(amp.size(), "PureState");
    const double norm = amp.norm();
    detail::require(std::abs(norm - 1.0) <= 1e-10, ErrorCode::NotNormalized,
                    "PureState: vector norm differs from 1 by more than 1e-10");
    amp_ = amp / norm;
  }

  const ComplexVector& amp() const noexcept { return amp_; }
  Index dim() const noexcept { return amp_.size(); }

  DensityMatrix density() const { return DensityMatrix(amp_ * amp_.adjoint()); }

  static PureState basis(Index d, Index k) {
    detail::require(k >= 0 && k < d, ErrorCode::OutOfRange, "PureState::basis: index out of range");
    ComplexVector v = ComplexVector::Zero(d);
    v[k] = 1.0;
    return PureState(v);
  }

 private:
  ComplexVector amp_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.op(), b.op()));
}

inline DensityMatrix tensor_power(const DensityMatrix& rho, int k) {
  detail::require(k >= 1, ErrorCode::InvalidArgument, "tensor_power: exponent must be >= 1");
  return DensityMatrix(kron_power(rho.op(), k));
}

/// V rho V^dagger.
inline DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& v) {
  require_unitary(v, "conjugate");
  detail::require(v.rows() == rho.dim(), ErrorCode::DimMismatch, "conjugate: dimension mismatch");
  return DensityMatrix(v * rho.op() * v.adjoint());
}

namespace detail {

inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* who) {
  require(a.dim() == b.dim(), ErrorCode::DimMismatch, std::string(who) + ": dimension mismatch");
}

/// Polar data of M = sqrt(rho1) sqrt(rho2) = P diag(sigma) Q^dagger.
struct OverlapSvd {
  ComplexMatrix sqrt1;
  ComplexMatrix sqrt2;
  ComplexMatrix m;
  ComplexMatrix p;
  RealVector sigma;
  ComplexMatrix q;
};

inline OverlapSvd overlap_svd(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  OverlapSvd out;
  out.sqrt1 = sqrt_psd(rho1.op());
  out.sqrt2 = sqrt_psd(rho2.op());
  out.m = out.sqrt1 * out.sqrt2;
  Eigen::JacobiSVD<ComplexMatrix> svd(out.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.p = svd.matrixU();
  out.sigma = svd.singularValues();
  out.q = svd.matrixV();
  return out;
}

/// 1 - sqrt(F) evaluated as half the squared Frobenius distance between
/// sqrt(chi) and sqrt(omega) W, where W is the maximizing polar unitary.
/// Accurate to absolute rounding even when chi and omega nearly coincide.
inline double one_minus_root_fidelity(const DensityMatrix& chi, const DensityMatrix& omega) {
  require_same_dim(chi, omega, "fidelity");
  const auto s = overlap_svd(chi, omega);
  const ComplexMatrix w = s.q * s.p.adjoint();
  const double u = 0.5 * (s.sqrt1 - s.sqrt2 * w).squaredNorm();
  return std::clamp(u, 0.0, 1.0);
}

}  // namespace detail

/// Uhlmann fidelity F(chi, omega) = (Tr |sqrt(chi) sqrt(omega)|)^2, the squared
/// maximal overlap of purifications.
inline double fidelity(const DensityMatrix& chi, const DensityMatrix& omega) {
  const double root = 1.0 - detail::one_minus_root_fidelity(chi, omega);
  return std::clamp(root * root, 0.0, 1.0);
}

/// sqrt(F(chi, omega)).
inline double root_fidelity(const DensityMatrix& chi, const DensityMatrix& omega) {
  return 1.0 - detail::one_minus_root_fidelity(chi, omega);
}

/// sin of the angle between two states, sqrt(1 - F).
inline double sin_angle(const DensityMatrix& chi, const DensityMatrix& omega) {
  const double u = detail::one_minus_root_fidelity(chi, omega);
  return std::sqrt(u * (2.0 - u));
}

/// Angle between mixed states, arccos(sqrt(F)) in [0, pi/2].
inline double angle(const DensityMatrix& chi, const DensityMatrix& omega) {
  const double u = detail::one_minus_root_fidelity(chi, omega);
  return std::atan2(std::sqrt(u * (2.0 - u)), 1.0 - u);
}

/// Angle between unit vectors, arccos |<x|y>|, evaluated through the chord
/// |y - e^{ia} x| so that it stays accurate near zero.
inline double angle_pure(const PureState& x, const PureState& y) {
  detail::require(x.dim() == y.dim(), ErrorCode::DimMismatch, "angle_pure: dimension mismatch");
  const Complex c = x.amp().dot(y.amp());
  const double mag = std::abs(c);
  const Complex phase = mag > 0.0 ? c / mag : Complex(1.0, 0.0);
  const double chord = (y.amp() - phase * x.amp()).norm();
  return 2.0 * std::asin(std::clamp(0.5 * chord, 0.0, 1.0));
}

/// Canonical purification sum_k sqrt(lambda_k) |u_k> (x) |k> with eigenvalues
/// in descending order. The environment is the second tensor factor.
inline PureState purify(const DensityMatrix& rho, Index env_dim) {
  detail::require(env_dim >= 1, ErrorCode::InvalidArgument, "purify: env_dim must be positive");
  const Index d = rho.dim();
  detail::require_dim_cap(d * env_dim, "purify");
  const auto eig = hermitian_eig(rho.op());
  Index rank = 0;
  for (Index k = 0; k < d; ++k) rank += eig.values[k] > 1e-12 ? 1 : 0;
  detail::require(rank <= env_dim, ErrorCode::EnvTooSmall,
                  "purify: environment dimension below the rank of the state");
  ComplexVector amp = ComplexVector::Zero(d * env_dim);
  const Index used = std::min(d, env_dim);
  for (Index k = 0; k < used; ++k) {
    const Index src = d - 1 - k;  // descending
    const double w = std::sqrt(std::max(0.0, eig.values[src]));
    for (Index i = 0; i < d; ++i) amp[i * env_dim + k] = w * eig.vectors(i, src);
  }
  return PureState(amp / amp.norm());
}

/// |Tr(sqrt(rho1) sqrt(rho2) V)|: the overlap of the purifications
/// (sqrt(rho1) (x) 1)|Phi> and (sqrt(rho2) V (x) 1)|Phi>.
inline double overlap_under(const ComplexMatrix& v, const DensityMatrix& rho1,
                            const DensityMatrix& rho2) {
  detail::require_same_dim(rho1, rho2, "overlap_under");
  detail::require(v.rows() == rho1.dim() && v.cols() == rho1.dim(), ErrorCode::DimMismatch,
                  "overlap_under: unitary dimension mismatch");
  require_unitary(v, "overlap_under");
  return std::abs((sqrt_psd(rho1.op()) * sqrt_psd(rho2.op()) * v).trace());
}

struct OverlapUnitaryResult {
  ComplexMatrix v;
  double achieved_overlap = 0.0;
  double path_parameter = 0.0;
};

/// V = Q P^dagger for sqrt(rho1) sqrt(rho2) = P S Q^dagger; attains sqrt(F).
inline OverlapUnitaryResult max_overlap_unitary(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  detail::require_same_dim(rho1, rho2, "max_overlap_unitary");
  const auto s = detail::overlap_svd(rho1, rho2);
  OverlapUnitaryResult out;
  out.v = s.q * s.p.adjoint();
  out.achieved_overlap = std::abs((s.m * out.v).trace());
  out.path_parameter = 1.0;
  return out;
}

namespace detail {

/// Cyclic shift |k> -> |k-1 mod d>; its diagonal is zero for d >= 2.
inline ComplexMatrix cyclic_shift(Index d) {
  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) c(i, (i + 1) % d) = 1.0;
  return c;
}

}  // namespace detail

/// V = Q C P^dagger with C a zero-diagonal permutation, so that
/// Tr(sqrt(rho1) sqrt(rho2) V) = Tr(S C) = 0.
inline OverlapUnitaryResult zero_overlap_unitary(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  detail::require_same_dim(rho1, rho2, "zero_overlap_unitary");
  detail::require(rho1.dim() >= 2, ErrorCode::DimTooSmall,
                  "zero_overlap_unitary: d = 1 purifications always overlap fully");
  const auto s = detail::overlap_svd(rho1, rho2);
  OverlapUnitaryResult out;
  out.v = s.q * detail::cyclic_shift(rho1.dim()) * s.p.adjoint();
  out.achieved_overlap = std::abs((s.m * out.v).trace());
  out.path_parameter = 0.0;
  return out;
}

/// Unitary V with |Tr(sqrt(rho1) sqrt(rho2) V)| = phi for any phi in
/// [0, sqrt(F)]. Walks the continuous path V(t) = V0 (V0^dagger Vmax)^t from
/// the zero-overlap unitary to the maximal one: a sign bracket of g(t) - phi
/// is located on a 64-point grid, then refined by bisection.
inline OverlapUnitaryResult target_overlap_unitary(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                                   double phi) {
  detail::require_same_dim(rho1, rho2, "target_overlap_unitary");
  detail::require(std::isfinite(phi) && phi >= 0.0, ErrorCode::TargetOutOfRange,
                  "target_overlap_unitary: phi must be a nonnegative number");
  const auto top = max_overlap_unitary(rho1, rho2);
  detail::require(phi <= top.achieved_overlap + 1e-9, ErrorCode::TargetOutOfRange,
                  "target_overlap_unitary: phi exceeds sqrt(F)");
  if (rho1.dim() == 1) {
    detail::require(phi >= 1.0 - 1e-9, ErrorCode::TargetOutOfRange,
                    "target_overlap_unitary: only overlap 1 is reachable at d = 1");
    return top;
  }
  const auto bottom = zero_overlap_unitary(rho1, rho2);
  if (phi <= bottom.achieved_overlap) return bottom;
  if (phi >= top.achieved_overlap) return top;

  const ComplexMatrix m = sqrt_psd(rho1.op()) * sqrt_psd(rho2.op());
  const ComplexMatrix step = bottom.v.adjoint() * top.v;
  auto path = [&](double t) -> ComplexMatrix { return bottom.v * unitary_power(step, t); };
  auto gap = [&](double t) { return std::abs((m * path(t)).trace()) - phi; };

  constexpr int kGrid = 64;
  double lo = 0.0;
  double hi = 1.0;
  double g_lo = -phi;
  for (int i = 1; i < kGrid; ++i) {
    const double t = double(i) / double(kGrid - 1);
    const double g = gap(t);
    if (g >= 0.0) {
      hi = t;
      break;
    }
    lo = t;
    g_lo = g;
  }

  double best_t = lo;
  double best_gap = g_lo;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (std::abs(g) < std::abs(best_gap)) {
      best_t = mid;
      best_gap = g;
    }
    if (std::abs(g) <= 1e-13) break;
    (g < 0.0 ? lo : hi) = mid;
  }

  OverlapUnitaryResult out;
  out.v = path(best_t);
  out.achieved_overlap = std::abs((m * out.v).trace());
  out.path_parameter = best_t;
  return out;
}

/// Purifications |Y1>, |Y2> in C^d (x) C^d of rho1, rho2 with |<Y1|Y2>| = phi.
/// The second factor is the environment.
inline std::pair<PureState, PureState> purifications_with_overlap(const DensityMatrix& rho1,
                                                                  const DensityMatrix& rho2, double phi) {
  const auto target = target_overlap_unitary(rho1, rho2, phi);
  const ComplexMatrix a1 = sqrt_psd(rho1.op());
  const ComplexMatrix a2 = sqrt_psd(rho2.op()) * target.v;
  const Index d = rho1.dim();
  // Row-major vectorization: amplitude of |i>|k> is A(i, k).
  auto vectorize = [d](const ComplexMatrix& a) {
    ComplexVector y(d * d);
    for (Index i = 0; i < d; ++i) {
      for (Index k = 0; k < d; ++k) y[i * d + k] = a(i, k);
    }
    return PureState(y / y.norm());
  };
  return {vectorize(a1), vectorize(a2)};
}

/// Ginibre-ensemble state G G^dagger / Tr(G G^dagger) with G of shape d x rank.
inline DensityMatrix random_density(Index d, Index rank, Rng& rng) {
  detail::require(d >= 1 && rank >= 1 && rank <= d, ErrorCode::BadRank,
                  "random_density: rank must satisfy 1 <= rank <= d");
  const ComplexMatrix g = ginibre(d, rank, rng);
  const ComplexMatrix rho = g * g.adjoint();
  return DensityMatrix(rho / rho.trace().real());
}

inline DensityMatrix random_density(Index d, Index rank, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_density(d, rank, rng);
}

inline PureState random_pure(Index d, Rng& rng) {
  const ComplexVector v = ginibre(d, 1, rng).col(0);
  return PureState(v / v.norm());
}

}  // namespace clonebound

#endif  // CLONEBOUND_STATES_HPP
