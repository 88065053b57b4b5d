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

#ifndef CLONEBOUND_CLONE_HPP
#define CLONEBOUND_CLONE_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "clonebound/matkernel.hpp"
#include "clonebound/states.hpp"

namespace clonebound {

/// Unitary N -> L copying machine. Register A holds rho_j^{(x)N}; the ancilla
/// Upsilon_j lives on B (M = L - N extra registers) and the environment E.
/// The full space is ordered A (x) B (x) E with dimension d^L * env_dim.
struct CloningSetup {
  DensityMatrix rho1;
  DensityMatrix rho2;
  DensityMatrix upsilon1;
  DensityMatrix upsilon2;
  ComplexMatrix v;
  int n_in = 1;
  int n_out = 2;
  Index env_dim = 1;

  Index d() const noexcept { return rho1.dim(); }
  int extra() const noexcept { return n_out - n_in; }
};

namespace detail {

inline Index checked_pow(Index base, int exp, const char* who) {
  Index out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
    require_dim_cap(out, who);
  }
  return out;
}

}  // namespace detail

/// Throws on any broken dimension or validity invariant of the setup.
inline void validate(const CloningSetup& s) {
  detail::require(s.n_in >= 1 && s.n_out > s.n_in, ErrorCode::InvalidArgument,
                  "CloningSetup: need L > N >= 1");
  detail::require(s.env_dim >= 1, ErrorCode::InvalidArgument, "CloningSetup: env_dim must be positive");
  detail::require(s.rho1.dim() == s.rho2.dim(), ErrorCode::DimMismatch,
                  "CloningSetup: input states differ in dimension");
  const Index d = s.d();
  const Index anc = detail::checked_pow(d, s.extra(), "CloningSetup") * s.env_dim;
  detail::require_dim_cap(anc, "CloningSetup");
  const Index total = detail::checked_pow(d, s.n_out, "CloningSetup") * s.env_dim;
  detail::require_dim_cap(total, "CloningSetup");
  detail::require(s.upsilon1.dim() == anc && s.upsilon2.dim() == anc, ErrorCode::DimMismatch,
                  "CloningSetup: ancilla states must have dimension d^M * env_dim");
  detail::require(s.v.rows() == total && s.v.cols() == total, ErrorCode::DimMismatch,
                  "CloningSetup: V must be square of size d^L * env_dim");
  require_unitary(s.v, "CloningSetup");
}

struct CloneOutcome {
  DensityMatrix out1;
  DensityMatrix out2;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double absolute_error = 0.0;
  double relative_error = 0.0;
};

/// sin(delta1) + sin(delta2), each angle in [0, pi/2].
inline double absolute_error(double delta1, double delta2) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  detail::require(delta1 >= 0.0 && delta1 <= kHalfPi && delta2 >= 0.0 && delta2 <= kHalfPi,
                  ErrorCode::OutOfRange, "absolute_error: angles must lie in [0, pi/2]");
  return std::sin(delta1) + std::sin(delta2);
}

/// Pairs with sqrt(F) above this are treated as identical inputs.
inline constexpr double kIndistinguishable = 1.0 - 1e-12;

namespace detail {

/// sin of the angle between rho1^{(x)L} and rho2^{(x)L}, cross-checked against
/// the multiplicative closed form sqrt(1 - f^{2L}).
inline double ideal_output_separation(const DensityMatrix& rho1, const DensityMatrix& rho2, int n_out) {
  const double f = root_fidelity(rho1, rho2);
  require(f < kIndistinguishable, ErrorCode::IndistinguishablePair,
          "relative_error: input states are indistinguishable (f = 1), ratio is 0/0");
  const double denom = sin_angle(tensor_power(rho1, n_out), tensor_power(rho2, n_out));
  const double closed = std::sqrt(std::max(0.0, 1.0 - std::pow(f, 2 * n_out)));
  require(std::abs(denom - closed) <= 1e-9, ErrorCode::NumericalInconsistency,
          "relative_error: tensor-power separation disagrees with sqrt(1 - f^{2L})");
  return denom;
}

}  // namespace detail

/// (sin delta1 + sin delta2) / sin angle(rho1^{(x)L}, rho2^{(x)L}).
inline double relative_error(double delta1, double delta2, const DensityMatrix& rho1,
                             const DensityMatrix& rho2, int n_out) {
  detail::require(n_out >= 2, ErrorCode::InvalidArgument, "relative_error: L must be at least 2");
  detail::require(rho1.dim() == rho2.dim(), ErrorCode::DimMismatch, "relative_error: dimension mismatch");
  const double num = absolute_error(delta1, delta2);
  return num / detail::ideal_output_separation(rho1, rho2, n_out);
}

/// Repeated evaluation of one input/ancilla configuration under varying V.
/// Everything independent of V is computed once.
class CloningEvaluator {
 public:
  CloningEvaluator(const DensityMatrix& rho1, const DensityMatrix& rho2, const DensityMatrix& upsilon1,
                   const DensityMatrix& upsilon2, int n_in, int n_out, Index env_dim)
      : ideal1_(tensor_power(rho1, n_out)), ideal2_(tensor_power(rho2, n_out)), env_dim_(env_dim) {
    const Index n = total_dim();
    validate(CloningSetup{rho1, rho2, upsilon1, upsilon2, ComplexMatrix::Identity(n, n), n_in, n_out,
                          env_dim});
    input1_ = kron(kron_power(rho1.op(), n_in), upsilon1.op());
    input2_ = kron(kron_power(rho2.op(), n_in), upsilon2.op());
    separation_ = detail::ideal_output_separation(rho1, rho2, n_out);
  }

  Index total_dim() const noexcept { return ideal1_.dim() * env_dim_; }

  CloneOutcome operator()(const ComplexMatrix& v) const {
    detail::require(v.rows() == total_dim() && v.cols() == total_dim(), ErrorCode::DimMismatch,
                    "apply_cloning: V has the wrong dimension");
    require_unitary(v, "apply_cloning");
    const DimSpec split{ideal1_.dim(), env_dim_};
    auto output = [&](const ComplexMatrix& in) {
      ComplexMatrix out = partial_trace(v * in * v.adjoint(), split, {0});
      return DensityMatrix(out);
    };
    DensityMatrix out1 = output(input1_);
    DensityMatrix out2 = output(input2_);
    const double delta1 = angle(out1, ideal1_);
    const double delta2 = angle(out2, ideal2_);
    const double abs_err = absolute_error(delta1, delta2);
    return {std::move(out1), std::move(out2), delta1, delta2, abs_err, abs_err / separation_};
  }

  /// Relative error only; the optimizer's objective.
  double relative_error(const ComplexMatrix& v) const { return (*this)(v).relative_error; }

 private:
  DensityMatrix ideal1_;
  DensityMatrix ideal2_;
  Index env_dim_;
  ComplexMatrix input1_;
  ComplexMatrix input2_;
  double separation_ = 1.0;
};

/// out_j = Tr_E(V (rho_j^{(x)N} (x) Upsilon_j) V^dagger) compared with rho_j^{(x)L}.
inline CloneOutcome apply_cloning(const CloningSetup& setup) {
  validate(setup);
  const CloningEvaluator eval(setup.rho1, setup.rho2, setup.upsilon1, setup.upsilon2, setup.n_in,
                              setup.n_out, setup.env_dim);
  return eval(setup.v);
}

/// Scalar parameters of the relative-error lower bound.
struct BoundInput {
  double f = 0.0;    // sqrt F(rho1, rho2)
  double phi = 1.0;  // sqrt F(Upsilon1, Upsilon2)
  int n_in = 1;
  int n_out = 2;
};

namespace detail {

inline void validate(const BoundInput& b) {
  require(std::isfinite(b.f) && b.f >= 0.0 && b.f <= 1.0, ErrorCode::OutOfRange,
          "lower_bound: f must lie in [0, 1]");
  require(std::isfinite(b.phi) && b.phi >= 0.0 && b.phi <= 1.0, ErrorCode::OutOfRange,
          "lower_bound: phi must lie in [0, 1]");
  require(b.n_in >= 1 && b.n_out > b.n_in, ErrorCode::InvalidArgument, "lower_bound: need L > N >= 1");
  require(b.f < kIndistinguishable, ErrorCode::DegeneratePair,
          "lower_bound: f = 1, the relative error is undefined");
}

}  // namespace detail

/// Lower bound on the relative error of any N -> L operation:
///   0                                                  for phi <= f^M,
///   f^N phi - f^L sqrt(1 - f^{2N} phi^2) / sqrt(1 - f^{2L})   otherwise.
inline double lower_bound(const BoundInput& b) {
  detail::validate(b);
  const int m = b.n_out - b.n_in;
  if (b.phi <= std::pow(b.f, m)) return 0.0;
  const double fn = std::pow(b.f, b.n_in);
  const double fl = std::pow(b.f, b.n_out);
  return fn * b.phi - fl * std::sqrt(1.0 - fn * fn * b.phi * b.phi) / std::sqrt(1.0 - fl * fl);
}

/// The 1 -> 2 bound written out directly: f phi - f^2 sqrt(1 - f^2 phi^2) / sqrt(1 - f^4).
inline double lower_bound_one_to_two(double f, double phi) {
  detail::validate(BoundInput{f, phi, 1, 2});
  if (phi <= f) return 0.0;
  return f * phi - f * f * std::sqrt(1.0 - f * f * phi * phi) / std::sqrt(1.0 - f * f * f * f);
}

/// One inequality of the bound's derivation, stated as lhs >= rhs.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ProofChainReport {
  double f = 0.0;
  double phi = 0.0;
  double bound = 0.0;
  CloneOutcome outcome;
  std::vector<InequalityCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks) {
      if (!c.holds) return false;
    }
    return true;
  }
};

/// Evaluates every step of the bound's derivation on a concrete setup.
inline ProofChainReport proof_chain_check(const CloningSetup& setup, double slack = 1e-9) {
  auto outcome = apply_cloning(setup);
  const double f = root_fidelity(setup.rho1, setup.rho2);
  const double phi = root_fidelity(setup.upsilon1, setup.upsilon2);
  const double fn = std::pow(f, setup.n_in);
  const double d1 = outcome.delta1;
  const double d2 = outcome.delta2;
  const auto ideal1 = tensor_power(setup.rho1, setup.n_out);
  const auto ideal2 = tensor_power(setup.rho2, setup.n_out);
  const double ideal_angle = angle(ideal1, ideal2);
  const double out_angle = angle(outcome.out1, outcome.out2);
  const double r = outcome.relative_error;
  const double bound = lower_bound({f, phi, setup.n_in, setup.n_out});

  auto check = [slack](std::string name, double lhs, double rhs) {
    return InequalityCheck{std::move(name), lhs, rhs, lhs >= rhs - slack};
  };
  ProofChainReport rep{f, phi, bound, outcome, {}};
  rep.checks.push_back(check("angle_sum_triangle", d1 + d2, ideal_angle - out_angle));
  rep.checks.push_back(check("output_overlap", std::cos(out_angle), fn * phi));
  rep.checks.push_back(
      check("output_sine", -std::sin(out_angle), -std::sqrt(std::max(0.0, 1.0 - fn * fn * phi * phi))));
  rep.checks.push_back(check("sine_subadditivity", std::sin(d1) + std::sin(d2), std::sin(d1 + d2)));
  rep.checks.push_back(check("relative_error_intermediate", r,
                             std::cos(out_angle) - std::sin(out_angle) / std::tan(ideal_angle)));
  rep.checks.push_back(check("relative_error_bound", r, bound));
  rep.outcome = std::move(outcome);
  return rep;
}

/// V = 1 with Upsilon_j a purification of rho_j^{(x)M} on B (x) E: a perfect
/// cloner whenever the ancilla already carries the clones.
inline CloningSetup purifying_ancilla_setup(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                            int n_in = 1, int n_out = 2) {
  detail::require(n_in >= 1 && n_out > n_in, ErrorCode::InvalidArgument,
                  "purifying_ancilla_setup: need L > N >= 1");
  const int m = n_out - n_in;
  const Index d = rho1.dim();
  const Index env = detail::checked_pow(d, m, "purifying_ancilla_setup");
  auto ancilla = [&](const DensityMatrix& rho) { return purify(tensor_power(rho, m), env).density(); };
  const Index total = detail::checked_pow(d, n_out, "purifying_ancilla_setup") * env;
  return {rho1, rho2, ancilla(rho1), ancilla(rho2), ComplexMatrix::Identity(total, total), n_in, n_out, env};
}

/// Input-independent ancilla |0><0| on B (x) E (phi = 1), identity V.
inline CloningSetup pure_ancilla_setup(const DensityMatrix& rho1, const DensityMatrix& rho2, int n_in = 1,
                                       int n_out = 2, Index env_dim = 1) {
  detail::require(n_in >= 1 && n_out > n_in, ErrorCode::InvalidArgument,
                  "pure_ancilla_setup: need L > N >= 1");
  const Index d = rho1.dim();
  const Index anc = detail::checked_pow(d, n_out - n_in, "pure_ancilla_setup") * env_dim;
  const Index total = detail::checked_pow(d, n_out, "pure_ancilla_setup") * env_dim;
  const auto blank = DensityMatrix::basis(anc, 0);
  return {rho1, rho2, blank, blank, ComplexMatrix::Identity(total, total), n_in, n_out, env_dim};
}

}  // namespace clonebound

#endif  // CLONEBOUND_CLONE_HPP
