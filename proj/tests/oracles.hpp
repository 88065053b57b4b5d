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

#ifndef CLONEBOUND_TESTS_ORACLES_HPP
#define CLONEBOUND_TESTS_ORACLES_HPP

// Reference computations used only by the tests. None of these go through the
// eigen/SVD routes the library uses for the quantities they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "clonebound/matkernel.hpp"

namespace clonebound::oracle {

/// A with A A^dagger = m, from a pivoted LDL^T factorization.
inline ComplexMatrix cholesky_factor(const ComplexMatrix& m) {
  Eigen::LDLT<ComplexMatrix> ldlt(m);
  const ComplexMatrix l = ldlt.matrixL();
  Eigen::VectorXd diag = ldlt.vectorD().real().cwiseMax(0.0).cwiseSqrt();
  ComplexMatrix a = l * diag.cast<Complex>().asDiagonal();
  return ldlt.transpositionsP().transpose() * a;
}

/// Tr_B of an (da*db)-dimensional operator by explicit index summation.
inline ComplexMatrix trace_out_second(const ComplexMatrix& m, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline ComplexMatrix trace_out_first(const ComplexMatrix& m, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

/// max_U |<X| (1 (x) U) |Y>|^2 over environment unitaries, with X, Y the
/// factor purifications of chi and omega in C^d (x) C^d. Stochastic hill
/// climbing: U is multiplied by Cayley transforms of random Hermitian
/// directions, and the step halves after a run of rejected proposals.
inline double fidelity_by_purification_search(const ComplexMatrix& chi, const ComplexMatrix& omega,
                                              std::uint64_t seed = 1) {
  const Index d = chi.rows();
  const ComplexMatrix a = cholesky_factor(chi);
  const ComplexMatrix b = cholesky_factor(omega);

  // <X|(1 (x) U)|Y> = sum_{i,k,l} conj(a_ik) U_kl b_il
  auto overlap = [&](const ComplexMatrix& u) {
    Complex acc = 0.0;
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) acc += std::conj(a(i, k)) * u(k, l) * b(i, l);
    return std::norm(acc);
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix u = id;
  double best = overlap(u);
  double eps = 1.0;
  int rejected = 0;
  while (eps > 1e-10) {
    ComplexMatrix h(d, d);
    for (Index i = 0; i < d; ++i) {
      h(i, i) = normal(rng);
      for (Index j = i + 1; j < d; ++j) {
        h(i, j) = Complex(normal(rng), normal(rng));
        h(j, i) = std::conj(h(i, j));
      }
    }
    const Complex ie(0.0, eps);
    const ComplexMatrix cayley = (id - ie * h) * (id + ie * h).inverse();
    const ComplexMatrix cand = cayley * u;
    const double val = overlap(cand);
    if (val > best) {
      best = val;
      u = cand;
      rejected = 0;
    } else if (++rejected >= 40) {
      eps *= 0.5;
      rejected = 0;
    }
  }
  return best;
}

}  // namespace clonebound::oracle

#endif  // CLONEBOUND_TESTS_ORACLES_HPP
