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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clonebound/clone.hpp"
#include "clonebound/measure.hpp"

namespace clonebound {
namespace {

using std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

DensityMatrix ket_density(double c, double s) {
  ComplexVector v(2);
  v << c, s;
  return PureState(v / v.norm()).density();
}

/// Random 1 -> 2 qubit setup with an ancilla on B (x) E and a Haar-random V.
CloningSetup random_setup(Rng& rng, Index env) {
  const Index anc = 2 * env;
  std::uniform_int_distribution<Index> rank(1, 2);
  std::uniform_int_distribution<Index> anc_rank(1, anc);
  return {random_density(2, rank(rng), rng),
          random_density(2, rank(rng), rng),
          random_density(anc, anc_rank(rng), rng),
          random_density(anc, anc_rank(rng), rng),
          haar_unitary(4 * env, rng),
          1,
          2,
          env};
}

TEST(ApplyCloning, PurifyingAncillaIsPerfect) {
  Rng rng = make_rng(51);
  for (int t = 0; t < 10; ++t) {
    const auto setup = purifying_ancilla_setup(random_density(2, 2, rng), random_density(2, 2, rng));
    const auto out = apply_cloning(setup);
    EXPECT_LE((out.out1.op() - kron(setup.rho1.op(), setup.rho1.op())).norm(), 1e-12);
    EXPECT_LE((out.out2.op() - kron(setup.rho2.op(), setup.rho2.op())).norm(), 1e-12);
    EXPECT_LE(out.delta1, 1e-9);
    EXPECT_LE(out.delta2, 1e-9);
    EXPECT_LE(out.relative_error, 1e-9);
  }
}

TEST(ApplyCloning, BlankAncillaLeavesRegisterB) {
  const auto s1 = ket_density(1.0, 0.0);
  const auto s2 = ket_density(0.8, 0.6);
  const auto setup = pure_ancilla_setup(s1, s2);
  const auto out = apply_cloning(setup);
  const auto blank = DensityMatrix::basis(2, 0);
  EXPECT_LE((out.out1.op() - kron(s1.op(), blank.op())).norm(), 1e-14);
  EXPECT_LE((out.out2.op() - kron(s2.op(), blank.op())).norm(), 1e-14);
  EXPECT_NEAR(out.delta1, angle(tensor(s1, blank), tensor(s1, s1)), 1e-12);
  EXPECT_NEAR(out.delta2, angle(tensor(s2, blank), tensor(s2, s2)), 1e-12);
  // |0> is already a perfect copy of s1; s2 loses |<s2|0>| = 0.8
  EXPECT_NEAR(out.delta1, 0.0, 1e-12);
  EXPECT_NEAR(std::cos(out.delta2), 0.8, 1e-12);
}

TEST(ApplyCloning, RandomSetupsAreTracePreserving) {
  Rng rng = make_rng(52);
  for (int t = 0; t < 50; ++t) {
    const auto setup = random_setup(rng, 2);
    const ComplexMatrix in = kron(setup.rho1.op(), setup.upsilon1.op());
    const ComplexMatrix raw = partial_trace(setup.v * in * setup.v.adjoint(), DimSpec{4, 2}, {0});
    EXPECT_NEAR(raw.trace().real(), 1.0, 1e-10);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (raw + raw.adjoint()), Eigen::EigenvaluesOnly);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    const auto out = apply_cloning(setup);
    EXPECT_NEAR(out.absolute_error, std::sin(out.delta1) + std::sin(out.delta2), 1e-12);
    EXPECT_GE(out.delta1, 0.0);
    EXPECT_LE(out.delta2, pi / 2);
  }
}

TEST(ApplyCloning, Errors) {
  Rng rng = make_rng(53);
  auto setup = random_setup(rng, 2);
  setup.v *= 1.01;
  EXPECT_EQ(code_of([&] { apply_cloning(setup); }), ErrorCode::NotUnitary);
  setup = random_setup(rng, 2);
  setup.env_dim = 3;
  EXPECT_EQ(code_of([&] { apply_cloning(setup); }), ErrorCode::DimMismatch);
  setup = random_setup(rng, 2);
  setup.n_out = 1;
  EXPECT_EQ(code_of([&] { apply_cloning(setup); }), ErrorCode::InvalidArgument);
  const auto rho = random_density(2, 2, rng);
  EXPECT_EQ(code_of([&] { apply_cloning(purifying_ancilla_setup(rho, rho)); }), ErrorCode::IndistinguishablePair);
}

TEST(RelativeError, Examples) {
  Rng rng = make_rng(54);
  const auto r1 = random_density(2, 2, rng);
  const auto r2 = random_density(2, 2, rng);
  EXPECT_EQ(relative_error(0.0, 0.0, r1, r2, 2), 0.0);

  const double ideal = angle(tensor(r1, r1), tensor(r2, r2));
  EXPECT_NEAR(relative_error(ideal / 2, ideal / 2, r1, r2, 2), 1.0 / std::cos(ideal / 2), 1e-12);

  const auto zero = DensityMatrix::basis(2, 0);
  const auto one = DensityMatrix::basis(2, 1);
  EXPECT_NEAR(relative_error(0.3, 0.2, zero, one, 2), std::sin(0.3) + std::sin(0.2), 1e-15);

  EXPECT_EQ(code_of([&] { relative_error(0.1, 0.1, r1, r1, 2); }), ErrorCode::IndistinguishablePair);
}

TEST(RelativeError, DenominatorIsMultiplicative) {
  Rng rng = make_rng(55);
  for (int t = 0; t < 20; ++t) {
    const auto r1 = random_density(2, 1 + t % 2, rng);
    const auto r2 = random_density(2, 2, rng);
    const double f = root_fidelity(r1, r2);
    for (int l : {2, 3}) {
      EXPECT_NEAR(sin_angle(tensor_power(r1, l), tensor_power(r2, l)), std::sqrt(1.0 - std::pow(f, 2 * l)), 1e-9);
    }
  }
}

TEST(AbsoluteError, Examples) {
  EXPECT_EQ(absolute_error(0.0, 0.0), 0.0);
  EXPECT_NEAR(absolute_error(pi / 2, pi / 2), 2.0, 1e-15);
  EXPECT_NEAR(absolute_error(pi / 6, pi / 4), 1.2071067811865475, 1e-15);
  EXPECT_EQ(code_of([] { absolute_error(-0.1, 0.0); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { absolute_error(0.0, 2.0); }), ErrorCode::OutOfRange);
}

TEST(LowerBound, Examples) {
  // 30-digit evaluations of f phi - f^2 sqrt(1 - f^2 phi^2) / sqrt(1 - f^4)
  EXPECT_NEAR(lower_bound({0.6, 1.0, 1, 2}), 0.29130254674348409, 1e-15);
  EXPECT_NEAR(lower_bound({0.6, 0.8, 1, 2}), 0.14148681492357165, 1e-15);
  EXPECT_EQ(lower_bound({0.6, 0.6, 1, 2}), 0.0);
  EXPECT_NEAR(lower_bound({0.6, 1.0, 1, 2}), 0.6 - 0.36 / std::sqrt(1.36), 1e-15);
}

TEST(LowerBound, Errors) {
  EXPECT_EQ(code_of([] { lower_bound({1.0, 1.0, 1, 2}); }), ErrorCode::DegeneratePair);
  EXPECT_EQ(code_of([] { lower_bound({1.2, 1.0, 1, 2}); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { lower_bound({0.5, -0.1, 1, 2}); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { lower_bound({0.5, 1.0, 2, 2}); }), ErrorCode::InvalidArgument);
}

TEST(LowerBound, StandardCloningGrid) {
  for (int k = 1; k <= 99; ++k) {
    const double f = k / 100.0;
    EXPECT_NEAR(lower_bound({f, 1.0, 1, 2}), f - f * f / std::sqrt(1.0 + f * f), 1e-12) << f;
    EXPECT_NEAR(lower_bound({f, 0.7, 1, 2}), lower_bound_one_to_two(f, 0.7), 1e-15) << f;
    EXPECT_NEAR(lower_bound({f, 1.0, 1, 2}), lower_bound_one_to_two(f, 1.0), 1e-15) << f;
  }
}

TEST(LowerBound, ZeroAtThresholdAndMonotone) {
  for (auto [n, l] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 5}}) {
    for (double f : {0.05, 0.3, 0.6, 0.9, 0.99}) {
      const double thr = std::pow(f, l - n);
      EXPECT_NEAR(lower_bound({f, thr, n, l}), 0.0, 1e-12);
      // the closed-form branch also vanishes at the threshold
      const double fn = std::pow(f, n), fl = std::pow(f, l);
      EXPECT_NEAR(fn * thr - fl * std::sqrt(1 - fn * fn * thr * thr) / std::sqrt(1 - fl * fl), 0.0, 1e-12);
      double prev = -1.0;
      for (double phi = thr; phi <= 1.0; phi += 1e-3) {
        const double b = lower_bound({f, phi, n, l});
        EXPECT_GE(b, 0.0);
        EXPECT_GE(b, prev - 1e-15);
        prev = b;
      }
    }
  }
}

TEST(LowerBound, BelowThresholdIsZero) {
  EXPECT_EQ(lower_bound({0.8, 0.3, 1, 2}), 0.0);
  EXPECT_EQ(lower_bound({0.8, 0.5, 1, 3}), 0.0);  // 0.5 < 0.64
  EXPECT_EQ(lower_bound({0.0, 0.5, 1, 2}), 0.0);
}

TEST(ProofChain, PurifyingAncillaSetup) {
  Rng rng = make_rng(56);
  const auto setup = purifying_ancilla_setup(random_density(2, 2, rng), random_density(2, 2, rng));
  const auto rep = proof_chain_check(setup);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_LE(rep.phi, rep.f + 1e-9);
  EXPECT_EQ(rep.bound, 0.0);
  EXPECT_NEAR(angle(rep.outcome.out1, rep.outcome.out2),
              angle(tensor(setup.rho1, setup.rho1), tensor(setup.rho2, setup.rho2)), 1e-9);
}

TEST(ProofChain, RandomSetupsNeverViolate) {
  Rng rng = make_rng(57);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto rep = proof_chain_check(random_setup(rng, 2));
    for (const auto& c : rep.checks) {
      if (!c.holds) {
        ++violations;
        ADD_FAILURE() << c.name << ": " << c.lhs << " < " << c.rhs;
      }
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(ProofChain, SineSubadditivity) {
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 50; ++j) {
      const double a = pi / 2 * i / 50, b = pi / 2 * j / 50;
      EXPECT_GE(std::sin(a) + std::sin(b), std::sin(a + b) - 1e-15);
    }
  }
}

TEST(Theorem, SoundOnRandomOneToTwoAndOneToThree) {
  Rng rng = make_rng(58);
  for (int t = 0; t < 200; ++t) {
    const auto setup = random_setup(rng, 1 + t % 3);
    const auto out = apply_cloning(setup);
    const double bound = lower_bound({root_fidelity(setup.rho1, setup.rho2),
                                      root_fidelity(setup.upsilon1, setup.upsilon2), 1, 2});
    EXPECT_GE(out.relative_error, bound - 1e-8);
  }
  for (int t = 0; t < 30; ++t) {
    const auto r1 = random_density(2, 2, rng);
    const auto r2 = random_density(2, 1, rng);
    CloningSetup s{r1, r2, random_density(8, 3, rng), random_density(8, 5, rng), haar_unitary(16, rng), 1, 3, 2};
    const auto out = apply_cloning(s);
    EXPECT_GE(out.relative_error,
              lower_bound({root_fidelity(r1, r2), root_fidelity(s.upsilon1, s.upsilon2), 1, 3}) - 1e-8);
  }
}

TEST(Theorem, ZeroReachableForNToL) {
  Rng rng = make_rng(59);
  for (auto [n, l] : {std::pair{1, 3}, {2, 3}}) {
    const auto setup = purifying_ancilla_setup(random_density(2, 2, rng), random_density(2, 2, rng), n, l);
    EXPECT_LE(apply_cloning(setup).relative_error, 1e-9);
  }
}

TEST(Deviation, OutputStatisticsBoundedBySineDelta) {
  Rng rng = make_rng(60);
  for (int t = 0; t < 200; ++t) {
    const auto setup = random_setup(rng, 2);
    const auto out = apply_cloning(setup);
    const auto povm = random_povm(4, 2 + std::size_t(t % 4), rng);
    const auto p_out = probabilities(povm, out.out1);
    const auto p_ideal = probabilities(povm, tensor(setup.rho1, setup.rho1));
    for (std::size_t a = 0; a < p_out.size(); ++a) {
      EXPECT_LE(std::abs(p_out[a] - p_ideal[a]), std::sin(out.delta1) + 1e-9);
    }
  }
}

}  // namespace
}  // namespace clonebound
