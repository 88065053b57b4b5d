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

#include "clonebound/measure.hpp"

namespace clonebound {
namespace {

using std::numbers::pi;

POVM trine() {
  std::vector<ComplexMatrix> els;
  for (int k = 0; k < 3; ++k) {
    const double half = (2.0 * pi * k / 3.0) / 2.0;
    ComplexVector psi(2);
    psi << std::cos(half), std::sin(half);
    els.push_back((2.0 / 3.0) * psi * psi.adjoint());
  }
  return POVM(els);
}

TEST(POVM, Validation) {
  EXPECT_THROW(POVM({ComplexMatrix::Identity(2, 2) * 0.5}), Error);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = 1.0;
  ComplexMatrix comp = ComplexMatrix::Zero(2, 2);
  comp(0, 0) = -0.5;
  try {
    POVM({neg, comp});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPOVM);
  }
}

TEST(Probabilities, Examples) {
  const auto p = probabilities(POVM::computational(2), DensityMatrix::basis(2, 0));
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);

  const auto povm = random_povm(3, 4, std::uint64_t{5});
  const auto q = probabilities(povm, DensityMatrix::maximally_mixed(3));
  for (std::size_t a = 0; a < q.size(); ++a) EXPECT_NEAR(q[a], povm.elements()[a].trace().real() / 3.0, 1e-14);

  const auto t = probabilities(trine(), DensityMatrix::basis(2, 0));
  EXPECT_NEAR(t[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(t[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(t[2], 1.0 / 6.0, 1e-15);
}

TEST(Probabilities, DimMismatch) {
  try {
    probabilities(POVM::computational(2), DensityMatrix::basis(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

void expect_dilation_matches(const POVM& povm, const DensityMatrix& rho, double tol) {
  const auto dil = naimark_dilate(povm);
  const auto direct = probabilities(povm, rho);
  const auto via = dilated_probabilities(dil, rho);
  ASSERT_EQ(direct.size(), via.size());
  for (std::size_t a = 0; a < direct.size(); ++a) EXPECT_NEAR(direct[a], via[a], tol);
}

TEST(NaimarkDilate, ProjectiveInput) {
  const auto povm = POVM::computational(3);
  const auto dil = naimark_dilate(povm);
  EXPECT_EQ(dil.measurement.dim(), 9);
  EXPECT_EQ(dil.ancilla.dim(), 3);
  EXPECT_TRUE(is_unitary(dil.unitary));
  expect_dilation_matches(povm, random_density(3, 2, 9), 1e-12);
}

TEST(NaimarkDilate, Trine) {
  Rng rng = make_rng(41);
  for (int t = 0; t < 50; ++t) expect_dilation_matches(trine(), random_density(2, 1 + t % 2, rng), 1e-10);
}

TEST(NaimarkDilate, NoisyTwoOutcome) {
  std::vector<ComplexMatrix> els(2, ComplexMatrix::Zero(2, 2));
  els[0](0, 0) = 0.7;
  els[0](1, 1) = 0.3;
  els[1] = ComplexMatrix::Identity(2, 2) - els[0];
  const POVM povm(els);
  Rng rng = make_rng(42);
  for (int t = 0; t < 20; ++t) expect_dilation_matches(povm, random_density(2, 2, rng), 1e-10);
}

TEST(NaimarkDilate, AncillaIsFirstBasisState) {
  const auto dil = naimark_dilate(trine());
  EXPECT_NEAR(dil.ancilla.op()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(dil.ancilla.purity(), 1.0, 1e-15);
}

TEST(ProjectorGap, Examples) {
  Rng rng = make_rng(43);
  const auto x = random_pure(3, rng);
  const auto y = random_pure(3, rng);
  const ComplexMatrix pi1 = random_projector(3, 1, rng);
  EXPECT_NEAR(projector_gap(x, x, pi1), 0.0, 1e-15);
  EXPECT_NEAR(projector_gap(x, y, ComplexMatrix::Identity(3, 3)), 0.0, 1e-14);
  try {
    projector_gap(x, y, 0.5 * ComplexMatrix::Identity(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotProjector);
  }
}

TEST(ProjectorGap, BoundedBySineOfAngle) {
  Rng rng = make_rng(44);
  for (Index d : {2, 3, 4}) {
    std::uniform_int_distribution<Index> rank(0, d);
    for (int t = 0; t < 500; ++t) {
      const auto x = random_pure(d, rng);
      const auto y = random_pure(d, rng);
      EXPECT_LE(projector_gap(x, y, random_projector(d, rank(rng), rng)), std::sin(angle_pure(x, y)) + 1e-9);
    }
  }
}

TEST(RandomPovm, Examples) {
  const auto single = random_povm(3, 1, std::uint64_t{0});
  ASSERT_EQ(single.outcomes(), 1u);
  EXPECT_LE((single.elements()[0] - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);

  Rng rng = make_rng(45);
  for (int t = 0; t < 1000; ++t) {
    const Index d = 2 + t % 3;
    const auto povm = random_povm(d, 2 + std::size_t(t % 4), rng);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : povm.elements()) {
      sum += e;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e, Eigen::EigenvaluesOnly);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    }
    EXPECT_LE((sum - ComplexMatrix::Identity(d, d)).norm(), 1e-10);
  }
}

TEST(RandomPovm, Deterministic) {
  const auto a = random_povm(2, 3, std::uint64_t{9});
  const auto b = random_povm(2, 3, std::uint64_t{9});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(a.elements()[k], b.elements()[k]);
}

TEST(MeasurementStatistics, BoundedBySineOfStateAngle) {
  Rng rng = make_rng(46);
  for (Index d : {2, 3, 4}) {
    std::uniform_int_distribution<Index> rank(1, d);
    for (int t = 0; t < 300; ++t) {
      const auto chi = random_density(d, rank(rng), rng);
      const auto omega = random_density(d, rank(rng), rng);
      const auto povm = random_povm(d, 2 + std::size_t(t % 4), rng);
      const auto pc = probabilities(povm, chi);
      const auto po = probabilities(povm, omega);
      const double bound = std::sin(angle(chi, omega)) + 1e-9;
      for (std::size_t a = 0; a < pc.size(); ++a) EXPECT_LE(std::abs(pc[a] - po[a]), bound);
    }
  }
}

}  // namespace
}  // namespace clonebound
