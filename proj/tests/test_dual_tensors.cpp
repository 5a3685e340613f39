// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

namespace geoqm {
namespace {

using testing::max_abs;
using testing::Rng;

DualVector qubit_point(double y0, double y1, double y2, double y3) {
  return DualVector(2, std::vector<double>{y0, y1, y2, y3});
}

DualVector random_point(std::size_t n, Rng& rng) {
  RVector v(static_cast<Eigen::Index>(n * n));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = rng.normal();
  return DualVector(n, v);
}

// Closed-form qubit tensors in (y0; y1, y2, y3).
RMatrix qubit_lambda(const DualVector& y) {
  RMatrix m = RMatrix::Zero(4, 4);
  m(2, 3) = 2.0 * y[1];
  m(3, 1) = 2.0 * y[2];
  m(1, 2) = 2.0 * y[3];
  return m - m.transpose();
}

RMatrix qubit_r(const DualVector& y) {
  RMatrix m = 2.0 * y[0] * RMatrix::Identity(4, 4);
  for (int a = 1; a <= 3; ++a) m(0, a) = m(a, 0) = 2.0 * y[static_cast<std::size_t>(a)];
  return m;
}

TEST(LambdaTensor, CentralPointVanishes) {
  for (std::size_t n = 2; n <= 4; ++n) {
    RVector v = RVector::Zero(static_cast<Eigen::Index>(n * n));
    v(0) = 0.7;
    EXPECT_LT(lambda_at(DualVector(n, v)).matrix.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(LambdaTensor, QubitClosedForm) {
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const DualVector y = random_point(2, rng);
    EXPECT_LT((lambda_at(y).matrix - qubit_lambda(y)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_EQ(lambda_at(qubit_point(0.5, 0, 0, 0.5)).rank(), 2u);
}

TEST(LambdaTensor, AntisymmetricWithZeroIdentityRow) {
  Rng rng(52);
  for (std::size_t n : {2u, 3u, 4u}) {
    const TensorAtPoint t = lambda_at(random_point(n, rng));
    EXPECT_EQ(t.kind, TensorKind::kLambda);
    EXPECT_LT((t.matrix + t.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(t.matrix.row(0).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(t.matrix.col(0).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LambdaTensor, AgreesWithStructureConstantContraction) {
  Rng rng(53);
  for (std::size_t n : {3u, 4u}) {
    const StructureConstants sc = structure_constants(gellmann_basis(n));
    for (int i = 0; i < 10; ++i) {
      const DualVector y = random_point(n, rng);
      EXPECT_LT((lambda_at(y).matrix - lambda_from_structure(sc, y).matrix).cwiseAbs().maxCoeff(),
                1e-10);
    }
  }
}

TEST(LambdaTensor, JacobiIdentity) {
  // {y_mu, y_nu} = Lambda_{mu nu}(y) is linear in y, so
  // {y_mu, {y_nu, y_rho}} = sum_s Lambda_{mu s} d Lambda_{nu rho} / d y_s.
  Rng rng(54);
  for (std::size_t n : {2u, 3u}) {
    const StructureConstants sc = structure_constants(gellmann_basis(n));
    const std::size_t m = n * n;
    for (int i = 0; i < 20; ++i) {
      const RMatrix L = lambda_at(random_point(n, rng)).matrix;
      auto nested = [&](std::size_t a, std::size_t b, std::size_t c) {
        double v = 0.0;
        for (std::size_t s = 0; s < m; ++s)
          v += L(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(s)) * 2.0 * sc.C(b, c, s);
        return v;
      };
      double worst = 0.0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t c = 0; c < m; ++c)
            worst = std::max(worst, std::abs(nested(a, b, c) + nested(b, c, a) + nested(c, a, b)));
      EXPECT_LT(worst, 1e-10);
    }
  }
}

TEST(RTensor, Examples) {
  EXPECT_LT(riemann_jordan_at(qubit_point(0, 0, 0, 0)).matrix.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(riemann_jordan_at(qubit_point(0.5, 0, 0, 0.5)).rank(), 3u);
  EXPECT_EQ(riemann_jordan_at(qubit_point(0.5, 0, 0, 0)).rank(), 4u);
}

TEST(RTensor, QubitClosedFormAndSymmetry) {
  Rng rng(55);
  for (int i = 0; i < 20; ++i) {
    const DualVector y = random_point(2, rng);
    const TensorAtPoint t = riemann_jordan_at(y);
    EXPECT_EQ(t.kind, TensorKind::kRiemannJordan);
    EXPECT_LT((t.matrix - qubit_r(y)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((t.matrix - t.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RTensor, AgreesWithDSymbolForm) {
  Rng rng(56);
  for (std::size_t n : {3u, 4u}) {
    const StructureConstants sc = structure_constants(gellmann_basis(n));
    for (int i = 0; i < 10; ++i) {
      const DualVector y = random_point(n, rng);
      EXPECT_LT((riemann_jordan_at(y).matrix - riemann_jordan_from_structure(sc, y).matrix)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
    }
  }
}

TEST(TensorEvaluation, BilinearInOperatorCoordinates) {
  Rng rng(57);
  const OrthogonalBasis b = gellmann_basis(3);
  const HermitianOperator xi = testing::random_hermitian(3, rng);
  const HermitianOperator a = testing::random_hermitian(3, rng);
  const HermitianOperator c = testing::random_hermitian(3, rng);
  const DualVector y = to_dual(xi, b), ya = to_dual(a, b), yc = to_dual(c, b);
  const CMatrix x = xi.matrix(), am = a.matrix(), cm = c.matrix();
  EXPECT_NEAR(lambda_at(y)(ya, yc), ((x * commutator(am, cm)).trace() / (2.0 * kI)).real(), 1e-10);
  EXPECT_NEAR(riemann_jordan_at(y)(ya, yc), 0.5 * (x * anticommutator(am, cm)).trace().real(), 1e-10);
}

// Rank laws over the closed-form loci. Points are integer multiples of 1/10 so
// the loci are hit exactly.
TEST(RankLaws, QubitGrid) {
  for (int i0 = -5; i0 <= 5; ++i0)
    for (int i1 = -3; i1 <= 3; ++i1)
      for (int i2 = -3; i2 <= 3; ++i2)
        for (int i3 = -3; i3 <= 3; i3 += 3) {
          const DualVector y = qubit_point(i0 / 10.0, i1 / 10.0, i2 / 10.0, i3 / 10.0);
          const int v2 = i1 * i1 + i2 * i2 + i3 * i3;
          const std::size_t lam = v2 == 0 ? 0 : 2;
          std::size_t r;
          if (i0 == 0 && v2 == 0) r = 0;
          else if (i0 == 0) r = 2;
          else if (i0 * i0 == v2) r = 3;
          else r = 4;
          ASSERT_EQ(lambda_at(y).rank(), lam) << i0 << ' ' << i1 << ' ' << i2 << ' ' << i3;
          ASSERT_EQ(riemann_jordan_at(y).rank(), r) << i0 << ' ' << i1 << ' ' << i2 << ' ' << i3;
        }
}

TEST(Endomorphisms, Examples) {
  Rng rng(58);
  const HermitianOperator xi = testing::random_hermitian(3, rng);
  EXPECT_LT(max_abs(jtilde_endo(xi, xi).matrix()), 1e-14);
  EXPECT_LT(max_abs(r_endo(xi, HermitianOperator::identity(3)).matrix() - 2.0 * xi.matrix()), 1e-14);
  const DualVector y = to_dual(xi, gellmann_basis(3));
  const HermitianOperator a = testing::random_hermitian(3, rng);
  EXPECT_LT(max_abs(jtilde_endo(y, a).matrix() - jtilde_endo(xi, a).matrix()), 1e-12);
  EXPECT_LT(max_abs(r_endo(y, a).matrix() - r_endo(xi, a).matrix()), 1e-12);
  EXPECT_THROW(r_endo(xi, HermitianOperator::identity(2)), DimensionMismatch);
}

TEST(Endomorphisms, CommuteAndLandOnSquareCommutator) {
  Rng rng(59);
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i < 100; ++i) {
      const HermitianOperator xi = testing::random_hermitian(n, rng);
      const HermitianOperator a = testing::random_hermitian(n, rng);
      const HermitianOperator jr = jtilde_endo(xi, r_endo(xi, a));
      const HermitianOperator rj = r_endo(xi, jtilde_endo(xi, a));
      ASSERT_LT(max_abs(jr.matrix() - rj.matrix()), 1e-12);
      const CMatrix x2 = xi.matrix() * xi.matrix();
      ASSERT_LT(max_abs(jr.matrix() - (-kI) * commutator(a.matrix(), x2)), 1e-12);
    }
  }
}

TEST(Distributions, CentralPoint) {
  const DistributionReport r = distributions_at(qubit_point(0.5, 0, 0, 0));
  EXPECT_EQ(r.dims.lambda, 0u);
  EXPECT_EQ(r.dims.r, 4u);
  EXPECT_EQ(r.dims.d0, 0u);
  EXPECT_EQ(r.dims.d1, 4u);
  EXPECT_EQ(r.dims.d0_from_square, 0u);
}

TEST(Distributions, QubitGenericPoint) {
  const DistributionReport r = distributions_at(qubit_point(0.5, 0.1, -0.2, 0.15));
  EXPECT_EQ(r.dims.lambda, 2u);
  EXPECT_EQ(r.dims.r, 4u);
  EXPECT_EQ(r.dims.d0, 2u);
  EXPECT_EQ(r.dims.d1, 4u);
  EXPECT_EQ(r.dims.d0_from_square, 2u);
}

TEST(Distributions, QubitPureStateD0EqualsDLambda) {
  const DistributionReport r = distributions_at(qubit_point(0.5, 0.3, 0.0, 0.4));
  EXPECT_EQ(r.dims.lambda, 2u);
  EXPECT_EQ(r.dims.r, 3u);
  EXPECT_EQ(r.dims.d0, 2u);
  EXPECT_EQ(r.dims.d1, 3u);
  // Same subspace, not just the same dimension.
  const RMatrix p = r.lambda_cols * r.lambda_cols.transpose();
  const RMatrix q = r.d0_cols * r.d0_cols.transpose();
  EXPECT_LT((p - q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Distributions, SubspaceInequalitiesAndRoutes) {
  Rng rng(60);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int i = 0; i < 20; ++i) {
      // Random points and random states of every rank.
      const std::size_t k = 1 + static_cast<std::size_t>(i) % n;
      const DualVector y = i % 2 == 0 ? random_point(n, rng)
                                      : to_dual(testing::random_density(n, k, rng), gellmann_basis(n));
      const DistributionReport r = distributions_at(y);
      EXPECT_LE(r.dims.d0, std::min(r.dims.lambda, r.dims.r));
      EXPECT_LE(r.dims.d1, r.dims.lambda + r.dims.r);
      EXPECT_LE(r.dims.d1, n * n);
      EXPECT_EQ(r.dims.d0, r.dims.d0_from_square);
      EXPECT_EQ(r.lambda_basis.size(), r.dims.lambda);
      EXPECT_EQ(r.d0_basis.size(), r.dims.d0);
      EXPECT_EQ(r.d1_basis.size(), r.dims.d1);
      EXPECT_EQ(r.dims.lambda, lambda_at(y).rank());
      EXPECT_EQ(r.dims.r, riemann_jordan_at(y).rank());
      // D_0 vectors lie in both spans.
      for (Eigen::Index j = 0; j < r.d0_cols.cols(); ++j) {
        const RVector v = r.d0_cols.col(j);
        EXPECT_LT((v - r.lambda_cols * (r.lambda_cols.transpose() * v)).norm(), 1e-8);
        EXPECT_LT((v - r.r_cols * (r.r_cols.transpose() * v)).norm(), 1e-8);
      }
    }
  }
}

// Tangent space of the orbit T -> T xi T^dagger at T = I by central finite
// differences along the 2n^2 real directions of gl(n, C).
std::size_t gl_orbit_tangent_rank(const HermitianOperator& xi) {
  const std::size_t n = xi.dim();
  const auto N = static_cast<Eigen::Index>(n);
  const OrthogonalBasis b = gellmann_basis(n);
  const double h = 1e-6;
  RMatrix cols(N * N, 2 * N * N);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      for (Complex unit : {Complex(1.0, 0.0), kI}) {
        CMatrix e = CMatrix::Zero(N, N);
        e(i, j) = unit;
        const CMatrix tp = CMatrix::Identity(N, N) + h * e;
        const CMatrix tm = CMatrix::Identity(N, N) - h * e;
        const CMatrix d = (tp * xi.matrix() * tp.adjoint() - tm * xi.matrix() * tm.adjoint()) / (2.0 * h);
        cols.col(c++) = to_dual(HermitianOperator::hermitian_part(d), b).y();
      }
  return numerical_rank(cols, 1e-7);
}

TEST(Distributions, D1MatchesGlOrbitTangentSpace) {
  Rng rng(61);
  for (std::size_t n : {2u, 3u, 4u})
    for (std::size_t k = 1; k <= n; ++k) {
      const HermitianOperator rho = testing::random_density(n, k, rng);
      const DistributionReport r = distributions_at(to_dual(rho, gellmann_basis(n)));
      EXPECT_EQ(r.dims.d1, gl_orbit_tangent_rank(rho)) << n << ' ' << k;
      EXPECT_EQ(r.dims.d1, n * n - (n - k) * (n - k)) << n << ' ' << k;
    }
}

TEST(Pushforward, CalibratedScale) {
  EXPECT_NEAR(calibrate_pushforward_scale(), kPushforwardScale, 1e-14);
}

TEST(Pushforward, IdentityPair) {
  Rng rng(62);
  const RealifiedState s = testing::random_state(2, rng);
  const HermitianOperator id = HermitianOperator::identity(2);
  const PushforwardCheck c = pushforward_check(s, id, id);
  const double n2 = s.norm() * s.norm();
  // (G + i Omega)(df_I, df_I) = g(psi, psi).
  EXPECT_NEAR(c.lhs.real(), n2, 1e-12);
  EXPECT_NEAR(c.rhs.real(), n2, 1e-12);
  EXPECT_NEAR(c.lhs.imag(), 0.0, 1e-14);
  EXPECT_NEAR(c.rhs.imag(), 0.0, 1e-14);
}

TEST(Pushforward, CommutingPairIsReal) {
  Rng rng(63);
  const HermitianOperator a = testing::random_hermitian(3, rng);
  const HermitianOperator b(a.matrix() * a.matrix());
  const PushforwardCheck c = pushforward_check(testing::random_state(3, rng), a, b);
  EXPECT_NEAR(c.lhs.imag(), 0.0, 1e-12);
  EXPECT_NEAR(c.rhs.imag(), 0.0, 1e-12);
}

TEST(Pushforward, RandomSamples) {
  Rng rng(64);
  for (std::size_t n : {2u, 3u, 4u})
    for (int i = 0; i < 50; ++i) {
      const PushforwardCheck c =
          pushforward_check(testing::random_state(n, rng), testing::random_hermitian(n, rng),
                            testing::random_hermitian(n, rng));
      ASSERT_LT(std::abs(c.lhs - c.rhs), 1e-10);
    }
}

TEST(Pushforward, RejectsZeroVector) {
  const HermitianOperator id = HermitianOperator::identity(2);
  EXPECT_THROW(pushforward_check(RealifiedState(RVector::Zero(2), RVector::Zero(2)), id, id), Error);
}

}  // namespace
}  // namespace geoqm
