// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "geoqm/common.hpp"
#include "geoqm/hermitian.hpp"
#include "geoqm/kaehler.hpp"

namespace geoqm {

enum class TensorKind { kLambda, kRiemannJordan };

inline std::string to_string(TensorKind k) {
  return k == TensorKind::kLambda ? "lambda" : "R";
}

/// A bivector on u*(H) at a point, as the matrix T(e_mu, e_nu) in the basis
/// of coordinate differentials dy^mu.
struct TensorAtPoint {
  DualVector point;
  TensorKind kind = TensorKind::kLambda;
  RMatrix matrix;

  std::size_t rank() const { return numerical_rank(matrix); }

  /// T(A, B) for A = a^mu e_mu, B = b^nu e_nu.
  double operator()(const DualVector& a, const DualVector& b) const {
    return a.y().dot(matrix * b.y());
  }
};

/// Lambda(xi)(e_mu, e_nu) = (1/2i) Tr(xi [e_mu, e_nu]).
inline TensorAtPoint lambda_at(const DualVector& xi, const OrthogonalBasis& basis) {
  require_same_dim(basis.dim(), xi.dim());
  const CMatrix x = from_dual(xi, basis).matrix();
  const auto m = static_cast<Eigen::Index>(basis.size());
  RMatrix out = RMatrix::Zero(m, m);
  for (Eigen::Index mu = 0; mu < m; ++mu)
    for (Eigen::Index nu = mu + 1; nu < m; ++nu) {
      const CMatrix c = commutator(basis[mu].matrix(), basis[nu].matrix());
      const double v = (detail::trace_of_product(x, c) / (2.0 * kI)).real();
      out(mu, nu) = v;
      out(nu, mu) = -v;
    }
  return {xi, TensorKind::kLambda, out};
}

inline TensorAtPoint lambda_at(const DualVector& xi) {
  return lambda_at(xi, gellmann_basis(xi.dim()));
}

/// R(xi)(e_mu, e_nu) = (1/2) Tr(xi [e_mu, e_nu]_+).
inline TensorAtPoint riemann_jordan_at(const DualVector& xi, const OrthogonalBasis& basis) {
  require_same_dim(basis.dim(), xi.dim());
  const CMatrix x = from_dual(xi, basis).matrix();
  const auto m = static_cast<Eigen::Index>(basis.size());
  RMatrix out = RMatrix::Zero(m, m);
  for (Eigen::Index mu = 0; mu < m; ++mu)
    for (Eigen::Index nu = mu; nu < m; ++nu) {
      const CMatrix a = anticommutator(basis[mu].matrix(), basis[nu].matrix());
      const double v = 0.5 * detail::trace_of_product(x, a).real();
      out(mu, nu) = v;
      out(nu, mu) = v;
    }
  return {xi, TensorKind::kRiemannJordan, out};
}

inline TensorAtPoint riemann_jordan_at(const DualVector& xi) {
  return riemann_jordan_at(xi, gellmann_basis(xi.dim()));
}

/// Lambda = 2 C_{mu nu rho} y^rho, from the structure constants.
inline TensorAtPoint lambda_from_structure(const StructureConstants& sc, const DualVector& xi) {
  require_same_dim(sc.dim, xi.dim());
  const std::size_t m = sc.basis.size();
  RMatrix out = RMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = 0; nu < m; ++nu) {
      double v = 0.0;
      for (std::size_t rho = 0; rho < m; ++rho) v += sc.C(mu, nu, rho) * xi[rho];
      out(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) = 2.0 * v;
    }
  return {xi, TensorKind::kLambda, out};
}

/// R = 2 sqrt(2/n) y^0 delta_{mu nu} + 2 d_{mu nu rho} y^rho.
inline TensorAtPoint riemann_jordan_from_structure(const StructureConstants& sc,
                                                   const DualVector& xi) {
  require_same_dim(sc.dim, xi.dim());
  const std::size_t m = sc.basis.size();
  const double id_coeff = std::sqrt(2.0 / static_cast<double>(sc.dim));
  RMatrix out = RMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = 0; nu < m; ++nu) {
      double v = mu == nu ? id_coeff * xi[0] : 0.0;
      for (std::size_t rho = 0; rho < m; ++rho) v += sc.D(mu, nu, rho) * xi[rho];
      out(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) = 2.0 * v;
    }
  return {xi, TensorKind::kRiemannJordan, out};
}

/// J~_xi(A) = (1/i)[A, xi].
inline HermitianOperator jtilde_endo(const HermitianOperator& xi, const HermitianOperator& a) {
  require_same_dim(xi.dim(), a.dim());
  return HermitianOperator::hermitian_part(-kI * commutator(a.matrix(), xi.matrix()));
}

inline HermitianOperator jtilde_endo(const DualVector& xi, const HermitianOperator& a) {
  return jtilde_endo(from_dual(xi, gellmann_basis(xi.dim())), a);
}

/// R_xi(A) = [A, xi]_+.
inline HermitianOperator r_endo(const HermitianOperator& xi, const HermitianOperator& a) {
  require_same_dim(xi.dim(), a.dim());
  return HermitianOperator::hermitian_part(anticommutator(a.matrix(), xi.matrix()));
}

inline HermitianOperator r_endo(const DualVector& xi, const HermitianOperator& a) {
  return r_endo(from_dual(xi, gellmann_basis(xi.dim())), a);
}

struct DistributionDims {
  std::size_t lambda = 0;
  std::size_t r = 0;
  std::size_t d0 = 0;
  std::size_t d1 = 0;
  /// dim span{(1/i)[A, xi^2]}, the second route to D_0.
  std::size_t d0_from_square = 0;
};

/// Spans of the Hamiltonian (D_Lambda) and gradient (D_R) directions at xi,
/// their intersection D_0 and sum D_1. Basis operators are orthonormal in
/// dual coordinates.
struct DistributionReport {
  DualVector point;
  DistributionDims dims;
  std::vector<HermitianOperator> lambda_basis;
  std::vector<HermitianOperator> r_basis;
  std::vector<HermitianOperator> d0_basis;
  std::vector<HermitianOperator> d1_basis;
  /// The same subspaces as columns of dual coordinates.
  RMatrix lambda_cols, r_cols, d0_cols, d1_cols;
};

namespace detail {
inline std::vector<HermitianOperator> columns_to_operators(const RMatrix& q,
                                                           const OrthogonalBasis& basis) {
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(q.cols()));
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    out.push_back(from_dual(DualVector(basis.dim(), RVector(q.col(j))), basis));
  return out;
}
}  // namespace detail

inline DistributionReport distributions_at(const DualVector& xi, const OrthogonalBasis& basis) {
  require_same_dim(basis.dim(), xi.dim());
  const HermitianOperator x = from_dual(xi, basis);
  const HermitianOperator x2 = HermitianOperator::hermitian_part(x.matrix() * x.matrix());
  const auto m = static_cast<Eigen::Index>(basis.size());
  RMatrix ham(m, m), grad(m, m), ham_sq(m, m);
  for (Eigen::Index mu = 0; mu < m; ++mu) {
    const HermitianOperator& a = basis[static_cast<std::size_t>(mu)];
    ham.col(mu) = to_dual(jtilde_endo(x, a), basis).y();
    grad.col(mu) = to_dual(r_endo(x, a), basis).y();
    ham_sq.col(mu) = to_dual(jtilde_endo(x2, a), basis).y();
  }

  DistributionReport rep{xi, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  rep.lambda_cols = column_space(ham);
  rep.r_cols = column_space(grad);
  RMatrix stacked(m, rep.lambda_cols.cols() + rep.r_cols.cols());
  stacked << rep.lambda_cols, rep.r_cols;
  rep.d1_cols = column_space(stacked);

  rep.dims.lambda = static_cast<std::size_t>(rep.lambda_cols.cols());
  rep.dims.r = static_cast<std::size_t>(rep.r_cols.cols());
  rep.dims.d1 = static_cast<std::size_t>(rep.d1_cols.cols());
  rep.dims.d0 = rep.dims.lambda + rep.dims.r - rep.dims.d1;
  rep.dims.d0_from_square = numerical_rank(ham_sq);

  // Principal vectors with cosine 1 span the intersection.
  if (rep.dims.d0 > 0) {
    Eigen::JacobiSVD<RMatrix> svd(rep.lambda_cols.transpose() * rep.r_cols, Eigen::ComputeThinU);
    rep.d0_cols = rep.lambda_cols * svd.matrixU().leftCols(static_cast<Eigen::Index>(rep.dims.d0));
  } else {
    rep.d0_cols = RMatrix(m, 0);
  }

  rep.lambda_basis = detail::columns_to_operators(rep.lambda_cols, basis);
  rep.r_basis = detail::columns_to_operators(rep.r_cols, basis);
  rep.d0_basis = detail::columns_to_operators(rep.d0_cols, basis);
  rep.d1_basis = detail::columns_to_operators(rep.d1_cols, basis);
  return rep;
}

inline DistributionReport distributions_at(const DualVector& xi) {
  return distributions_at(xi, gellmann_basis(xi.dim()));
}

/// Global factor between (G + i Omega)(df_A, df_B) at psi and
/// (R + i Lambda)(A, B) at xi = |psi><psi|. Fixed by calibrate_pushforward_scale().
inline constexpr double kPushforwardScale = 1.0;

struct PushforwardCheck {
  Complex lhs;
  Complex rhs;
};

inline HermitianOperator unnormalized_projector(const RealifiedState& psi) {
  const CVector z = psi.to_complex();
  return HermitianOperator::hermitian_part(z * z.adjoint());
}

namespace detail {
inline PushforwardCheck pushforward_unscaled(const RealifiedState& psi, const HermitianOperator& a,
                                             const HermitianOperator& b,
                                             const OrthogonalBasis& basis) {
  require_same_dim(a.dim(), psi.dim());
  require_same_dim(b.dim(), psi.dim());
  if (psi.norm() == 0.0) throw InvalidStart("pushforward check needs a nonzero vector");
  const Complex lhs = star_product(a, b, psi);
  const DualVector xi = to_dual(unnormalized_projector(psi), basis);
  const DualVector ad = to_dual(a, basis);
  const DualVector bd = to_dual(b, basis);
  const Complex rhs{riemann_jordan_at(xi, basis)(ad, bd), lambda_at(xi, basis)(ad, bd)};
  return {lhs, rhs};
}
}  // namespace detail

inline PushforwardCheck pushforward_check(const RealifiedState& psi, const HermitianOperator& a,
                                          const HermitianOperator& b,
                                          const OrthogonalBasis& basis) {
  PushforwardCheck c = detail::pushforward_unscaled(psi, a, b, basis);
  c.rhs *= kPushforwardScale;
  return c;
}

inline PushforwardCheck pushforward_check(const RealifiedState& psi, const HermitianOperator& a,
                                          const HermitianOperator& b) {
  return pushforward_check(psi, a, b, gellmann_basis(psi.dim()));
}

/// Ratio lhs/rhs on the qubit with A = B = identity and psi = (1, i)/sqrt(2),
/// where both sides are explicit.
inline double calibrate_pushforward_scale() {
  CVector z(2);
  z << Complex(1.0, 0.0), Complex(0.0, 1.0);
  z /= std::sqrt(2.0);
  const HermitianOperator id = HermitianOperator::identity(2);
  const PushforwardCheck c =
      detail::pushforward_unscaled(RealifiedState::from_complex(z), id, id, gellmann_basis(2));
  return c.lhs.real() / c.rhs.real();
}

}  // namespace geoqm
