// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "geoqm/common.hpp"
#include "geoqm/hermitian.hpp"
#include "geoqm/kaehler.hpp"

namespace geoqm {

namespace detail {
inline void require_nonzero(const RealifiedState& psi, const char* what) {
  if (psi.norm() == 0.0) throw InvalidStart(std::string(what) + ": zero vector");
}

inline double trace_norm(const CMatrix& hermitian) {
  return spectral_oracle(HermitianOperator::hermitian_part(hermitian)).values.cwiseAbs().sum();
}
}  // namespace detail

/// A point of the projective space, stored as its unit representative with
/// the first non-negligible coordinate real and positive.
class Ray {
 public:
  explicit Ray(const RealifiedState& psi) {
    detail::require_nonzero(psi, "Ray");
    CVector z = psi.to_complex();
    z /= z.norm();
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      if (std::abs(z(k)) > 1e-12) {
        z *= std::conj(z(k)) / std::abs(z(k));
        z(k) = std::abs(z(k));
        break;
      }
    }
    rep_ = RealifiedState::from_complex(z);
  }

  const RealifiedState& representative() const { return rep_; }
  std::size_t dim() const { return rep_.dim(); }

 private:
  RealifiedState rep_;
};

/// A rank-one projector rho with rho^2 = rho and Tr rho = 1.
class PureDensity {
 public:
  explicit PureDensity(const HermitianOperator& rho) : rho_(rho) {
    const CMatrix& m = rho_.matrix();
    if (std::abs(rho_.trace() - 1.0) > 1e-12 * static_cast<double>(rho_.dim()) + 1e-12)
      throw DomainError("not an extremal state: trace != 1");
    if ((m * m - m).cwiseAbs().maxCoeff() > tol::kNumeric)
      throw DomainError("not an extremal state: rho^2 != rho");
  }

  const HermitianOperator& op() const { return rho_; }
  std::size_t dim() const { return rho_.dim(); }

 private:
  HermitianOperator rho_;
};

/// mu([psi]) = |psi><psi| / <psi, psi>.
inline PureDensity momentum_map(const RealifiedState& psi) {
  detail::require_nonzero(psi, "momentum_map");
  const CVector z = psi.to_complex();
  return PureDensity(HermitianOperator::hermitian_part(z * z.adjoint() / z.squaredNorm()));
}

inline PureDensity momentum_map(const Ray& ray) { return momentum_map(ray.representative()); }

/// e_A(psi) = <psi, A psi> / <psi, psi>.
inline double expectation(const HermitianOperator& a, const RealifiedState& psi) {
  require_same_dim(a.dim(), psi.dim());
  detail::require_nonzero(psi, "expectation");
  const CVector z = psi.to_complex();
  return z.dot(a.matrix() * z).real() / z.squaredNorm();
}

/// Pairing between u*(H) and the observables: <xi, A> = kPairingScale Tr(xi A).
/// In dual coordinates of a basis with Tr(e_mu e_nu) = 2 delta this is
/// 2 kPairingScale y(xi).a(A).
inline constexpr double kPairingScale = 0.5;

inline double dual_pairing(const DualVector& xi, const DualVector& a) {
  require_same_dim(xi.dim(), a.dim());
  return kPairingScale * 2.0 * xi.y().dot(a.y());
}

/// (mu^* A-hat)(psi): the pairing of |psi><psi| with A. Equals f_A(psi).
inline double momentum_pullback(const HermitianOperator& a, const RealifiedState& psi,
                                const OrthogonalBasis& basis) {
  require_same_dim(a.dim(), psi.dim());
  detail::require_nonzero(psi, "momentum_pullback");
  const HermitianOperator xi =
      (psi.norm() * psi.norm()) * momentum_map(psi).op();
  return dual_pairing(to_dual(xi, basis), to_dual(a, basis));
}

/// Ratio f_A(psi) / Tr(|psi><psi| A) on a fixed qubit sample.
inline double calibrate_pairing_scale() {
  CVector z(2);
  z << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const RealifiedState psi = RealifiedState::from_complex(z);
  const HermitianOperator a = gellmann_basis(2)[3];
  const CMatrix xi = z * z.adjoint();
  return quadratic_function(a, psi) / (xi * a.matrix()).trace().real();
}

/// theta(psi)(v) = <psi, v> / <psi, psi>.
inline Complex connection_form(const RealifiedState& psi, const TangentVector& v) {
  require_same_dim(psi.dim(), v.base.dim());
  detail::require_nonzero(psi, "connection_form");
  const CVector z = psi.to_complex();
  return z.dot(v.as_complex()) / z.squaredNorm();
}

/// <v, w>/<psi, psi> - <v, psi><psi, w>/<psi, psi>^2; vanishes on the
/// vertical directions psi and J psi.
inline Complex projected_hermitian(const RealifiedState& psi, const TangentVector& v,
                                   const TangentVector& w) {
  require_same_dim(psi.dim(), v.base.dim());
  require_same_dim(psi.dim(), w.base.dim());
  detail::require_nonzero(psi, "projected_hermitian");
  const CVector z = psi.to_complex();
  const CVector a = v.as_complex();
  const CVector b = w.as_complex();
  const double n2 = z.squaredNorm();
  return a.dot(b) / n2 - a.dot(z) * z.dot(b) / (n2 * n2);
}

/// p(rho1, rho2) = Tr(rho1 rho2) on extremal states.
inline double transition_probability(const PureDensity& r1, const PureDensity& r2) {
  require_same_dim(r1.dim(), r2.dim());
  return detail::trace_of_product(r1.op().matrix(), r2.op().matrix()).real();
}

inline double transition_probability(const HermitianOperator& r1, const HermitianOperator& r2) {
  return transition_probability(PureDensity(r1), PureDensity(r2));
}

inline bool same_state(const PureDensity& r1, const PureDensity& r2) {
  require_same_dim(r1.dim(), r2.dim());
  return detail::trace_norm(r1.op().matrix() - r2.op().matrix()) < tol::kSameState;
}

}  // namespace geoqm
