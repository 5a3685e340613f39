// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "geoqm/common.hpp"
#include "geoqm/hermitian.hpp"

namespace geoqm {

/// A vector of H in real coordinates <e_k, psi> = q_k + i p_k.
class RealifiedState {
 public:
  RealifiedState() = default;
  RealifiedState(RVector q, RVector p) : q_(std::move(q)), p_(std::move(p)) {
    if (q_.size() != p_.size())
      throw DimensionMismatch(static_cast<std::size_t>(q_.size()),
                              static_cast<std::size_t>(p_.size()));
    if (q_.size() < 1) throw InvalidDimension("state dimension must be >= 1");
  }

  static RealifiedState from_complex(const CVector& z) { return {z.real(), z.imag()}; }

  /// From stacked coordinates (q_1..q_n, p_1..p_n).
  static RealifiedState from_coords(const RVector& x) {
    if (x.size() % 2 != 0 || x.size() == 0)
      throw InvalidDimension("coordinate vector must have even, positive length");
    const Eigen::Index n = x.size() / 2;
    return {x.head(n), x.tail(n)};
  }

  std::size_t dim() const { return static_cast<std::size_t>(q_.size()); }
  const RVector& q() const { return q_; }
  const RVector& p() const { return p_; }

  CVector to_complex() const {
    CVector z(q_.size());
    for (Eigen::Index k = 0; k < q_.size(); ++k) z(k) = Complex(q_(k), p_(k));
    return z;
  }

  RVector coords() const {
    RVector x(2 * q_.size());
    x << q_, p_;
    return x;
  }

  double norm() const { return std::sqrt(q_.squaredNorm() + p_.squaredNorm()); }

 private:
  RVector q_;
  RVector p_;
};

/// Tangent vector at `base`, components ordered (d/dq_1..d/dq_n, d/dp_1..d/dp_n).
struct TangentVector {
  RealifiedState base;
  RVector components;

  CVector as_complex() const {
    return RealifiedState::from_coords(components).to_complex();
  }
};

/// Constant-coefficient Kaehler tensors on H_R in (q, p) coordinates.
/// J is multiplication by i, g = dq.dq + dp.dp, omega = dq ^ dp, and
/// <X, Y> = g(X, Y) + i omega(X, Y), so g(X, Y) = omega(X, J Y).
struct KaehlerTriple {
  std::size_t dim = 0;
  RMatrix J;
  RMatrix g;
  RMatrix omega;
  /// Contravariant forms, evaluated on covectors.
  RMatrix G;
  RMatrix Omega;

  static KaehlerTriple make(std::size_t n) {
    if (n < 1) throw InvalidDimension("Kaehler triple dimension must be >= 1");
    const auto N = static_cast<Eigen::Index>(n);
    const RMatrix id = RMatrix::Identity(N, N);
    KaehlerTriple k;
    k.dim = n;
    k.J = RMatrix::Zero(2 * N, 2 * N);
    k.J.block(N, 0, N, N) = id;    // dq -> d/dp
    k.J.block(0, N, N, N) = -id;   // dp -> -d/dq
    k.g = RMatrix::Identity(2 * N, 2 * N);
    k.omega = RMatrix::Zero(2 * N, 2 * N);
    k.omega.block(0, N, N, N) = id;
    k.omega.block(N, 0, N, N) = -id;
    k.G = k.g.inverse();
    k.Omega = k.omega;
    return k;
  }

  double metric(const RVector& x, const RVector& y) const { return x.dot(g * y); }
  double symplectic(const RVector& x, const RVector& y) const { return x.dot(omega * y); }
};

/// Real 2n x 2n matrix of the complex-linear map A acting on (q, p).
inline RMatrix realify(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  RMatrix m(2 * n, 2 * n);
  m.block(0, 0, n, n) = a.real();
  m.block(0, n, n, n) = -a.imag();
  m.block(n, 0, n, n) = a.imag();
  m.block(n, n, n, n) = a.real();
  return m;
}

/// (g(psi1, psi2), omega(psi1, psi2)) with g + i omega = <psi1, psi2>.
inline std::pair<double, double> hermitian_split(const RealifiedState& psi1,
                                                 const RealifiedState& psi2) {
  require_same_dim(psi1.dim(), psi2.dim());
  const KaehlerTriple k = KaehlerTriple::make(psi1.dim());
  const RVector x = psi1.coords();
  const RVector y = psi2.coords();
  return {k.metric(x, y), k.symplectic(x, y)};
}

/// f_A(psi) = (1/2) <psi, A psi>.
inline double quadratic_function(const HermitianOperator& a, const RealifiedState& psi) {
  require_same_dim(a.dim(), psi.dim());
  const CVector z = psi.to_complex();
  return 0.5 * z.dot(a.matrix() * z).real();
}

/// Same expectation for a general (not necessarily Hermitian) operator;
/// complex valued.
inline Complex quadratic_function_complex(const CMatrix& a, const RealifiedState& psi) {
  require_same_dim(static_cast<std::size_t>(a.rows()), psi.dim());
  const CVector z = psi.to_complex();
  return 0.5 * z.dot(a * z);
}

/// Coordinate differential (df_A/dq, df_A/dp) at psi.
inline RVector coordinate_gradient(const HermitianOperator& a, const RealifiedState& psi) {
  require_same_dim(a.dim(), psi.dim());
  // f_A = (1/2) x^T M x with M = realify(A) symmetric.
  return realify(a.matrix()) * psi.coords();
}

/// G(df_A, df_B) at psi.
inline double bracket_g(const HermitianOperator& a, const HermitianOperator& b,
                        const RealifiedState& psi) {
  require_same_dim(a.dim(), b.dim());
  const KaehlerTriple k = KaehlerTriple::make(psi.dim());
  return coordinate_gradient(a, psi).dot(k.G * coordinate_gradient(b, psi));
}

/// Omega(df_A, df_B) at psi.
inline double bracket_omega(const HermitianOperator& a, const HermitianOperator& b,
                            const RealifiedState& psi) {
  require_same_dim(a.dim(), b.dim());
  const KaehlerTriple k = KaehlerTriple::make(psi.dim());
  return coordinate_gradient(a, psi).dot(k.Omega * coordinate_gradient(b, psi));
}

/// {f_A, f_B}_g + i {f_A, f_B}_omega, which equals <psi, A B psi> = 2 f_{AB}.
inline Complex star_product(const HermitianOperator& a, const HermitianOperator& b,
                            const RealifiedState& psi) {
  return {bracket_g(a, b, psi), bracket_omega(a, b, psi)};
}

inline TangentVector gradient_vf(const HermitianOperator& a, const RealifiedState& psi) {
  return {psi, coordinate_gradient(a, psi)};
}

inline TangentVector hamiltonian_vf(const HermitianOperator& a, const RealifiedState& psi) {
  const KaehlerTriple k = KaehlerTriple::make(psi.dim());
  return {psi, k.J * coordinate_gradient(a, psi)};
}

/// Classical fourth-order Runge-Kutta step for dx/dt = field(x).
template <typename Field>
RVector rk4_step(const Field& field, const RVector& x, double h) {
  const RVector k1 = field(x);
  const RVector k2 = field(x + 0.5 * h * k1);
  const RVector k3 = field(x + 0.5 * h * k2);
  const RVector k4 = field(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates dx/dt = field(x) from t = 0 to t_end with a fixed step.
/// observer(t, x) is called at t = 0 and after every step.
template <typename Field, typename Observer>
RVector integrate_flow(const Field& field, RVector x, double t_end, double step,
                       Observer&& observer) {
  if (!(step > 0.0)) throw InvalidInput("flow step must be positive");
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
  observer(0.0, x);
  for (std::size_t i = 1; i <= steps; ++i) {
    x = rk4_step(field, x, h);
    observer(h * static_cast<double>(i), x);
  }
  return x;
}

template <typename Field>
RVector integrate_flow(const Field& field, RVector x, double t_end, double step = 1e-3) {
  return integrate_flow(field, std::move(x), t_end, step, [](double, const RVector&) {});
}

/// Flow of the Hamiltonian vector field of f_A.
inline RealifiedState hamiltonian_flow(const HermitianOperator& a, const RealifiedState& psi0,
                                       double t_end, double step = 1e-3) {
  require_same_dim(a.dim(), psi0.dim());
  const RMatrix gen = KaehlerTriple::make(a.dim()).J * realify(a.matrix());
  auto field = [&gen](const RVector& x) -> RVector { return gen * x; };
  return RealifiedState::from_coords(integrate_flow(field, psi0.coords(), t_end, step));
}

enum class SearchMode { kAscent, kDescent };

struct EigensolveOptions {
  SearchMode mode = SearchMode::kAscent;
  /// Zero selects 0.1 / ||A||_2.
  double step = 0.0;
  std::size_t max_iter = 100000;
  /// Convergence when ||A psi - e_A psi|| <= tol_scale * ||A||_2.
  double tol_scale = 1e-9;
  bool record_trace = false;
};

struct EigensolveTraceRow {
  std::size_t iter;
  double expectation;
  double residual;
};

struct EigensolveResult {
  double eigenvalue = 0.0;
  RealifiedState state;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<EigensolveTraceRow> trace;
};

/// Locates a critical point of e_A(psi) = <psi, A psi>/<psi, psi> on the unit
/// sphere by fixed-step projected gradient ascent or descent.
inline EigensolveResult critical_point_eigensolve(const HermitianOperator& a,
                                                  const RealifiedState& psi0,
                                                  const EigensolveOptions& opts = {}) {
  require_same_dim(a.dim(), psi0.dim());
  if (psi0.norm() == 0.0) throw InvalidStart("eigensolver start vector is zero");
  if (opts.step < 0.0) throw InvalidInput("eigensolver step must be positive");

  const double a_norm = operator_norm(a.matrix());
  const double step = opts.step > 0.0 ? opts.step : (a_norm > 0.0 ? 0.1 / a_norm : 1.0);
  const double tol_crit = opts.tol_scale * a_norm;
  const double sign = opts.mode == SearchMode::kAscent ? 1.0 : -1.0;

  CVector z = psi0.to_complex();
  z.normalize();
  EigensolveResult result;
  for (std::size_t it = 0;; ++it) {
    const CVector az = a.matrix() * z;
    const double e = z.dot(az).real();
    const CVector r = az - e * z;
    const double res = r.norm();
    if (opts.record_trace) result.trace.push_back({it, e, res});
    result.eigenvalue = e;
    result.iterations = it;
    if (res <= tol_crit) {
      result.converged = true;
      break;
    }
    if (it >= opts.max_iter) break;
    z += sign * step * r;
    z.normalize();
  }
  result.state = RealifiedState::from_complex(z);
  return result;
}

}  // namespace geoqm
