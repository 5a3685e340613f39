// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoqm/common.hpp"
#include "geoqm/dual_tensors.hpp"
#include "geoqm/hermitian.hpp"
#include "geoqm/projective.hpp"

namespace geoqm {

/// A certified density state: unit trace, spectrum >= -tol_psd, with its
/// rank stratum. Only certify_density() produces these.
struct DensityState {
  HermitianOperator op;
  std::size_t rank = 0;
  /// Descending.
  std::vector<double> spectrum;

  std::size_t dim() const { return op.dim(); }
};

struct Certification {
  bool accepted = false;
  std::optional<DensityState> state;
  /// Names of the violated conditions, most specific first.
  std::vector<std::string> violations;
  std::vector<double> spectrum;
  double trace = 0.0;
  /// Qutrit only: verdict of the explicit inequality list (diagonal entries,
  /// 2x2 principal minors, determinant).
  std::optional<bool> minor_criterion;

  bool criteria_agree() const { return !minor_criterion || *minor_criterion == accepted; }
};

namespace detail {

inline double rank_threshold(double largest, double tol_psd) {
  return std::max(tol_psd, tol::kRank * std::max(largest, 0.0));
}

inline std::vector<double> descending(const RVector& v) {
  return {v.data(), v.data() + v.size()};
}

/// First violated condition of the qutrit inequality list, empty if none.
/// Entries follow rho = [[a, conj(h), g], [h, b, conj(f)], [conj(g), f, c]].
inline std::string qutrit_minor_violation(const CMatrix& m, double eps) {
  const double a = m(0, 0).real(), b = m(1, 1).real(), c = m(2, 2).real();
  const Complex f = m(2, 1), g = m(0, 2), h = m(1, 0);
  if (a < -eps || b < -eps || c < -eps) return "diagonal";
  if (std::norm(f) > b * c + eps) return "|f|^2 <= bc";
  if (std::norm(g) > c * a + eps) return "|g|^2 <= ca";
  if (std::norm(h) > a * b + eps) return "|h|^2 <= ab";
  const double det = a * b * c + 2.0 * (f * g * h).real() -
                     (a * std::norm(f) + b * std::norm(g) + c * std::norm(h));
  if (det < -eps) return "det >= 0";
  return {};
}

}  // namespace detail

inline Certification certify_density(const HermitianOperator& a, double tol_psd = tol::kPsd) {
  Certification out;
  const Spectrum s = spectral_oracle(a);
  out.spectrum = detail::descending(s.values);
  out.trace = a.trace();

  if (a.dim() == 3) {
    const std::string v = detail::qutrit_minor_violation(a.matrix(), tol_psd);
    out.minor_criterion = v.empty() && std::abs(out.trace - 1.0) <= tol::kTrace;
    if (!v.empty()) out.violations.push_back(v);
  }
  if (std::abs(out.trace - 1.0) > tol::kTrace) out.violations.insert(out.violations.begin(), "trace");

  const double smallest = s.values(s.values.size() - 1);
  if (smallest < -tol_psd) {
    if (a.dim() == 2) out.violations.push_back("ball radius");
    out.violations.push_back("negative eigenvalue");
  }

  out.accepted = std::abs(out.trace - 1.0) <= tol::kTrace && smallest >= -tol_psd;
  if (out.accepted) {
    out.violations.clear();
    const double thr = detail::rank_threshold(s.values(0), tol_psd);
    std::size_t rank = 0;
    for (double v : out.spectrum)
      if (v > thr) ++rank;
    out.state = DensityState{a, rank, out.spectrum};
  }
  return out;
}

inline std::size_t stratum(const DensityState& rho) { return rho.rank; }

/// (K_+, K_-): counts of positive and negative eigenvalues, relative to the
/// largest magnitude.
inline std::pair<std::size_t, std::size_t> signature(const HermitianOperator& xi) {
  const Spectrum s = spectral_oracle(xi);
  const double scale = s.values.cwiseAbs().maxCoeff();
  const double thr = tol::kRank * (scale > 0.0 ? scale : 1.0);
  std::size_t pos = 0, neg = 0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    if (s.values(k) > thr) ++pos;
    if (s.values(k) < -thr) ++neg;
  }
  return {pos, neg};
}

namespace detail {
inline void require_invertible(const CMatrix& t, std::size_t n) {
  if (t.rows() != t.cols()) throw SingularTransform("transform must be square");
  require_same_dim(n, static_cast<std::size_t>(t.rows()));
  Eigen::JacobiSVD<CMatrix> svd(t);
  const RVector& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || sv(0) / smin >= 1e12)
    throw SingularTransform("transform is singular (condition number >= 1e12)");
}
}  // namespace detail

/// (T, xi) -> T xi T^dagger.
inline HermitianOperator gl_act_cone(const CMatrix& t, const HermitianOperator& xi) {
  detail::require_invertible(t, xi.dim());
  return HermitianOperator::hermitian_part(t * xi.matrix() * t.adjoint());
}

/// (T, rho) -> T rho T^dagger / Tr(T rho T^dagger).
inline DensityState gl_act_states(const CMatrix& t, const DensityState& rho) {
  detail::require_invertible(t, rho.dim());
  const CMatrix m = t * rho.op.matrix() * t.adjoint();
  const double tr = m.trace().real();
  if (tr < 1e-14) throw Error("gl_act_states: vanishing trace after transform");
  Certification c = certify_density(HermitianOperator::hermitian_part(m / tr));
  if (!c.accepted) throw Error("gl_act_states: transformed operator failed certification");
  return *c.state;
}

/// Face of D(H) through rho: the states supported on Im rho, equivalently
/// D(Im rho). Dimension k^2 - 1.
class FaceDescriptor {
 public:
  explicit FaceDescriptor(const DensityState& rho) : base_(rho) {
    const Spectrum s = spectral_oracle(rho.op);
    const auto k = static_cast<Eigen::Index>(rho.rank);
    image_ = s.vectors.leftCols(k);
    kernel_ = s.vectors.rightCols(s.vectors.cols() - k);
  }

  const DensityState& base() const { return base_; }
  /// Orthonormal columns spanning Im rho.
  const CMatrix& image_basis() const { return image_; }
  const CMatrix& kernel_basis() const { return kernel_; }
  std::size_t dimension() const { return base_.rank * base_.rank - 1; }

  /// Ker rho is contained in Ker A.
  bool contains(const HermitianOperator& a) const {
    require_same_dim(base_.dim(), a.dim());
    if (kernel_.cols() == 0) return true;
    const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
    return (a.matrix() * kernel_).cwiseAbs().maxCoeff() <= 1e-9 * scale;
  }

  /// The reverse inclusion, Ker A contained in Ker rho.
  bool kernel_within_base_kernel(const HermitianOperator& a) const {
    require_same_dim(base_.dim(), a.dim());
    const Spectrum s = spectral_oracle(a);
    const double thr = detail::rank_threshold(s.values.cwiseAbs().maxCoeff(), tol::kPsd);
    for (Eigen::Index j = 0; j < s.values.size(); ++j) {
      if (std::abs(s.values(j)) > thr) continue;
      const CVector v = s.vectors.col(j);
      if ((base_.op.matrix() * v).norm() > 1e-9) return false;
    }
    return true;
  }

  /// Projector onto Im rho.
  CMatrix image_projector() const { return image_ * image_.adjoint(); }

 private:
  DensityState base_;
  CMatrix image_;
  CMatrix kernel_;
};

inline FaceDescriptor face_of(const DensityState& rho) { return FaceDescriptor(rho); }

struct ConvexDecomposition {
  std::vector<double> weights;
  std::vector<PureDensity> components;

  CMatrix reconstruct() const {
    if (components.empty()) return {};
    const auto n = static_cast<Eigen::Index>(components.front().dim());
    CMatrix m = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < weights.size(); ++i) m += weights[i] * components[i].op().matrix();
    return m;
  }
};

/// Weights are the nonzero eigenvalues, components the eigenprojectors.
inline ConvexDecomposition convex_decompose_spectral(const DensityState& rho) {
  const Spectrum s = spectral_oracle(rho.op);
  ConvexDecomposition out;
  double total = 0.0;
  for (std::size_t k = 0; k < rho.rank; ++k) total += s.value(k);
  for (std::size_t k = 0; k < rho.rank; ++k) {
    const CVector v = s.vector(k);
    out.weights.push_back(s.value(k) / total);
    out.components.emplace_back(HermitianOperator::hermitian_part(v * v.adjoint()));
  }
  return out;
}

/// Qubit Bloch coordinates (y^1, y^2, y^3) of an operator.
inline std::array<double, 3> bloch_vector(const HermitianOperator& rho) {
  if (rho.dim() != 2) throw InvalidDimension("Bloch coordinates need n = 2");
  const DualVector y = to_dual(rho, gellmann_basis(2));
  return {y[1], y[2], y[3]};
}

inline HermitianOperator qubit_from_bloch(const std::array<double, 3>& v) {
  return from_dual(DualVector(2, std::vector<double>{0.5, v[0], v[1], v[2]}), gellmann_basis(2));
}

/// Decomposes a qubit state into the two pure states where the line through
/// it along `direction` meets the sphere |y| = 1/2.
inline ConvexDecomposition bloch_decompose_along(const DensityState& rho,
                                                 const std::array<double, 3>& direction) {
  if (rho.dim() != 2) throw InvalidDimension("bloch_decompose_along requires n = 2");
  Eigen::Vector3d d(direction[0], direction[1], direction[2]);
  if (d.norm() == 0.0) throw InvalidInput("decomposition direction must be nonzero");
  d.normalize();
  const std::array<double, 3> yb = bloch_vector(rho.op);
  const Eigen::Vector3d y(yb[0], yb[1], yb[2]);

  // |y + t d|^2 = 1/4
  const double half_b = y.dot(d);
  const double c = y.squaredNorm() - 0.25;
  const double disc = half_b * half_b - c;
  if (disc < -1e-12) throw DomainError("line through the state misses the Bloch sphere");

  auto pure_at = [](const Eigen::Vector3d& p) {
    // Exact projection onto the sphere guards roundoff in the endpoints.
    const Eigen::Vector3d q = 0.5 * p / p.norm();
    return PureDensity(qubit_from_bloch({q(0), q(1), q(2)}));
  };

  ConvexDecomposition out;
  const double root = std::sqrt(std::max(disc, 0.0));
  if (root < 1e-9) {
    out.weights = {1.0};
    out.components = {pure_at(y - half_b * d)};
    return out;
  }
  const double t1 = -half_b + root;
  const double t2 = -half_b - root;
  const double p = std::clamp(-t2 / (t1 - t2), 0.0, 1.0);
  out.weights = {p, 1.0 - p};
  out.components = {pure_at(y + t1 * d), pure_at(y + t2 * d)};
  return out;
}

namespace detail {
inline const StructureConstants& qutrit_structure() {
  static const StructureConstants sc = structure_constants(gellmann_basis(3));
  return sc;
}
}  // namespace detail

/// n^a = sqrt(3) y^a for a = 1..8, so rho = (I + sqrt(3) n.lambda)/3 when Tr rho = 1.
inline std::array<double, 8> qutrit_bloch_vector(const HermitianOperator& rho) {
  if (rho.dim() != 3) throw InvalidDimension("qutrit Bloch vector needs n = 3");
  const DualVector y = to_dual(rho, gellmann_basis(3));
  std::array<double, 8> n{};
  for (std::size_t a = 0; a < 8; ++a) n[a] = std::sqrt(3.0) * y[a + 1];
  return n;
}

/// (a * b)_l = sqrt(3) d_{ljk} a_j b_k over the traceless indices.
inline std::array<double, 8> qutrit_star(const std::array<double, 8>& a,
                                         const std::array<double, 8>& b) {
  const StructureConstants& sc = detail::qutrit_structure();
  std::array<double, 8> out{};
  for (std::size_t l = 0; l < 8; ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j < 8; ++j)
      for (std::size_t k = 0; k < 8; ++k) s += sc.D(l + 1, j + 1, k + 1) * a[j] * b[k];
    out[l] = std::sqrt(3.0) * s;
  }
  return out;
}

struct QutritPureResult {
  bool accepted = false;
  std::optional<PureDensity> state;
  std::string reason;
  double norm_defect = 0.0;
  double star_defect = 0.0;
};

inline QutritPureResult qutrit_pure_from_bloch(const std::array<double, 8>& n) {
  QutritPureResult out;
  double nn = 0.0;
  for (double v : n) nn += v * v;
  out.norm_defect = std::abs(std::sqrt(nn) - 1.0);
  const std::array<double, 8> sq = qutrit_star(n, n);
  for (std::size_t l = 0; l < 8; ++l) out.star_defect = std::max(out.star_defect, std::abs(sq[l] - n[l]));

  if (out.norm_defect > tol::kQutritPure) {
    out.reason = "norm: |n| != 1";
    return out;
  }
  if (out.star_defect > tol::kQutritPure) {
    out.reason = "star: n * n != n";
    return out;
  }
  const OrthogonalBasis& basis = detail::qutrit_structure().basis;
  CMatrix m = CMatrix::Identity(3, 3);
  for (std::size_t a = 0; a < 8; ++a) m += std::sqrt(3.0) * n[a] * basis[a + 1].matrix();
  m /= 3.0;
  // Snap to the nearest rank-one projector; the conditions hold only to tolerance.
  const Spectrum s = spectral_oracle(HermitianOperator::hermitian_part(m));
  const CVector v = s.vector(0);
  out.state.emplace(HermitianOperator::hermitian_part(v * v.adjoint()));
  out.accepted = true;
  return out;
}

/// Sorted spectrum: the point of the ordered simplex labelling the unitary orbit.
inline std::vector<double> weyl_reduce(const DensityState& rho) { return rho.spectrum; }

inline bool same_unitary_orbit(const DensityState& a, const DensityState& b, double eps = 1e-10) {
  if (a.dim() != b.dim()) return false;
  const auto ra = weyl_reduce(a), rb = weyl_reduce(b);
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (std::abs(ra[i] - rb[i]) > eps) return false;
  return true;
}

/// Dimension of the unitary orbit through rho: rank of Lambda at rho.
inline std::size_t orbit_dimension(const DensityState& rho) {
  return lambda_at(to_dual(rho.op, gellmann_basis(rho.dim()))).rank();
}

/// Orthonormal dual-coordinate basis of the trace-zero part of D_1 at rho,
/// the tangent space of the rank stratum through rho.
inline RMatrix stratum_tangent_space(const HermitianOperator& rho, const OrthogonalBasis& basis) {
  const RMatrix q = distributions_at(to_dual(rho, basis), basis).d1_cols;
  if (q.cols() == 0) return q;
  const RVector row0 = q.row(0).transpose();
  if (row0.norm() < 1e-14) return q;
  // Null space of row0 inside span(q).
  Eigen::JacobiSVD<RMatrix> svd(row0.transpose(), Eigen::ComputeFullV);
  return q * svd.matrixV().rightCols(q.cols() - 1);
}

struct CurveSample {
  double t;
  HermitianOperator op;
};

struct TangencyReport {
  /// (t, residual) at each interior sample.
  std::vector<std::pair<double, double>> rows;
  double max_residual = 0.0;
  bool tangent = true;
};

/// Central-difference velocity of a sampled curve of rank-k states, checked
/// against the tangent space of the rank-k stratum at each interior sample.
inline TangencyReport tangency_check(const std::vector<CurveSample>& curve, std::size_t k,
                                     double tol_tan = tol::kTangent) {
  if (curve.size() < 3) throw InvalidCurve("curve needs at least three samples");
  const double h = curve[1].t - curve[0].t;
  if (!(h > 0.0)) throw InvalidCurve("curve samples must be increasing in t");
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (std::abs((curve[i].t - curve[i - 1].t) - h) > 1e-6 * h)
      throw InvalidCurve("curve samples must be uniformly spaced");
  const std::size_t n = curve.front().op.dim();
  for (const auto& s : curve) {
    require_same_dim(n, s.op.dim());
    const Certification c = certify_density(s.op);
    if (!c.accepted) throw InvalidCurve("curve sample is not a density state");
    if (c.state->rank != k)
      throw InvalidCurve("curve sample at t=" + std::to_string(s.t) + " has rank " +
                         std::to_string(c.state->rank) + ", expected " + std::to_string(k));
  }

  const OrthogonalBasis basis = gellmann_basis(n);
  TangencyReport rep;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    const RVector v = (to_dual(curve[i + 1].op, basis).y() - to_dual(curve[i - 1].op, basis).y()) /
                      (2.0 * h);
    const RMatrix tangent = stratum_tangent_space(curve[i].op, basis);
    const double res = (v - tangent * (tangent.transpose() * v)).norm();
    rep.rows.emplace_back(curve[i].t, res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.tangent = rep.max_residual <= tol_tan;
  return rep;
}

}  // namespace geoqm
