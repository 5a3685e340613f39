// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "geoqm/common.hpp"

namespace geoqm {

/// A self-adjoint n x n complex matrix. Construction checks A = A^dagger to
/// tol::kHermitian relative to the largest entry and stores the exact
/// Hermitian part.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  explicit HermitianOperator(const CMatrix& m) {
    if (m.rows() != m.cols())
      throw NotHermitian("operator matrix is not square");
    if (m.rows() < 1) throw InvalidDimension("operator dimension must be >= 1");
    const double scale = m.cwiseAbs().maxCoeff();
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && defect > tol::kHermitian * scale)
      throw NotHermitian("matrix is not Hermitian (defect " +
                         std::to_string(defect) + ")");
    m_ = 0.5 * (m + m.adjoint());
  }

  /// Hermitian part of m without a defect check; for results that are
  /// Hermitian up to roundoff by construction.
  static HermitianOperator hermitian_part(const CMatrix& m) {
    HermitianOperator h;
    if (m.rows() != m.cols() || m.rows() < 1)
      throw InvalidDimension("operator matrix must be square and non-empty");
    h.m_ = 0.5 * (m + m.adjoint());
    return h;
  }

  static HermitianOperator identity(std::size_t n) {
    if (n < 1) throw InvalidDimension("operator dimension must be >= 1");
    return HermitianOperator(CMatrix::Identity(n, n));
  }

  static HermitianOperator diagonal(const std::vector<double>& d) {
    RVector v = Eigen::Map<const RVector>(d.data(), static_cast<Eigen::Index>(d.size()));
    return HermitianOperator(v.cast<Complex>().asDiagonal().toDenseMatrix());
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a.dim(), b.dim());
    return hermitian_part(a.m_ + b.m_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a.dim(), b.dim());
    return hermitian_part(a.m_ - b.m_);
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) {
    return hermitian_part(s * a.m_);
  }
  friend HermitianOperator operator*(const HermitianOperator& a, double s) { return s * a; }

 private:
  CMatrix m_;
};

/// Hermitian basis of u*(H) with Tr(e_mu e_nu) = 2 delta_{mu nu}; element 0
/// is sqrt(2/n) times the identity.
class OrthogonalBasis {
 public:
  OrthogonalBasis(std::size_t n, std::vector<HermitianOperator> elements)
      : n_(n), elements_(std::move(elements)) {
    if (elements_.size() != n_ * n_)
      throw BasisInvariantViolation("basis must have n^2 elements");
    for (const auto& e : elements_) require_same_dim(n_, e.dim());
  }

  std::size_t dim() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const HermitianOperator& operator[](std::size_t mu) const { return elements_[mu]; }
  const std::vector<HermitianOperator>& elements() const { return elements_; }

 private:
  std::size_t n_ = 0;
  std::vector<HermitianOperator> elements_;
};

/// Qubit: the sigma set with sigma_1 = [[0,i],[-i,0]] and sigma_2 = [[0,1],[1,0]]
/// (so that sigma_1 sigma_2 = i sigma_3). Qutrit: the eight Gell-Mann
/// matrices in their usual order. n >= 4: symmetric off-diagonal pairs,
/// antisymmetric pairs, then diagonal elements.
inline OrthogonalBasis gellmann_basis(std::size_t n) {
  if (n < 2) throw InvalidDimension("gellmann_basis requires n >= 2");
  const auto N = static_cast<Eigen::Index>(n);
  std::vector<HermitianOperator> out;
  out.reserve(n * n);
  out.push_back(HermitianOperator(std::sqrt(2.0 / static_cast<double>(n)) *
                                  CMatrix::Identity(N, N)));

  auto sym = [N](Eigen::Index j, Eigen::Index k) {
    CMatrix m = CMatrix::Zero(N, N);
    m(j, k) = 1.0;
    m(k, j) = 1.0;
    return HermitianOperator(m);
  };
  auto asym = [N](Eigen::Index j, Eigen::Index k) {
    CMatrix m = CMatrix::Zero(N, N);
    m(j, k) = -kI;
    m(k, j) = kI;
    return HermitianOperator(m);
  };
  auto diag = [N](Eigen::Index l) {  // l = 1..N-1
    CMatrix m = CMatrix::Zero(N, N);
    const double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Eigen::Index i = 0; i < l; ++i) m(i, i) = c;
    m(l, l) = -c * static_cast<double>(l);
    return HermitianOperator(m);
  };

  if (n == 2) {
    CMatrix s1(2, 2);
    s1 << 0.0, kI, -kI, 0.0;
    out.push_back(HermitianOperator(s1));
    out.push_back(sym(0, 1));
    out.push_back(diag(1));
  } else if (n == 3) {
    out.push_back(sym(0, 1));
    out.push_back(asym(0, 1));
    out.push_back(diag(1));
    out.push_back(sym(0, 2));
    out.push_back(asym(0, 2));
    out.push_back(sym(1, 2));
    out.push_back(asym(1, 2));
    out.push_back(diag(2));
  } else {
    for (Eigen::Index j = 0; j < N; ++j)
      for (Eigen::Index k = j + 1; k < N; ++k) out.push_back(sym(j, k));
    for (Eigen::Index j = 0; j < N; ++j)
      for (Eigen::Index k = j + 1; k < N; ++k) out.push_back(asym(j, k));
    for (Eigen::Index l = 1; l < N; ++l) out.push_back(diag(l));
  }
  return OrthogonalBasis(n, std::move(out));
}

namespace detail {
// Tr(a b) without forming the product.
inline Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}
}  // namespace detail

/// Dense rank-3 array indexed by (mu, nu, rho), each in [0, n^2).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t extent)
      : extent_(extent), data_(extent * extent * extent, 0.0) {}

  double& operator()(std::size_t mu, std::size_t nu, std::size_t rho) {
    return data_[(mu * extent_ + nu) * extent_ + rho];
  }
  double operator()(std::size_t mu, std::size_t nu, std::size_t rho) const {
    return data_[(mu * extent_ + nu) * extent_ + rho];
  }
  std::size_t extent() const { return extent_; }

 private:
  std::size_t extent_ = 0;
  std::vector<double> data_;
};

/// Antisymmetric (C) and symmetric (d) structure constants of a basis:
///   e_mu e_nu = i C_{mu nu rho} e_rho + sqrt(2/n) e_0 delta_{mu nu}
///             + d_{mu nu rho} e_rho.
struct StructureConstants {
  std::size_t dim = 0;
  Tensor3 c;
  Tensor3 d;
  OrthogonalBasis basis;

  double C(std::size_t mu, std::size_t nu, std::size_t rho) const { return c(mu, nu, rho); }
  double D(std::size_t mu, std::size_t nu, std::size_t rho) const { return d(mu, nu, rho); }
};

inline void check_orthogonality(const OrthogonalBasis& basis, double eps = tol::kNumeric) {
  const std::size_t m = basis.size();
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = mu; nu < m; ++nu) {
      const Complex t = detail::trace_of_product(basis[mu].matrix(), basis[nu].matrix());
      const double want = mu == nu ? 2.0 : 0.0;
      if (std::abs(t - want) > eps)
        throw BasisInvariantViolation("basis is not orthogonal: Tr(e_" + std::to_string(mu) +
                                      " e_" + std::to_string(nu) + ") != 2 delta");
    }
  const auto n = static_cast<Eigen::Index>(basis.dim());
  const CMatrix expected0 = std::sqrt(2.0 / static_cast<double>(n)) * CMatrix::Identity(n, n);
  if ((basis[0].matrix() - expected0).cwiseAbs().maxCoeff() > eps)
    throw BasisInvariantViolation("basis element 0 must be sqrt(2/n) * identity");
}

inline StructureConstants structure_constants(const OrthogonalBasis& basis) {
  check_orthogonality(basis);
  const std::size_t m = basis.size();
  const double id_coeff = std::sqrt(2.0 / static_cast<double>(basis.dim()));
  StructureConstants sc{basis.dim(), Tensor3(m), Tensor3(m), basis};
  for (std::size_t mu = 0; mu < m; ++mu) {
    for (std::size_t nu = 0; nu < m; ++nu) {
      const CMatrix prod = basis[mu].matrix() * basis[nu].matrix();
      const CMatrix rev = basis[nu].matrix() * basis[mu].matrix();
      const CMatrix comm = prod - rev;
      const CMatrix anti = prod + rev;
      for (std::size_t rho = 0; rho < m; ++rho) {
        const CMatrix& e = basis[rho].matrix();
        sc.c(mu, nu, rho) = (detail::trace_of_product(comm, e) / (4.0 * kI)).real();
        double dv = detail::trace_of_product(anti, e).real() / 4.0;
        if (mu == nu && rho == 0) dv -= id_coeff;
        sc.d(mu, nu, rho) = dv;
      }
    }
  }
  return sc;
}

/// Coordinates y^mu = (1/2) Tr(e_mu A) of a point of u*(H).
class DualVector {
 public:
  DualVector() = default;
  DualVector(std::size_t n, RVector y) : n_(n), y_(std::move(y)) {
    if (n_ < 1) throw InvalidDimension("dual vector dimension must be >= 1");
    if (static_cast<std::size_t>(y_.size()) != n_ * n_)
      throw DimensionMismatch(n_ * n_, static_cast<std::size_t>(y_.size()));
  }
  DualVector(std::size_t n, const std::vector<double>& y)
      : DualVector(n, RVector(Eigen::Map<const RVector>(y.data(), static_cast<Eigen::Index>(y.size())))) {}

  std::size_t dim() const { return n_; }
  const RVector& y() const { return y_; }
  double operator[](std::size_t mu) const { return y_(static_cast<Eigen::Index>(mu)); }

 private:
  std::size_t n_ = 0;
  RVector y_;
};

inline DualVector to_dual(const HermitianOperator& a, const OrthogonalBasis& basis) {
  require_same_dim(basis.dim(), a.dim());
  RVector y(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t mu = 0; mu < basis.size(); ++mu)
    y(static_cast<Eigen::Index>(mu)) =
        0.5 * detail::trace_of_product(basis[mu].matrix(), a.matrix()).real();
  return DualVector(basis.dim(), std::move(y));
}

inline HermitianOperator from_dual(const DualVector& y, const OrthogonalBasis& basis) {
  require_same_dim(basis.dim(), y.dim());
  const auto n = static_cast<Eigen::Index>(basis.dim());
  CMatrix a = CMatrix::Zero(n, n);
  for (std::size_t mu = 0; mu < basis.size(); ++mu) a += y[mu] * basis[mu].matrix();
  return HermitianOperator::hermitian_part(a);
}

/// Eigenpairs with eigenvalues in descending order; column k of `vectors`
/// belongs to values(k). Inside a degenerate eigenspace the basis is arbitrary.
struct Spectrum {
  RVector values;
  CMatrix vectors;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  double value(std::size_t k) const { return values(static_cast<Eigen::Index>(k)); }
  CVector vector(std::size_t k) const { return vectors.col(static_cast<Eigen::Index>(k)); }
};

inline Spectrum spectral_oracle(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const Eigen::Index n = es.eigenvalues().size();
  Spectrum s{RVector(n), CMatrix(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = es.eigenvalues()(n - 1 - k);
    s.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return s;
}

inline Spectrum spectral_oracle(const CMatrix& a) { return spectral_oracle(HermitianOperator(a)); }

/// exp(-i t H) built from the spectral decomposition of H.
inline CMatrix unitary_exp(const HermitianOperator& h, double t = 1.0) {
  const Spectrum s = spectral_oracle(h);
  CVector phases(static_cast<Eigen::Index>(s.size()));
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(-kI * t * s.values(k));
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

/// Operator 2-norm via singular values.
inline double operator_norm(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

/// Published su(3) constants for the qutrit Gell-Mann basis. C entries are
/// listed once (extend by total antisymmetry); the d list carries its own
/// permutations, including the identity-index entries as published.
struct TabulatedEntry {
  std::size_t mu, nu, rho;
  double value;
};

inline std::vector<TabulatedEntry> tabulated_qutrit_c() {
  const double h = 0.5;
  const double r3 = std::sqrt(3.0) / 2.0;
  return {{1, 2, 3, 1.0}, {4, 5, 8, r3}, {6, 7, 8, r3},  {1, 4, 7, h},
          {1, 5, 6, -h},  {2, 4, 6, h},  {2, 5, 7, h},   {3, 4, 5, h},
          {3, 6, 7, -h}};
}

inline std::vector<TabulatedEntry> tabulated_qutrit_d() {
  std::vector<TabulatedEntry> t;
  const double s23 = std::sqrt(2.0 / 3.0);
  const double i3 = 1.0 / std::sqrt(3.0);
  for (std::size_t j = 1; j <= 8; ++j) {
    t.push_back({j, j, 0, s23});
    t.push_back({0, j, j, -s23});
    t.push_back({j, 0, j, -s23});
  }
  t.push_back({8, 8, 8, -i3});
  for (std::size_t j = 1; j <= 3; ++j) {
    t.push_back({8, j, j, i3});
    t.push_back({j, j, 8, i3});
    t.push_back({j, 8, j, i3});
  }
  for (std::size_t j = 4; j <= 7; ++j) {
    t.push_back({8, j, j, -i3 / 2.0});
    t.push_back({j, j, 8, -i3 / 2.0});
    t.push_back({j, 8, j, -i3 / 2.0});
  }
  for (std::size_t j = 4; j <= 7; ++j) {
    const double v = j <= 5 ? 0.5 : -0.5;
    t.push_back({3, j, j, v});
    t.push_back({j, j, 3, v});
    t.push_back({j, 3, j, v});
  }
  const std::vector<TabulatedEntry> mixed = {
      {1, 4, 6, 0.5},  {1, 5, 7, 0.5}, {1, 6, 4, 0.5},  {1, 7, 5, 0.5},
      {2, 4, 7, -0.5}, {2, 5, 6, 0.5}, {2, 6, 5, 0.5},  {2, 7, 4, -0.5},
      {4, 1, 6, 0.5},  {4, 2, 7, -0.5}, {4, 6, 1, 0.5}, {4, 7, 2, -0.5},
      {5, 1, 7, 0.5},  {5, 2, 6, 0.5}, {5, 6, 2, 0.5},  {5, 7, 1, 0.5},
      {6, 1, 4, 0.5},  {6, 2, 5, 0.5}, {6, 4, 1, 0.5},  {6, 5, 2, 0.5},
      {7, 1, 5, 0.5},  {7, 2, 4, -0.5}, {7, 5, 1, 0.5}, {7, 4, 2, -0.5}};
  t.insert(t.end(), mixed.begin(), mixed.end());
  return t;
}

/// Expected C value at (mu, nu, rho) according to the tabulated list,
/// extended by total antisymmetry.
inline double tabulated_qutrit_c_at(std::size_t mu, std::size_t nu, std::size_t rho) {
  for (const auto& e : tabulated_qutrit_c()) {
    const std::size_t a[3] = {e.mu, e.nu, e.rho};
    std::size_t p[3] = {0, 1, 2};
    do {
      if (a[p[0]] == mu && a[p[1]] == nu && a[p[2]] == rho) {
        // parity of the permutation p
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j)
            if (p[i] > p[j]) ++inversions;
        return inversions % 2 == 0 ? e.value : -e.value;
      }
    } while (std::next_permutation(p, p + 3));
  }
  return 0.0;
}

/// Expected d value at (mu, nu, rho) according to the tabulated list
/// (entries are listed with their permutations; unlisted means zero).
inline double tabulated_qutrit_d_at(std::size_t mu, std::size_t nu, std::size_t rho) {
  for (const auto& e : tabulated_qutrit_d())
    if (e.mu == mu && e.nu == nu && e.rho == rho) return e.value;
  return 0.0;
}

}  // namespace geoqm
