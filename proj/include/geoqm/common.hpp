// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace geoqm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances shared across modules.
namespace tol {
/// Hermiticity check, relative to the largest entry magnitude.
inline constexpr double kHermitian = 1e-10;
inline constexpr double kNumeric = 1e-10;
/// Relative singular-value cutoff for numerical rank.
inline constexpr double kRank = 1e-9;
/// Absolute eigenvalue floor for positivity, on unit-trace operators.
inline constexpr double kPsd = 1e-10;
inline constexpr double kTrace = 1e-10;
/// Trace-norm distance below which two pure states are the same ray.
inline constexpr double kSameState = 1e-8;
inline constexpr double kQutritPure = 1e-8;
inline constexpr double kTangent = 1e-6;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class BasisInvariantViolation : public Error {
 public:
  using Error::Error;
};

class InvalidStart : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularTransform : public Error {
 public:
  using Error::Error;
};

class InvalidCurve : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(expected, got);
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return a * b - b * a;
}

inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  return a * b + b * a;
}

/// Number of singular values above tol::kRank times the largest one (or
/// times 1 when every singular value is negligible).
inline std::size_t numerical_rank(const RMatrix& m, double rel_tol = tol::kRank) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  const RVector& s = svd.singularValues();
  const double largest = s.size() > 0 ? s(0) : 0.0;
  const double scale = largest > 1e-12 ? largest : 1.0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * scale) ++r;
  return r;
}

/// Orthonormal basis (columns) of the column space of m.
inline RMatrix column_space(const RMatrix& m, double rel_tol = tol::kRank) {
  if (m.cols() == 0) return RMatrix(m.rows(), 0);
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double largest = s.size() > 0 ? s(0) : 0.0;
  const double scale = largest > 1e-12 ? largest : 1.0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * scale) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace geoqm
