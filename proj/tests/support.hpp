// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

// Random generators shared by the unit and acceptance suites. All draws go
// through a seeded engine so every run sees the same samples.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geoqm/geoqm.hpp"

namespace geoqm::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double normal() { return normal_(eng_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  Complex cnormal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_;
};

inline CMatrix random_complex(std::size_t n, Rng& rng) {
  const auto N = static_cast<Eigen::Index>(n);
  CMatrix m(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j) m(i, j) = rng.cnormal();
  return m;
}

inline HermitianOperator random_hermitian(std::size_t n, Rng& rng) {
  const CMatrix m = random_complex(n, rng);
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

inline CVector random_cvector(std::size_t n, Rng& rng) {
  CVector z(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.cnormal();
  return z;
}

inline RealifiedState random_state(std::size_t n, Rng& rng) {
  return RealifiedState::from_complex(random_cvector(n, rng));
}

inline RealifiedState random_unit_state(std::size_t n, Rng& rng) {
  const CVector z = random_cvector(n, rng);
  return RealifiedState::from_complex(z / z.norm());
}

inline CMatrix random_unitary(std::size_t n, Rng& rng) {
  return unitary_exp(random_hermitian(n, rng), 1.0);
}

/// Random state of the given rank: U diag(w) U^dagger with weights drawn in
/// [0.1, 1] and normalized.
inline HermitianOperator random_density(std::size_t n, std::size_t rank, Rng& rng) {
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rank; ++i) total += (w[i] = rng.uniform(0.1, 1.0));
  for (double& v : w) v /= total;
  const CMatrix u = random_unitary(n, rng);
  const CMatrix d = HermitianOperator::diagonal(w).matrix();
  return HermitianOperator::hermitian_part(u * d * u.adjoint());
}

/// Random GL(n, C) element with condition number below max_cond.
inline CMatrix random_invertible(std::size_t n, Rng& rng, double max_cond = 50.0) {
  for (;;) {
    const CMatrix t = random_complex(n, rng);
    Eigen::JacobiSVD<CMatrix> svd(t);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) < max_cond) return t;
  }
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace geoqm::testing
