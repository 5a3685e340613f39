// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geoqm/common.hpp"
#include "geoqm/density.hpp"
#include "geoqm/dual_tensors.hpp"
#include "geoqm/hermitian.hpp"
#include "geoqm/kaehler.hpp"
#include "geoqm/projective.hpp"

namespace geoqm::io {

using nlohmann::json;

class ParseError : public Error {
 public:
  using Error::Error;
};

/// 12 significant digits; integral values keep a trailing ".0".
inline std::string csv_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace detail {
inline std::size_t get_dim(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("missing integer field \"dim\"");
  const auto d = j["dim"].get<long long>();
  if (d < 1) throw ParseError("\"dim\" must be positive");
  return static_cast<std::size_t>(d);
}

inline std::vector<double> get_vector(const json& j, const char* key, std::size_t len) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("missing array field \"") + key + "\"");
  std::vector<double> v;
  try {
    v = j[key].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
  if (v.size() != len)
    throw ParseError(std::string("field \"") + key + "\" has length " + std::to_string(v.size()) +
                     ", expected " + std::to_string(len));
  return v;
}

inline RMatrix get_matrix(const json& j, const char* key, std::size_t rows, std::size_t cols) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != rows)
    throw ParseError(std::string("field \"") + key + "\" must be a " + std::to_string(rows) +
                     "-row array");
  RMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[key][i];
    if (!row.is_array() || row.size() != cols)
      throw ParseError(std::string("field \"") + key + "\" row " + std::to_string(i) +
                       " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!row[k].is_number()) throw ParseError(std::string("non-numeric entry in \"") + key + "\"");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
    }
  }
  return m;
}

inline json matrix_rows(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_array(const RVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}
}  // namespace detail

// HermitianOperator: {"dim": n, "re": [[..]], "im": [[..]]}

inline json to_json(const HermitianOperator& a) {
  return {{"dim", a.dim()},
          {"re", detail::matrix_rows(a.matrix().real())},
          {"im", detail::matrix_rows(a.matrix().imag())}};
}

inline HermitianOperator hermitian_from_json(const json& j) {
  const std::size_t n = detail::get_dim(j);
  const RMatrix re = detail::get_matrix(j, "re", n, n);
  const RMatrix im = j.contains("im") ? detail::get_matrix(j, "im", n, n) : RMatrix::Zero(re.rows(), re.cols());
  CMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  try {
    return HermitianOperator(m);
  } catch (const NotHermitian& e) {
    throw ParseError(e.what());
  }
}

/// Operator as flat row-major arrays: {"re": [..], "im": [..]}.
inline json to_json_flat(const HermitianOperator& a) {
  const Eigen::Index n = a.matrix().rows();
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      re.push_back(a(i, k).real());
      im.push_back(a(i, k).imag());
    }
  return {{"re", re}, {"im", im}};
}

inline HermitianOperator hermitian_from_json_flat(const json& j, std::size_t n) {
  const auto re = detail::get_vector(j, "re", n * n);
  const auto im = detail::get_vector(j, "im", n * n);
  CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {re[i * n + k], im[i * n + k]};
  return HermitianOperator(m);
}

// DualVector: {"dim": n, "y": [..]}

inline json to_json(const DualVector& y) {
  return {{"dim", y.dim()}, {"y", detail::vector_array(y.y())}};
}

inline DualVector dual_from_json(const json& j) {
  const std::size_t n = detail::get_dim(j);
  return DualVector(n, detail::get_vector(j, "y", n * n));
}

// RealifiedState: {"dim": n, "q": [..], "p": [..]}

inline json to_json(const RealifiedState& s) {
  return {{"dim", s.dim()}, {"q", detail::vector_array(s.q())}, {"p", detail::vector_array(s.p())}};
}

inline RealifiedState state_from_json(const json& j) {
  const std::size_t n = detail::get_dim(j);
  const auto q = detail::get_vector(j, "q", n);
  const auto p = detail::get_vector(j, "p", n);
  return {Eigen::Map<const RVector>(q.data(), static_cast<Eigen::Index>(n)),
          Eigen::Map<const RVector>(p.data(), static_cast<Eigen::Index>(n))};
}

inline json to_json(const Ray& r) { return to_json(r.representative()); }

inline Ray ray_from_json(const json& j) { return Ray(state_from_json(j)); }

inline json to_json(const PureDensity& p) { return to_json(p.op()); }

inline PureDensity pure_from_json(const json& j) {
  try {
    return PureDensity(hermitian_from_json(j));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

// TensorAtPoint: {"y": [..], "kind": "lambda"|"R", "matrix": [[..]], "rank": r}

inline json to_json(const TensorAtPoint& t) {
  return {{"y", detail::vector_array(t.point.y())},
          {"kind", to_string(t.kind)},
          {"matrix", detail::matrix_rows(t.matrix)},
          {"rank", t.rank()}};
}

inline TensorAtPoint tensor_from_json(const json& j) {
  if (!j.contains("y") || !j["y"].is_array()) throw ParseError("missing array field \"y\"");
  const std::size_t m = j["y"].size();
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(m))));
  if (n < 1 || n * n != m) throw ParseError("\"y\" length must be a perfect square");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("missing field \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "lambda" && kind != "R") throw ParseError("\"kind\" must be \"lambda\" or \"R\"");
  return {DualVector(n, detail::get_vector(j, "y", m)),
          kind == "lambda" ? TensorKind::kLambda : TensorKind::kRiemannJordan,
          detail::get_matrix(j, "matrix", m, m)};
}

// DistributionReport

inline json to_json(const DistributionReport& r) {
  auto ops = [](const std::vector<HermitianOperator>& v) {
    json a = json::array();
    for (const auto& op : v) a.push_back(to_json_flat(op));
    return a;
  };
  return {{"y", detail::vector_array(r.point.y())},
          {"dim", r.point.dim()},
          {"dims",
           {{"lambda", r.dims.lambda},
            {"R", r.dims.r},
            {"D0", r.dims.d0},
            {"D1", r.dims.d1},
            {"D0_from_square", r.dims.d0_from_square}}},
          {"bases",
           {{"lambda", ops(r.lambda_basis)},
            {"R", ops(r.r_basis)},
            {"D0", ops(r.d0_basis)},
            {"D1", ops(r.d1_basis)}}}};
}

struct ParsedDistribution {
  DualVector point;
  DistributionDims dims;
  std::vector<HermitianOperator> lambda_basis, r_basis, d0_basis, d1_basis;
};

inline ParsedDistribution distribution_from_json(const json& j) {
  const std::size_t n = detail::get_dim(j);
  ParsedDistribution p{DualVector(n, detail::get_vector(j, "y", n * n)), {}, {}, {}, {}, {}};
  const json& d = j.at("dims");
  p.dims.lambda = d.at("lambda").get<std::size_t>();
  p.dims.r = d.at("R").get<std::size_t>();
  p.dims.d0 = d.at("D0").get<std::size_t>();
  p.dims.d1 = d.at("D1").get<std::size_t>();
  p.dims.d0_from_square = d.at("D0_from_square").get<std::size_t>();
  auto ops = [n](const json& a) {
    std::vector<HermitianOperator> v;
    for (const auto& e : a) v.push_back(hermitian_from_json_flat(e, n));
    return v;
  };
  const json& b = j.at("bases");
  p.lambda_basis = ops(b.at("lambda"));
  p.r_basis = ops(b.at("R"));
  p.d0_basis = ops(b.at("D0"));
  p.d1_basis = ops(b.at("D1"));
  return p;
}

// DensityState: operator payload plus {"rank": k, "spectrum": [..]}

inline json to_json(const DensityState& s) {
  json j = to_json(s.op);
  j["rank"] = s.rank;
  j["spectrum"] = s.spectrum;
  return j;
}

/// Parses the operator, re-certifies it and checks the stored rank.
inline DensityState density_from_json(const json& j) {
  const HermitianOperator op = hermitian_from_json(j);
  const Certification c = certify_density(op);
  if (!c.accepted) throw ParseError("payload is not a density state");
  if (j.contains("rank") && j["rank"].get<std::size_t>() != c.state->rank)
    throw ParseError("stored rank disagrees with the certified rank");
  return *c.state;
}

inline json to_json(const ConvexDecomposition& d) {
  json comps = json::array();
  for (const auto& c : d.components) comps.push_back(to_json(c));
  return {{"weights", d.weights}, {"components", comps}};
}

// CSV

/// Rows "mu,nu,rho,C,d" for entries with |C| + |d| > 1e-12.
inline std::string structure_constants_csv(const StructureConstants& sc) {
  std::ostringstream os;
  os << "mu,nu,rho,C,d\n";
  const std::size_t m = sc.basis.size();
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = 0; nu < m; ++nu)
      for (std::size_t rho = 0; rho < m; ++rho) {
        const double c = sc.C(mu, nu, rho), d = sc.D(mu, nu, rho);
        if (std::abs(c) + std::abs(d) <= 1e-12) continue;
        os << mu << ',' << nu << ',' << rho << ',' << csv_number(c) << ',' << csv_number(d) << '\n';
      }
  return os.str();
}

inline std::string tangency_csv(const TangencyReport& r) {
  std::ostringstream os;
  os << "t,residual\n";
  for (const auto& [t, res] : r.rows) os << csv_number(t) << ',' << csv_number(res) << '\n';
  return os.str();
}

/// Batch Weyl-chamber reduction: "idx,a,b,c" (one column per eigenvalue).
inline std::string weyl_csv(const std::vector<DensityState>& states) {
  std::ostringstream os;
  const std::size_t n = states.empty() ? 3 : states.front().dim();
  os << "idx";
  for (std::size_t i = 0; i < n; ++i) os << ',' << static_cast<char>('a' + i);
  os << '\n';
  for (std::size_t k = 0; k < states.size(); ++k) {
    os << k;
    for (double v : weyl_reduce(states[k])) os << ',' << csv_number(v);
    os << '\n';
  }
  return os.str();
}

inline std::string eigensolve_trace_csv(const std::vector<EigensolveTraceRow>& rows) {
  std::ostringstream os;
  os << "iter,e_A,residual\n";
  for (const auto& r : rows)
    os << r.iter << ',' << csv_number(r.expectation) << ',' << csv_number(r.residual) << '\n';
  return os.str();
}

}  // namespace geoqm::io
