// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geoqm/density.hpp"
#include "geoqm/dual_tensors.hpp"
#include "geoqm/hermitian.hpp"
#include "geoqm/io.hpp"
#include "geoqm/kaehler.hpp"
#include "geoqm/projective.hpp"

namespace geoqm::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr std::uint64_t kDefaultSeed = 20260917;

struct Settings {
  std::uint64_t seed = kDefaultSeed;
  double tol_psd = tol::kPsd;
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Main payload (JSON or CSV text), written to --output or stdout.
  std::string output;
  /// Human-readable notes for stderr.
  std::string diagnostics;
  /// Optional secondary CSV (flow traces, Weyl batches).
  std::string trace;
};

/// Runs body and maps failures to exit codes: malformed or invalid input
/// gives 2, anything else thrown by the library gives 3.
inline CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const io::ParseError& e) {
    return {kExitUsage, {}, std::string("parse error: ") + e.what(), {}};
  } catch (const json::exception& e) {
    return {kExitUsage, {}, std::string("parse error: ") + e.what(), {}};
  } catch (const InvalidInput& e) {
    return {kExitUsage, {}, e.what(), {}};
  } catch (const InvalidDimension& e) {
    return {kExitUsage, {}, e.what(), {}};
  } catch (const DimensionMismatch& e) {
    return {kExitUsage, {}, e.what(), {}};
  } catch (const NotHermitian& e) {
    return {kExitUsage, {}, e.what(), {}};
  } catch (const InvalidStart& e) {
    return {kExitUsage, {}, e.what(), {}};
  } catch (const std::exception& e) {
    return {kExitNumeric, {}, std::string("numeric failure: ") + e.what(), {}};
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json classify_report(const HermitianOperator& a, const Settings& s) {
  const Certification c = certify_density(a, s.tol_psd);
  const OrthogonalBasis basis = gellmann_basis(std::max<std::size_t>(a.dim(), 2));
  json r;
  r["density"] = c.accepted;
  r["dim"] = a.dim();
  r["trace"] = c.trace;
  r["spectrum"] = c.spectrum;
  if (a.dim() >= 2) r["y"] = io::to_json(to_dual(a, basis))["y"];
  if (c.minor_criterion) {
    r["minor_criterion"] = *c.minor_criterion;
    r["criteria_agree"] = c.criteria_agree();
  }
  if (c.accepted) {
    const DensityState& st = *c.state;
    r["rank"] = st.rank;
    r["extremal"] = st.rank == 1;
    r["orbit_dim"] = a.dim() >= 2 ? orbit_dimension(st) : 0;
    r["face_dim"] = face_of(st).dimension();
    r["weyl"] = weyl_reduce(st);
    r["state"] = io::to_json(st);
  } else {
    r["violated"] = c.violations.empty() ? std::string("unknown") : c.violations.front();
    r["violations"] = c.violations;
  }
  return r;
}

/// classify: a single operator gives one report; an array of operators
/// gives an array of reports plus the Weyl batch CSV of accepted states.
inline CommandResult cmd_classify(const json& input, const Settings& s = {}) {
  return guarded([&] {
    CommandResult out;
    if (input.is_array()) {
      json reports = json::array();
      std::vector<DensityState> accepted;
      for (const auto& item : input) {
        const HermitianOperator a = io::hermitian_from_json(item);
        reports.push_back(classify_report(a, s));
        const Certification c = certify_density(a, s.tol_psd);
        if (c.accepted) accepted.push_back(*c.state);
      }
      out.output = dump(reports);
      out.trace = io::weyl_csv(accepted);
    } else {
      out.output = dump(classify_report(io::hermitian_from_json(input), s));
    }
    return out;
  });
}

inline CommandResult cmd_decompose(const json& input, const std::string& mode,
                                   const std::optional<std::array<double, 3>>& direction,
                                   const Settings& s = {}) {
  return guarded([&] {
    const HermitianOperator a = io::hermitian_from_json(input);
    const Certification c = certify_density(a, s.tol_psd);
    if (!c.accepted) throw InvalidInput("input is not a density state");
    ConvexDecomposition d;
    if (mode == "spectral") {
      d = convex_decompose_spectral(*c.state);
    } else if (mode == "bloch") {
      if (a.dim() != 2) throw InvalidInput("bloch mode requires a qubit state (n = 2)");
      if (!direction) throw InvalidInput("bloch mode requires --direction");
      d = bloch_decompose_along(*c.state, *direction);
    } else {
      throw InvalidInput("unknown decomposition mode \"" + mode + "\"");
    }
    json r = io::to_json(d);
    r["mode"] = mode;
    r["residual"] = (d.reconstruct() - a.matrix()).cwiseAbs().maxCoeff();
    return CommandResult{kExitOk, dump(r), {}, {}};
  });
}

inline CommandResult cmd_tensors(const json& input, const std::string& which,
                                 const Settings& /*s*/ = {}) {
  return guarded([&] {
    const DualVector y = io::dual_from_json(input);
    if (y.dim() < 2) throw InvalidInput("tensors need n >= 2");
    json r;
    if (which == "lambda") {
      r = io::to_json(lambda_at(y));
    } else if (which == "R") {
      r = io::to_json(riemann_jordan_at(y));
    } else if (which == "distributions") {
      r = io::to_json(distributions_at(y));
    } else {
      throw InvalidInput("--which must be lambda, R or distributions");
    }
    return CommandResult{kExitOk, dump(r), {}, {}};
  });
}

/// Structure constants CSV. For n = 3 an extra "check" column compares each
/// row with the published table.
inline CommandResult cmd_constants(std::size_t n, const Settings& /*s*/ = {}) {
  return guarded([&] {
    if (n < 2) throw InvalidInput("constants need n >= 2");
    const StructureConstants sc = structure_constants(gellmann_basis(n));
    CommandResult out;
    if (n != 3) {
      out.output = io::structure_constants_csv(sc);
      return out;
    }
    std::ostringstream os, diag;
    os << "mu,nu,rho,C,d,check\n";
    std::size_t mismatches = 0, zero_index = 0;
    for (std::size_t mu = 0; mu < 9; ++mu)
      for (std::size_t nu = 0; nu < 9; ++nu)
        for (std::size_t rho = 0; rho < 9; ++rho) {
          const double c = sc.C(mu, nu, rho), d = sc.D(mu, nu, rho);
          const double ct = tabulated_qutrit_c_at(mu, nu, rho);
          const double dt = tabulated_qutrit_d_at(mu, nu, rho);
          const bool agree = std::abs(c - ct) <= 1e-12 && std::abs(d - dt) <= 1e-12;
          const bool has_zero = mu == 0 || nu == 0 || rho == 0;
          if (!agree) {
            diag << (has_zero ? "zero-index discrepancy" : "MISMATCH") << " at (" << mu << ','
                 << nu << ',' << rho << "): computed C=" << io::csv_number(c)
                 << " d=" << io::csv_number(d) << ", table C=" << io::csv_number(ct)
                 << " d=" << io::csv_number(dt) << '\n';
            (has_zero ? zero_index : mismatches)++;
          }
          if (std::abs(c) + std::abs(d) <= 1e-12) continue;
          os << mu << ',' << nu << ',' << rho << ',' << io::csv_number(c) << ','
             << io::csv_number(d) << ','
             << (agree ? "match" : (has_zero ? "zero-index-discrepancy" : "mismatch")) << '\n';
        }
    diag << "summary: " << mismatches << " mismatches outside index 0, " << zero_index
         << " zero-index discrepancies (reported, not asserted)\n";
    out.output = os.str();
    out.diagnostics = diag.str();
    return out;
  });
}

struct FlowOptions {
  std::string mode = "hamiltonian";  // or "eigensolve"
  std::string direction = "ascent";  // eigensolve only
  double step = 0.0;                 // 0 = default (1e-3 for flows, 0.1/||A|| for the solver)
  std::size_t max_iter = 100000;
  double t_end = 10.0;
  /// Hamiltonian trace sampling interval in t.
  double sample_dt = 0.01;
};

inline RealifiedState random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVector z(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = Complex(g(rng), g(rng));
  return RealifiedState::from_complex(z / z.norm());
}

inline CommandResult cmd_flow(const json& op_json, const std::optional<json>& psi_json,
                              const FlowOptions& fo, const Settings& s = {}) {
  return guarded([&] {
    const HermitianOperator a = io::hermitian_from_json(op_json);
    const RealifiedState psi0 = psi_json ? io::state_from_json(*psi_json) : random_state(a.dim(), s.seed);
    require_same_dim(a.dim(), psi0.dim());
    CommandResult out;
    json r;
    r["mode"] = fo.mode;
    r["initial_state"] = io::to_json(psi0);

    if (fo.mode == "hamiltonian") {
      if (psi0.norm() == 0.0) throw InvalidStart("flow start vector is zero");
      const double step = fo.step > 0.0 ? fo.step : 1e-3;
      const RMatrix gen = KaehlerTriple::make(a.dim()).J * realify(a.matrix());
      const double n0 = psi0.norm();
      const double e0 = expectation(a, psi0);
      double norm_drift = 0.0, e_drift = 0.0, next_sample = 0.0;
      std::ostringstream trace;
      trace << "t,e_A,norm\n";
      const RVector xf = integrate_flow(
          [&gen](const RVector& x) -> RVector { return gen * x; }, psi0.coords(), fo.t_end, step,
          [&](double t, const RVector& x) {
            const RealifiedState st = RealifiedState::from_coords(x);
            const double nrm = st.norm();
            const double e = expectation(a, st);
            norm_drift = std::max(norm_drift, std::abs(nrm - n0));
            e_drift = std::max(e_drift, std::abs(e - e0));
            if (t + 1e-12 >= next_sample) {
              trace << io::csv_number(t) << ',' << io::csv_number(e) << ',' << io::csv_number(nrm)
                    << '\n';
              next_sample += fo.sample_dt;
            }
          });
      r["t_end"] = fo.t_end;
      r["step"] = step;
      r["norm_drift"] = norm_drift;
      r["expectation_drift"] = e_drift;
      r["final_state"] = io::to_json(RealifiedState::from_coords(xf));
      out.trace = trace.str();
    } else if (fo.mode == "eigensolve") {
      EigensolveOptions eo;
      if (fo.direction == "ascent") {
        eo.mode = SearchMode::kAscent;
      } else if (fo.direction == "descent") {
        eo.mode = SearchMode::kDescent;
      } else {
        throw InvalidInput("--direction must be ascent or descent");
      }
      eo.step = fo.step;
      eo.max_iter = fo.max_iter;
      eo.record_trace = true;
      const EigensolveResult res = critical_point_eigensolve(a, psi0, eo);
      r["direction"] = fo.direction;
      r["eigenvalue"] = res.eigenvalue;
      r["converged"] = res.converged;
      r["iterations"] = res.iterations;
      r["state"] = io::to_json(res.state);
      out.trace = io::eigensolve_trace_csv(res.trace);
    } else {
      throw InvalidInput("--mode must be hamiltonian or eigensolve");
    }
    out.output = dump(r);
    return out;
  });
}

/// Qubit grid over [-0.6, 0.6]^3 in Bloch coordinates: "y1,y2,y3,is_density,rank".
inline CommandResult cmd_ballgrid(std::size_t resolution, const Settings& s = {}) {
  return guarded([&] {
    if (resolution < 2) throw InvalidInput("resolution must be >= 2");
    const auto r1 = static_cast<double>(resolution - 1);
    auto coord = [r1](std::size_t i) {
      return 0.6 * (2.0 * static_cast<double>(i) - r1) / r1;
    };
    std::ostringstream os;
    os << "y1,y2,y3,is_density,rank\n";
    for (std::size_t i = 0; i < resolution; ++i)
      for (std::size_t j = 0; j < resolution; ++j)
        for (std::size_t k = 0; k < resolution; ++k) {
          const std::array<double, 3> y{coord(i), coord(j), coord(k)};
          const Certification c = certify_density(qubit_from_bloch(y), s.tol_psd);
          os << io::csv_number(y[0]) << ',' << io::csv_number(y[1]) << ',' << io::csv_number(y[2])
             << ',' << (c.accepted ? "true" : "false") << ',' << (c.accepted ? c.state->rank : 0)
             << '\n';
        }
    return CommandResult{kExitOk, os.str(), {}, {}};
  });
}

}  // namespace geoqm::cli
