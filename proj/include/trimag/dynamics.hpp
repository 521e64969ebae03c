// Copyright 2026 The trimag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIMAG_DYNAMICS_HPP
#define TRIMAG_DYNAMICS_HPP

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trimag/common.hpp"
#include "trimag/hilbert.hpp"
#include "trimag/model.hpp"

namespace trimag {

/// Uniform sample grid in seconds.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  int samples = 2;

  TimeGrid(double t0_, double t1_, int samples_) : t0(t0_), t1(t1_), samples(samples_) {
    if (!(t1 > t0)) throw InvalidArgument("time grid needs t1 > t0");
    if (samples < 2) throw InvalidArgument("time grid needs at least 2 samples");
  }
  double dt() const { return (t1 - t0) / (samples - 1); }
  std::vector<double> times() const {
    std::vector<double> out(samples);
    for (int k = 0; k < samples; ++k) out[k] = t0 + k * dt();
    return out;
  }
};

struct Observable {
  std::string name;
  Operator op;
};

/// Per-time observable records plus run diagnostics. Leakage maxima cover
/// the monitored subsystems (top Fock level populations over the run).
struct Trajectory {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> records;
  std::vector<QuantumState> states;
  std::vector<std::string> warnings;
  std::map<int, double> leakage_max;
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;

  const std::vector<double>& record(const std::string& name) const {
    auto it = records.find(name);
    if (it == records.end()) throw InvalidArgument("no record named " + name);
    return it->second;
  }
};

struct EvolveOptions {
  bool store_states = false;
  /// Conditional evolution: compute observables on trace-normalized copies.
  bool renormalize = false;
  double leakage_warn = 1e-4;
  /// Subsystems whose top Fock level is monitored; by default the two mode
  /// factors of a three-factor space.
  std::vector<int> monitor_subsystems{0, 1};
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  /// > 0 forces fixed-step integration (integrator-order tests).
  double fixed_step = 0.0;
  /// Hilbert-space dimension at or below which exact dense propagators are
  /// used instead of time stepping.
  int dense_threshold = 64;
  /// Liouvillian dimension at or below which the master-equation propagator
  /// is the dense matrix exponential (exact propagator where it is cheap).
  int propagator_threshold = 1200;
};

namespace detail {

// Dormand-Prince 5(4) pair.
template <typename Rhs>
void rk45_advance(const Rhs& rhs, Eigen::VectorXcd& y, double t_from, double t_to,
                  const EvolveOptions& opt) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = t_to - t_from;
  if (span <= 0) return;
  double t = t_from;
  double h = opt.fixed_step > 0 ? opt.fixed_step : span / 64.0;
  Eigen::VectorXcd k1 = rhs(t, y);
  long steps = 0;
  const long max_steps = 50'000'000;
  while (t < t_to) {
    if (++steps > max_steps) throw IntegrationError("step budget exhausted");
    h = std::min(h, t_to - t);
    const Eigen::VectorXcd k2 = rhs(t + h / 5, y + h * (a21 * k1));
    const Eigen::VectorXcd k3 = rhs(t + 3 * h / 10, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXcd k4 = rhs(t + 4 * h / 5, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXcd k5 =
        rhs(t + 8 * h / 9, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXcd k6 =
        rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXcd k7 = rhs(t + h, y5);

    if (opt.fixed_step > 0) {
      y = y5;
      t += h;
      k1 = k7;
      continue;
    }

    const Eigen::VectorXcd err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
      const double r = std::abs(err_vec(i)) / sc;
      err += r * r;
    }
    err = std::sqrt(err / double(y.size()));
    if (err <= 1.0) {
      y = y5;
      t += h;
      k1 = k7;
    }
    const double factor =
        err > 0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    h *= factor;
    if (h < span * 1e-14)
      throw IntegrationError("step size underflow (stiff system or tolerance too tight)");
  }
}

inline SparseC conj_sparse(const SparseC& m) { return m.conjugate(); }

}  // namespace detail

/// Vectorized generator of the master equation (column-major vec):
///   rho' = -i[H, rho] + sum_k rate_k (2 J rho J' - rho J'J - J'J rho).
inline SparseC liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms) {
  const SparseC& hm = h.sparse();
  const int d = h.dim();
  SparseC id(d, d);
  id.setIdentity();
  SparseC coh_left, coh_right;
  coh_left = Eigen::kroneckerProduct(id, hm);
  coh_right = Eigen::kroneckerProduct(SparseC(hm.transpose()), id);
  SparseC l = SparseC(Complex(0, -1) * coh_left) + SparseC(Complex(0, 1) * coh_right);
  for (const auto& term : terms) {
    if (term.rate == 0.0) continue;
    if (term.rate < 0.0) throw InvalidArgument("Lindblad rate must be >= 0");
    if (term.jump.space() != h.space())
      throw InvalidArgument("jump operator lives on a different space");
    const SparseC& j = term.jump.sparse();
    const SparseC jdj = SparseC(j.adjoint() * j);
    SparseC sandwich, anti_left, anti_right;
    sandwich = Eigen::kroneckerProduct(SparseC(detail::conj_sparse(j)), j);
    anti_left = Eigen::kroneckerProduct(id, jdj);
    anti_right = Eigen::kroneckerProduct(SparseC(jdj.transpose()), id);
    l += SparseC(term.rate * (SparseC(2.0 * sandwich) - anti_left - anti_right));
  }
  return l;
}

/// Max absolute row sum; the scale for relative residuals.
inline double liouvillian_scale(const SparseC& l) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(l.rows());
  for (int k = 0; k < l.outerSize(); ++k)
    for (SparseC::InnerIterator it(l, k); it; ++it) row_sums(it.row()) += std::abs(it.value());
  return std::max(row_sums.maxCoeff(), 1e-300);
}

namespace detail {

struct Recorder {
  const std::vector<Observable>* observables;
  const EvolveOptions* opt;
  Trajectory* out;

  void sample(const QuantumState& st, bool renormalized_view) {
    const QuantumState* view = &st;
    QuantumState normalized = st;
    if (renormalized_view) {
      const double tr = st.trace().real();
      if (tr > 1e-300) {
        if (st.is_pure())
          normalized = QuantumState::pure(st.space(), st.vector() / std::sqrt(tr));
        else
          normalized = QuantumState::mixed(st.space(), st.density() / tr);
        view = &normalized;
      }
    }
    for (const auto& ob : *observables)
      out->records[ob.name].push_back(view->expectation(ob.op).real());
    for (int sub : opt->monitor_subsystems) {
      if (sub < 0 || sub >= st.space().subsystems()) continue;
      if (st.space().dim(sub) < 2) continue;  // nothing to truncate
      const double pop = view->top_level_population(sub);
      auto [it, inserted] = out->leakage_max.try_emplace(sub, pop);
      if (!inserted) it->second = std::max(it->second, pop);
    }
    if (opt->store_states) out->states.push_back(st);
  }

  void finalize() {
    for (const auto& [sub, pop] : out->leakage_max) {
      if (pop > opt->leakage_warn)
        out->warnings.push_back("truncation leakage: top Fock level of subsystem " +
                                std::to_string(sub) + " reached population " +
                                std::to_string(pop));
    }
  }
};

}  // namespace detail

/// Unitary evolution of a pure state under a Hermitian Hamiltonian.
/// Exact (eigendecomposition) propagation for small spaces, adaptive RK
/// above the dense threshold.
inline Trajectory evolve_schrodinger(const Operator& h, const QuantumState& psi0,
                                     const TimeGrid& grid,
                                     const std::vector<Observable>& observables,
                                     const EvolveOptions& opt = {}) {
  if (!h.is_hermitian(1e-10))
    throw InvalidArgument("Hamiltonian is not Hermitian; use evolve_conditional");
  if (!psi0.is_pure()) throw InvalidArgument("evolve_schrodinger needs a pure state");
  if (psi0.space() != h.space()) throw InvalidArgument("state and Hamiltonian space mismatch");
  psi0.validate();

  Trajectory out;
  out.times = grid.times();
  detail::Recorder rec{&observables, &opt, &out};
  double max_norm_defect = 0.0;

  if (h.dim() <= opt.dense_threshold && opt.fixed_step == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success) throw SolverFailure("eigendecomposition failed");
    const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi0.vector();
    for (double t : out.times) {
      Eigen::VectorXcd phase(coeffs.size());
      for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        phase(k) = std::exp(Complex(0, -(t - grid.t0) * es.eigenvalues()(k))) * coeffs(k);
      const Eigen::VectorXcd psi = es.eigenvectors() * phase;
      auto st = QuantumState::pure(h.space(), psi);
      max_norm_defect = std::max(max_norm_defect, std::abs(psi.norm() - 1.0));
      out.records["norm"].push_back(psi.norm());
      rec.sample(st, false);
    }
  } else {
    const SparseC& hm = h.sparse();
    auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
      return Complex(0, -1) * (hm * y);
    };
    // Headroom below the 1e-8 norm contract: local tolerances accumulate
    // over the whole grid.
    EvolveOptions tight = opt;
    tight.abs_tol = opt.abs_tol * 1e-2;
    tight.rel_tol = opt.rel_tol * 1e-2;
    Eigen::VectorXcd psi = psi0.vector();
    for (int k = 0; k < grid.samples; ++k) {
      if (k > 0) detail::rk45_advance(rhs, psi, out.times[k - 1], out.times[k], tight);
      auto st = QuantumState::pure(h.space(), psi);
      max_norm_defect = std::max(max_norm_defect, std::abs(psi.norm() - 1.0));
      out.records["norm"].push_back(psi.norm());
      rec.sample(st, false);
    }
  }
  if (max_norm_defect > 1e-8)
    out.warnings.push_back("norm drift " + std::to_string(max_norm_defect) + " exceeds 1e-8");
  rec.finalize();
  return out;
}

/// Lindblad master equation with the convention
///   D[o] rho = 2 o rho o' - rho o'o - o'o rho
/// entering as rate * D[jump] (a bare mode's <n> decays as exp(-2 kappa t)).
inline Trajectory evolve_master(const Operator& h, const std::vector<LindbladTerm>& terms,
                                const QuantumState& rho0, const TimeGrid& grid,
                                const std::vector<Observable>& observables,
                                const EvolveOptions& opt = {}) {
  if (!h.is_hermitian(1e-10)) throw InvalidArgument("master equation needs a Hermitian Hamiltonian");
  if (rho0.space() != h.space()) throw InvalidArgument("state and Hamiltonian space mismatch");
  rho0.validate();

  const int d = h.dim();
  const SparseC l = liouvillian(h, terms);

  Trajectory out;
  out.times = grid.times();
  detail::Recorder rec{&observables, &opt, &out};
  out.min_eigenvalue = 0.0;

  Eigen::VectorXcd rho_vec = Eigen::Map<const Eigen::VectorXcd>(
      Eigen::MatrixXcd(rho0.density()).data(), int64_t(d) * d);
  Eigen::MatrixXcd propagator;
  const bool use_propagator = int64_t(d) * d <= opt.propagator_threshold && opt.fixed_step == 0.0;
  if (use_propagator) propagator = (Eigen::MatrixXcd(l) * grid.dt()).exp();

  auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return l * y; };

  for (int k = 0; k < grid.samples; ++k) {
    if (k > 0) {
      if (use_propagator)
        rho_vec = propagator * rho_vec;
      else
        detail::rk45_advance(rhs, rho_vec, out.times[k - 1], out.times[k], opt);
    }
    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(rho_vec.data(), d, d);
    out.max_trace_defect = std::max(out.max_trace_defect, std::abs(rho.trace().real() - 1.0));
    const double scale = std::max(1.0, rho.norm());
    out.max_hermiticity_defect =
        std::max(out.max_hermiticity_defect, (rho - rho.adjoint()).norm() / scale);
    if (d <= opt.dense_threshold) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                         Eigen::EigenvaluesOnly);
      const double min_eig = es.eigenvalues().minCoeff();
      out.min_eigenvalue = std::min(out.min_eigenvalue, min_eig);
      if (min_eig < -1e-8)
        throw IntegrationError("density matrix eigenvalue " + std::to_string(min_eig) +
                               " below -1e-8 at t = " + std::to_string(out.times[k]));
    }
    out.records["trace"].push_back(rho.trace().real());
    rec.sample(QuantumState::mixed(h.space(), rho), false);
  }
  if (out.max_trace_defect > 1e-8)
    out.warnings.push_back("trace drift " + std::to_string(out.max_trace_defect) +
                           " exceeds 1e-8");
  if (out.min_eigenvalue < 0.0 && out.min_eigenvalue >= -1e-8)
    out.warnings.push_back("positivity dip " + std::to_string(out.min_eigenvalue) +
                           " (clipped for measurements only)");
  rec.finalize();
  return out;
}

/// No-jump evolution under a conditional (non-Hermitian) Hamiltonian. The
/// norm decays; with `renormalize` the observables are taken on normalized
/// copies while the evolved state keeps its norm loss.
inline Trajectory evolve_conditional(const Operator& h_con, const QuantumState& psi0,
                                     const TimeGrid& grid,
                                     const std::vector<Observable>& observables,
                                     const EvolveOptions& opt = {}) {
  if (!psi0.is_pure()) throw InvalidArgument("evolve_conditional needs a pure state");
  if (psi0.space() != h_con.space()) throw InvalidArgument("state and Hamiltonian space mismatch");
  psi0.validate();

  // decay part: i(H - H') must be positive semidefinite
  const Eigen::MatrixXcd hd = h_con.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> decay(Complex(0, 1) * (hd - hd.adjoint()),
                                                        Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, hd.norm());
  if (decay.eigenvalues().minCoeff() < -1e-12 * scale)
    throw InvalidModel("conditional Hamiltonian has an amplifying channel (growing norm)");

  Trajectory out;
  out.times = grid.times();
  detail::Recorder rec{&observables, &opt, &out};

  const int d = h_con.dim();
  Eigen::MatrixXcd propagator;
  const bool use_propagator = d <= opt.dense_threshold && opt.fixed_step == 0.0;
  if (use_propagator) propagator = (Complex(0, -1) * hd * grid.dt()).exp();
  auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return Complex(0, -1) * (h_con.sparse() * y);
  };
  EvolveOptions tight = opt;
  tight.abs_tol = opt.abs_tol * 1e-2;
  tight.rel_tol = opt.rel_tol * 1e-2;

  Eigen::VectorXcd psi = psi0.vector();
  double prev_norm = psi.norm();
  for (int k = 0; k < grid.samples; ++k) {
    if (k > 0) {
      if (use_propagator)
        psi = propagator * psi;
      else
        detail::rk45_advance(rhs, psi, out.times[k - 1], out.times[k], tight);
    }
    const double n = psi.norm();
    if (n > prev_norm + 1e-9)
      out.warnings.push_back("norm increased at t = " + std::to_string(out.times[k]));
    prev_norm = n;
    out.records["norm"].push_back(n);
    rec.sample(QuantumState::pure(h_con.space(), psi), opt.renormalize);
  }
  rec.finalize();
  return out;
}

enum class SteadyStateMethod { null_space, time_marching };

struct SteadyState {
  QuantumState state;
  double residual = 0.0;  // |L rho| / (|L| |rho|), scale-invariant
  SteadyStateMethod method = SteadyStateMethod::null_space;
  std::vector<std::string> warnings;
};

namespace detail {

inline double steady_residual(const SparseC& l, const Eigen::MatrixXcd& rho, double scale) {
  const Eigen::VectorXcd v =
      Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.rows() * rho.cols());
  return (l * v).norm() / (scale * v.norm());
}

inline Eigen::MatrixXcd hermitize_normalize(Eigen::MatrixXcd rho) {
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1e-300) throw SolverFailure("steady-state candidate has vanishing trace");
  return rho / tr;
}

}  // namespace detail

/// Stationary state of the master equation. `null_space` solves the
/// vectorized Liouvillian with the trace constraint replacing one row;
/// `time_marching` squares the short-time propagator until the state stops
/// moving. Degenerate steady manifolds raise AmbiguousSteadyState.
inline SteadyState steady_state(const Operator& h, const std::vector<LindbladTerm>& terms,
                                SteadyStateMethod method = SteadyStateMethod::null_space) {
  if (!h.is_hermitian(1e-10)) throw InvalidArgument("steady state needs a Hermitian Hamiltonian");
  bool dissipative = false;
  for (const auto& t : terms)
    if (t.rate > 0.0) dissipative = true;
  if (!dissipative)
    throw InvalidArgument("steady state needs at least one nonzero decay rate");

  const int d = h.dim();
  const int64_t n = int64_t(d) * d;
  const SparseC l = liouvillian(h, terms);
  const double scale = liouvillian_scale(l);

  SteadyState out;
  out.method = method;

  if (method == SteadyStateMethod::null_space) {
    // Solve with the chosen row replaced by a normalization functional.
    // `weights` multiplies the diagonal entries; the plain trace uses 1.
    auto solve_with_row = [&](int replaced_row,
                              const std::vector<double>& weights) -> std::optional<Eigen::MatrixXcd> {
      SparseC m = l;
      m.prune([&](int row, int, const Complex&) { return row != replaced_row; });
      std::vector<TripletC> row_entries;
      for (int k = 0; k < d; ++k)
        row_entries.emplace_back(replaced_row, k * (d + 1), weights[k] * scale);
      SparseC constraint(n, n);
      constraint.setFromTriplets(row_entries.begin(), row_entries.end());
      m += constraint;
      m.makeCompressed();
      Eigen::SparseLU<SparseC> lu;
      lu.compute(m);
      if (lu.info() != Eigen::Success) return std::nullopt;
      Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
      b(replaced_row) = scale;
      const Eigen::VectorXcd x = lu.solve(b);
      if (!x.allFinite()) return std::nullopt;
      Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
      rho = detail::hermitize_normalize(rho);
      if (detail::steady_residual(l, rho, scale) > 1e-10) return std::nullopt;
      return rho;
    };

    // Two independent constraints: a unique steady state satisfies both with
    // the same normalized solution; a degenerate manifold gets separated.
    std::vector<double> plain(d, 1.0), skewed(d);
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int k = 0; k < d; ++k) skewed[k] = u(rng);
    const auto rho_a = solve_with_row(0, plain);
    const auto rho_b = solve_with_row(int(n - 1), skewed);

    if (rho_a && rho_b && (*rho_a - *rho_b).norm() < 1e-8 * std::max(1.0, rho_a->norm())) {
      out.state = QuantumState::mixed(h.space(), *rho_a);
      out.residual = detail::steady_residual(l, *rho_a, scale);
      return out;
    }

    // Disagreement or failed factorization: analyze the null space densely.
    if (n > 4096) {
      if (rho_a || rho_b)
        throw AmbiguousSteadyState(
            "steady state is not unique (null-space dimension >= 2; too large to enumerate)");
      throw SolverFailure("null-space solve failed and the system is too large for dense analysis");
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(l), Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv(0) * 1e-10;
    int nullity = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) < cutoff) ++nullity;
    if (nullity > 1)
      throw AmbiguousSteadyState("Liouvillian null space has dimension " +
                                 std::to_string(nullity));
    if (nullity == 0) throw SolverFailure("no numerical null vector found");
    Eigen::MatrixXcd rho =
        Eigen::Map<const Eigen::MatrixXcd>(svd.matrixV().col(sv.size() - 1).data(), d, d);
    rho = detail::hermitize_normalize(rho);
    out.state = QuantumState::mixed(h.space(), rho);
    out.residual = detail::steady_residual(l, rho, scale);
    return out;
  }

  // time marching by propagator doubling
  if (n > 2048)
    throw SolverFailure("time-marching steady state limited to Hilbert dimension <= 45");
  Eigen::MatrixXcd propagator = (Eigen::MatrixXcd(l) * (1.0 / scale)).exp();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(d, d) / double(d);
  double res = detail::steady_residual(l, rho, scale);
  for (int iter = 0; iter < 64; ++iter) {
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), n);
    const Eigen::VectorXcd w = propagator * v;
    Eigen::MatrixXcd next = Eigen::Map<const Eigen::MatrixXcd>(w.data(), d, d);
    next = detail::hermitize_normalize(next);
    const double moved = (next - rho).norm();
    rho = next;
    res = detail::steady_residual(l, rho, scale);
    if (moved < 1e-13 && res < 1e-8) break;
    propagator = (propagator * propagator).eval();  // horizon doubles every pass
  }
  if (res >= 1e-8)
    throw SolverFailure("time marching did not converge (residual " + std::to_string(res) + ")");
  out.state = QuantumState::mixed(h.space(), rho);
  out.residual = res;
  return out;
}

}  // namespace trimag

#endif  // TRIMAG_DYNAMICS_HPP
