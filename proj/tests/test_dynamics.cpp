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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "trimag/dynamics.hpp"

using namespace trimag;
using Catch::Approx;

namespace {

DerivedParams resonant_squeezed(double coupling, double qubit_freq = 1.2,
                                double omega_sl = 4.0) {
  DerivedParams d;
  d.qubit_freq = qubit_freq;
  d.squeezed_freq_l = omega_sl;
  d.squeezed_freq_r = omega_sl + qubit_freq;
  d.coupling_squeezed = coupling;
  return d;
}

}  // namespace

TEST_CASE("time grid validation") {
  CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 5), InvalidArgument);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), InvalidArgument);
  auto g = TimeGrid(0.0, 2.0, 5);
  CHECK(g.times().size() == 5);
  CHECK(g.times()[3] == Approx(1.5));
}

TEST_CASE("schrodinger evolution: trivial generator") {
  auto space = make_space({2, 2, 2});
  auto h = zero_op(space);
  auto psi0 = basis_state(space, {1, 0, 1});
  auto traj = evolve_schrodinger(h, psi0, TimeGrid(0, 1, 11),
                                 {{"p", basis_projector(space, {1, 0, 1})}});
  for (double p : traj.record("p")) CHECK(p == Approx(1.0));
}

TEST_CASE("schrodinger evolution reproduces the exchange oscillation") {
  auto space = make_space({2, 2, 2});
  const double gs = 0.8;
  auto psi0 = basis_state(space, {1, 0, 1});
  std::vector<Observable> obs{{"p_swap", basis_projector(space, {0, 1, 0})},
                              {"p_init", basis_projector(space, {1, 0, 1})}};

  SECTION("resonant: sin^2(G_s t)") {
    auto h = build_h_squeezed(resonant_squeezed(gs), space, 0.0);
    auto traj = evolve_schrodinger(h, psi0, TimeGrid(0, 6.0, 200), obs);
    for (size_t k = 0; k < traj.times.size(); ++k) {
      const double s = std::sin(gs * traj.times[k]);
      CHECK(traj.record("p_swap")[k] == Approx(s * s).margin(1e-10));
      CHECK(traj.record("p_init")[k] == Approx(1 - s * s).margin(1e-10));
    }
  }
  SECTION("detuned: (G_s^2/Omega^2) sin^2(Omega t)") {
    const double delta = 1.1;
    auto h = build_h_squeezed(resonant_squeezed(gs), space, delta);
    const double omega = std::sqrt(gs * gs + delta * delta / 4.0);
    auto traj = evolve_schrodinger(h, psi0, TimeGrid(0, 6.0, 200), obs);
    for (size_t k = 0; k < traj.times.size(); ++k) {
      const double expect =
          gs * gs / (omega * omega) * std::pow(std::sin(omega * traj.times[k]), 2);
      CHECK(traj.record("p_swap")[k] == Approx(expect).margin(1e-10));
    }
  }
  SECTION("adaptive stepper agrees with the exact propagator") {
    auto h = build_h_squeezed(resonant_squeezed(gs), space, 0.3);
    EvolveOptions small_dense;
    small_dense.dense_threshold = 1;  // force RK
    small_dense.monitor_subsystems = {};
    auto rk = evolve_schrodinger(h, psi0, TimeGrid(0, 5.0, 40), obs, small_dense);
    auto exact = evolve_schrodinger(h, psi0, TimeGrid(0, 5.0, 40), obs);
    for (size_t k = 0; k < rk.times.size(); ++k) {
      CHECK(rk.record("p_swap")[k] == Approx(exact.record("p_swap")[k]).margin(2e-8));
      CHECK(std::abs(rk.record("norm")[k] - 1.0) < 1e-8);
    }
    CHECK(rk.warnings.empty());
  }
  SECTION("non-Hermitian Hamiltonian is rejected") {
    auto d = resonant_squeezed(gs);
    d.kappa_l = 0.1;
    auto hcon = build_h_conditional(d, space);
    CHECK_THROWS_AS(evolve_schrodinger(hcon, psi0, TimeGrid(0, 1, 3), obs), InvalidArgument);
  }
}

TEST_CASE("master equation limits") {
  SECTION("closed-system limit equals the Schrodinger evolution") {
    auto space = make_space({2, 2, 2});
    auto h = build_h_squeezed(resonant_squeezed(0.7), space, 0.2);
    auto psi0 = basis_state(space, {1, 0, 1});
    std::vector<Observable> obs{{"p_swap", basis_projector(space, {0, 1, 0})},
                                {"n_l", number_op(space, 0)}};
    auto schro = evolve_schrodinger(h, psi0, TimeGrid(0, 4.0, 60), obs);
    auto master = evolve_master(h, {}, psi0, TimeGrid(0, 4.0, 60), obs);
    for (size_t k = 0; k < schro.times.size(); ++k) {
      CHECK(master.record("p_swap")[k] == Approx(schro.record("p_swap")[k]).margin(1e-8));
      CHECK(master.record("n_l")[k] == Approx(schro.record("n_l")[k]).margin(1e-8));
    }
  }
  SECTION("bare decaying mode: <n>(t) = exp(-2 kappa t)") {
    auto space = make_space({3, 1, 2});
    const double kappa = 0.6;
    std::vector<LindbladTerm> terms{{"decay", lowering_op(space, 0), kappa, 0.0}};
    auto rho0 = basis_state(space, {1, 0, 0});
    auto traj = evolve_master(zero_op(space), terms, rho0, TimeGrid(0, 3.0, 50),
                              {{"n", number_op(space, 0)}});
    for (size_t k = 0; k < traj.times.size(); ++k)
      CHECK(traj.record("n")[k] == Approx(std::exp(-2.0 * kappa * traj.times[k])).margin(1e-9));
    CHECK(traj.max_trace_defect < 1e-10);
    CHECK(traj.max_hermiticity_defect < 1e-12);
  }
}

TEST_CASE("master equation preserves convex mixtures") {
  auto space = make_space({2, 2, 2});
  auto d = resonant_squeezed(0.9);
  auto h = build_h_squeezed(d, space);
  PhysicalParams rates;
  rates.kappa_l = 0.2;
  rates.kappa_r = 0.15;
  rates.gamma_q = 0.05;
  auto terms = build_collapse_terms(rates, Frame::squeezed, 0.0, space);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const double alpha = unif(rng);

  auto rho1 = basis_state(space, {1, 0, 1}).density();
  Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(8);
  plus(space.flatten({0, 1, 0})) = 1 / std::sqrt(2.0);
  plus(space.flatten({0, 0, 1})) = 1 / std::sqrt(2.0);
  auto rho2 = (plus * plus.adjoint()).eval();
  Eigen::MatrixXcd mix = alpha * rho1 + (1 - alpha) * rho2;

  std::vector<Observable> obs{{"n_r", number_op(space, 1)},
                              {"q", level_projector(space, 2, 1)}};
  auto grid = TimeGrid(0, 3.0, 30);
  auto t1 = evolve_master(h, terms, QuantumState::mixed(space, rho1), grid, obs);
  auto t2 = evolve_master(h, terms, QuantumState::mixed(space, rho2), grid, obs);
  auto tm = evolve_master(h, terms, QuantumState::mixed(space, mix), grid, obs);
  for (size_t k = 0; k < tm.times.size(); ++k)
    for (const char* name : {"n_r", "q"})
      CHECK(tm.record(name)[k] ==
            Approx(alpha * t1.record(name)[k] + (1 - alpha) * t2.record(name)[k]).margin(1e-8));
}

TEST_CASE("conditional evolution") {
  SECTION("lossless limit matches unitary evolution") {
    auto space = make_space({2, 2, 2});
    auto d = resonant_squeezed(0.8);
    auto h = build_h_conditional(d, space);  // all rates zero
    auto psi0 = basis_state(space, {1, 0, 1});
    std::vector<Observable> obs{{"p", basis_projector(space, {0, 1, 0})}};
    auto cond = evolve_conditional(h, psi0, TimeGrid(0, 4, 40), obs);
    auto schro = evolve_schrodinger(build_h_squeezed(d, space), psi0, TimeGrid(0, 4, 40), obs);
    for (size_t k = 0; k < cond.times.size(); ++k)
      CHECK(cond.record("p")[k] == Approx(schro.record("p")[k]).margin(1e-10));
  }
  SECTION("single decaying level: survival exp(-gamma t)") {
    auto space = make_space({2});
    const double gamma = 0.8;
    auto h = Complex(0, -0.5 * gamma) * level_projector(space, 0, 1);
    auto psi0 = basis_state(space, {1});
    auto traj = evolve_conditional(h, psi0, TimeGrid(0, 4, 60),
                                   {{"p1", level_projector(space, 0, 1)}},
                                   {.monitor_subsystems = {}});
    for (size_t k = 0; k < traj.times.size(); ++k) {
      const double survival = std::exp(-gamma * traj.times[k]);
      CHECK(traj.record("norm")[k] * traj.record("norm")[k] == Approx(survival).margin(1e-10));
      CHECK(traj.record("p1")[k] == Approx(survival).margin(1e-10));
    }
    CHECK(traj.warnings.empty());
  }
  SECTION("renormalized observables divide out the norm loss") {
    auto space = make_space({2});
    auto h = Complex(0, -0.25) * level_projector(space, 0, 1);
    auto psi0 = basis_state(space, {1});
    auto traj = evolve_conditional(h, psi0, TimeGrid(0, 2, 10),
                                   {{"p1", level_projector(space, 0, 1)}},
                                   {.renormalize = true, .monitor_subsystems = {}});
    for (double p : traj.record("p1")) CHECK(p == Approx(1.0).margin(1e-12));
  }
  SECTION("an amplifying channel is rejected") {
    auto space = make_space({2});
    auto h = Complex(0, +0.3) * level_projector(space, 0, 1);
    CHECK_THROWS_AS(evolve_conditional(h, basis_state(space, {1}), TimeGrid(0, 1, 3), {}),
                    InvalidModel);
  }
}

TEST_CASE("steady states") {
  SECTION("undriven decaying mode relaxes to vacuum") {
    auto space = make_space({4, 1, 1});
    std::vector<LindbladTerm> terms{{"decay", lowering_op(space, 0), 0.5, 0.0}};
    auto h = 1.3 * number_op(space, 0);
    for (auto method : {SteadyStateMethod::null_space, SteadyStateMethod::time_marching}) {
      auto ss = steady_state(h, terms, method);
      CHECK(ss.state.density()(0, 0).real() == Approx(1.0).margin(1e-8));
    }
  }
  SECTION("driven damped cavity matches the linear-response amplitude") {
    // dm/dt = -(i delta + kappa) m - i Omega under the doubled-rate
    // convention, so <m> = -i Omega / (i delta + kappa).
    auto space = make_space({15, 1, 1});
    const double delta = 0.7, kappa = 0.5, drive = 0.12;
    auto m = lowering_op(space, 0);
    auto h = delta * number_op(space, 0) + drive * (m + m.adjoint());
    std::vector<LindbladTerm> terms{{"decay", m, kappa, 0.0}};
    const Complex expected = Complex(0, -1) * drive / Complex(kappa, delta);

    auto ss = steady_state(h, terms, SteadyStateMethod::null_space);
    const Complex got = ss.state.expectation(m);
    CHECK(std::abs(got - expected) < 1e-8);
    CHECK(ss.residual < 1e-10);

    auto ss2 = steady_state(h, terms, SteadyStateMethod::time_marching);
    CHECK(std::abs(ss2.state.expectation(m) - expected) < 1e-7);

    // long-time master equation limit agrees
    auto traj = evolve_master(h, terms, basis_state(space, {0, 0, 0}),
                              TimeGrid(0, 40.0 / kappa, 30), {{"n", number_op(space, 0)}});
    CHECK(traj.record("n").back() == Approx(std::norm(expected)).margin(1e-7));
  }
  SECTION("fixed point: further evolution does not move observables") {
    auto space = make_space({3, 3, 2});
    auto d = resonant_squeezed(0.6);
    d.kappa_l = 0.3;
    d.kappa_r = 0.2;
    d.gamma_q = 0.05;
    auto mr = lowering_op(space, 1);
    auto h = build_h_squeezed(d, space) + 0.05 * (mr + mr.adjoint());
    PhysicalParams rates;
    rates.kappa_l = d.kappa_l;
    rates.kappa_r = d.kappa_r;
    rates.gamma_q = d.gamma_q;
    auto terms = build_collapse_terms(rates, Frame::squeezed, 0.0, space);
    auto ss = steady_state(h, terms);
    std::vector<Observable> obs{{"n_r", number_op(space, 1)},
                                {"q", level_projector(space, 2, 1)}};
    const double horizon = 10.0 / 0.05;
    auto traj = evolve_master(h, terms, ss.state, TimeGrid(0, horizon, 5), obs);
    CHECK(std::abs(traj.record("n_r").front() - traj.record("n_r").back()) < 1e-6);
    CHECK(std::abs(traj.record("q").front() - traj.record("q").back()) < 1e-6);
  }
  SECTION("decoupled sector raises the ambiguity error") {
    auto space = make_space({2, 2, 2});  // jump acts on the first factor only
    std::vector<LindbladTerm> terms{{"decay", lowering_op(space, 0), 0.4, 0.0}};
    CHECK_THROWS_AS(steady_state(zero_op(space), terms), AmbiguousSteadyState);
  }
  SECTION("a dissipationless model is rejected") {
    auto space = make_space({2, 1, 1});
    CHECK_THROWS_AS(steady_state(number_op(space, 0), {}), InvalidArgument);
  }
}

TEST_CASE("fixed-step integrator converges at fifth order") {
  auto space = make_space({2, 2, 2});
  auto d = resonant_squeezed(0.9);
  auto h = build_h_squeezed(d, space, 0.4);
  PhysicalParams rates;
  rates.kappa_l = 0.25;
  rates.kappa_r = 0.1;
  rates.gamma_q = 0.02;
  auto terms = build_collapse_terms(rates, Frame::squeezed, 0.0, space);
  auto rho0 = basis_state(space, {1, 0, 1});
  std::vector<Observable> obs{{"q", level_projector(space, 2, 1)}};
  auto grid = TimeGrid(0, 2.0, 3);

  EvolveOptions keep;
  keep.store_states = true;
  auto reference = evolve_master(h, terms, rho0, grid, obs, keep);  // exact propagator
  auto run = [&](double step) {
    EvolveOptions o;
    o.fixed_step = step;
    o.store_states = true;
    auto t = evolve_master(h, terms, rho0, grid, obs, o);
    return (t.states.back().density() - reference.states.back().density()).norm();
  };
  const double err_h = run(0.2);
  const double err_h2 = run(0.1);
  const double ratio = err_h / err_h2;
  INFO("errors " << err_h << " -> " << err_h2 << " ratio " << ratio);
  CHECK(ratio > 16.0);
  CHECK(ratio < 64.0);
}
