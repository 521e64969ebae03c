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

#include <unsupported/Eigen/KroneckerProduct>

#include <random>

#include "trimag/hilbert.hpp"

using namespace trimag;
using Catch::Approx;

TEST_CASE("make_space computes total dimension and rejects bad dims") {
  CHECK(make_space({4, 4, 2}).total() == 32);
  CHECK(make_space({1}).total() == 1);
  CHECK(make_space({3, 3, 3}).total() == 27);
  CHECK_THROWS_AS(make_space({0, 2}), InvalidArgument);
  CHECK_THROWS_AS(make_space({-1}), InvalidArgument);
  CHECK_THROWS_AS(make_space({}), InvalidArgument);
}

TEST_CASE("lowering operator has sqrt(n) matrix elements") {
  auto s2 = make_space({2});
  auto a2 = lowering_op(s2, 0);
  CHECK(a2.coeff(0, 1) == Complex(1.0, 0.0));
  CHECK(a2.sparse().nonZeros() == 1);

  auto s3 = make_space({3});
  auto a3 = lowering_op(s3, 0);
  CHECK(a3.coeff(1, 2).real() == Approx(std::sqrt(2.0)));

  auto s4 = make_space({4});
  auto n4 = (lowering_op(s4, 0).adjoint() * lowering_op(s4, 0)).dense();
  for (int k = 0; k < 4; ++k) CHECK(n4(k, k).real() == Approx(double(k)));
  CHECK((n4 - number_op(s4, 0).dense()).norm() == Approx(0.0).margin(1e-14));

  CHECK_THROWS_AS(lowering_op(s4, 1), InvalidArgument);
}

TEST_CASE("spin operators follow the level conventions") {
  auto qubit = make_space({2});
  auto sz = sigma_z_op(qubit, 0).dense();
  CHECK(sz(0, 0).real() == Approx(-1.0));  // |e>
  CHECK(sz(1, 1).real() == Approx(1.0));   // |f>

  auto qutrit = make_space({3});
  auto sl_minus = transition_op(qutrit, 0, 0, 1);  // |g><e|
  CHECK(sl_minus.coeff(0, 1) == Complex(1.0, 0.0));
  CHECK(sl_minus.sparse().nonZeros() == 1);

  auto szq = sigma_z_op(qutrit, 0).dense();
  CHECK(szq(0, 0).real() == Approx(0.0));
  CHECK(szq(1, 1).real() == Approx(-1.0));
  CHECK(szq(2, 2).real() == Approx(1.0));

  // sigma_+ sigma_- = |f><f| on the qubit
  auto sp = transition_op(qubit, 0, 1, 0);
  auto sm = transition_op(qubit, 0, 0, 1);
  CHECK(((sp * sm).dense() - level_projector(qubit, 0, 1).dense()).norm() == Approx(0.0));

  CHECK_THROWS_AS(transition_op(qubit, 0, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(sigma_z_op(make_space({4}), 0), InvalidArgument);
}

TEST_CASE("adjoint is an involution and reverses products") {
  auto space = make_space({3, 2});
  auto a = lowering_op(space, 0);
  auto b = transition_op(space, 1, 1, 0);
  CHECK((a.adjoint().adjoint().dense() - a.dense()).norm() == 0.0);
  CHECK(((a * b).adjoint().dense() - (b.adjoint() * a.adjoint()).dense()).norm() < 1e-14);
}

TEST_CASE("partial trace on product and entangled states") {
  auto space = make_space({2, 2});
  SECTION("product state factorizes") {
    auto psi = basis_state(space, {0, 1});
    auto red = partial_trace(psi, {0});
    CHECK(red.space().total() == 2);
    CHECK(red.density()(0, 0).real() == Approx(1.0));
    CHECK(std::abs(red.density()(1, 1)) == Approx(0.0));
  }
  SECTION("Bell state reduces to maximally mixed") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(space.flatten({0, 1})) = 1.0 / std::sqrt(2.0);
    v(space.flatten({1, 0})) = 1.0 / std::sqrt(2.0);
    auto bell = QuantumState::pure(space, v);
    auto red = partial_trace(bell, {0});
    CHECK(red.density()(0, 0).real() == Approx(0.5));
    CHECK(red.density()(1, 1).real() == Approx(0.5));
    CHECK(std::abs(red.density()(0, 1)) == Approx(0.0));
  }
  SECTION("trace preserved for random mixed states") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    auto sp = make_space({2, 3, 2});
    Eigen::MatrixXcd g(12, 12);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    auto st = QuantumState::mixed(sp, rho);
    for (auto keep : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
      auto red = partial_trace(st, keep);
      CHECK(red.trace().real() == Approx(1.0).margin(1e-12));
    }
  }
  CHECK_THROWS_AS(partial_trace(basis_state(space, {0, 0}), {}), InvalidArgument);
}

TEST_CASE("partial transpose properties") {
  auto space = make_space({2, 2});
  SECTION("product states keep their spectrum") {
    Eigen::MatrixXcd ra(2, 2), rb(2, 2);
    ra << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
    rb << 0.4, Complex(0.0, -0.1), Complex(0.0, 0.1), 0.6;
    Eigen::MatrixXcd rho = Eigen::kroneckerProduct(ra, rb).eval();
    auto st = QuantumState::mixed(space, rho);
    auto pt = partial_transpose(st, 0);
    Eigen::MatrixXcd expected = Eigen::kroneckerProduct(ra.transpose().eval(), rb).eval();
    CHECK((pt - expected).norm() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(rho), e2(pt);
    CHECK((e1.eigenvalues() - e2.eigenvalues()).norm() < 1e-12);
  }
  SECTION("Bell state has a -1/2 eigenvalue and involution holds") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(1) = v(2) = 1.0 / std::sqrt(2.0);
    auto bell = QuantumState::pure(space, v);
    auto pt = partial_transpose(bell, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt);
    CHECK(es.eigenvalues().minCoeff() == Approx(-0.5));
    auto back = partial_transpose(QuantumState::mixed(space, pt), 0);
    CHECK((back - bell.density()).norm() < 1e-14);
    CHECK((pt - pt.adjoint()).norm() < 1e-14);
  }
  CHECK_THROWS_AS(partial_transpose(basis_state(space, {0, 0}), 5), InvalidArgument);
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(Eigen::MatrixXcd::Identity(5, 5)) == Approx(5.0));
  auto space = make_space({2, 2});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  auto bell = QuantumState::pure(space, v);
  CHECK(trace_norm(bell.density()) == Approx(1.0));
  CHECK(trace_norm(partial_transpose(bell, 0)) == Approx(2.0));
  CHECK_THROWS_AS(trace_norm(Eigen::MatrixXcd::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("bosonic commutator is canonical below the truncation level") {
  auto space = make_space({5});
  auto a = lowering_op(space, 0);
  Eigen::MatrixXcd comm = (a * a.adjoint() - a.adjoint() * a).dense();
  for (int n = 0; n < 4; ++n) CHECK(comm(n, n).real() == Approx(1.0));
  CHECK(comm(4, 4).real() == Approx(-4.0));  // top level closes the ladder
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) CHECK(std::abs(comm(i, j)) == 0.0);
}

TEST_CASE("operators embedded on different subsystems commute exactly") {
  auto space = make_space({3, 3, 2});
  auto al = lowering_op(space, 0);
  auto ar = raising_op(space, 1);
  auto sz = sigma_z_op(space, 2);
  CHECK(((al * ar) - (ar * al)).dense().norm() == 0.0);
  CHECK(((al * sz) - (sz * al)).dense().norm() == 0.0);
  CHECK(((ar * sz) - (sz * ar)).dense().norm() == 0.0);
}

TEST_CASE("partial trace absorbs a partial transpose on the traced factor") {
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  auto space = make_space({2, 2, 2});
  Eigen::MatrixXcd g(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  auto st = QuantumState::mixed(space, rho);
  auto direct = partial_trace(st, {0, 1});
  auto transposed = QuantumState::mixed(space, partial_transpose(st, 2));
  auto via_pt = partial_trace(transposed, {0, 1});
  CHECK((direct.density() - via_pt.density()).norm() < 1e-12);
}

TEST_CASE("partial transpose of separable states keeps unit trace norm") {
  std::mt19937 rng(23);
  std::normal_distribution<double> gauss;
  auto space = make_space({2, 3});
  auto random_pure = [&](int d) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
  };
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(6, 6);
    std::vector<double> w;
    double wsum = 0;
    for (int k = 0; k < 4; ++k) {
      w.push_back(std::abs(gauss(rng)) + 0.1);
      wsum += w.back();
    }
    for (int k = 0; k < 4; ++k) {
      auto va = random_pure(2), vb = random_pure(3);
      Eigen::VectorXcd prod = Eigen::kroneckerProduct(va, vb).eval();
      rho += (w[k] / wsum) * (prod * prod.adjoint());
    }
    auto st = QuantumState::mixed(space, rho);
    const double tn = trace_norm(partial_transpose(st, 0));
    CHECK(tn >= 1.0 - 1e-10);
    CHECK(tn == Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("state validation and leakage probe") {
  auto space = make_space({3, 2});
  auto st = basis_state(space, {2, 0});
  st.validate();
  CHECK(st.top_level_population(0) == Approx(1.0));
  CHECK(st.top_level_population(1) == Approx(0.0));

  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(6);
  bad(0) = 0.5;
  CHECK_THROWS_AS(QuantumState::pure(space, bad).validate(), InvalidArgument);
  QuantumState::pure(space, bad).validate(/*allow_subnormalized=*/true);

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(6, 6);
  rho(0, 0) = 1.0;
  rho(0, 1) = Complex(0, 0.5);  // non-Hermitian
  CHECK_THROWS_AS(QuantumState::mixed(space, rho).validate(), InvalidArgument);
}
