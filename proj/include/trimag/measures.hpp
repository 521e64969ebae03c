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

#ifndef TRIMAG_MEASURES_HPP
#define TRIMAG_MEASURES_HPP

#include <array>
#include <cmath>

#include "trimag/common.hpp"
#include "trimag/hilbert.hpp"
#include "trimag/model.hpp"

namespace trimag {

struct Occupations {
  double left_mode = 0.0;
  double right_mode = 0.0;
  double qubit = 0.0;  // <sigma_+ sigma_-> = population of |f>
};

inline Occupations occupations(const QuantumState& state) {
  const auto& space = state.space();
  if (space.subsystems() != 3 || space.dim(2) != 2)
    throw InvalidArgument("occupations needs a (Fock, Fock, qubit) space");
  Occupations out;
  out.left_mode = state.expectation(number_op(space, 0)).real();
  out.right_mode = state.expectation(number_op(space, 1)).real();
  out.qubit = state.expectation(level_projector(space, 2, 1)).real();
  return out;
}

/// Equal-time second-order correlation <m'm'mm> / <m'm>^2 of a mode.
inline double g2_zero(const QuantumState& state, Mode mode, double floor = 1e-14) {
  const auto& space = state.space();
  const int sub = mode == Mode::left ? 0 : 1;
  space.check_index(sub);
  auto a = lowering_op(space, sub);
  auto ad = a.adjoint();
  const double n = state.expectation(ad * a).real();
  if (n <= floor)
    throw UndefinedCorrelation("mode population below numerical floor; g2(0) undefined");
  double num = state.expectation(ad * ad * a * a).real();
  if (num < 0.0 && num > -1e-12) num = 0.0;
  return num / (n * n);
}

/// Maximally entangled single-excitation target
///   (|1_l, 0_r, f> + exp(i phase) |0_l, 1_r, e>) / sqrt(2).
/// The exchange dynamics generates the swapped branch with a -i phase, so
/// the default is phase = -pi/2; phase = 0 is the symmetric convention.
inline QuantumState ghz_state(const SpaceDescriptor& space, double phase = -0.5 * kPi) {
  if (space.subsystems() != 3 || space.dim(2) != 2)
    throw InvalidArgument("ghz_state needs a (Fock, Fock, qubit) space");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.total());
  psi(space.flatten({1, 0, 1})) = 1.0 / std::sqrt(2.0);
  psi(space.flatten({0, 1, 0})) = std::exp(Complex(0, phase)) / std::sqrt(2.0);
  return QuantumState::pure(space, psi);
}

inline double ghz_fidelity(const QuantumState& state, double phase = -0.5 * kPi) {
  const auto target = ghz_state(state.space(), phase);
  const Eigen::VectorXcd& g = target.vector();
  const double f = (g.adjoint() * state.density() * g)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

/// Hyperdeterminant coefficients of a three-qubit amplitude vector indexed
/// a[i*4 + j*2 + k].
struct TangleCoefficients {
  Complex d1{0, 0}, d2{0, 0}, d3{0, 0};
};

inline TangleCoefficients tangle_coefficients(const std::array<Complex, 8>& a) {
  auto at = [&](int i, int j, int k) { return a[4 * i + 2 * j + k]; };
  TangleCoefficients c;
  const Complex a000 = at(0, 0, 0), a001 = at(0, 0, 1), a010 = at(0, 1, 0), a011 = at(0, 1, 1);
  const Complex a100 = at(1, 0, 0), a101 = at(1, 0, 1), a110 = at(1, 1, 0), a111 = at(1, 1, 1);
  c.d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
         a100 * a100 * a011 * a011;
  c.d2 = a000 * a111 * (a011 * a100 + a101 * a010 + a110 * a001) + a011 * a100 * a101 * a010 +
         a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
  c.d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  return c;
}

/// Residual tangle 4|d1 - 2 d2 + 4 d3| of a pure state, evaluated on the
/// qubit subspace (Fock levels {0,1} per mode). The weight outside that
/// subspace must be negligible relative to the state norm; conditional
/// (subnormalized) states are accepted and yield norm-scaled values.
inline double residual_tangle(const QuantumState& state, double projection_tol = 1e-6) {
  if (!state.is_pure()) throw InvalidArgument("residual tangle is defined for pure states");
  const auto& space = state.space();
  if (space.subsystems() != 3 || space.dim(2) != 2 || space.dim(0) < 2 || space.dim(1) < 2)
    throw InvalidArgument("residual tangle needs a (Fock>=2, Fock>=2, qubit) space");
  const Eigen::VectorXcd& psi = state.vector();
  std::array<Complex, 8> a{};
  double kept = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const Complex amp = psi(space.flatten({i, j, k}));
        a[4 * i + 2 * j + k] = amp;
        kept += std::norm(amp);
      }
  const double total = psi.squaredNorm();
  if (total <= 0.0) throw InvalidArgument("zero state");
  if (kept / total < 1.0 - projection_tol)
    throw ProjectionError("state weight outside the qubit subspace: " +
                          std::to_string(1.0 - kept / total));
  const auto c = tangle_coefficients(a);
  return 4.0 * std::abs(c.d1 - 2.0 * c.d2 + 4.0 * c.d3);
}

/// Closed-form residual tangle of the exchange dynamics started from
/// |1_l, 0_r, f>:
///   tau(t) = (4 G^2/Omega^2) [cos^2(Omega t) + (Delta^2/4 Omega^2) sin^2(Omega t)] sin^2(Omega t)
/// with Omega = sqrt(G^2 + Delta^2/4).
inline double residual_tangle_closed_form(double coupling, double delta, double t) {
  const double omega2 = coupling * coupling + 0.25 * delta * delta;
  if (omega2 == 0.0) return 0.0;
  const double omega = std::sqrt(omega2);
  const double s2 = std::pow(std::sin(omega * t), 2);
  const double c2 = std::pow(std::cos(omega * t), 2);
  return 4.0 * coupling * coupling / omega2 * (c2 + 0.25 * delta * delta / omega2 * s2) * s2;
}

struct ContangleResult {
  double value = 0.0;
  bool clipped = false;                     // the minimum residual was negative
  std::array<double, 3> residuals{};        // per focus subsystem, unclipped
  std::array<double, 3> one_to_rest{};      // E^(A|BC) per focus
};

/// Minimum residual contangle from squared log2 trace norms of partial
/// transposes, minimized over the focus subsystem.
inline ContangleResult min_residual_contangle(const QuantumState& state) {
  const auto& space = state.space();
  if (space.subsystems() != 3)
    throw InvalidArgument("minimum residual contangle needs a three-factor space");
  if (std::abs(state.trace().real() - 1.0) > 1e-8)
    throw InvalidArgument("contangle needs a normalized state");

  auto log_sq_neg = [](double tn) {
    const double v = std::log2(std::max(tn, 1e-300));
    return v * v;
  };

  ContangleResult out;
  for (int focus = 0; focus < 3; ++focus) {
    const double e_full = log_sq_neg(trace_norm(partial_transpose(state, focus)));
    out.one_to_rest[focus] = e_full;
    double e_pairs = 0.0;
    for (int other = 0; other < 3; ++other) {
      if (other == focus) continue;
      auto reduced = partial_trace(state, {focus, other});
      const int focus_in_reduced = focus < other ? 0 : 1;
      e_pairs += log_sq_neg(trace_norm(partial_transpose(reduced, focus_in_reduced)));
    }
    out.residuals[focus] = e_full - e_pairs;
  }
  const double min_res = *std::min_element(out.residuals.begin(), out.residuals.end());
  if (min_res < 0.0) {
    out.clipped = true;
    out.value = 0.0;
  } else {
    out.value = min_res;
  }
  return out;
}

}  // namespace trimag

#endif  // TRIMAG_MEASURES_HPP
