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

#ifndef TRIMAG_MODEL_HPP
#define TRIMAG_MODEL_HPP

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

#include "trimag/common.hpp"
#include "trimag/hilbert.hpp"

namespace trimag {

enum class Mode { left, right };
enum class Frame { bare, squeezed };

/// Raw laboratory-frame quantities. All frequency-like entries are angular
/// [rad/s]; temperature in kelvin.
struct PhysicalParams {
  double omega_l = 0.0, omega_r = 0.0;  // magnon frequencies
  double kerr_l = 0.0, kerr_r = 0.0;    // Kerr strengths K_p
  double g_l = 0.0, g_r = 0.0;          // qutrit-magnon couplings
  double nu_l = 0.0, nu_r = 0.0;        // drive frequencies
  double drive_l = 0.0, drive_r = 0.0;  // drive amplitudes
  double omega_g = 0.0, omega_e = 0.0, omega_f = 0.0;  // qutrit level energies
  double kappa_l = 0.0, kappa_r = 0.0, gamma_q = 0.0;  // decay rates
  double temperature = 0.0;

  void validate() const {
    if (kappa_l < 0 || kappa_r < 0 || gamma_q < 0)
      throw InvalidArgument("decay rates must be >= 0");
    if (g_l < 0 || g_r < 0) throw InvalidArgument("couplings must be >= 0");
    if (temperature < 0) throw InvalidArgument("temperature must be >= 0");
  }
};

/// Outputs of the full derivation chain. Frequencies [rad/s]; xi and
/// cooperativities dimensionless.
struct DerivedParams {
  double drive_detuning_l = 0.0, drive_detuning_r = 0.0;      // omega_p - nu_p
  double qutrit_detuning_e = 0.0, qutrit_detuning_f = 0.0;    // rotating-frame level energies
  double omega_g = 0.0;
  double g_l = 0.0, g_r = 0.0;
  Complex steady_amplitude_l{0.0, 0.0}, steady_amplitude_r{0.0, 0.0};
  double kerr_shift_l = 0.0, kerr_shift_r = 0.0;              // -2K|<m>|^2
  double magnon_freq_l = 0.0, magnon_freq_r = 0.0;            // shifted mode frequencies
  double dpa_l = 0.0, dpa_r = 0.0;                            // parametric-amplification coefficients
  double branch_detuning_l = 0.0, branch_detuning_r = 0.0;
  double dispersive_ratio_l = 0.0, dispersive_ratio_r = 0.0;
  double coupling_kerr = 0.0;                                 // tripartite coupling, plain frame
  double qubit_freq = 0.0;
  double xi_l = 0.0, xi_r = 0.0;                              // squeezing parameters
  double squeezed_freq_l = 0.0, squeezed_freq_r = 0.0;
  double coupling_squeezed = 0.0;                             // tripartite coupling, squeezed frame
  double kappa_l = 0.0, kappa_r = 0.0, gamma_q = 0.0;
  double cooperativity_kerr = 0.0, cooperativity_squeezed = 0.0;
  std::vector<std::string> flags;
};

/// One jump channel of the master equation. `rate` is the full prefactor of
/// the dissipator (thermal factors already folded in); `thermal_occupation`
/// records the n-bar used.
struct LindbladTerm {
  std::string label;
  Operator jump;
  double rate = 0.0;
  double thermal_occupation = 0.0;
};

// ---------------------------------------------------------------------------
// Derivation chain
// ---------------------------------------------------------------------------

struct ClassicalRoot {
  Complex amplitude;
  bool stable = false;
};

namespace detail {

inline void classical_mode_params(const PhysicalParams& p, Mode mode, double& delta, double& kerr,
                                  double& kappa, double& drive) {
  if (mode == Mode::left) {
    delta = p.omega_l - p.nu_l;
    kerr = p.kerr_l;
    kappa = p.kappa_l;
    drive = p.drive_l;
  } else {
    delta = p.omega_r - p.nu_r;
    kerr = p.kerr_r;
    kappa = p.kappa_r;
    drive = p.drive_r;
  }
}

/// Linear stability of a fixed point of
///   dm/dt = -(i delta - i K |m|^2 + kappa/2) m - i Omega.
inline bool classical_root_stable(Complex m, double delta, double kerr, double kappa) {
  const double u = std::norm(m);
  const Complex a = Complex(0, -1) * (delta - 2.0 * kerr * u) - kappa / 2.0;
  const Complex b = Complex(0, 1) * kerr * m * m;
  const Complex disc = std::sqrt(b * std::conj(b) - Complex(a.imag() * a.imag(), 0.0));
  const double re1 = (Complex(a.real(), 0.0) + disc).real();
  const double re2 = (Complex(a.real(), 0.0) - disc).real();
  return std::max(re1, re2) < 0.0;
}

}  // namespace detail

/// All roots of the driven-Kerr classical steady state
///   (i delta - i K |m|^2 + kappa/2) m = -i Omega,
/// a cubic in |m|^2, each tagged with linear stability. Sorted by |m|^2.
inline std::vector<ClassicalRoot> solve_classical_amplitude(const PhysicalParams& p, Mode mode) {
  double delta, kerr, kappa, drive;
  detail::classical_mode_params(p, mode, delta, kerr, kappa, drive);
  if (!std::isfinite(delta) || !std::isfinite(drive))
    throw InvalidArgument("drive amplitude and detuning must be finite");

  std::vector<ClassicalRoot> roots;
  auto amplitude_at = [&](double u) {
    const Complex den = Complex(kappa / 2.0, delta - kerr * u);
    return Complex(0, -1) * drive / den;
  };

  if (drive == 0.0) {
    roots.push_back({Complex(0, 0), detail::classical_root_stable(0.0, delta, kerr, kappa)});
    return roots;
  }
  if (kerr == 0.0) {
    const Complex m = amplitude_at(0.0);
    roots.push_back({m, detail::classical_root_stable(m, delta, kerr, kappa)});
    return roots;
  }

  // K^2 u^3 - 2 delta K u^2 + (delta^2 + kappa^2/4) u - Omega^2 = 0
  const double c3 = kerr * kerr;
  const double c2 = -2.0 * delta * kerr;
  const double c1 = delta * delta + kappa * kappa / 4.0;
  const double c0 = -drive * drive;
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 2) = -c0 / c3;
  companion(1, 2) = -c1 / c3;
  companion(2, 2) = -c2 / c3;
  companion(1, 0) = companion(2, 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(companion);
  const double scale = std::abs(delta) + kappa + std::abs(kerr);
  for (int k = 0; k < 3; ++k) {
    const Complex u = es.eigenvalues()(k);
    if (std::abs(u.imag()) > 1e-9 * std::max(1.0, std::abs(u.real()))) continue;
    if (u.real() < 0.0) continue;
    const Complex m = amplitude_at(u.real());
    roots.push_back({m, detail::classical_root_stable(m, delta, kerr, kappa)});
    (void)scale;
  }
  std::sort(roots.begin(), roots.end(),
            [](const ClassicalRoot& a, const ClassicalRoot& b) {
              return std::norm(a.amplitude) < std::norm(b.amplitude);
            });
  return roots;
}

struct KerrLinearization {
  double magnon_freq = 0.0;   // omega_k = delta + kerr_shift
  Complex dpa{0.0, 0.0};      // K <m>^2
  double kerr_shift = 0.0;    // -2 K |<m>|^2
};

inline KerrLinearization linearize_kerr(const PhysicalParams& p, Complex amplitude, Mode mode) {
  double delta, kerr, kappa, drive;
  detail::classical_mode_params(p, mode, delta, kerr, kappa, drive);
  KerrLinearization out;
  out.kerr_shift = -2.0 * kerr * std::norm(amplitude);
  out.magnon_freq = delta + out.kerr_shift;
  out.dpa = kerr * amplitude * amplitude;
  return out;
}

struct DispersiveInput {
  double qutrit_detuning_e = 0.0, qutrit_detuning_f = 0.0, omega_g = 0.0;
  double magnon_freq_l = 0.0, magnon_freq_r = 0.0;
  double g_l = 0.0, g_r = 0.0;
};

struct DispersiveResult {
  double coupling_kerr = 0.0;
  double qubit_freq_full = 0.0;    // includes the g^2/Delta shifts
  double qubit_freq_approx = 0.0;  // qutrit_detuning_f - qutrit_detuning_e
  double branch_detuning_l = 0.0, branch_detuning_r = 0.0;
  double ratio_l = 0.0, ratio_r = 0.0;
  std::vector<std::string> flags;
};

/// Adiabatic elimination of the qutrit ground state. Valid only away from
/// resonance; ratios g/|Delta| are reported and flagged.
inline DispersiveResult dispersive_reduce(const DispersiveInput& in) {
  DispersiveResult out;
  out.branch_detuning_l = in.qutrit_detuning_e - in.omega_g - in.magnon_freq_l;
  out.branch_detuning_r = in.qutrit_detuning_f - in.omega_g - in.magnon_freq_r;
  if (out.branch_detuning_l == 0.0 || out.branch_detuning_r == 0.0)
    throw ResonantReduction("branch detuning vanishes; dispersive reduction undefined");
  out.coupling_kerr =
      0.5 * in.g_l * in.g_r * (1.0 / out.branch_detuning_l + 1.0 / out.branch_detuning_r);
  out.qubit_freq_approx = in.qutrit_detuning_f - in.qutrit_detuning_e;
  out.qubit_freq_full = out.qubit_freq_approx +
                        in.g_r * in.g_r / out.branch_detuning_r -
                        in.g_l * in.g_l / out.branch_detuning_l;
  out.ratio_l = in.g_l / std::abs(out.branch_detuning_l);
  out.ratio_r = in.g_r / std::abs(out.branch_detuning_r);
  auto classify = [&](double ratio, const char* tag) {
    if (ratio > 0.1)
      out.flags.push_back(std::string("dispersive_violated_") + tag);
    else if (ratio > 0.05)
      out.flags.push_back(std::string("dispersive_marginal_") + tag);
  };
  classify(out.ratio_l, "l");
  classify(out.ratio_r, "r");
  return out;
}

struct Squeezing {
  double xi = 0.0;
  double omega_s = 0.0;
};

/// Hyperbolic rotation that diagonalizes omega_k m'm - (K/2)(m'^2 + m^2).
inline Squeezing squeezing_transform(double magnon_freq, double dpa) {
  if (!(magnon_freq > std::abs(dpa)))
    throw UnstableSqueezing("requires omega_k > |K<m>^2|: squeezed frequency would be imaginary");
  Squeezing out;
  out.xi = 0.25 * std::log((magnon_freq + dpa) / (magnon_freq - dpa));
  out.omega_s = std::sqrt(magnon_freq * magnon_freq - dpa * dpa);
  return out;
}

struct EnhancementRatios {
  double exact_joint = 0.0;      // cosh(xi_l) cosh(xi_r), rotating-wave kept term
  double paper_asymptote = 0.0;  // exp(xi_l + xi_r)/4, large-xi limit
  double single = 0.0;           // cosh(xi_l), one squeezed mode only
  double coop_exact = 0.0;
  double coop_asymptote = 0.0;
};

inline EnhancementRatios enhancement_ratios(double xi_l, double xi_r) {
  EnhancementRatios out;
  out.exact_joint = std::cosh(xi_l) * std::cosh(xi_r);
  out.paper_asymptote = std::exp(xi_l + xi_r) / 4.0;
  out.single = std::cosh(xi_l);
  out.coop_exact = std::pow(out.exact_joint, 3);
  out.coop_asymptote = std::pow(out.paper_asymptote, 3);
  return out;
}

struct DeriveOptions {
  /// Right-branch qutrit detuning: true uses omega_f - nu_r (symmetric
  /// convention, default); false uses omega_e - nu_r.
  bool delta_f_from_omega_f = true;
  /// Drop the g^2/Delta shifts in the qubit frequency.
  bool qubit_freq_approx = false;
  /// Which stable classical root to linearize around when bistable.
  enum class Branch { lowest, highest } amplitude_branch = Branch::lowest;
};

namespace detail {

inline Complex pick_amplitude(const std::vector<ClassicalRoot>& roots,
                              DeriveOptions::Branch branch, std::vector<std::string>& flags,
                              const char* tag) {
  std::vector<ClassicalRoot> stable;
  for (const auto& r : roots)
    if (r.stable) stable.push_back(r);
  if (stable.empty()) throw InvalidModel("no stable classical amplitude for mode");
  if (roots.size() > 1) flags.push_back(std::string("bistable_") + tag);
  return branch == DeriveOptions::Branch::lowest ? stable.front().amplitude
                                                 : stable.back().amplitude;
}

}  // namespace detail

/// Full derivation chain: classical operating point, Kerr linearization,
/// dispersive reduction, squeezing transformation, enhanced coupling and
/// cooperativities. Drive phases are rotated so the parametric coefficients
/// come out real.
inline DerivedParams derive_params(const PhysicalParams& p, const DeriveOptions& opt = {}) {
  p.validate();
  DerivedParams d;
  d.g_l = p.g_l;
  d.g_r = p.g_r;
  d.omega_g = p.omega_g;
  d.kappa_l = p.kappa_l;
  d.kappa_r = p.kappa_r;
  d.gamma_q = p.gamma_q;
  d.drive_detuning_l = p.omega_l - p.nu_l;
  d.drive_detuning_r = p.omega_r - p.nu_r;
  d.qutrit_detuning_e = p.omega_e - p.nu_l;
  d.qutrit_detuning_f = (opt.delta_f_from_omega_f ? p.omega_f : p.omega_e) - p.nu_r;
  d.flags.push_back(opt.delta_f_from_omega_f ? "delta_f_convention=symmetric"
                                             : "delta_f_convention=literal");

  d.steady_amplitude_l = detail::pick_amplitude(solve_classical_amplitude(p, Mode::left),
                                                opt.amplitude_branch, d.flags, "l");
  d.steady_amplitude_r = detail::pick_amplitude(solve_classical_amplitude(p, Mode::right),
                                                opt.amplitude_branch, d.flags, "r");

  const auto lin_l = linearize_kerr(p, d.steady_amplitude_l, Mode::left);
  const auto lin_r = linearize_kerr(p, d.steady_amplitude_r, Mode::right);
  d.kerr_shift_l = lin_l.kerr_shift;
  d.kerr_shift_r = lin_r.kerr_shift;
  d.magnon_freq_l = lin_l.magnon_freq;
  d.magnon_freq_r = lin_r.magnon_freq;
  // Rotate the drive phase so <m>^2 (hence the parametric coefficient) is real.
  d.dpa_l = std::abs(lin_l.dpa);
  d.dpa_r = std::abs(lin_r.dpa);
  if (std::abs(std::arg(lin_l.dpa)) > 1e-12 && d.dpa_l > 0) d.flags.push_back("dpa_phase_rotated_l");
  if (std::abs(std::arg(lin_r.dpa)) > 1e-12 && d.dpa_r > 0) d.flags.push_back("dpa_phase_rotated_r");

  DispersiveInput din;
  din.qutrit_detuning_e = d.qutrit_detuning_e;
  din.qutrit_detuning_f = d.qutrit_detuning_f;
  din.omega_g = d.omega_g;
  din.magnon_freq_l = d.magnon_freq_l;
  din.magnon_freq_r = d.magnon_freq_r;
  din.g_l = d.g_l;
  din.g_r = d.g_r;
  const auto disp = dispersive_reduce(din);
  d.branch_detuning_l = disp.branch_detuning_l;
  d.branch_detuning_r = disp.branch_detuning_r;
  d.dispersive_ratio_l = disp.ratio_l;
  d.dispersive_ratio_r = disp.ratio_r;
  d.coupling_kerr = disp.coupling_kerr;
  d.qubit_freq = opt.qubit_freq_approx ? disp.qubit_freq_approx : disp.qubit_freq_full;
  d.flags.push_back(opt.qubit_freq_approx ? "qubit_freq=approx" : "qubit_freq=full");
  for (const auto& f : disp.flags) d.flags.push_back(f);

  const auto sq_l = squeezing_transform(d.magnon_freq_l, d.dpa_l);
  const auto sq_r = squeezing_transform(d.magnon_freq_r, d.dpa_r);
  d.xi_l = sq_l.xi;
  d.xi_r = sq_r.xi;
  d.squeezed_freq_l = sq_l.omega_s;
  d.squeezed_freq_r = sq_r.omega_s;
  d.coupling_squeezed = d.coupling_kerr * std::cosh(d.xi_l) * std::cosh(d.xi_r);

  const double loss = p.kappa_l * p.kappa_r * p.gamma_q;
  d.cooperativity_kerr = loss > 0 ? std::pow(d.coupling_kerr, 3) / loss
                                  : std::numeric_limits<double>::infinity();
  d.cooperativity_squeezed = loss > 0 ? std::pow(d.coupling_squeezed, 3) / loss
                                      : std::numeric_limits<double>::infinity();
  return d;
}

/// Effective-model parameters specified directly (figure-style inputs):
/// coupling, squeezing parameter, squeezed-frame frequencies, rates.
inline DerivedParams make_effective_params(double coupling_kerr, double xi, double squeezed_freq_l,
                                           double squeezed_freq_r, double qubit_freq,
                                           double kappa_l, double kappa_r, double gamma_q) {
  DerivedParams d;
  d.coupling_kerr = coupling_kerr;
  d.xi_l = d.xi_r = xi;
  d.squeezed_freq_l = squeezed_freq_l;
  d.squeezed_freq_r = squeezed_freq_r;
  d.qubit_freq = qubit_freq;
  d.kappa_l = kappa_l;
  d.kappa_r = kappa_r;
  d.gamma_q = gamma_q;
  d.coupling_squeezed = coupling_kerr * std::cosh(xi) * std::cosh(xi);
  const double loss = kappa_l * kappa_r * gamma_q;
  d.cooperativity_kerr = loss > 0 ? std::pow(d.coupling_kerr, 3) / loss
                                  : std::numeric_limits<double>::infinity();
  d.cooperativity_squeezed = loss > 0 ? std::pow(d.coupling_squeezed, 3) / loss
                                      : std::numeric_limits<double>::infinity();
  return d;
}

// ---------------------------------------------------------------------------
// Hamiltonian builders
// ---------------------------------------------------------------------------

namespace detail {

inline void require_shape(const SpaceDescriptor& space, int spin_dim, const char* what) {
  if (space.subsystems() != 3 || space.dim(2) != spin_dim)
    throw InvalidArgument(std::string(what) + ": space must be (Fock, Fock, " +
                          std::to_string(spin_dim) + "-level)");
}

inline Operator quadratic_mode_term(const SpaceDescriptor& space, int k, double freq, double dpa) {
  auto a = lowering_op(space, k);
  auto ad = a.adjoint();
  Operator h = freq * (ad * a);
  if (dpa != 0.0) h = h - (0.5 * dpa) * (ad * ad + a * a);
  return h;
}

}  // namespace detail

/// Three-level rotating-frame Hamiltonian: qutrit energies, linearized
/// magnon terms with parametric amplification, and both branch couplings.
inline Operator build_h_full(const DerivedParams& d, const SpaceDescriptor& space) {
  detail::require_shape(space, 3, "build_h_full");
  Operator h = d.omega_g * level_projector(space, 2, 0) +
               d.qutrit_detuning_e * level_projector(space, 2, 1) +
               d.qutrit_detuning_f * level_projector(space, 2, 2);
  h = h + detail::quadratic_mode_term(space, 0, d.magnon_freq_l, d.dpa_l);
  h = h + detail::quadratic_mode_term(space, 1, d.magnon_freq_r, d.dpa_r);
  auto ml = lowering_op(space, 0);
  auto mr = lowering_op(space, 1);
  auto sigma_l_plus = transition_op(space, 2, 1, 0);  // |e><g|
  auto sigma_r_plus = transition_op(space, 2, 2, 0);  // |f><g|
  Operator v = d.g_l * (ml * sigma_l_plus) + d.g_r * (mr * sigma_r_plus);
  return h + v + v.adjoint();
}

/// Effective qubit-frame Hamiltonian after adiabatic elimination, still in
/// the plain (unsqueezed) magnon frame: parametric terms survive.
inline Operator build_h_eff(const DerivedParams& d, const SpaceDescriptor& space) {
  detail::require_shape(space, 2, "build_h_eff");
  Operator h = (0.5 * d.qubit_freq) * sigma_z_op(space, 2);
  h = h + detail::quadratic_mode_term(space, 0, d.magnon_freq_l, d.dpa_l);
  h = h + detail::quadratic_mode_term(space, 1, d.magnon_freq_r, d.dpa_r);
  auto ml = lowering_op(space, 0);
  auto mr = lowering_op(space, 1);
  auto sigma_minus = transition_op(space, 2, 0, 1);  // |e><f|
  Operator flip = d.coupling_kerr * (ml * mr.adjoint() * sigma_minus);
  return h + flip + flip.adjoint();
}

/// Squeezed-frame Hamiltonian with the enhanced exchange coupling. `delta`
/// is an additive offset on the right-mode frequency (the swept detuning).
inline Operator build_h_squeezed(const DerivedParams& d, const SpaceDescriptor& space,
                                 double delta = 0.0) {
  detail::require_shape(space, 2, "build_h_squeezed");
  Operator h = (0.5 * d.qubit_freq) * sigma_z_op(space, 2);
  h = h + d.squeezed_freq_l * number_op(space, 0) +
      (d.squeezed_freq_r + delta) * number_op(space, 1);
  auto ml = lowering_op(space, 0);
  auto mr = lowering_op(space, 1);
  auto sigma_minus = transition_op(space, 2, 0, 1);
  Operator flip = d.coupling_squeezed * (ml * mr.adjoint() * sigma_minus);
  return h + flip + flip.adjoint();
}

/// Squeezed-frame Hamiltonian plus a weak probe on the right mode.
inline Operator build_h_blockade(const DerivedParams& d, const SpaceDescriptor& space,
                                 double probe_amplitude, double delta = 0.0) {
  if (probe_amplitude < 0) throw InvalidArgument("probe amplitude must be >= 0");
  Operator h = build_h_squeezed(d, space, delta);
  auto mr = lowering_op(space, 1);
  return h + probe_amplitude * (mr + mr.adjoint());
}

/// Non-Hermitian generator for no-jump evolution: decay enters as -i/2 times
/// the number operators and the qubit excited-state projector.
inline Operator build_h_conditional(const DerivedParams& d, const SpaceDescriptor& space,
                                    double delta = 0.0) {
  if (d.kappa_l < 0 || d.kappa_r < 0 || d.gamma_q < 0)
    throw InvalidArgument("decay rates must be >= 0");
  Operator h = build_h_squeezed(d, space, delta);
  const Complex half(0.0, -0.5);
  return h + (half * d.kappa_l) * number_op(space, 0) + (half * d.kappa_r) * number_op(space, 1) +
         (half * d.gamma_q) * level_projector(space, 2, 1);
}

/// Jump channels of the master equation. At T = 0 the three channels of the
/// model; at T > 0 each bosonic channel splits into downward kappa(nbar+1)
/// and upward kappa nbar parts, with nbar evaluated at the absolute
/// (lab-frame) mode frequency taken from `params`.
inline std::vector<LindbladTerm> build_collapse_terms(const PhysicalParams& params, Frame frame,
                                                      double temperature,
                                                      const SpaceDescriptor& space) {
  if (temperature < 0) throw InvalidArgument("temperature must be >= 0");
  detail::require_shape(space, frame == Frame::squeezed ? 2 : 3, "build_collapse_terms");
  std::vector<LindbladTerm> terms;
  auto add_mode = [&](int sub, double kappa, double omega_abs, const char* tag) {
    if (temperature == 0.0 || kappa == 0.0) {
      terms.push_back({std::string("decay_") + tag, lowering_op(space, sub), kappa, 0.0});
      return;
    }
    if (omega_abs <= 0.0)
      throw MissingParameter(
          "thermal occupation needs the absolute lab-frame mode frequency (omega_l/omega_r)");
    const double nbar = bose_occupation(omega_abs, temperature);
    terms.push_back(
        {std::string("decay_") + tag, lowering_op(space, sub), kappa * (nbar + 1.0), nbar});
    terms.push_back(
        {std::string("heating_") + tag, raising_op(space, sub), kappa * nbar, nbar});
  };
  add_mode(0, params.kappa_l, params.omega_l, "l");
  add_mode(1, params.kappa_r, params.omega_r, "r");
  // |e><f| in both frames: qubit levels (e,f) = (0,1); qutrit (g,e,f) = (0,1,2).
  Operator sm = frame == Frame::squeezed ? transition_op(space, 2, 0, 1)
                                         : transition_op(space, 2, 1, 2);
  terms.push_back({"decay_q", sm, params.gamma_q, 0.0});
  return terms;
}

}  // namespace trimag

#endif  // TRIMAG_MODEL_HPP
