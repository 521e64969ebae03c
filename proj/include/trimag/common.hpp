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

#ifndef TRIMAG_COMMON_HPP
#define TRIMAG_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimag {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kImag{0.0, 1.0};

// CODATA/SI exact values.
inline constexpr double kHbar = 1.054571817e-34;      // [J s]
inline constexpr double kBoltzmann = 1.380649e-23;    // [J/K]

/// Base class for all library errors.
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violations (bad dimensions, indices, malformed states).
class InvalidArgument : public SimError {
 public:
  using SimError::SimError;
};

/// |K| >= omega_k: the squeezed-mode frequency would be imaginary.
class UnstableSqueezing : public SimError {
 public:
  using SimError::SimError;
};

/// Branch detuning vanishes; the dispersive reduction is undefined.
class ResonantReduction : public SimError {
 public:
  using SimError::SimError;
};

/// g2(0) requested on a state with vanishing mode population.
class UndefinedCorrelation : public SimError {
 public:
  using SimError::SimError;
};

/// Singular amplitude linear system (degenerate resonance).
class ResonanceDegeneracy : public SimError {
 public:
  using SimError::SimError;
};

/// Liouvillian null space has dimension > 1.
class AmbiguousSteadyState : public SimError {
 public:
  using SimError::SimError;
};

/// Time stepping failed (step-size underflow, tolerance not met).
class IntegrationError : public SimError {
 public:
  using SimError::SimError;
};

/// A linear or spectral solve failed outside the integrator.
class SolverFailure : public SimError {
 public:
  using SimError::SimError;
};

/// A required parameter was not supplied (e.g. lab-frame frequency at T > 0).
class MissingParameter : public SimError {
 public:
  using SimError::SimError;
};

/// State weight outside the qubit subspace too large for the tangle.
class ProjectionError : public SimError {
 public:
  using SimError::SimError;
};

/// Model violates a structural assumption (e.g. amplifying conditional Hamiltonian).
class InvalidModel : public SimError {
 public:
  using SimError::SimError;
};

/// Configuration rejected; carries every problem found, not just the first.
class ConfigError : public SimError {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : SimError(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& ps) {
    std::string out = "configuration invalid:";
    for (const auto& p : ps) out += "\n  - " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

/// Top Fock level population exceeded the hard abort limit.
class LeakageError : public SimError {
 public:
  using SimError::SimError;
};

/// Bose-Einstein occupation at absolute angular frequency [rad/s] and T [K].
inline double bose_occupation(double omega_abs, double temperature) {
  if (temperature < 0.0) throw InvalidArgument("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  if (omega_abs <= 0.0) throw InvalidArgument("absolute frequency must be > 0 for a thermal bath");
  const double x = kHbar * omega_abs / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

}  // namespace trimag

#endif  // TRIMAG_COMMON_HPP
