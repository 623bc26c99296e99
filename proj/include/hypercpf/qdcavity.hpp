// Copyright 2026 The hypercpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

namespace hypercpf {

using Complex = std::complex<double>;

/// Physical parameters of one charged-dot/single-sided-cavity emitter.
///
/// Every rate and frequency is expressed in units of the cavity decay
/// rate, so `kappa` is normally 1. Only differences of the three angular
/// frequencies enter the reflection coefficient.
struct CavityParams {
  double omega_photon = 0.0;
  double omega_cavity = 0.0;
  double omega_exciton = 0.0;
  double g = 0.0;
  double kappa = 1.0;
  double kappa_s = 0.0;
  double gamma = 0.1;
  /// Interaction-completeness coefficient, p in (0, 1].
  double p = 1.0;

  /// Throws ValidationError naming the first offending field.
  void validate() const;

  /// Resonant parameter set (omega = omega_c = omega_X) in units of kappa.
  static CavityParams resonant(double g_over_kappa, double kappa_s_over_kappa,
                               double gamma_over_kappa, double p);
};

/// Scattering coefficients of one photon-dot interaction.
struct EmitterCoeffs {
  Complex r0;  // cold cavity
  Complex rh;  // hot cavity
  Complex c;   // success amplitude, (p/2)(r0 - rh)
  Complex f;   // error amplitude, (p/2)(r0 + rh) + sqrt(1 - p^2)

  /// Builds (c, f) from given reflections; p must lie in (0, 1].
  static EmitterCoeffs from_reflections(Complex r0, Complex rh, double p);
};

/// Steady-state reflection of the single-sided cavity for a weak probe.
///
/// `coupled == false` evaluates the cold cavity (g treated as 0);
/// `coupled == true` uses params.g. Throws DegeneratePoleError when the
/// denominator is exactly zero, ValidationError for negative rates.
Complex reflection_coefficient(const CavityParams& params, bool coupled);

EmitterCoeffs emitter_coefficients(const CavityParams& params);

}  // namespace hypercpf
