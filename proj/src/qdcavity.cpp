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

#include "hypercpf/qdcavity.hpp"

#include <cmath>
#include <string>

#include "hypercpf/errors.hpp"

namespace hypercpf {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("CavityParams: " + what);
}

void require_finite(const CavityParams& params) {
  const double values[] = {params.omega_photon, params.omega_cavity, params.omega_exciton,
                           params.g,            params.kappa,        params.kappa_s,
                           params.gamma,        params.p};
  for (double v : values) require(std::isfinite(v), "all fields must be finite");
}

}  // namespace

void CavityParams::validate() const {
  require_finite(*this);
  require(kappa > 0.0, "kappa must be > 0");
  require(kappa_s >= 0.0, "kappa_s must be >= 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  require(g >= 0.0, "g must be >= 0");
  require(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
}

CavityParams CavityParams::resonant(double g_over_kappa, double kappa_s_over_kappa,
                                    double gamma_over_kappa, double p) {
  CavityParams params;
  params.g = g_over_kappa;
  params.kappa = 1.0;
  params.kappa_s = kappa_s_over_kappa;
  params.gamma = gamma_over_kappa;
  params.p = p;
  return params;
}

EmitterCoeffs EmitterCoeffs::from_reflections(Complex r0, Complex rh, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("EmitterCoeffs: p must lie in (0, 1]");
  EmitterCoeffs out;
  out.r0 = r0;
  out.rh = rh;
  out.c = 0.5 * p * (r0 - rh);
  out.f = 0.5 * p * (r0 + rh) + std::sqrt(1.0 - p * p);
  return out;
}

Complex reflection_coefficient(const CavityParams& params, bool coupled) {
  // kappa == 0 is allowed here (r == 1); emitter_coefficients enforces kappa > 0.
  require_finite(params);
  require(params.kappa >= 0.0, "kappa must be >= 0");
  require(params.kappa_s >= 0.0, "kappa_s must be >= 0");
  require(params.gamma >= 0.0, "gamma must be >= 0");
  require(params.g >= 0.0, "g must be >= 0");

  const Complex i{0.0, 1.0};
  const double g = coupled ? params.g : 0.0;
  const Complex dipole = i * (params.omega_exciton - params.omega_photon) + params.gamma / 2.0;
  const Complex field =
      i * (params.omega_cavity - params.omega_photon) + params.kappa / 2.0 + params.kappa_s / 2.0;
  const Complex denominator = dipole * field + g * g;
  if (denominator == Complex{0.0, 0.0}) {
    throw DegeneratePoleError("reflection_coefficient: denominator vanishes (degenerate pole)");
  }
  return 1.0 - params.kappa * dipole / denominator;
}

EmitterCoeffs emitter_coefficients(const CavityParams& params) {
  params.validate();
  return EmitterCoeffs::from_reflections(reflection_coefficient(params, false),
                                         reflection_coefficient(params, true), params.p);
}

}  // namespace hypercpf
