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

#include "hypercpf/analytic_states.hpp"

#include <cmath>

namespace hypercpf::analytic {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

using Pol = Polarization;

// Spin factor written in the +/- basis and expanded to up/down.
struct SpinPm {
  int sign;  // +1 for |+>, -1 for |->
  Complex on(Spin s) const { return s == Spin::Up ? kInvSqrt2 : sign * kInvSqrt2; }
};

constexpr SpinPm kPlus{+1};
constexpr SpinPm kMinus{-1};

// Adds coeff |pol_c, mode_c> (lambda1 F + lambda2 S)(varpi1 b1 + varpi2 b2) |s1>|s2>.
void add_with_target(AmplitudeMap& amps, const InputAmplitudes& in, Complex coeff, Pol pol_c,
                     ModeId mode_c, SpinPm s1, SpinPm s2) {
  const Pol pols[] = {Pol::F, Pol::S};
  const ModeId spats[] = {mode::k1, mode::k2};
  for (int pt = 0; pt < 2; ++pt)
    for (int st = 0; st < 2; ++st)
      for (Spin u1 : {Spin::Up, Spin::Down})
        for (Spin u2 : {Spin::Up, Spin::Down}) {
          const Complex amp = coeff * in.lambda[pt] * in.varpi[st] * s1.on(u1) * s2.on(u2);
          accumulate(amps, {pol_c, mode_c, pols[pt], spats[st], u1, u2}, amp);
        }
}

}  // namespace

SparseState after_stage1(const InputAmplitudes& in, const EmitterCoeffs& k) {
  const auto& a = in.alpha;
  const auto& b = in.beta;
  using namespace mode;
  AmplitudeMap amps;
  add_with_target(amps, in, k.c * a[0] * b[0], Pol::F, k11, kPlus, kPlus);
  add_with_target(amps, in, k.c * a[0] * b[1], Pol::F, k22, kPlus, kPlus);
  add_with_target(amps, in, k.c * a[1] * b[0], Pol::S, k12, kMinus, kPlus);
  add_with_target(amps, in, k.f * a[1] * b[0], Pol::F, k12, kPlus, kPlus);
  add_with_target(amps, in, k.c * a[1] * b[1], Pol::F, k21, kMinus, kPlus);
  add_with_target(amps, in, k.f * a[1] * b[1], Pol::S, k21, kPlus, kPlus);
  return SparseState(ModeSpace::standard(), std::move(amps));
}

SparseState after_stage2(const InputAmplitudes& in, const EmitterCoeffs& k) {
  const auto& a = in.alpha;
  const auto& b = in.beta;
  const Complex cc = k.c * k.c;
  const Complex cf = k.c * k.f;
  using namespace mode;
  AmplitudeMap amps;
  add_with_target(amps, in, cc * a[0] * b[0], Pol::F, k1, kPlus, kPlus);
  add_with_target(amps, in, cc * a[0] * b[1], Pol::F, k2, kPlus, kMinus);
  add_with_target(amps, in, cf * a[0] * b[1], Pol::S, kD3, kPlus, kPlus);
  add_with_target(amps, in, cc * a[1] * b[0], Pol::S, k1, kMinus, kPlus);
  add_with_target(amps, in, k.f * a[1] * b[0], Pol::F, kD1, kPlus, kPlus);
  add_with_target(amps, in, cc * a[1] * b[1], Pol::S, k2, kMinus, kMinus);
  add_with_target(amps, in, cf * a[1] * b[1], Pol::F, kD3, kMinus, kPlus);
  add_with_target(amps, in, k.f * a[1] * b[1], Pol::S, kD2, kPlus, kPlus);
  return SparseState(ModeSpace::standard(), std::move(amps));
}

SparseState after_target(const InputAmplitudes& in, const EmitterCoeffs& k) {
  const Complex c4 = std::pow(k.c, 4);
  const Pol pols[] = {Pol::F, Pol::S};
  const ModeId spats[] = {mode::k1, mode::k2};
  const Spin spins[] = {Spin::Up, Spin::Down};
  AmplitudeMap amps;
  // Control (i, j) is correlated with spins (spins[i], spins[j]).
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int pt = 0; pt < 2; ++pt)
        for (int st = 0; st < 2; ++st) {
          const double pol_sign = (i == 1 && pt == 1) ? -1.0 : 1.0;
          const double spat_sign = (j == 1 && st == 1) ? -1.0 : 1.0;
          const Complex amp = c4 * in.alpha[i] * in.beta[j] * in.lambda[pt] * in.varpi[st] *
                              pol_sign * spat_sign;
          accumulate(amps, {pols[i], spats[j], pols[pt], spats[st], spins[i], spins[j]}, amp);
        }
  return SparseState(ModeSpace::standard(), std::move(amps));
}

SparseState corrected_branch(const InputAmplitudes& in, const EmitterCoeffs& k) {
  const Complex prefactor = std::pow(k.c, 4) / 2.0;
  // (a1 l1 FF + a1 l2 FS + a2 l1 SF - a2 l2 SS)
  const Complex pol[2][2] = {{in.alpha[0] * in.lambda[0], in.alpha[0] * in.lambda[1]},
                             {in.alpha[1] * in.lambda[0], -in.alpha[1] * in.lambda[1]}};
  // (b1 v1 a1b1 + b1 v2 a1b2 + b2 v1 a2b1 - b2 v2 a2b2)
  const Complex spat[2][2] = {{in.beta[0] * in.varpi[0], in.beta[0] * in.varpi[1]},
                              {in.beta[1] * in.varpi[0], -in.beta[1] * in.varpi[1]}};
  const Pol pols[] = {Pol::F, Pol::S};
  const ModeId spats[] = {mode::k1, mode::k2};
  AmplitudeMap amps;
  for (int pc = 0; pc < 2; ++pc)
    for (int pt = 0; pt < 2; ++pt)
      for (int sc = 0; sc < 2; ++sc)
        for (int st = 0; st < 2; ++st) {
          accumulate(amps,
                     {pols[pc], spats[sc], pols[pt], spats[st], Spin::Detached, Spin::Detached},
                     prefactor * pol[pc][pt] * spat[sc][st]);
        }
  return SparseState(ModeSpace::standard(), std::move(amps));
}

}  // namespace hypercpf::analytic
