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

#include "hypercpf/hyperstate.hpp"
#include "hypercpf/qdcavity.hpp"

// Hand-transcribed closed-form states of the hyper-CPF circuit, written
// term by term in terms of the input amplitudes and (c, f). They share no
// code with the element-by-element simulation and serve as its reference.

namespace hypercpf::analytic {

/// After the first pass of the control photon (PBS1/PBS3, QD1, HWP1, WFC1/2).
SparseState after_stage1(const InputAmplitudes& in, const EmitterCoeffs& coeffs);

/// After the second control pass, detector-bound terms included.
SparseState after_stage2(const InputAmplitudes& in, const EmitterCoeffs& coeffs);

/// After the target pass with no detector click: c^4 prefactor, target
/// polarization sign flipped when spin1 is down, target spatial sign
/// flipped when spin2 is down.
SparseState after_target(const InputAmplitudes& in, const EmitterCoeffs& coeffs);

/// Photon state of one spin branch after its correction: (c^4 / 2) times
/// the ideal hyper-CPF output, built as a product of a polarization factor
/// and a spatial factor.
SparseState corrected_branch(const InputAmplitudes& in, const EmitterCoeffs& coeffs);

}  // namespace hypercpf::analytic
