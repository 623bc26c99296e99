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

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypercpf/gatecircuit.hpp"
#include "hypercpf/hyperstate.hpp"
#include "hypercpf/optics.hpp"

// Brute-force dense simulator. Every element is materialized as an explicit
// matrix over the full enumerated basis and applied by matrix-vector product.

namespace hypercpf::oracle {

/// Full basis: pol_c (2) x spat_c (Nc) x pol_t (2) x spat_t (Nt) x spin1 (2)
/// x spin2 (2), mixed radix with spin2 fastest:
///   index = ((((pol_c*Nc + spat_c)*2 + pol_t)*Nt + spat_t)*2 + spin1)*2 + spin2
struct DenseDims {
  std::size_t modes_c = 0;
  std::size_t modes_t = 0;

  static DenseDims of(const ModeSpace& modes);

  std::size_t size() const { return 2 * modes_c * 2 * modes_t * 2 * 2; }
  std::size_t index(const HyperBasisLabel& label) const;
  HyperBasisLabel label(std::size_t index) const;
  bool operator==(const DenseDims&) const = default;
};

struct DenseState {
  DenseDims dims;
  std::shared_ptr<const ModeSpace> modes;
  Eigen::VectorXcd amplitudes;

  static DenseState from_sparse(const SparseState& state);
  double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Matrix of `step` on the full basis; identity away from the touched
/// subspace. Detectors give the 0/1 projector that keeps undetected labels.
Eigen::MatrixXcd dense_element_matrix(const ElementStep& step, const EmitterCoeffs& coeffs,
                                      const DenseDims& dims);

/// Same, writing into `out` so a caller can reuse one allocation.
void dense_element_matrix(const ElementStep& step, const EmitterCoeffs& coeffs,
                          const DenseDims& dims, Eigen::MatrixXcd& out);

DenseState apply_dense(const Eigen::MatrixXcd& matrix, const DenseState& state);

struct CompareReport {
  double max_discrepancy = 0.0;
  std::optional<HyperBasisLabel> worst_label;
  bool pass = true;

  std::string describe(const ModeSpace& modes) const;
};

/// Largest |sparse - dense| over the whole basis. Throws ModeMismatchError
/// when the sparse state does not fit `dense.dims`.
CompareReport compare_states(const SparseState& sparse, const DenseState& dense, double tol);

struct StepComparison {
  std::string stage;
  std::string step;
  CompareReport report;
};

struct PathComparison {
  std::vector<StepComparison> steps;
  double max_discrepancy = 0.0;
  bool pass = true;
};

/// Runs the full circuit on both paths, comparing after every element.
PathComparison compare_circuit_paths(const ModeGraph& graph, const SparseState& input, double tol);

}  // namespace hypercpf::oracle
