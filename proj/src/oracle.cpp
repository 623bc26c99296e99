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

#include "hypercpf/oracle.hpp"

#include <cmath>
#include <sstream>

#include "hypercpf/errors.hpp"

namespace hypercpf::oracle {

namespace {

// Factor positions inside the mixed-radix index.
enum Factor : int { kPolC = 0, kSpatC, kPolT, kSpatT, kSpin1, kSpin2, kFactorCount };

using Digits = std::array<std::size_t, kFactorCount>;

Digits radix_of(const DenseDims& dims) { return {2, dims.modes_c, 2, dims.modes_t, 2, 2}; }

Digits decode(std::size_t index, const Digits& radix) {
  Digits d{};
  for (int f = kFactorCount - 1; f >= 0; --f) {
    d[f] = index % radix[f];
    index /= radix[f];
  }
  return d;
}

std::size_t encode(const Digits& d, const Digits& radix) {
  std::size_t index = 0;
  for (int f = 0; f < kFactorCount; ++f) index = index * radix[f] + d[f];
  return index;
}

// Lifts `local`, acting on the listed factors (first listed = slowest), to
// the full basis with identity on every other factor.
void embed(const Eigen::MatrixXcd& local, const std::vector<int>& factors, const DenseDims& dims,
           Eigen::MatrixXcd& full) {
  const Digits radix = radix_of(dims);
  const auto n = static_cast<Eigen::Index>(dims.size());
  full.setZero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const Digits dcol = decode(static_cast<std::size_t>(col), radix);
    Eigen::Index local_col = 0;
    for (int f : factors) local_col = local_col * static_cast<Eigen::Index>(radix[f]) + dcol[f];
    for (Eigen::Index local_row = 0; local_row < local.rows(); ++local_row) {
      const Complex value = local(local_row, local_col);
      if (value == Complex{}) continue;
      Digits drow = dcol;
      auto rest = static_cast<std::size_t>(local_row);
      for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        drow[*it] = rest % radix[*it];
        rest /= radix[*it];
      }
      full(static_cast<Eigen::Index>(encode(drow, radix)), col) = value;
    }
  }
}

int pol_factor(PhotonSlot photon) { return photon == PhotonSlot::Control ? kPolC : kPolT; }
int spat_factor(PhotonSlot photon) { return photon == PhotonSlot::Control ? kSpatC : kSpatT; }
int spin_factor(int spin_index) { return spin_index == 1 ? kSpin1 : kSpin2; }

std::size_t modes_for(PhotonSlot photon, const DenseDims& dims) {
  return photon == PhotonSlot::Control ? dims.modes_c : dims.modes_t;
}

// Local basis (pol, spat): index = pol * N + spat.
Eigen::MatrixXcd pbs_local(const ElementStep& step, std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(n, n);
  auto swap_states = [&](int pol, std::optional<ModeId> a, std::optional<ModeId> b) {
    if (!a || !b || *a == *b) return;
    const Eigen::Index ia = pol * static_cast<Eigen::Index>(n_modes) + *a;
    const Eigen::Index ib = pol * static_cast<Eigen::Index>(n_modes) + *b;
    local(ia, ia) = 0.0;
    local(ib, ib) = 0.0;
    local(ia, ib) = 1.0;
    local(ib, ia) = 1.0;
  };
  // F transmits straight through, S is reflected across.
  swap_states(0, step.in[0], step.out[0]);
  swap_states(0, step.in[1], step.out[1]);
  swap_states(1, step.in[0], step.out[1]);
  swap_states(1, step.in[1], step.out[0]);
  return local;
}

Eigen::MatrixXcd single_mode_local(const Eigen::Matrix2cd& pol_block, ModeId mode,
                                   std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::Index m = mode;
  const Eigen::Index stride = static_cast<Eigen::Index>(n_modes);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) local(r * stride + m, c * stride + m) = pol_block(r, c);
  return local;
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

// (pol, spin) block of the photon-dot map in the up/down basis:
// conjugate the +/- basis form by I (x) H.
Eigen::Matrix4cd scatter_block(const EmitterCoeffs& coeffs) {
  Eigen::Matrix4cd pm = Eigen::Matrix4cd::Zero();  // index = pol * 2 + sign
  for (int pol = 0; pol < 2; ++pol)
    for (int sign = 0; sign < 2; ++sign) {
      const int in = pol * 2 + sign;
      pm(in, in) += coeffs.f;
      pm((1 - pol) * 2 + (1 - sign), in) += coeffs.c;
    }
  Eigen::Matrix4cd basis = Eigen::Matrix4cd::Zero();
  const Eigen::Matrix2cd h = hadamard();
  basis.block<2, 2>(0, 0) = h;
  basis.block<2, 2>(2, 2) = h;
  return basis * pm * basis;
}

// Local basis (pol, spat, spin): index = (pol * N + spat) * 2 + spin.
Eigen::MatrixXcd scatter_local(const EmitterCoeffs& coeffs, ModeId mode, std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(4 * n_modes);
  Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::Matrix4cd block = scatter_block(coeffs);
  auto at = [&](int pol, int spin) {
    return (pol * static_cast<Eigen::Index>(n_modes) + mode) * 2 + spin;
  };
  for (int pr = 0; pr < 2; ++pr)
    for (int sr = 0; sr < 2; ++sr)
      for (int pc = 0; pc < 2; ++pc)
        for (int sc = 0; sc < 2; ++sc) local(at(pr, sr), at(pc, sc)) = block(pr * 2 + sr, pc * 2 + sc);
  return local;
}

}  // namespace

DenseDims DenseDims::of(const ModeSpace& modes) {
  return {modes.size(PhotonSlot::Control), modes.size(PhotonSlot::Target)};
}

std::size_t DenseDims::index(const HyperBasisLabel& label) const {
  if (label.spin1 == Spin::Detached || label.spin2 == Spin::Detached) {
    throw ModeMismatchError("DenseDims: detached spins have no dense index");
  }
  if (label.spat_c >= modes_c || label.spat_t >= modes_t) {
    throw ModeMismatchError("DenseDims: spatial mode outside the dense basis");
  }
  const Digits d{static_cast<std::size_t>(label.pol_c), label.spat_c,
                 static_cast<std::size_t>(label.pol_t), label.spat_t,
                 static_cast<std::size_t>(label.spin1), static_cast<std::size_t>(label.spin2)};
  return encode(d, radix_of(*this));
}

HyperBasisLabel DenseDims::label(std::size_t index) const {
  const Digits d = decode(index, radix_of(*this));
  return {static_cast<Polarization>(d[kPolC]), static_cast<ModeId>(d[kSpatC]),
          static_cast<Polarization>(d[kPolT]), static_cast<ModeId>(d[kSpatT]),
          static_cast<Spin>(d[kSpin1]),        static_cast<Spin>(d[kSpin2])};
}

DenseState DenseState::from_sparse(const SparseState& state) {
  DenseState dense;
  dense.dims = DenseDims::of(state.modes());
  dense.modes = state.mode_space();
  dense.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dense.dims.size()));
  for (const auto& [label, amp] : state.amplitudes()) {
    dense.amplitudes(static_cast<Eigen::Index>(dense.dims.index(label))) = amp;
  }
  return dense;
}

void dense_element_matrix(const ElementStep& step, const EmitterCoeffs& coeffs,
                          const DenseDims& dims, Eigen::MatrixXcd& out) {
  const std::size_t n_modes = modes_for(step.photon, dims);
  const std::vector<int> photon_factors{pol_factor(step.photon), spat_factor(step.photon)};
  switch (step.kind) {
    case ElementKind::PBS:
      embed(pbs_local(step, n_modes), photon_factors, dims, out);
      return;
    case ElementKind::HWP: {
      Eigen::Matrix2cd flip;
      flip << 0, 1, 1, 0;
      embed(single_mode_local(flip, *step.in[0], n_modes), photon_factors, dims, out);
      return;
    }
    case ElementKind::WFC: {
      const Eigen::Matrix2cd scale = coeffs.c * Eigen::Matrix2cd::Identity();
      embed(single_mode_local(scale, *step.in[0], n_modes), photon_factors, dims, out);
      return;
    }
    case ElementKind::Detector: {
      const Eigen::Matrix2cd zero = Eigen::Matrix2cd::Zero();
      embed(single_mode_local(zero, *step.in[0], n_modes), photon_factors, dims, out);
      return;
    }
    case ElementKind::Circulator: {
      const auto n = static_cast<Eigen::Index>(dims.size());
      out.setIdentity(n, n);
      return;
    }
    case ElementKind::QDScatter:
      embed(scatter_local(coeffs, *step.in[0], n_modes),
            {pol_factor(step.photon), spat_factor(step.photon), spin_factor(step.spin_index)},
            dims, out);
      return;
    case ElementKind::SpinHadamard:
      embed(Eigen::MatrixXcd(hadamard()), {spin_factor(step.spin_index)}, dims, out);
      return;
  }
  throw ValidationError("dense_element_matrix: unknown element kind");
}

Eigen::MatrixXcd dense_element_matrix(const ElementStep& step, const EmitterCoeffs& coeffs,
                                      const DenseDims& dims) {
  Eigen::MatrixXcd out;
  dense_element_matrix(step, coeffs, dims, out);
  return out;
}

DenseState apply_dense(const Eigen::MatrixXcd& matrix, const DenseState& state) {
  DenseState out = state;
  out.amplitudes.noalias() = matrix * state.amplitudes;
  return out;
}

std::string CompareReport::describe(const ModeSpace& modes) const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << "max |sparse - dense| = " << max_discrepancy;
  if (worst_label) {
    const auto& l = *worst_label;
    os << " at (" << to_string(l.pol_c) << ", " << modes.name(PhotonSlot::Control, l.spat_c)
       << ", " << to_string(l.pol_t) << ", " << modes.name(PhotonSlot::Target, l.spat_t) << ", "
       << to_string(l.spin1) << ", " << to_string(l.spin2) << ")";
  }
  return os.str();
}

CompareReport compare_states(const SparseState& sparse, const DenseState& dense, double tol) {
  const DenseDims dims = DenseDims::of(sparse.modes());
  if (!(dims == dense.dims) ||
      dense.amplitudes.size() != static_cast<Eigen::Index>(dense.dims.size())) {
    throw ModeMismatchError("compare_states: dense dimension does not match the sparse mode space");
  }
  for (const auto& [label, amp] : sparse.amplitudes()) (void)dims.index(label);

  CompareReport report;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const HyperBasisLabel label = dims.label(i);
    const double diff =
        std::abs(sparse.amplitude(label) - dense.amplitudes(static_cast<Eigen::Index>(i)));
    if (diff > report.max_discrepancy) {
      report.max_discrepancy = diff;
      report.worst_label = label;
    }
  }
  report.pass = report.max_discrepancy < tol;
  return report;
}

PathComparison compare_circuit_paths(const ModeGraph& graph, const SparseState& input, double tol) {
  PathComparison result;
  SparseState sparse = input;
  DenseState dense = DenseState::from_sparse(input);
  Eigen::MatrixXcd workspace;
  for (const auto& stage : graph.stages) {
    for (const auto& step : stage.steps) {
      sparse = apply_step(sparse, step, graph.coeffs);
      dense_element_matrix(step, graph.coeffs, dense.dims, workspace);
      dense = apply_dense(workspace, dense);
      StepComparison cmp{stage.name, step.name, compare_states(sparse, dense, tol)};
      result.max_discrepancy = std::max(result.max_discrepancy, cmp.report.max_discrepancy);
      result.pass = result.pass && cmp.report.pass;
      result.steps.push_back(std::move(cmp));
    }
  }
  return result;
}

}  // namespace hypercpf::oracle
