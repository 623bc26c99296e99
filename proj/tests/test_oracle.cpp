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

#include <cmath>
#include <random>

#include <Eigen/SparseCore>

#include "doctest.h"
#include "hypercpf/commands.hpp"
#include "hypercpf/errors.hpp"
#include "hypercpf/oracle.hpp"
#include "test_support.hpp"

using namespace hypercpf;
using namespace hypercpf::oracle;
using Eigen::MatrixXcd;

namespace {

const DenseDims& dims() {
  static const DenseDims d = DenseDims::of(*ModeSpace::standard());
  return d;
}

// The element matrices are nearly empty; sparse products keep the checks fast.
MatrixXcd product(const MatrixXcd& a, const MatrixXcd& b) {
  const Eigen::SparseMatrix<Complex> sa = a.sparseView(), sb = b.sparseView();
  return MatrixXcd(sa * sb);
}

bool is_identity(const MatrixXcd& m, double tol) {
  return (m - MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("dense basis indexing") {
  CHECK(dims().size() == 1296);
  for (std::size_t i = 0; i < dims().size(); ++i) {
    CHECK(dims().index(dims().label(i)) == i);
  }
  // spin2 is the fastest index.
  const HyperBasisLabel a{Polarization::F, 0, Polarization::F, 0, Spin::Up, Spin::Up};
  CHECK(dims().index(a) == 0);
  CHECK(dims().index(a.with_spin(2, Spin::Down)) == 1);
  CHECK(dims().index(a.with_spin(1, Spin::Down)) == 2);
}

TEST_CASE("dense element matrices") {
  const auto ideal = EmitterCoeffs::from_reflections(-1.0, 1.0, 1.0);
  SUBCASE("HWP squared is the identity") {
    const auto m = dense_element_matrix(ElementStep::hwp("H", PhotonSlot::Target, mode::k22), ideal, dims());
    CHECK(is_identity(product(m, m), 1e-15));
    CHECK_FALSE(is_identity(m, 0.5));
  }
  SUBCASE("QD scatter with c = -1, f = 0 is unitary") {
    for (int spin : {1, 2}) {
      const auto m = dense_element_matrix(
          ElementStep::qd_scatter("QD", PhotonSlot::Control, mode::k12, spin), ideal, dims());
      CHECK(is_identity(product(m.adjoint(), m), 1e-12));
    }
  }
  SUBCASE("PBS is a permutation") {
    const auto m = dense_element_matrix(
        ElementStep::pbs("PBS", PhotonSlot::Control, mode::k11, mode::k12, mode::k1, mode::kD1),
        ideal, dims());
    const auto zeros = (m.array() == Complex{0.0}).count();
    const auto ones = (m.array() == Complex{1.0}).count();
    CHECK(zeros + ones == m.size());
    CHECK(ones == m.rows());
    CHECK(is_identity(product(m.transpose(), m), 1e-300));
  }
  SUBCASE("detector projector is diagonal 0/1 and idempotent") {
    const auto m = dense_element_matrix(ElementStep::detector("D", PhotonSlot::Target, mode::kD2), ideal, dims());
    CHECK((m - MatrixXcd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    CHECK(((m.diagonal().array() == Complex{0.0}) || (m.diagonal().array() == Complex{1.0})).all());
    CHECK((product(m, m) - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.diagonal().real().sum() == doctest::Approx(1296.0 - 1296.0 / 9.0));
  }
  SUBCASE("workspace overload gives the same matrix") {
    std::mt19937_64 rng(1);
    const auto k = emitter_coefficients(random_params(rng));
    const auto step = ElementStep::wfc("W", PhotonSlot::Control, mode::k22);
    MatrixXcd out;
    dense_element_matrix(step, k, dims(), out);
    CHECK((out - dense_element_matrix(step, k, dims())).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("dense and sparse elements agree on random states") {
  std::mt19937_64 rng(2);
  const auto params = random_params(rng);
  const auto graph = build_circuit(params);
  MatrixXcd m;
  for (const auto& stage : graph.stages) {
    for (const auto& step : stage.steps) {
      CAPTURE(step.name);
      const auto s = testing::random_state(rng, 80);
      dense_element_matrix(step, graph.coeffs, dims(), m);
      const auto sparse = apply_step(s, step, graph.coeffs);
      const auto dense = apply_dense(m, DenseState::from_sparse(s));
      CHECK(compare_states(sparse, dense, 1e-12).pass);
    }
  }
}

TEST_CASE("compare_states") {
  std::mt19937_64 rng(3);
  const auto s = testing::random_state(rng);
  SUBCASE("identical content") {
    const auto r = compare_states(s, DenseState::from_sparse(s), 1e-12);
    CHECK(r.max_discrepancy == 0.0);
    CHECK(r.pass);
  }
  SUBCASE("a perturbation is reported at its label") {
    auto dense = DenseState::from_sparse(s);
    const HyperBasisLabel target{Polarization::S, mode::k21, Polarization::F, mode::kD3, Spin::Down, Spin::Up};
    dense.amplitudes[static_cast<Eigen::Index>(dims().index(target))] += 1e-6;
    const auto r = compare_states(s, dense, 1e-12);
    CHECK_FALSE(r.pass);
    REQUIRE(r.worst_label.has_value());
    CHECK(*r.worst_label == target);
    CHECK(r.max_discrepancy == doctest::Approx(1e-6).epsilon(1e-6));
    CHECK(r.describe(*ModeSpace::standard()).find("a21") != std::string::npos);
  }
  SUBCASE("dimension mismatch") {
    auto small = std::make_shared<const ModeSpace>(std::vector<std::string>{"a1", "a2", "a3"},
                                                  std::vector<std::string>{"b1", "b2", "b3"}, 0, 1);
    const SparseState other(small, {{HyperBasisLabel{Polarization::F, 2, Polarization::F, 2, Spin::Up, Spin::Up}, 1.0}});
    CHECK_THROWS_AS(compare_states(other, DenseState::from_sparse(s), 1e-12), ModeMismatchError);
  }
}

TEST_CASE("full circuit: dense and sparse paths agree after every element") {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 5; ++n) {
    const auto params = random_params(rng);
    const auto input = make_input_state(random_input(rng));
    const auto path = compare_circuit_paths(build_circuit(params), input, 1e-12);
    CAPTURE(n);
    CHECK(path.pass);
    CHECK(path.max_discrepancy < 1e-12);
    CHECK(path.steps.size() > 20);
  }
}
