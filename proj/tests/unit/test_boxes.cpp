// Copyright 2026 The erbox Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "erbox/boxes.hpp"
#include "oracles.hpp"

namespace erbox {
namespace {

constexpr double kPi = std::numbers::pi;

Matrix inverse_sqrt(const Matrix& g) {
  const auto e = eig_hermitian(g);
  std::vector<double> d;
  for (double l : e.eigenvalues) d.push_back(1.0 / std::sqrt(l));
  return e.eigenvectors * diagonal(d) * e.eigenvectors.adjoint();
}

// Scales one entry of one Charlie factor by 1.05, then restores completeness
// with G^{-1/2} on Charlie's side (A and B factors are unitary).
Box perturbed(const Box& box, std::size_t branch, std::size_t row, std::size_t col) {
  auto brs = box.branches();
  brs[branch].c(row, col) *= 1.05;
  Matrix g(brs.front().c.cols(), brs.front().c.cols());
  for (const auto& br : brs) g += br.c.adjoint() * br.c;
  const Matrix fix = inverse_sqrt(g);
  for (auto& br : brs) br.c = br.c * fix;
  return Box(box.task(), std::move(brs));
}

Box tampered_teleportation_box() {
  auto brs = teleportation_es_box().branches();
  brs[1].b = pauli(0);
  return Box(BoxTask::entanglement_swapping, std::move(brs));
}

// Charlie measures cos(pi/8)|00> + sin(pi/8)|11>, its partner and the two
// odd Bell states; the basis is complete but not maximally entangled.
Box skewed_es_box() {
  const double c = std::cos(kPi / 8.0);
  const double s = std::sin(kPi / 8.0);
  const double h = 1.0 / std::sqrt(2.0);
  const std::array<Matrix, 4> rows{Matrix{{c, 0.0, 0.0, s}}, Matrix{{s, 0.0, 0.0, -c}},
                                   Matrix{{0.0, h, h, 0.0}}, Matrix{{0.0, h, -h, 0.0}}};
  // Rows 2 and 3 are the sigma_x and sigma_y Bell vectors and get matching corrections.
  const std::array<int, 4> fix{0, 3, 1, 2};
  std::vector<SeparableBranch> brs;
  for (std::size_t i = 0; i < 4; ++i) brs.push_back({pauli(0), pauli(fix[i]), rows[i], i});
  return Box(BoxTask::entanglement_swapping, std::move(brs));
}

Box nonunitary_b_box() {
  auto brs = teleportation_es_box().branches();
  brs[2].b = Matrix{{1.0, 0.0}, {0.0, 0.5}};
  return Box(BoxTask::entanglement_swapping, std::move(brs));
}

Box unbalanced_ghzepr_box() {
  const double c = std::cos(kPi / 8.0);
  const double s = std::sin(kPi / 8.0);
  return Box(BoxTask::ghz_to_epr, {{pauli(0), pauli(0), Matrix{{c, s}}, 0},
                                   {pauli(0), pauli(3), Matrix{{s, -c}}, 1}});
}

Matrix oracle_kraus(const SeparableBranch& br) { return oracle::kron(br.a, oracle::kron(br.b, br.c)); }

TEST(Tasks, NamesRoundTrip) {
  for (auto t : kAllTasks) EXPECT_EQ(parse_task(task_name(t)), t);
  EXPECT_EQ(task_name(BoxTask::entanglement_swapping), "es");
  EXPECT_EQ(task_name(BoxTask::two_epr_to_ghz), "2epr-ghz");
  EXPECT_EQ(task_name(BoxTask::ghz_to_epr), "ghz-epr");
  EXPECT_THROW(parse_task("swap"), std::invalid_argument);
}

TEST(Tasks, CanonicalInputs) {
  const Matrix pp = canonical_input(BoxTask::entanglement_swapping).vector();
  EXPECT_EQ(pp.rows(), 16u);
  EXPECT_LE(max_abs_diff(canonical_input(BoxTask::ghz_to_epr).vector(), ghz().vector()), 1e-15);
  // The (A,C1) and (B,C2) marginals are EPR pairs.
  EXPECT_LE(max_abs_diff(oracle::partial_trace(oracle::projector(pp), {2, 2, 2, 2}, {true, false, true, false}),
                         oracle::projector(oracle::psi_plus())),
            1e-15);
}

TEST(Box, RejectsMalformedBranches) {
  EXPECT_THROW(Box(BoxTask::entanglement_swapping, {}), std::invalid_argument);
  EXPECT_THROW(Box(BoxTask::entanglement_swapping, {{Matrix(3, 3), pauli(0), Matrix(1, 4), 0}}),
               std::invalid_argument);
  EXPECT_THROW(Box(BoxTask::ghz_to_epr, {{pauli(0), pauli(0), Matrix(1, 4), 0}}), std::invalid_argument);
  EXPECT_THROW(Box(BoxTask::ghz_to_epr, {{pauli(0), pauli(0), Matrix(1, 2), 0},
                                         {pauli(0), pauli(0), Matrix(2, 2), 1}}),
               std::invalid_argument);
}

TEST(TeleportationBox, ShapeAndValidation) {
  const Box box = teleportation_es_box();
  ASSERT_EQ(box.branches().size(), 4u);
  const auto bell = bell_basis();
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(box.branches()[i].a, pauli(0));
    EXPECT_EQ(box.branches()[i].b, pauli(static_cast<int>(i)));
    EXPECT_LE(max_abs_diff(box.branches()[i].c, bell[i].vector().adjoint()), 1e-15);
  }
  const auto r = validate(box);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.trace_distance_to_target, 1e-10);
  EXPECT_NEAR(r.output_fidelity, 1.0, 1e-12);
}

TEST(TeleportationBox, OutputIsEpr) {
  const Box box = teleportation_es_box();
  Matrix out(4, 4);
  const Matrix in = canonical_input(box.task()).vector();
  for (const auto& br : box.branches()) {
    const Matrix v = oracle_kraus(br) * in;
    out += oracle::projector(v);
  }
  EXPECT_LE(max_abs_diff(out, oracle::projector(oracle::psi_plus())), 1e-14);
}

TEST(TeleportationBox, AliceCorrectedVariant) {
  const Box box = teleportation_es_box(Party::alice);
  EXPECT_TRUE(validate(box).pass);
  EXPECT_TRUE(analyze_structure(box).pass);
  for (const auto& br : box.branches()) EXPECT_EQ(br.b, pauli(0));
}

TEST(TeleportationBox, TamperedBoxFails) {
  // Output 3/4 Psi+ + 1/4 (X-rotated Bell state): distance |3/4 - 1|/2 + 1/8 = 1/4.
  const auto r = validate(tampered_teleportation_box());
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.trace_distance_to_target, 0.25, 1e-12);
  EXPECT_NEAR(r.output_fidelity, 0.75, 1e-12);
  EXPECT_LE(r.completeness_residual, 1e-12);
}

TEST(Validate, IdentityChannelIsNotAnEsBox) {
  const auto r = validate(Superoperator::identity({2, 2, 2, 2}), BoxTask::entanglement_swapping);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.trace_distance_to_target, 0.75, 1e-12);
  EXPECT_THROW(validate(Superoperator::identity({2, 2}), BoxTask::entanglement_swapping), std::invalid_argument);
}

TEST(ParityBox, ProducesGhz) {
  const Box box = parity_2eprghz_box();
  ASSERT_EQ(box.branches().size(), 2u);
  EXPECT_EQ(box.branches()[0].b, pauli(0));
  EXPECT_EQ(box.branches()[1].b, pauli(1));
  const auto r = validate(box);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.output_fidelity, 1.0, 1e-10);
  Matrix out(8, 8);
  for (const auto& br : box.branches())
    out += oracle::projector(oracle_kraus(br) * canonical_input(box.task()).vector());
  EXPECT_LE(max_abs_diff(out, ghz().projector()), 1e-14);
}

TEST(XBasisBox, ProducesEpr) {
  const Box box = xbasis_ghzepr_box();
  EXPECT_EQ(box.branches()[1].b, pauli(3));
  EXPECT_TRUE(validate(box).pass);
  Matrix out(4, 4);
  for (const auto& br : box.branches()) {
    const Matrix full = oracle::projector(oracle_kraus(br) * ghz().vector());
    out += oracle::partial_trace(full, {2, 2, 2}, {true, true, false});
  }
  EXPECT_LE(max_abs_diff(out, oracle::projector(oracle::psi_plus())), 1e-14);
}

TEST(OutcomeDistribution, MatchesBranchNorms) {
  const std::array<std::vector<double>, 3> expected{std::vector<double>{0.25, 0.25, 0.25, 0.25},
                                                    std::vector<double>{0.5, 0.5},
                                                    std::vector<double>{0.5, 0.5}};
  for (std::size_t t = 0; t < 3; ++t) {
    const Box box = canonical_box(kAllTasks[t]);
    const PureState in = canonical_input(box.task());
    const auto p = outcome_distribution(box, in.density());
    ASSERT_EQ(p.size(), expected[t].size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(p[i], expected[t][i], 1e-14);
      EXPECT_NEAR(p[i], oracle::branch_norm2(oracle_kraus(box.branches()[i]), in.vector()), 1e-14);
    }
  }
  EXPECT_THROW(outcome_distribution(xbasis_ghzepr_box(), canonical_input(BoxTask::entanglement_swapping).density()),
               std::invalid_argument);
}

TEST(OutcomeDistribution, SumsToOneForRandomBoxes) {
  for (auto t : kAllTasks)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Box box = random_box(t, seed);
      double sum = 0.0;
      for (double p : outcome_distribution(box, canonical_input(t).density())) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(RandomBox, DeterministicAndSeedDependent) {
  const Box a = random_box(BoxTask::entanglement_swapping, 0);
  const Box b = random_box(BoxTask::entanglement_swapping, 0);
  const Box c = random_box(BoxTask::entanglement_swapping, 1);
  double diff = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a.branches()[i].kraus(), b.branches()[i].kraus());
    diff = std::max(diff, max_abs_diff(a.branches()[i].kraus(), c.branches()[i].kraus()));
  }
  EXPECT_GT(diff, 1e-3);
}

TEST(RandomBox, SeedZeroValidates) {
  for (auto t : kAllTasks) {
    const auto r = validate(random_box(t, 0));
    EXPECT_TRUE(r.pass) << task_name(t);
    EXPECT_LE(r.trace_distance_to_target, 1e-9);
  }
}

TEST(RandomBox, ManySeedsPassValidationAndStructure) {
  for (auto t : kAllTasks)
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Box box = random_box(t, seed);
      EXPECT_TRUE(validate(box).pass) << task_name(t) << " seed " << seed;
      EXPECT_TRUE(analyze_structure(box).pass) << task_name(t) << " seed " << seed;
    }
}

TEST(RandomBox, EsBranchesLeaveMaximallyEntangledPairs) {
  const double h = 0.5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Box box = random_box(BoxTask::entanglement_swapping, seed);
    const Matrix in = canonical_input(box.task()).vector();
    for (const auto& br : box.branches()) {
      const Matrix v = oracle_kraus(br) * in;
      const Matrix full = oracle::projector(v);
      const Matrix rho_ab = oracle::partial_trace(full, {2, 2, 4}, {true, true, false});
      const double p = rho_ab.trace().real();
      if (p <= 1e-12) continue;
      const Matrix rho_a = oracle::partial_trace(rho_ab, {2, 2}, {true, false});
      const auto l = oracle::eig2(rho_a);
      EXPECT_NEAR(l[0] / p, h, 1e-8);
      EXPECT_NEAR(l[1] / p, h, 1e-8);
    }
  }
}

TEST(Structure, TeleportationBox) {
  const auto rep = analyze_structure(teleportation_es_box());
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.resolution_residual, 1e-12);
  ASSERT_EQ(rep.branches.size(), 4u);
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& b : rep.branches) {
    EXPECT_EQ(b.charlie_rank, 1u);
    EXPECT_NEAR(b.weight, 1.0, 1e-12);
    ASSERT_EQ(b.charlie_schmidt.size(), 2u);
    EXPECT_NEAR(b.charlie_schmidt[0], h, 1e-12);
    EXPECT_NEAR(b.charlie_schmidt[1], h, 1e-12);
    EXPECT_TRUE(b.factors_unitary);
    EXPECT_NEAR(b.proportionality, 0.25, 1e-12);
  }
}

TEST(Structure, ParityBox) {
  const auto rep = analyze_structure(parity_2eprghz_box());
  EXPECT_TRUE(rep.pass);
  for (const auto& b : rep.branches) {
    EXPECT_EQ(b.charlie_rank, 2u);
    ASSERT_EQ(b.product_factors.size(), 4u);
    const Matrix v0 = tensor(b.product_factors[0], b.product_factors[1]);
    const Matrix v1 = tensor(b.product_factors[2], b.product_factors[3]);
    EXPECT_NEAR(std::abs(inner(v0, v1)), 0.0, 1e-12);
    EXPECT_NEAR(vector_norm(v0), 1.0, 1e-12);
    EXPECT_NEAR(vector_norm(v1), 1.0, 1e-12);
    EXPECT_NEAR(b.proportionality, 0.5, 1e-12);
  }
}

TEST(Structure, XBasisBoxPhases) {
  const auto rep = analyze_structure(xbasis_ghzepr_box());
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.branches.size(), 2u);
  EXPECT_NEAR(rep.branches[0].charlie_phase, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rep.branches[1].charlie_phase), kPi, 1e-12);
}

TEST(Structure, SkewedEsVectorRejected) {
  const Box box = skewed_es_box();
  EXPECT_LE(box.completeness_residual(), 1e-12);
  const auto rep = analyze_structure(box);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.branches[0].charlie_schmidt[0], std::cos(kPi / 8.0), 1e-12);
  EXPECT_FALSE(rep.branches[0].pass);
  EXPECT_TRUE(rep.branches[2].pass);
}

TEST(Structure, NonUnitaryFactorRejected) {
  const auto rep = analyze_structure(nonunitary_b_box());
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.branches[2].factors_unitary);
  EXPECT_GT(rep.branches[2].b_unitarity_deviation, 0.1);
}

TEST(Structure, UnbalancedGhzEprRejected) {
  const Box box = unbalanced_ghzepr_box();
  EXPECT_LE(box.completeness_residual(), 1e-12);
  const auto rep = analyze_structure(box);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.branches[0].charlie_form_residual, 0.1);
}

TEST(Structure, PerturbationBreaksStructureNotCompleteness) {
  std::vector<Box> boxes{teleportation_es_box(), xbasis_ghzepr_box()};
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (auto t : kAllTasks) boxes.push_back(random_box(t, seed));
  for (const Box& box : boxes) {
    const Matrix& c0 = box.branches().front().c;
    std::size_t col = 0;
    while (std::abs(c0(0, col)) < 1e-6) ++col;
    const Box p = perturbed(box, 0, 0, col);
    EXPECT_LE(p.completeness_residual(), 1e-9) << task_name(box.task());
    EXPECT_FALSE(analyze_structure(p).pass) << task_name(box.task());
  }
}

TEST(Structure, ParityBoxPerturbationIsUndoneByRenormalization) {
  // Each Charlie input basis vector appears in exactly one row, so scaling
  // one amplitude and restoring completeness returns the original box.
  const Box box = parity_2eprghz_box();
  const Box p = perturbed(box, 0, 0, 0);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(max_abs_diff(p.branches()[i].c, box.branches()[i].c), 1e-12);
}

TEST(TwirledBox, KeepsValidity) {
  for (auto t : kAllTasks) {
    const Box box = canonical_box(t);
    const auto before = validate(box);
    const auto after = validate(twirled_box(box), t);
    EXPECT_TRUE(after.pass) << task_name(t);
    EXPECT_LE(after.trace_distance_to_target, 1e-9);
    EXPECT_LE(before.trace_distance_to_target, 1e-9);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (auto t : kAllTasks) EXPECT_TRUE(validate(twirled_box(random_box(t, seed)), t).pass);
}

TEST(TwirledBox, ReducedOutputsAreMaximallyMixedUnderCharlieUnitaries) {
  const Box box = teleportation_es_box();
  const Superoperator tw = twirled_box(box);
  Rng rng(12);
  const Matrix in = canonical_input(box.task()).projector();
  for (int k = 0; k < 10; ++k) {
    const Matrix u = embed(random_unitary(4, rng), {2, 2, 2, 2}, {2, 3});
    const Matrix out = tw.apply(u * in * u.adjoint());
    const Matrix half = 0.5 * Matrix::identity(2);
    EXPECT_LE(max_abs_diff(oracle::partial_trace(out, {2, 2, 1}, {true, false, false}), half), 1e-9);
    EXPECT_LE(max_abs_diff(oracle::partial_trace(out, {2, 2, 1}, {false, true, false}), half), 1e-9);
  }
}

}  // namespace
}  // namespace erbox
