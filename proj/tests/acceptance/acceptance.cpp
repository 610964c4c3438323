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

// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "erbox/erbox.hpp"

namespace {

using namespace erbox;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict cc_bounds() {
  const std::array<double, 3> expected{2.0, 1.0, 1.0};
  Verdict v{true, ""};
  for (std::size_t i = 0; i < 3; ++i) {
    const BoxTask t = kAllTasks[i];
    const CcBound b = cc_lower(t);
    const double cost = cc_of_box(canonical_box(t));
    const bool ok = std::abs(b.lower - expected[i]) <= 1e-9 && std::abs(cost - expected[i]) <= 1e-9 &&
                    b.chain_holds && b.outcome_entropy >= b.delta_I - 1e-9 && b.embedding_residual <= 1e-9;
    v.pass = v.pass && ok;
    v.detail += fmt("%s: lower %.9f cost %.9f H %.6f dS %.6f dI %.6f; ", std::string(task_name(t)).c_str(),
                    b.lower, cost, b.outcome_entropy, b.delta_S, b.delta_I);
  }
  return v;
}

Verdict cv_lower() {
  std::vector<std::pair<std::string, Box>> boxes;
  for (auto t : kAllTasks) boxes.emplace_back(canonical_box_label(t), canonical_box(t));
  for (std::uint64_t s = 0; s < 20; ++s) {
    boxes.emplace_back("es/" + std::to_string(s), random_box(BoxTask::entanglement_swapping, s));
    boxes.emplace_back("ghz-epr/" + std::to_string(s), random_box(BoxTask::ghz_to_epr, s));
  }
  Verdict v{true, ""};
  double worst_overlap = 0.0;
  double worst_distance = 0.0;
  std::size_t checked = 0;
  std::size_t parity_pass = 0;
  for (const auto& [label, box] : boxes) {
    if (box.task() == BoxTask::two_epr_to_ghz) {
      // The Z-flip theorem covers the EPR-output tasks; the parity box gets
      // its certified positive value from the depolarizing protocol.
      const auto d = cv_lower_depolarize(box);
      const bool ok = d.chi_max > 0.0 && d.depolarized_residual <= 1e-9;
      parity_pass += ok ? 1 : 0;
      v.pass = v.pass && ok;
      continue;
    }
    const ZflipReport z = cv_lower_zflip(box, 1e-9);
    ++checked;
    worst_overlap = std::max(worst_overlap, z.overlap);
    worst_distance = std::max(worst_distance, std::abs(z.distance - 1.0));
    v.pass = v.pass && z.certified && std::abs(z.bits - 1.0) <= 1e-9;
  }
  v.detail = fmt("%zu zflip boxes certified 1 bit, max overlap %.2e, max |distance-1| %.2e; parity box CV>0: %s",
                 checked, worst_overlap, worst_distance, parity_pass == 1 ? "yes" : "no");
  return v;
}

Verdict irreversibility() {
  const TaskSummary s = task_summary(BoxTask::entanglement_swapping);
  const double gap = s.cc.lower - s.cv.lower;
  const bool ok = std::abs(gap - 1.0) <= 1e-9 && s.cv.upper && std::abs(*s.cv.upper - s.cv.lower) <= 1e-9;
  return {ok, fmt("CC %.9f, CV [%.9f, %.9f], gap %.9f", s.cc.lower, s.cv.lower, s.cv.upper.value_or(-1), gap)};
}

Verdict dense_coding() {
  // Alice applies the corrections so the swapped pair lands in her lab.
  const DenseCodingReport d = dense_coding_demo(teleportation_es_box(Party::alice), 1e-9);
  const bool ok = d.receiver == Party::alice && d.certified && d.gram_residual <= 1e-9 &&
                  std::abs(d.bits - 2.0) <= 1e-9;
  return {ok, fmt("receiver alice, Gram residual %.2e, %.9f bits", d.gram_residual, d.bits)};
}

Verdict depolarize() {
  const DepolarizeReport d = cv_lower_depolarize(parity_2eprghz_box());
  const bool ok = std::abs(d.chi_max - 0.321928) <= 1e-4 && std::abs(d.p_star - 0.6) <= 1e-3 &&
                  d.depolarized_residual <= 1e-9;
  return {ok, fmt("chi_max %.6f at p %.6f, depolarized output vs I/4 %.2e", d.chi_max, d.p_star,
                  d.depolarized_residual)};
}

Verdict twirled_upper() {
  const auto es = cv_upper_twirled(BoxTask::entanglement_swapping);
  const auto tg = cv_upper_twirled(BoxTask::two_epr_to_ghz);
  const auto est = eaccqc_estimate(twirled_box(teleportation_es_box()), 200, 1);
  const bool ok = std::abs(es.value - 1.0) <= 1e-9 && std::abs(tg.value - 0.469782) <= 1e-4 &&
                  tg.simplex_violations == 0 && est.max_value <= 1.0 + 1e-6;
  return {ok, fmt("ES %.9f, 2EPR-GHZ %.6f (F' in [%.6f, %.6f], %zu/%zu simplex violations), "
                  "EACCQC max over %zu inputs %.6f",
                  es.value, tg.value, tg.f_min, tg.f_max, tg.simplex_violations, tg.simplex_points, est.samples,
                  est.max_value)};
}

Verdict nonsignaling() {
  const Box box = teleportation_es_box();
  const Superoperator tw = twirled_box(box);
  const DensityMatrix in = canonical_input(box.task()).density();
  const SubsystemShape shape = box.input_shape();
  const Matrix half = 0.5 * Matrix::identity(2);
  Rng rng(2026);
  double worst = 0.0;
  double worst_distance = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::vector<AlphabetMap> maps{AlphabetMap::unitary(random_unitary(4, rng), shape, {2, 3}, "u0"),
                                        AlphabetMap::unitary(random_unitary(4, rng), shape, {2, 3}, "u1")};
    for (std::size_t receiver : {0u, 1u}) {
      const SignalingReport r = signaling_test(tw, in, maps, {receiver}, 1e-9);
      worst_distance = std::max(worst_distance, r.max_distance);
      for (const auto& o : r.outputs) worst = std::max(worst, max_abs_diff(o, half));
    }
  }
  return {worst <= 1e-9 && worst_distance <= 1e-9,
          fmt("40 single-party outputs, max deviation from I/2 %.2e, max distance %.2e", worst, worst_distance)};
}

Verdict lemma_suite() {
  Rng rng(8);
  std::uniform_int_distribution<int> count(2, 4);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  double worst_slack = 1e9;
  double worst_residual = 0.0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> p(static_cast<std::size_t>(count(rng)));
    double total = 0.0;
    for (auto& x : p) total += (x = u(rng));
    std::vector<EnsembleEntry> entries;
    for (double x : p) entries.push_back({x / total, DensityMatrix(random_density(4, rng), {2, 2})});
    const DeltaReport r = delta_lemma(Ensemble(std::move(entries)), {0}, {1});
    worst_slack = std::min(worst_slack, r.slack);
    worst_residual = std::max(worst_residual, r.embedding_residual);
  }
  return {worst_slack >= -1e-9 && worst_residual <= 1e-9,
          fmt("1000 ensembles, min slack %.3e, max embedding residual %.2e", worst_slack, worst_residual)};
}

Box skewed_es_box() {
  const double c = std::cos(std::numbers::pi / 8.0);
  const double s = std::sin(std::numbers::pi / 8.0);
  const double h = 1.0 / std::sqrt(2.0);
  const std::array<Matrix, 4> rows{Matrix{{c, 0.0, 0.0, s}}, Matrix{{s, 0.0, 0.0, -c}},
                                   Matrix{{0.0, h, h, 0.0}}, Matrix{{0.0, h, -h, 0.0}}};
  std::vector<SeparableBranch> brs;
  for (std::size_t i = 0; i < 4; ++i) brs.push_back({pauli(0), pauli(static_cast<int>(i)), rows[i], i});
  return Box(BoxTask::entanglement_swapping, std::move(brs));
}

Box nonunitary_b_box() {
  auto brs = teleportation_es_box().branches();
  brs[2].b = Matrix{{1.0, 0.0}, {0.0, 0.5}};
  return Box(BoxTask::entanglement_swapping, std::move(brs));
}

Box unbalanced_ghzepr_box() {
  const double c = std::cos(std::numbers::pi / 8.0);
  const double s = std::sin(std::numbers::pi / 8.0);
  return Box(BoxTask::ghz_to_epr, {{pauli(0), pauli(0), Matrix{{c, s}}, 0},
                                   {pauli(0), pauli(3), Matrix{{s, -c}}, 1}});
}

Verdict structure_discrimination() {
  std::size_t accepted = 0;
  std::size_t total = 0;
  for (auto t : kAllTasks) {
    ++total;
    accepted += analyze_structure(canonical_box(t)).pass ? 1 : 0;
  }
  for (std::uint64_t s = 0; s < 40; ++s) {
    ++total;
    accepted += analyze_structure(random_box(kAllTasks[s % 3], s)).pass ? 1 : 0;
  }
  const Box skewed = skewed_es_box();
  const Box nonunitary = nonunitary_b_box();
  const Box unbalanced = unbalanced_ghzepr_box();
  const bool r1 = !analyze_structure(skewed).pass;
  const bool r2 = !analyze_structure(nonunitary).pass;
  const bool r3 = !analyze_structure(unbalanced).pass;
  const double c1 = skewed.completeness_residual();
  const double c3 = unbalanced.completeness_residual();
  const bool ok = accepted == total && r1 && r2 && r3 && c1 <= 1e-9 && c3 <= 1e-9;
  return {ok, fmt("accepted %zu/%zu; rejected skewed-ES %s, non-unitary-B %s, unbalanced-GHZ-EPR %s; "
                  "completeness residuals %.1e, %.1e",
                  accepted, total, r1 ? "yes" : "no", r2 ? "yes" : "no", r3 ? "yes" : "no", c1, c3)};
}

Verdict abelian_lemma() {
  const AbelianLemmaReport a = abelian_lemma_check(parity_2eprghz_box());
  const double upper = cv_upper_twirled(BoxTask::two_epr_to_ghz).value;
  const double diff = std::abs(a.capacity.lower - upper);
  return {diff <= 1e-4 && a.capacity.upper - a.capacity.lower <= 1e-6,
          fmt("c-q capacity %.6f (certified gap %.1e, %d iterations) vs twirled upper %.6f", a.capacity.lower,
              a.capacity.upper - a.capacity.lower, a.capacity.iterations, upper)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"CC achievability and bounds", cc_bounds},
      {"CV lower bound (Z-flip)", cv_lower},
      {"Irreversibility gap", irreversibility},
      {"Dense coding", dense_coding},
      {"Depolarizing protocol", depolarize},
      {"Twirled upper bounds", twirled_upper},
      {"Non-signaling of twirled ES box", nonsignaling},
      {"Lemma property suite", lemma_suite},
      {"Structure analyzer discrimination", structure_discrimination},
      {"Abelian-algebra lemma instance", abelian_lemma},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s | %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
