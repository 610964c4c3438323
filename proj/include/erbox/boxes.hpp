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

#pragma once

// Entanglement-redistribution boxes: separable channels on Alice (A), Bob (B)
// and Charlie (C) that realize one of three tasks on their canonical input.
//
// Register layout. Input: A, B, then Charlie's qubits (C1, C2 for the two
// EPR-pair tasks, a single C for GHZ -> EPR). Output: A, B, C_out, where
// C_out has whatever dimension Charlie's factors map onto. Alice's and
// Bob's factors are 2x2 and expected to be proportional to unitaries.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erbox/linalg.hpp"
#include "erbox/qstate.hpp"

namespace erbox {

inline constexpr double kStructureTol = 1e-8;
inline constexpr double kValidateTol = 1e-9;

enum class BoxTask { entanglement_swapping, two_epr_to_ghz, ghz_to_epr };

inline constexpr std::array<BoxTask, 3> kAllTasks{
    BoxTask::entanglement_swapping, BoxTask::two_epr_to_ghz, BoxTask::ghz_to_epr};

inline std::string_view task_name(BoxTask t) {
  switch (t) {
    case BoxTask::entanglement_swapping: return "es";
    case BoxTask::two_epr_to_ghz: return "2epr-ghz";
    case BoxTask::ghz_to_epr: return "ghz-epr";
  }
  return "?";
}

inline BoxTask parse_task(std::string_view name) {
  for (auto t : kAllTasks)
    if (task_name(t) == name) return t;
  throw std::invalid_argument("unknown task '" + std::string(name) +
                              "' (expected es, 2epr-ghz or ghz-epr)");
}

inline std::size_t charlie_input_dim(BoxTask t) { return t == BoxTask::ghz_to_epr ? 2 : 4; }

inline SubsystemShape task_input_shape(BoxTask t) {
  return t == BoxTask::ghz_to_epr ? SubsystemShape{2, 2, 2} : SubsystemShape{2, 2, 2, 2};
}

/// Psi+_{A C1} (x) Psi+_{B C2} in the A, B, C1, C2 layout, or GHZ_{ABC}.
inline PureState canonical_input(BoxTask t) {
  if (t == BoxTask::ghz_to_epr) return ghz();
  return paired_state(4, {{0, 2}, {1, 3}});
}

inline PureState target_output(BoxTask t) {
  return t == BoxTask::two_epr_to_ghz ? ghz() : epr();
}

/// Whether the task discards Charlie's output.
inline bool discards_charlie(BoxTask t) { return t != BoxTask::two_epr_to_ghz; }

enum class Party { alice, bob };

class Box {
 public:
  Box(BoxTask task, std::vector<SeparableBranch> branches)
      : task_(task), branches_(std::move(branches)) {
    if (branches_.empty()) throw std::invalid_argument("Box: no branches");
    const std::size_t cin = charlie_input_dim(task_);
    const std::size_t cout = branches_.front().c.rows();
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      const auto& br = branches_[i];
      const std::string where = "Box: branch " + std::to_string(i) + ": ";
      if (br.a.rows() != 2 || br.a.cols() != 2) throw std::invalid_argument(where + "A factor must be 2x2");
      if (br.b.rows() != 2 || br.b.cols() != 2) throw std::invalid_argument(where + "B factor must be 2x2");
      if (br.c.cols() != cin) {
        throw std::invalid_argument(where + "C factor must have " + std::to_string(cin) +
                                    " columns for task " + std::string(task_name(task_)));
      }
      if (br.c.rows() != cout) {
        throw std::invalid_argument(where + "C factors must share one output dimension");
      }
    }
  }

  BoxTask task() const { return task_; }
  const std::vector<SeparableBranch>& branches() const { return branches_; }
  std::size_t charlie_output_dim() const { return branches_.front().c.rows(); }
  SubsystemShape input_shape() const { return task_input_shape(task_); }
  SubsystemShape output_shape() const { return SubsystemShape{2, 2, charlie_output_dim()}; }

  std::vector<Matrix> kraus_operators() const {
    std::vector<Matrix> ops;
    ops.reserve(branches_.size());
    for (const auto& br : branches_) ops.push_back(br.kraus());
    return ops;
  }

  double completeness_residual() const {
    const auto ops = kraus_operators();
    return erbox::completeness_residual(ops);
  }

  /// Throws if the Kraus set is not complete.
  KrausChannel kraus_channel() const {
    return KrausChannel(kraus_operators(), input_shape(), output_shape());
  }
  Superoperator channel() const { return Superoperator::from_kraus(kraus_channel()); }

 private:
  BoxTask task_;
  std::vector<SeparableBranch> branches_;
};

// ---------------------------------------------------------------------------
// Canonical boxes

/// Bell measurement of C1 C2 followed by a Pauli correction on one party.
inline Box teleportation_es_box(Party corrected = Party::bob) {
  const auto bell = bell_basis();
  std::vector<SeparableBranch> branches;
  for (int i = 0; i < 4; ++i) {
    const Matrix c = bell[i].vector().adjoint();  // <bell_i|, 1x4
    // Outcome i leaves (I (x) sigma_i)|Psi+>/2 on AB; sigma_i^T on A works equally.
    Matrix a = corrected == Party::alice ? pauli(i).transpose() : pauli(0);
    Matrix b = corrected == Party::bob ? pauli(i) : pauli(0);
    branches.push_back({std::move(a), std::move(b), c, static_cast<std::size_t>(i)});
  }
  return Box(BoxTask::entanglement_swapping, std::move(branches));
}

/// Parity measurement of C1 C2, relabelled onto a fresh qubit, with an X
/// correction on Bob for odd parity.
inline Box parity_2eprghz_box() {
  Matrix even(2, 4);  // |0><00| + |1><11|
  even(0, 0) = 1.0;
  even(1, 3) = 1.0;
  Matrix odd(2, 4);  // |0><01| + |1><10|
  odd(0, 1) = 1.0;
  odd(1, 2) = 1.0;
  return Box(BoxTask::two_epr_to_ghz,
             {{pauli(0), pauli(0), even, 0}, {pauli(0), pauli(1), odd, 1}});
}

/// X-basis measurement of C with a Z correction on Bob for outcome "-".
inline Box xbasis_ghzepr_box() {
  const Matrix plus{{0.5, 0.5}, {0.5, 0.5}};
  const Matrix minus{{0.5, -0.5}, {-0.5, 0.5}};
  return Box(BoxTask::ghz_to_epr, {{pauli(0), pauli(0), plus, 0}, {pauli(0), pauli(3), minus, 1}});
}

inline Box canonical_box(BoxTask t) {
  switch (t) {
    case BoxTask::entanglement_swapping: return teleportation_es_box();
    case BoxTask::two_epr_to_ghz: return parity_2eprghz_box();
    case BoxTask::ghz_to_epr: return xbasis_ghzepr_box();
  }
  throw std::invalid_argument("canonical_box: unknown task");
}

inline std::string canonical_box_label(BoxTask t) {
  switch (t) {
    case BoxTask::entanglement_swapping: return "teleportation";
    case BoxTask::two_epr_to_ghz: return "parity";
    case BoxTask::ghz_to_epr: return "x-basis";
  }
  return "?";
}

namespace detail {

inline Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

inline Matrix diag2(Complex d0, Complex d1) { return Matrix{{d0, 0.0}, {0.0, d1}}; }

}  // namespace detail

/// Seeded member of the general box family of each task. Charlie's
/// measurement is a Haar-random rotation of the canonical one and the A/B
/// corrections are derived in closed form.
inline Box random_box(BoxTask task, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SeparableBranch> branches;
  switch (task) {
    case BoxTask::entanglement_swapping: {
      // Charlie projects onto (V sigma_i (x) I)|Psi+>, which leaves
      // (I (x) W^H)|Psi+>/2 with W = V sigma_i. Alice applies U and Bob
      // conj(U) W; U (x) conj(U) fixes Psi+.
      const Matrix v = random_unitary(2, rng);
      const Matrix u = random_unitary(2, rng);
      const Matrix psi = epr().vector();
      for (std::size_t i = 0; i < 4; ++i) {
        const Matrix w = v * pauli(static_cast<int>(i));
        const Matrix phi = tensor(w, pauli(0)) * psi;
        const Matrix c = detail::random_phase(rng) * outer(Matrix::basis_vector(4, i), phi);
        branches.push_back({u, u.conjugate() * w, c, i});
      }
      break;
    }
    case BoxTask::ghz_to_epr: {
      // Charlie projects onto (|0> +- e^{i phi}|1>)/sqrt(2); Bob undoes the
      // relative phase.
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      const double phi = angle(rng);
      const Matrix u = random_unitary(2, rng);
      const double h = 1.0 / std::sqrt(2.0);
      for (std::size_t k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const Complex rel = sign * std::polar(1.0, phi);
        const Matrix vec = Matrix::column({h, h * rel});
        const Matrix c = detail::random_phase(rng) * outer(Matrix::basis_vector(2, k), vec);
        branches.push_back({u, u.conjugate() * detail::diag2(1.0, rel), c, k});
      }
      break;
    }
    case BoxTask::two_epr_to_ghz: {
      // Charlie measures parity in the product bases a_k = Ua|k>, b_k = Ub|k>;
      // <a_k b_l| leaves conj(a_k) (x) conj(b_l) on AB, undone by Ua^T, Ub^T.
      const Matrix ua = random_unitary(2, rng);
      const Matrix ub = random_unitary(2, rng);
      auto col = [](const Matrix& m, std::size_t k) { return Matrix::column({m(0, k), m(1, k)}); };
      const Matrix c0 = Matrix::basis_vector(2, 0);
      const Matrix c1 = Matrix::basis_vector(2, 1);
      const Matrix even = outer(c0, tensor(col(ua, 0), col(ub, 0))) + outer(c1, tensor(col(ua, 1), col(ub, 1)));
      const Matrix odd = outer(c0, tensor(col(ua, 0), col(ub, 1))) + outer(c1, tensor(col(ua, 1), col(ub, 0)));
      branches.push_back({ua.transpose(), ub.transpose(), detail::random_phase(rng) * even, 0});
      branches.push_back({ua.transpose(), pauli(1) * ub.transpose(), detail::random_phase(rng) * odd, 1});
      break;
    }
  }
  return Box(task, std::move(branches));
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  double output_fidelity = 0.0;
  double trace_distance_to_target = 1.0;
  double completeness_residual = 0.0;
  bool pass = false;
};

namespace detail {

inline ValidationReport compare_to_target(BoxTask task, const Matrix& output,
                                          const SubsystemShape& out_shape, double completeness,
                                          double tol) {
  ValidationReport r;
  r.completeness_residual = completeness;
  const PureState target = target_output(task);
  Matrix reduced = output;
  if (discards_charlie(task)) {
    reduced = partial_trace(output, out_shape, {0, 1});
  } else if (out_shape != SubsystemShape{2, 2, 2}) {
    // Charlie's output register cannot hold the GHZ qubit.
    r.output_fidelity = 0.0;
    r.trace_distance_to_target = 1.0;
    r.pass = false;
    return r;
  }
  r.output_fidelity = fidelity_with(reduced, target.vector());
  r.trace_distance_to_target = trace_distance(hermitian_part(reduced), target.projector());
  r.pass = r.trace_distance_to_target <= tol && r.completeness_residual <= tol;
  return r;
}

}  // namespace detail

/// Runs the box on its task's canonical input and compares with the target.
inline ValidationReport validate(const Box& box, double tol = kValidateTol) {
  const auto ops = box.kraus_operators();
  const Matrix out = apply_kraus(ops, canonical_input(box.task()).projector());
  return detail::compare_to_target(box.task(), out, box.output_shape(), box.completeness_residual(), tol);
}

/// Same check for an arbitrary channel claimed to realize `task`. The
/// completeness field reports trace-preservation error on the canonical and
/// maximally mixed inputs.
inline ValidationReport validate(const Superoperator& channel, BoxTask task, double tol = kValidateTol) {
  if (channel.input_shape().total() != task_input_shape(task).total()) {
    throw std::invalid_argument("validate: channel input does not match task");
  }
  const Matrix out = channel.apply(canonical_input(task).projector());
  const Matrix mixed = channel.apply(DensityMatrix::maximally_mixed(channel.input_shape()).matrix());
  const double tp = std::max(std::abs(out.trace() - 1.0), std::abs(mixed.trace() - 1.0));
  return detail::compare_to_target(task, out, channel.output_shape(), tp, tol);
}

/// Output twirl on AB for the EPR-target tasks, input double twirl for
/// 2EPR -> GHZ.
inline Superoperator twirled_box(const Box& box) {
  const Superoperator inner = box.channel();
  if (box.task() == BoxTask::two_epr_to_ghz) {
    return compose(inner, Superoperator::double_twirl(box.input_shape()));
  }
  return compose(Superoperator::pair_twirl(box.output_shape(), 0, 1), inner);
}

/// p_i = Tr(K_i rho K_i^H) per branch.
inline std::vector<double> outcome_distribution(const Box& box, const DensityMatrix& input) {
  if (input.dim() != box.input_shape().total()) {
    throw std::invalid_argument("outcome_distribution: input shape does not match box");
  }
  std::vector<double> p;
  for (const auto& br : box.branches()) {
    const Matrix k = br.kraus();
    p.push_back((k * input.matrix() * k.adjoint()).trace().real());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Structure analysis

struct BranchStructure {
  std::size_t label = 0;
  bool trivial = false;      // Charlie factor vanishes; branch never fires
  double probability = 0.0;  // on the canonical input
  double weight = 0.0;       // ||u||^2 (rank one) or |c|^2 (rank two)
  std::size_t charlie_rank = 0;
  std::size_t expected_rank = 0;
  std::vector<Matrix> charlie_vectors;  // kets spanning the row space of the C factor
  // EPR-pair tasks: Schmidt coefficients of the Charlie vector (C1|C2).
  // GHZ -> EPR: moduli of its two amplitudes, which are the Schmidt
  // coefficients of the AB state it leaves behind.
  std::vector<double> charlie_schmidt;
  double charlie_phase = 0.0;              // GHZ -> EPR relative phase
  std::vector<Matrix> product_factors;     // 2EPR -> GHZ: a0, b0, a1, b1
  double singular_value_balance = 0.0;     // 2EPR -> GHZ: | |c0| - |c1| | / max
  double charlie_form_residual = 0.0;
  double a_unitarity_deviation = 0.0;
  double b_unitarity_deviation = 0.0;
  bool factors_unitary = false;
  double branch_identity_residual = 0.0;
  double proportionality = 0.0;  // r_i, or |s_i|^2 for 2EPR -> GHZ
  bool pass = false;
};

struct StructureReport {
  BoxTask task = BoxTask::entanglement_swapping;
  std::vector<BranchStructure> branches;
  double completeness_residual = 0.0;
  double resolution_residual = 0.0;  // sum of weight * (Charlie projector) vs identity
  bool pass = false;
};

namespace detail {

// Deviation of F^H F from alpha I, alpha = Tr(F^H F)/d.
inline std::pair<double, double> unitarity_deviation(const Matrix& f) {
  const Matrix g = f.adjoint() * f;
  const double alpha = g.trace().real() / static_cast<double>(g.rows());
  Matrix id = Matrix::identity(g.rows());
  id *= alpha;
  return {max_abs_diff(g, id), alpha};
}

// Kets spanning the row space of c with their squared singular values,
// strongest first. Singular values are |c v| rather than sqrt of Gram
// eigenvalues so that noise-level directions stay below the threshold.
inline std::vector<std::pair<double, Matrix>> row_space(const Matrix& c, double threshold) {
  const auto e = eig_hermitian(hermitian_part(c.adjoint() * c));
  std::vector<std::pair<double, Matrix>> out;
  const std::size_t n = e.eigenvalues.size();
  for (std::size_t j = n; j-- > 0;) {
    Matrix v(n, 1);
    for (std::size_t k = 0; k < n; ++k) v(k, 0) = e.eigenvectors(k, j);
    const double s = frobenius_norm(c * v);
    if (s <= threshold) continue;
    out.emplace_back(s * s, std::move(v));
  }
  return out;
}

inline Matrix as_2x2(const Matrix& v) {
  return Matrix{{v(0, 0), v(1, 0)}, {v(2, 0), v(3, 0)}};
}

inline Complex det2(const Matrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Splits a (near) rank-one 2x2 amplitude matrix n = a b^T into unit a, b.
inline std::pair<Matrix, Matrix> split_product(const Matrix& n) {
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (std::abs(n(i, j)) > std::abs(n(bi, bj))) {
        bi = i;
        bj = j;
      }
  Matrix a = Matrix::column({n(0, bj), n(1, bj)});
  Matrix b = Matrix::column({n(bi, 0), n(bi, 1)});
  a *= 1.0 / vector_norm(a);
  b *= 1.0 / vector_norm(b);
  return {a, b};
}

// Looks for two product vectors in span{v1, v2} (4-dim, C1 (x) C2) and
// returns them as (a0, b0, a1, b1) with the largest of: non-orthogonality of
// the a's, of the b's, and the determinant left in each candidate.
inline std::pair<std::vector<Matrix>, double> product_basis(const Matrix& v1, const Matrix& v2) {
  const Matrix m1 = as_2x2(v1);
  const Matrix m2 = as_2x2(v2);
  // det(m1 + t m2) = alpha t^2 + beta t + gamma
  const Complex alpha = det2(m2);
  const Complex gamma = det2(m1);
  const Complex beta = m1(0, 0) * m2(1, 1) + m2(0, 0) * m1(1, 1) - m1(0, 1) * m2(1, 0) - m2(0, 1) * m1(1, 0);

  std::vector<Matrix> candidates;
  if (std::abs(alpha) < 1e-12) {
    candidates.push_back(m2);
    if (std::abs(beta) > 1e-12) {
      candidates.push_back(m1 + (-gamma / beta) * m2);
    } else {
      candidates.push_back(m1);
    }
  } else {
    const Complex disc = std::sqrt(beta * beta - 4.0 * alpha * gamma);
    // Numerically stable pair of roots.
    const Complex qq = -0.5 * (beta + (std::real(std::conj(beta) * disc) >= 0 ? disc : -disc));
    const Complex t1 = qq / alpha;
    const Complex t2 = std::abs(qq) > 1e-300 ? gamma / qq : t1;
    candidates.push_back(m1 + t1 * m2);
    candidates.push_back(m1 + t2 * m2);
  }

  double residual = 0.0;
  std::vector<Matrix> factors;
  for (auto& n : candidates) {
    const double scale = frobenius_norm(n);
    if (scale < 1e-12) return {{}, 1.0};
    n *= 1.0 / scale;
    residual = std::max(residual, std::abs(det2(n)));
    auto [a, b] = split_product(n);
    factors.push_back(std::move(a));
    factors.push_back(std::move(b));
  }
  residual = std::max(residual, std::abs(inner(factors[0], factors[2])));
  residual = std::max(residual, std::abs(inner(factors[1], factors[3])));
  return {factors, residual};
}

}  // namespace detail

/// Checks each branch against the standard form every box of its task must
/// have: unitary A/B factors, a Charlie factor of the right rank and shape,
/// and an output proportional to the target.
inline StructureReport analyze_structure(const Box& box, double tol = kStructureTol) {
  StructureReport report;
  report.task = box.task();
  report.completeness_residual = box.completeness_residual();

  const BoxTask task = box.task();
  const PureState input = canonical_input(task);
  const std::size_t cin = charlie_input_dim(task);
  const std::size_t expected_rank = task == BoxTask::two_epr_to_ghz ? 2 : 1;
  Matrix resolution(cin, cin);
  bool all_pass = true;

  for (const auto& br : box.branches()) {
    BranchStructure bs;
    bs.label = br.label;
    bs.expected_rank = expected_rank;

    const auto [adev, aalpha] = detail::unitarity_deviation(br.a);
    const auto [bdev, balpha] = detail::unitarity_deviation(br.b);
    bs.a_unitarity_deviation = adev;
    bs.b_unitarity_deviation = bdev;
    bs.factors_unitary = adev <= tol && bdev <= tol && aalpha > tol && balpha > tol;

    const Matrix k = br.kraus();
    const Matrix out = k * input.vector();
    bs.probability = std::pow(vector_norm(out), 2);

    if (max_abs(br.c) <= tol) {
      bs.trivial = true;
      bs.pass = true;
      report.branches.push_back(std::move(bs));
      continue;
    }

    const auto rows = detail::row_space(br.c, 1e-8);
    bs.charlie_rank = rows.size();
    const double scale = aalpha * balpha;
    for (const auto& [s2, v] : rows) bs.charlie_vectors.push_back(v);
    bs.weight = rows.empty() ? 0.0 : scale * rows.front().first;

    bool form_ok = bs.charlie_rank == expected_rank;
    if (form_ok) {
      switch (task) {
        case BoxTask::entanglement_swapping: {
          const Matrix& psi = bs.charlie_vectors.front();
          bs.charlie_schmidt = schmidt_coefficients(psi, {2, 2}, {0});
          const double h = 1.0 / std::sqrt(2.0);
          bs.charlie_form_residual =
              std::max(std::abs(bs.charlie_schmidt[0] - h), std::abs(bs.charlie_schmidt[1] - h));
          resolution += bs.weight * outer(psi, psi);
          break;
        }
        case BoxTask::ghz_to_epr: {
          const Matrix& psi = bs.charlie_vectors.front();
          const double m0 = std::abs(psi(0, 0));
          const double m1 = std::abs(psi(1, 0));
          bs.charlie_schmidt = {std::max(m0, m1), std::min(m0, m1)};
          const double h = 1.0 / std::sqrt(2.0);
          bs.charlie_form_residual = std::max(std::abs(m0 - h), std::abs(m1 - h));
          if (m0 > 1e-12 && m1 > 1e-12) bs.charlie_phase = std::arg(psi(1, 0) / psi(0, 0));
          if (bs.charlie_phase <= -std::numbers::pi + 1e-12) bs.charlie_phase = std::numbers::pi;
          resolution += bs.weight * outer(psi, psi);
          break;
        }
        case BoxTask::two_epr_to_ghz: {
          const double s0 = std::sqrt(rows[0].first);
          const double s1 = std::sqrt(rows[1].first);
          bs.singular_value_balance = std::abs(s0 - s1) / s0;
          auto [factors, residual] = detail::product_basis(rows[0].second, rows[1].second);
          bs.product_factors = std::move(factors);
          bs.charlie_form_residual = std::max(bs.singular_value_balance, residual);
          if (bs.product_factors.size() == 4) {
            const Matrix v0 = tensor(bs.product_factors[0], bs.product_factors[1]);
            const Matrix v1 = tensor(bs.product_factors[2], bs.product_factors[3]);
            resolution += bs.weight * (outer(v0, v0) + outer(v1, v1));
          }
          break;
        }
      }
      form_ok = bs.charlie_form_residual <= tol;
    }

    // Branch output against the target.
    if (bs.probability > 1e-12) {
      if (task == BoxTask::two_epr_to_ghz) {
        if (box.charlie_output_dim() == 2) {
          const Matrix g = ghz().vector();
          const Complex s = inner(g, out);
          bs.proportionality = std::norm(s);
          bs.branch_identity_residual = max_abs(out - s * g) / std::sqrt(bs.probability);
        } else {
          bs.branch_identity_residual = 1.0;
        }
      } else {
        const Matrix rho = partial_trace(outer(out, out), box.output_shape(), {0, 1});
        bs.proportionality = rho.trace().real();
        bs.branch_identity_residual =
            max_abs_diff((1.0 / bs.proportionality) * rho, epr_projector());
      }
    } else {
      bs.branch_identity_residual = 0.0;
    }

    bs.pass = bs.factors_unitary && form_ok && bs.branch_identity_residual <= tol &&
              (bs.probability <= 1e-12 || bs.proportionality > 0.0);
    all_pass = all_pass && bs.pass;
    report.branches.push_back(std::move(bs));
  }

  report.resolution_residual = max_abs_diff(resolution, Matrix::identity(cin));
  report.pass = all_pass && report.completeness_residual <= tol && report.resolution_residual <= tol;
  return report;
}

}  // namespace erbox
