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

// Signaling tests and the communication cost / value bounds of the three
// redistribution tasks. Every number is produced by running a protocol on
// an explicit box; nothing here is a stored constant.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "erbox/boxes.hpp"
#include "erbox/infotheory.hpp"
#include "erbox/linalg.hpp"
#include "erbox/qstate.hpp"

namespace erbox {

struct Optimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section maximization of f on [lo, hi]. The bracket is refined to
/// width <= tol; both endpoints and the final midpoint are compared, so a
/// boundary maximum is never missed.
inline Optimum optimize_1d(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-10) {
  if (!(lo < hi)) throw std::invalid_argument("optimize_1d: empty interval");
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_1d: tolerance must be positive");
  Optimum best;
  auto eval = [&](double x) {
    const double v = f(x);
    ++best.evaluations;
    if (!std::isfinite(v)) throw std::domain_error("optimize_1d: non-finite value at " + std::to_string(x));
    return v;
  };
  auto consider = [&](double x, double v) {
    if (best.evaluations == 1 || v > best.value) {
      best.x = x;
      best.value = v;
    }
  };

  consider(lo, eval(lo));
  consider(hi, eval(hi));

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0; it < 500 && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  consider(c, fc);
  consider(d, fd);
  const double mid = 0.5 * (a + b);
  consider(mid, eval(mid));
  return best;
}

/// S(p a + (1-p) b) - p S(a) - (1-p) S(b).
inline double two_state_holevo(double p, const Matrix& a, const Matrix& b) {
  return von_neumann_entropy(p * a + (1.0 - p) * b) - p * von_neumann_entropy(a) -
         (1.0 - p) * von_neumann_entropy(b);
}

/// Holevo quantity of the uniform ensemble over `states`.
inline double uniform_holevo(const std::vector<Matrix>& states) {
  const double w = 1.0 / static_cast<double>(states.size());
  Matrix avg(states.front().rows(), states.front().cols());
  double mean = 0.0;
  for (const auto& s : states) {
    avg += w * s;
    mean += w * von_neumann_entropy(s);
  }
  return von_neumann_entropy(avg) - mean;
}

// ---------------------------------------------------------------------------
// Signaling

/// A sender-side encoding map for one symbol. `map` acts on the whole input
/// register and is the identity outside `sender`.
struct AlphabetMap {
  Superoperator map;
  IndexSet sender;
  std::string label;

  static AlphabetMap unitary(const Matrix& u, const SubsystemShape& shape, IndexSet targets,
                             std::string label) {
    auto k = KrausChannel::local_unitary(u, shape, targets);
    return {Superoperator::from_kraus(std::move(k)), std::move(targets), std::move(label)};
  }
  static AlphabetMap kraus(std::span<const Matrix> local_ops, const SubsystemShape& shape,
                           IndexSet targets, std::string label) {
    auto k = KrausChannel::local(local_ops, shape, targets);
    return {Superoperator::from_kraus(std::move(k)), std::move(targets), std::move(label)};
  }
  static AlphabetMap identity(const SubsystemShape& shape, IndexSet sender, std::string label) {
    return {Superoperator::identity(shape), std::move(sender), std::move(label)};
  }
};

struct SignalingReport {
  IndexSet sender;
  IndexSet receiver;
  std::vector<std::string> labels;
  std::vector<Matrix> outputs;                  // reduced receiver states per symbol
  std::vector<std::vector<double>> distances;   // pairwise trace distances
  double max_distance = 0.0;
  double holevo_of_outputs = 0.0;
  bool signaling = false;
};

/// Party owning register index i: 0 = Alice, 1 = Bob, anything later is
/// Charlie. Input and output registers share this convention, so sender
/// (input indices) and receiver (output indices) are compared by party.
inline std::size_t party_of(std::size_t index) { return std::min<std::size_t>(index, 2); }

inline SignalingReport signaling_test(const Superoperator& channel, const DensityMatrix& state,
                                      const std::vector<AlphabetMap>& maps, const IndexSet& receiver,
                                      double tol = kValidateTol) {
  if (maps.size() < 2) throw std::invalid_argument("signaling_test: need at least two alphabet maps");
  if (state.shape().total() != channel.input_shape().total()) {
    throw std::invalid_argument("signaling_test: state shape does not match channel input");
  }
  if (receiver.empty()) throw std::invalid_argument("signaling_test: empty receiver");
  for (const auto& m : maps) {
    if (m.map.input_shape() != channel.input_shape() || m.map.output_shape() != channel.input_shape()) {
      throw std::invalid_argument("signaling_test: alphabet map '" + m.label + "' has the wrong shape");
    }
    for (auto s : m.sender)
      for (auto r : receiver)
        if (party_of(s) == party_of(r)) {
          throw std::invalid_argument("signaling_test: sender and receiver overlap");
        }
  }
  SignalingReport rep;
  rep.sender = maps.front().sender;
  rep.receiver = receiver;
  IndexSet keep(receiver);
  std::sort(keep.begin(), keep.end());
  for (const auto& m : maps) {
    const Matrix out = channel.apply(m.map.apply(state.matrix()));
    rep.outputs.push_back(hermitian_part(partial_trace(out, channel.output_shape(), keep)));
    rep.labels.push_back(m.label);
  }
  const std::size_t n = rep.outputs.size();
  rep.distances.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = trace_distance(rep.outputs[i], rep.outputs[j]);
      rep.distances[i][j] = rep.distances[j][i] = d;
      rep.max_distance = std::max(rep.max_distance, d);
    }
  rep.holevo_of_outputs = uniform_holevo(rep.outputs);
  rep.signaling = rep.max_distance > tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Communication value: lower bounds

struct ZflipReport {
  double bits = 0.0;      // certified bits per use
  double overlap = 0.0;   // <Psi+|rho_AB^(Z)|Psi+>
  double distance = 0.0;  // between the two AB outputs
  double holevo = 0.0;
  bool certified = false;
};

/// Charlie encodes one bit as I or Z on his first qubit; Alice and Bob
/// decode jointly on AB.
inline ZflipReport cv_lower_zflip(const Superoperator& channel, BoxTask task, double tol = kValidateTol) {
  if (task == BoxTask::two_epr_to_ghz) {
    throw std::invalid_argument("cv_lower_zflip: protocol needs an EPR-output task");
  }
  if (channel.input_shape().total() != task_input_shape(task).total()) {
    throw std::invalid_argument("cv_lower_zflip: channel does not match task");
  }
  const SubsystemShape in_shape = task_input_shape(task);
  const Matrix in = canonical_input(task).projector();
  const Matrix z = embed(pauli(3), in_shape, {2});
  const Matrix out_i = partial_trace(channel.apply(in), channel.output_shape(), {0, 1});
  const Matrix out_z = partial_trace(channel.apply(z * in * z), channel.output_shape(), {0, 1});

  ZflipReport r;
  r.overlap = (epr().vector().adjoint() * out_z * epr().vector())(0, 0).real();
  r.distance = trace_distance(hermitian_part(out_i), hermitian_part(out_z));
  r.holevo = uniform_holevo({hermitian_part(out_i), hermitian_part(out_z)});
  r.certified = r.overlap <= tol && std::abs(r.distance - 1.0) <= tol;
  r.bits = r.certified ? r.holevo : 0.0;
  return r;
}

inline ZflipReport cv_lower_zflip(const Box& box, double tol = kValidateTol) {
  return cv_lower_zflip(box.channel(), box.task(), tol);
}

struct DenseCodingReport {
  double bits = 0.0;
  Party receiver = Party::bob;
  std::vector<Matrix> outputs;  // the receiver's two-qubit states, one per Pauli
  Matrix gram = Matrix(4, 4);            // Tr(rho_mu rho_nu)
  double gram_residual = 0.0;   // max |gram - I|
  bool certified = false;
};

namespace detail {

inline bool proportional_to_identity(const Matrix& f, double tol) {
  if (std::abs(f(0, 0)) <= tol) return false;
  return max_abs_diff((1.0 / f(0, 0)) * f, Matrix::identity(f.rows())) <= tol;
}

}  // namespace detail

/// Charlie shares an extra EPR pair with the party that receives the
/// teleportation corrections and rotates his half by one of four Paulis.
/// The box swaps that entanglement into the receiver's lab, where the four
/// rotations become four orthogonal Bell states.
inline DenseCodingReport dense_coding_demo(const Box& box, double tol = kValidateTol) {
  if (box.task() != BoxTask::entanglement_swapping) {
    throw std::invalid_argument("dense_coding_demo: box is not an entanglement-swapping box");
  }
  bool a_trivial = true;
  bool b_trivial = true;
  for (const auto& br : box.branches()) {
    a_trivial = a_trivial && detail::proportional_to_identity(br.a, 1e-8);
    b_trivial = b_trivial && detail::proportional_to_identity(br.b, 1e-8);
  }
  if (a_trivial == b_trivial || !validate(box, tol).pass) {
    throw std::invalid_argument(
        "dense_coding_demo: box is not a teleportation box with corrections on a single party");
  }
  DenseCodingReport r;
  r.receiver = b_trivial ? Party::alice : Party::bob;

  // Register A, B, C1, C2, R with R the receiver's extra qubit.
  const bool to_alice = r.receiver == Party::alice;
  const PureState in = to_alice ? paired_state(5, {{0, 2}, {4, 3}}) : paired_state(5, {{4, 2}, {1, 3}});
  const std::size_t rotated = to_alice ? 3 : 2;
  const SubsystemShape shape{2, 2, 2, 2, 2};
  const SubsystemShape out_shape{2, 2, box.charlie_output_dim(), 2};
  const IndexSet keep = to_alice ? IndexSet{0, 3} : IndexSet{1, 3};
  const auto ops = box.kraus_operators();
  for (int mu = 0; mu < 4; ++mu) {
    const Matrix u = embed(pauli(mu), shape, {rotated});
    const Matrix x = u * in.projector() * u.adjoint();
    const Matrix out = apply_kraus(ops, x, 2);
    r.outputs.push_back(hermitian_part(partial_trace(out, out_shape, keep)));
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r.gram(i, j) = (r.outputs[i] * r.outputs[j]).trace();
  r.gram_residual = max_abs_diff(r.gram, Matrix::identity(4));
  r.certified = r.gram_residual <= tol;
  r.bits = r.certified ? uniform_holevo(r.outputs) : 0.0;
  return r;
}

inline Matrix rho_even() {
  Matrix m(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return m;
}

inline Matrix rho_odd() {
  Matrix m(4, 4);
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  return m;
}

struct CurvePoint {
  double p;
  double chi;
};

struct DepolarizeReport {
  double chi_max = 0.0;
  double p_star = 0.0;
  Matrix identity_output = Matrix(4, 4);     // AB state for the identity symbol
  Matrix depolarized_output = Matrix(4, 4);  // AB state for the depolarizing symbol
  double depolarized_residual = 0.0;   // vs I/4
  double identity_residual = 0.0;      // vs rho_even
  double charlie_depolarized_residual = 0.0;  // Pauli-pair set on C1 C2 vs its closed form
  std::vector<CurvePoint> curve;
};

/// chi(p) for the ensemble {(p, a), (1 - p, b)}.
inline std::function<double(double)> holevo_curve(Matrix a, Matrix b) {
  return [a = std::move(a), b = std::move(b)](double p) { return two_state_holevo(p, a, b); };
}

/// Charlie applies either nothing or a uniformly random Pauli pair on C1 C2.
inline DepolarizeReport cv_lower_depolarize(const Box& box, std::size_t samples = 0) {
  if (box.task() != BoxTask::two_epr_to_ghz) {
    throw std::invalid_argument("cv_lower_depolarize: box is not a 2EPR -> GHZ box");
  }
  const SubsystemShape shape = box.input_shape();
  const Matrix in = canonical_input(box.task()).projector();
  const auto pauli_ops = pauli_pair_kraus();
  const KrausChannel depol = KrausChannel::local(pauli_ops, shape, std::vector<std::size_t>{2, 3});
  const Matrix depolarized_in = depol.apply(in);
  const Matrix closed_form = Superoperator::depolarize(shape, {2, 3}).apply(in);

  const auto ops = box.kraus_operators();
  DepolarizeReport r;
  r.charlie_depolarized_residual = max_abs_diff(depolarized_in, closed_form);
  r.identity_output = hermitian_part(partial_trace(apply_kraus(ops, in), box.output_shape(), {0, 1}));
  r.depolarized_output =
      hermitian_part(partial_trace(apply_kraus(ops, depolarized_in), box.output_shape(), {0, 1}));
  Matrix quarter = Matrix::identity(4);
  quarter *= 0.25;
  r.depolarized_residual = max_abs_diff(r.depolarized_output, quarter);
  r.identity_residual = max_abs_diff(r.identity_output, rho_even());

  const auto chi = holevo_curve(r.identity_output, r.depolarized_output);
  const Optimum best = optimize_1d(chi, 0.0, 1.0, 1e-10);
  r.chi_max = best.value;
  r.p_star = best.x;
  for (std::size_t k = 0; k < samples; ++k) {
    const double p = samples == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(samples - 1);
    r.curve.push_back({p, chi(p)});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Communication value: upper bounds

struct TwirledUpperReport {
  BoxTask task = BoxTask::entanglement_swapping;
  double value = 0.0;
  double p_star = 0.0;
  // 2EPR -> GHZ only.
  std::array<double, 4> vertex_fidelity{};  // F' on each twirl projector (normalized)
  double f_min = 0.0;
  double f_max = 0.0;
  Matrix rho_f_max = Matrix(4, 4);
  Matrix rho_f_min = Matrix(4, 4);
  std::size_t simplex_points = 0;
  std::size_t simplex_violations = 0;
  double channel_formula_residual = 0.0;  // Tr_C of the twirled box vs F' rho_even + (1-F') rho_odd
};

namespace detail {

inline double even_weight(const Matrix& rho_ab) {
  return (rho_ab(0, 0) + rho_ab(3, 3)).real();
}

// AB outputs of the double-twirled channel on the normalized twirl projectors.
inline std::array<Matrix, 4> twirled_vertex_outputs(const Superoperator& twirled) {
  const auto proj = double_twirl_projectors();
  std::array<Matrix, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    Matrix x = proj[k];
    x *= 1.0 / x.trace().real();
    out[k] = hermitian_part(partial_trace(twirled.apply(x), twirled.output_shape(), {0, 1}));
  }
  return out;
}

}  // namespace detail

/// Upper bound on the CV of the task obtained from the twirled canonical
/// box. For the EPR-output tasks the output twirl leaves a binary
/// {Psi+, I - Psi+} alphabet whose capacity is at most max_F H(F). For
/// 2EPR -> GHZ the AB outputs form the segment rho_F', and by concavity the
/// Holevo maximum uses its two end points.
inline TwirledUpperReport cv_upper_twirled(BoxTask task, std::uint64_t seed = 0) {
  TwirledUpperReport r;
  r.task = task;
  if (task != BoxTask::two_epr_to_ghz) {
    const Optimum best = optimize_1d([](double f) { return binary_entropy(f); }, 0.0, 1.0, 1e-10);
    r.value = best.value;
    r.p_star = best.x;
    return r;
  }

  const Box box = canonical_box(task);
  const Superoperator twirled = twirled_box(box);
  const auto outs = detail::twirled_vertex_outputs(twirled);
  std::size_t imax = 0;
  std::size_t imin = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    r.vertex_fidelity[k] = detail::even_weight(outs[k]);
    if (r.vertex_fidelity[k] > r.vertex_fidelity[imax]) imax = k;
    if (r.vertex_fidelity[k] < r.vertex_fidelity[imin]) imin = k;
  }
  r.f_max = r.vertex_fidelity[imax];
  r.f_min = r.vertex_fidelity[imin];
  r.rho_f_max = outs[imax];
  r.rho_f_min = outs[imin];

  const Optimum best = optimize_1d(holevo_curve(r.rho_f_max, r.rho_f_min), 0.0, 1.0, 1e-10);
  r.value = best.value;
  r.p_star = best.x;

  // F'(A,B,C,D) on random points of the simplex; uniform via normalized
  // exponentials.
  Rng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  r.simplex_points = 500;
  for (std::size_t k = 0; k < r.simplex_points; ++k) {
    IsotropicWeights w{expo(rng), expo(rng), expo(rng), expo(rng)};
    const double s = w.epr_epr + w.epr_noise + w.noise_epr + w.noise_noise;
    w.epr_epr /= s;
    w.epr_noise /= s;
    w.noise_epr /= s;
    w.noise_noise /= s;
    const double f = w.correlated_fraction();
    if (f < 1.0 / 3.0 - 1e-12 || f > 1.0 + 1e-12) ++r.simplex_violations;
  }

  // The AB output formula on random full-rank inputs.
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho(random_density(16, rng), box.input_shape());
    const double f = double_twirl(rho).weights.correlated_fraction();
    const Matrix out = partial_trace(twirled.apply(rho.matrix()), twirled.output_shape(), {0, 1});
    const Matrix expected = f * rho_even() + (1.0 - f) * rho_odd();
    r.channel_formula_residual = std::max(r.channel_formula_residual, max_abs_diff(out, expected));
  }
  return r;
}

struct AbelianLemmaReport {
  CqCapacity capacity;
  std::array<double, 4> vertex_fidelity{};
};

/// Classical capacity of the double-twirled 2EPR -> GHZ channel restricted
/// to c-q inputs on the twirl's projector algebra, by Blahut-Arimoto.
inline AbelianLemmaReport abelian_lemma_check(const Box& box, double tol = 1e-10) {
  if (box.task() != BoxTask::two_epr_to_ghz) {
    throw std::invalid_argument("abelian_lemma_check: box is not a 2EPR -> GHZ box");
  }
  const auto outs = detail::twirled_vertex_outputs(twirled_box(box));
  AbelianLemmaReport r;
  for (std::size_t k = 0; k < 4; ++k) r.vertex_fidelity[k] = detail::even_weight(outs[k]);
  r.capacity = cq_capacity(std::vector<Matrix>(outs.begin(), outs.end()), tol);
  return r;
}

struct EaccqcEstimate {
  std::size_t samples = 0;
  double max_value = 0.0;
  double max_excess_over_hf = -1.0;  // max over inputs of value - H(F)
};

/// Random-restart lower estimate of the entanglement-assisted capacity of an
/// EPR-output channel: inputs are marginals of random pure states on
/// input (x) E with dim E = dim input. Also records how far each value sits
/// above H(F) with F the output Psi+ weight.
inline EaccqcEstimate eaccqc_estimate(const Superoperator& channel, std::size_t samples,
                                      std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = channel.input_shape().total();
  EaccqcEstimate r;
  r.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const Matrix psi = random_unit_vector(d * d, rng);
    const Matrix rho = partial_trace(outer(psi, psi), SubsystemShape{d, d}, {0});
    const DensityMatrix input(hermitian_part(rho), channel.input_shape());
    const double v = eaccqc_value(channel, input);
    const Matrix out = partial_trace(channel.apply(input.matrix()), channel.output_shape(), {0, 1});
    const double f = std::clamp((epr().vector().adjoint() * out * epr().vector())(0, 0).real(), 0.0, 1.0);
    r.max_value = std::max(r.max_value, v);
    r.max_excess_over_hf = std::max(r.max_excess_over_hf, v - binary_entropy(f));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Communication cost

struct CcBound {
  BoxTask task = BoxTask::entanglement_swapping;
  double lower = 0.0;             // sum p_i I(rho_i) - I(rho_bar)
  double outcome_entropy = 0.0;   // H({p_i}) of the canonical box
  double delta_S = 0.0;
  double delta_I = 0.0;
  double pre_measurement_mi = 0.0;
  double embedding_residual = 0.0;
  bool chain_holds = false;       // H >= delta_S >= delta_I
  std::string achieving_box;
  double achieving_cost = 0.0;    // cc_of_box of the canonical box
};

/// Shannon entropy of Charlie's outcomes on the canonical input.
inline double cc_of_box(const Box& box) {
  return shannon_entropy(outcome_distribution(box, canonical_input(box.task()).density()));
}

/// Evaluates the lemma chain on the canonical box of `task`: the ensemble is
/// the AB states left by Charlie's measurement before any correction.
inline CcBound cc_lower(BoxTask task) {
  const Box box = canonical_box(task);
  const PureState input = canonical_input(task);
  const SubsystemShape out_shape = box.output_shape();
  const SubsystemShape ab{2, 2};

  std::vector<EnsembleEntry> entries;
  std::vector<double> probs;
  for (const auto& br : box.branches()) {
    const Matrix k = tensor(Matrix::identity(4), br.c);
    const Matrix v = k * input.vector();
    const double p = std::pow(vector_norm(v), 2);
    probs.push_back(p);
    if (p <= 1e-15) continue;
    Matrix rho = partial_trace(outer(v, v), out_shape, {0, 1});
    rho *= 1.0 / p;
    entries.push_back({p, DensityMatrix(hermitian_part(rho), ab)});
  }
  const Ensemble ens(std::move(entries));
  const DeltaReport d = delta_lemma(ens, {0}, {1});

  CcBound r;
  r.task = task;
  r.outcome_entropy = shannon_entropy(probs);
  r.delta_S = d.delta_S;
  r.delta_I = d.delta_I;
  r.embedding_residual = d.embedding_residual;
  r.pre_measurement_mi =
      mutual_information(partial_trace(input.projector(), input.shape(), {0, 1}), ab, {0}, {1});
  r.lower = d.delta_I;
  r.chain_holds = r.outcome_entropy >= r.delta_S - 1e-9 && r.delta_S >= r.delta_I - 1e-9;
  r.achieving_box = canonical_box_label(task);
  r.achieving_cost = cc_of_box(box);
  return r;
}

struct CvBounds {
  BoxTask task = BoxTask::entanglement_swapping;
  double lower = 0.0;
  std::optional<double> upper;
  std::vector<std::string> witnesses;
};

struct TaskSummary {
  CcBound cc;
  CvBounds cv;
};

inline TaskSummary task_summary(BoxTask task) {
  TaskSummary s;
  s.cc = cc_lower(task);
  s.cv.task = task;
  const Box box = canonical_box(task);
  if (task == BoxTask::two_epr_to_ghz) {
    s.cv.lower = cv_lower_depolarize(box).chi_max;
    s.cv.witnesses.push_back("depolarize");
  } else {
    const ZflipReport z = cv_lower_zflip(box);
    s.cv.lower = z.bits;
    s.cv.witnesses.push_back("zflip");
  }
  s.cv.upper = cv_upper_twirled(task).value;
  s.cv.witnesses.push_back(task == BoxTask::two_epr_to_ghz ? "double-twirl" : "output-twirl");
  return s;
}

}  // namespace erbox
