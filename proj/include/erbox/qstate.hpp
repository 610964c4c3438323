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

// States, Kraus channels and superoperators on qubit registers.

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "erbox/linalg.hpp"

namespace erbox {

inline constexpr double kStateTol = 1e-9;
inline constexpr double kNegativeEigenvalueTol = 1e-10;

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  DensityMatrix(Matrix m, SubsystemShape shape) : m_(std::move(m)), shape_(std::move(shape)) {
    if (!m_.is_square()) throw std::invalid_argument("DensityMatrix: matrix is not square");
    require_shape_matches(m_, shape_, "DensityMatrix");
    if (!is_hermitian(m_, kStateTol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    m_ = hermitian_part(m_);
    if (std::abs(m_.trace() - 1.0) > kStateTol) {
      throw std::invalid_argument("DensityMatrix: trace is " + std::to_string(m_.trace().real()));
    }
    const auto e = eig_hermitian(m_);
    if (e.eigenvalues.front() < -kNegativeEigenvalueTol) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                  std::to_string(e.eigenvalues.front()));
    }
  }

  static DensityMatrix maximally_mixed(const SubsystemShape& shape) {
    Matrix m = Matrix::identity(shape.total());
    m *= 1.0 / static_cast<double>(shape.total());
    return DensityMatrix(std::move(m), shape);
  }

  const Matrix& matrix() const { return m_; }
  const SubsystemShape& shape() const { return shape_; }
  std::size_t dim() const { return m_.rows(); }

  DensityMatrix reduced(std::span<const std::size_t> keep) const {
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    return DensityMatrix(partial_trace(m_, shape_, kept), shape_of(kept));
  }
  DensityMatrix reduced(std::initializer_list<std::size_t> keep) const {
    return reduced(std::span<const std::size_t>(keep.begin(), keep.size()));
  }

 private:
  SubsystemShape shape_of(std::span<const std::size_t> kept) const {
    std::vector<std::size_t> d;
    for (auto i : kept) d.push_back(shape_.dims.at(i));
    return SubsystemShape(std::move(d));
  }

  Matrix m_;
  SubsystemShape shape_;
};

class PureState {
 public:
  PureState(Matrix vector, SubsystemShape shape) : v_(std::move(vector)), shape_(std::move(shape)) {
    if (!v_.is_column()) throw std::invalid_argument("PureState: expected a column vector");
    require_shape_matches(v_, shape_, "PureState");
    if (std::abs(vector_norm(v_) - 1.0) > kStateTol) {
      throw std::invalid_argument("PureState: vector is not normalized");
    }
  }

  const Matrix& vector() const { return v_; }
  const SubsystemShape& shape() const { return shape_; }
  Matrix projector() const { return outer(v_, v_); }
  DensityMatrix density() const { return DensityMatrix(projector(), shape_); }

 private:
  Matrix v_;
  SubsystemShape shape_;
};

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

/// <psi|rho|psi>.
inline double fidelity_with(const Matrix& rho, const Matrix& psi) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

// ---------------------------------------------------------------------------
// Canonical objects

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
inline Matrix pauli(int mu) {
  using namespace std::complex_literals;
  switch (mu) {
    case 0: return {{1.0, 0.0}, {0.0, 1.0}};
    case 1: return {{0.0, 1.0}, {1.0, 0.0}};
    case 2: return {{0.0, -1i}, {1i, 0.0}};
    case 3: return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw std::out_of_range("pauli: index must be in 0..3");
  }
}

/// (|00> + |11>) / sqrt(2)
inline PureState epr() {
  const double h = 1.0 / std::sqrt(2.0);
  return PureState(Matrix::column({h, 0.0, 0.0, h}), {2, 2});
}

/// (|000> + |111>) / sqrt(2)
inline PureState ghz() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix v(8, 1);
  v(0, 0) = h;
  v(7, 0) = h;
  return PureState(std::move(v), {2, 2, 2});
}

/// (sigma_mu (x) I)|Psi+>, mu = 0..3.
inline std::array<PureState, 4> bell_basis() {
  const Matrix psi = epr().vector();
  auto make = [&](int mu) { return PureState(tensor(pauli(mu), pauli(0)) * psi, {2, 2}); };
  return {make(0), make(1), make(2), make(3)};
}

inline Matrix epr_projector() { return epr().projector(); }

/// Qubit register with Bell pairs on the listed subsystem pairs and |0> on
/// every other qubit.
inline PureState paired_state(std::size_t qubits,
                              std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<std::size_t> partner(qubits, qubits);
  for (auto [i, j] : pairs) {
    if (i >= qubits || j >= qubits || i == j || partner[i] != qubits || partner[j] != qubits) {
      throw std::invalid_argument("paired_state: invalid pair list");
    }
    partner[i] = j;
    partner[j] = i;
  }
  const std::size_t dim = std::size_t{1} << qubits;
  const double amp = std::pow(1.0 / std::sqrt(2.0), static_cast<double>(pairs.size()));
  Matrix v(dim, 1);
  for (std::size_t x = 0; x < dim; ++x) {
    bool ok = true;
    for (std::size_t q = 0; q < qubits && ok; ++q) {
      const std::size_t bit = (x >> (qubits - 1 - q)) & 1U;
      if (partner[q] == qubits) {
        ok = bit == 0;
      } else {
        ok = bit == ((x >> (qubits - 1 - partner[q])) & 1U);
      }
    }
    if (ok) v(x, 0) = amp;
  }
  return PureState(std::move(v), SubsystemShape(std::vector<std::size_t>(qubits, 2)));
}

inline PureState paired_state(std::size_t qubits,
                              std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  return paired_state(qubits, std::span<const std::pair<std::size_t, std::size_t>>(
                                  pairs.begin(), pairs.size()));
}

// ---------------------------------------------------------------------------
// Kraus channels

inline double completeness_residual(std::span<const Matrix> ops) {
  if (ops.empty()) throw std::invalid_argument("completeness_residual: empty operator list");
  Matrix sum(ops.front().cols(), ops.front().cols());
  for (const auto& k : ops) sum += k.adjoint() * k;
  return max_abs_diff(sum, Matrix::identity(sum.rows()));
}

/// sum_k (K_k (x) I_anc) X (K_k (x) I_anc)^H, with the ancilla as the last
/// (least significant) factor of X.
inline Matrix apply_kraus(std::span<const Matrix> ops, const Matrix& x, std::size_t ancilla_dim = 1) {
  if (ops.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
  const std::size_t din = ops.front().cols();
  const std::size_t dout = ops.front().rows();
  const std::size_t anc = ancilla_dim;
  if (!x.is_square() || x.rows() != din * anc) {
    throw std::invalid_argument("apply_kraus: state dimension does not match channel input");
  }
  Matrix out(dout * anc, dout * anc);
  Matrix half(dout * anc, din * anc);
  for (const auto& k : ops) {
    if (k.cols() != din || k.rows() != dout) {
      throw std::invalid_argument("apply_kraus: inconsistent operator dimensions");
    }
    // half = (K (x) I) X
    for (std::size_t o = 0; o < dout; ++o)
      for (std::size_t e = 0; e < anc; ++e) {
        Complex* hrow = &half.entries()[(o * anc + e) * din * anc];
        std::fill(hrow, hrow + din * anc, Complex{});
        for (std::size_t i = 0; i < din; ++i) {
          const Complex koi = k(o, i);
          if (koi == Complex{}) continue;
          const Complex* xrow = &x.entries()[(i * anc + e) * din * anc];
          for (std::size_t c = 0; c < din * anc; ++c) hrow[c] += koi * xrow[c];
        }
      }
    // out += half (K (x) I)^H
    for (std::size_t r = 0; r < dout * anc; ++r)
      for (std::size_t o = 0; o < dout; ++o)
        for (std::size_t f = 0; f < anc; ++f) {
          Complex s = 0.0;
          for (std::size_t j = 0; j < din; ++j) {
            const Complex koj = k(o, j);
            if (koj == Complex{}) continue;
            s += half(r, j * anc + f) * std::conj(koj);
          }
          out(r, o * anc + f) += s;
        }
  }
  return out;
}

class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> operators, SubsystemShape input_shape, SubsystemShape output_shape)
      : ops_(std::move(operators)), in_(std::move(input_shape)), out_(std::move(output_shape)) {
    if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
    for (const auto& k : ops_) {
      if (k.cols() != in_.total() || k.rows() != out_.total()) {
        throw std::invalid_argument("KrausChannel: operator dimensions do not match shapes");
      }
    }
    const double res = completeness_residual(ops_);
    if (res > kStateTol) {
      throw std::invalid_argument("KrausChannel: completeness violated (residual " +
                                  std::to_string(res) + ")");
    }
  }

  static KrausChannel identity(const SubsystemShape& shape) {
    return KrausChannel({Matrix::identity(shape.total())}, shape, shape);
  }

  /// Unitary acting on `targets`, identity elsewhere.
  static KrausChannel local_unitary(const Matrix& u, const SubsystemShape& shape,
                                    std::span<const std::size_t> targets) {
    return KrausChannel({embed(u, shape, targets)}, shape, shape);
  }
  static KrausChannel local_unitary(const Matrix& u, const SubsystemShape& shape,
                                    std::initializer_list<std::size_t> targets) {
    return local_unitary(u, shape, std::span<const std::size_t>(targets.begin(), targets.size()));
  }

  /// Local Kraus set acting on `targets`.
  static KrausChannel local(std::span<const Matrix> local_ops, const SubsystemShape& shape,
                            std::span<const std::size_t> targets) {
    std::vector<Matrix> ops;
    ops.reserve(local_ops.size());
    for (const auto& k : local_ops) ops.push_back(embed(k, shape, targets));
    return KrausChannel(std::move(ops), shape, shape);
  }

  const std::vector<Matrix>& operators() const { return ops_; }
  const SubsystemShape& input_shape() const { return in_; }
  const SubsystemShape& output_shape() const { return out_; }

  Matrix apply(const Matrix& x, std::size_t ancilla_dim = 1) const {
    return apply_kraus(ops_, x, ancilla_dim);
  }

 private:
  std::vector<Matrix> ops_;
  SubsystemShape in_;
  SubsystemShape out_;
};

inline DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& state) {
  if (state.dim() != channel.input_shape().total()) {
    throw std::invalid_argument("apply: state shape does not match channel input");
  }
  return DensityMatrix(hermitian_part(channel.apply(state.matrix())), channel.output_shape());
}

/// The 16 operators (sigma_mu (x) sigma_nu) / 4 on two qubits; the channel
/// they form sends every X to Tr(X) I/4.
inline std::vector<Matrix> pauli_pair_kraus() {
  std::vector<Matrix> ops;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) ops.push_back(0.25 * tensor(pauli(mu), pauli(nu)));
  return ops;
}

/// Computational-basis measurement (outcome forgotten) on one qubit.
inline std::vector<Matrix> dephasing_kraus() {
  return {Matrix{{1.0, 0.0}, {0.0, 0.0}}, Matrix{{0.0, 0.0}, {0.0, 1.0}}};
}

/// One term A (x) B (x) C of a separable channel.
struct SeparableBranch {
  Matrix a;
  Matrix b;
  Matrix c;
  std::size_t label = 0;

  Matrix kraus() const { return tensor(a, tensor(b, c)); }
};

// ---------------------------------------------------------------------------
// Closed-form twirls

/// F Psi+ + (1 - F)/3 (I - Psi+), F = <Psi+|rho|Psi+>.
inline DensityMatrix uu_star_twirl(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("uu_star_twirl: expected a two-qubit state");
  const Matrix p = epr_projector();
  const double f = fidelity_with(rho.matrix(), epr().vector());
  Matrix out = f * p + ((1.0 - f) / 3.0) * (Matrix::identity(4) - p);
  return DensityMatrix(std::move(out), {2, 2});
}

/// Weights of the four products of {Psi+, (I - Psi+)/3} on the pairs
/// (A,C1) and (B,C2). They sum to one.
struct IsotropicWeights {
  double epr_epr = 0.0;      // Psi+ (x) Psi+
  double epr_noise = 0.0;    // Psi+ on (A,C1), noise on (B,C2)
  double noise_epr = 0.0;    // noise on (A,C1), Psi+ on (B,C2)
  double noise_noise = 0.0;  // noise on both pairs

  /// Singlet-like weight of the AB output of a twirled 2EPR-GHZ box.
  double correlated_fraction() const {
    return epr_epr + (epr_noise + noise_epr) / 3.0 + 5.0 * noise_noise / 9.0;
  }
};

struct DoubleTwirlResult {
  DensityMatrix state;
  IsotropicWeights weights;
};

/// The four projectors of the double twirl on a [2,2,2,2] register ordered
/// A, B, C1, C2: P(A,C1)P(B,C2), P Q, Q P, Q Q, with Q = I - P.
inline std::array<Matrix, 4> double_twirl_projectors() {
  const SubsystemShape shape{2, 2, 2, 2};
  const Matrix p = epr_projector();
  const Matrix q = Matrix::identity(4) - p;
  const Matrix p1 = embed(p, shape, {0, 2});
  const Matrix q1 = embed(q, shape, {0, 2});
  const Matrix p2 = embed(p, shape, {1, 3});
  const Matrix q2 = embed(q, shape, {1, 3});
  return {p1 * p2, p1 * q2, q1 * p2, q1 * q2};
}

/// Independent UU* twirls of the (A,C1) and (B,C2) pairs of a register
/// ordered A, B, C1, C2.
inline DoubleTwirlResult double_twirl(const DensityMatrix& rho) {
  if (rho.shape() != SubsystemShape{2, 2, 2, 2}) {
    throw std::invalid_argument("double_twirl: expected shape [2,2,2,2] (A,B,C1,C2)");
  }
  const auto proj = double_twirl_projectors();
  std::array<double, 4> w{};
  for (std::size_t k = 0; k < 4; ++k) w[k] = (proj[k] * rho.matrix()).trace().real();
  const std::array<double, 4> rank{1.0, 3.0, 3.0, 9.0};
  Matrix out(16, 16);
  for (std::size_t k = 0; k < 4; ++k) out += (w[k] / rank[k]) * proj[k];
  return {DensityMatrix(std::move(out), rho.shape()), IsotropicWeights{w[0], w[1], w[2], w[3]}};
}

// ---------------------------------------------------------------------------
// Superoperators

enum class SuperoperatorKind { kraus, closed_form, composition };

class Superoperator {
 public:
  static Superoperator from_kraus(KrausChannel channel);
  static Superoperator identity(const SubsystemShape& shape) {
    return from_kraus(KrausChannel::identity(shape));
  }
  /// UU* twirl of subsystems (first, second), identity elsewhere.
  static Superoperator pair_twirl(const SubsystemShape& shape, std::size_t first, std::size_t second);
  /// Twirls of (A,C1) and (B,C2) on the register A, B, C1, C2.
  static Superoperator double_twirl(const SubsystemShape& shape);
  /// X -> Tr_targets(X) (x) I/d on `targets`.
  static Superoperator depolarize(const SubsystemShape& shape, std::vector<std::size_t> targets);
  /// Discards `traced`; output keeps the remaining subsystems in order.
  static Superoperator trace_out(const SubsystemShape& shape, std::vector<std::size_t> traced);

  friend Superoperator compose(const Superoperator& outer, const Superoperator& inner);

  SuperoperatorKind kind() const;
  std::string description() const;
  const SubsystemShape& input_shape() const { return in_; }
  const SubsystemShape& output_shape() const { return out_; }

  /// Acts on X (x) ancilla, ancilla being an extra trailing factor of X.
  Matrix apply(const Matrix& x, std::size_t ancilla_dim = 1) const;

  DensityMatrix apply(const DensityMatrix& state) const {
    if (state.shape().total() != in_.total()) {
      throw std::invalid_argument("Superoperator::apply: state shape " + to_string(state.shape()) +
                                  " does not match input " + to_string(in_));
    }
    return DensityMatrix(hermitian_part(apply(state.matrix())), out_);
  }

 private:
  struct Node;
  Superoperator(std::shared_ptr<const Node> node, SubsystemShape in, SubsystemShape out)
      : node_(std::move(node)), in_(std::move(in)), out_(std::move(out)) {}

  std::shared_ptr<const Node> node_;
  SubsystemShape in_;
  SubsystemShape out_;
};

struct PairTwirl {
  std::size_t first;
  std::size_t second;
};
struct Depolarize {
  std::vector<std::size_t> targets;
};
struct TraceOut {
  std::vector<std::size_t> traced;
};
struct Composition {
  Superoperator outer;
  Superoperator inner;
};

struct Superoperator::Node {
  std::variant<KrausChannel, PairTwirl, Depolarize, TraceOut, Composition> op;
};

namespace detail {

// Applies f to X viewed with `front` moved to the leading positions.
template <typename F>
Matrix with_front(const Matrix& x, const SubsystemShape& shape, std::span<const std::size_t> front,
                  F&& f) {
  const auto order = targets_first_order(shape, front);
  const Matrix moved = permute_subsystems(x, shape, order);
  const Matrix done = f(moved, shape.total_of(front), shape.total() / shape.total_of(front));
  return permute_subsystems(done, permuted_shape(shape, order), inverse_order(order));
}

inline Matrix pair_twirl_matrix(const Matrix& x, const SubsystemShape& shape, std::size_t first,
                                std::size_t second) {
  const std::array<std::size_t, 2> front{first, second};
  return with_front(x, shape, front, [](const Matrix& m, std::size_t d, std::size_t rest) {
    const Matrix p = epr_projector();
    // m0 = Tr_pair[(P (x) I) m], mt = Tr_pair[m]
    Matrix m0(rest, rest);
    Matrix mt(rest, rest);
    for (std::size_t r = 0; r < rest; ++r)
      for (std::size_t s = 0; s < rest; ++s) {
        Complex a = 0.0;
        Complex t = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          t += m(i * rest + r, i * rest + s);
          for (std::size_t j = 0; j < d; ++j) {
            if (p(j, i) == Complex{}) continue;
            a += p(j, i) * m(i * rest + r, j * rest + s);
          }
        }
        m0(r, s) = a;
        mt(r, s) = t;
      }
    const Matrix m1 = mt - m0;
    Matrix out(d * rest, d * rest);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Complex cp = p(i, j);
        const Complex cq = ((i == j ? 1.0 : 0.0) - p(i, j)) / 3.0;
        for (std::size_t r = 0; r < rest; ++r)
          for (std::size_t s = 0; s < rest; ++s)
            out(i * rest + r, j * rest + s) = cp * m0(r, s) + cq * m1(r, s);
      }
    return out;
  });
}

inline Matrix depolarize_matrix(const Matrix& x, const SubsystemShape& shape,
                                std::span<const std::size_t> targets) {
  return with_front(x, shape, targets, [](const Matrix& m, std::size_t d, std::size_t rest) {
    Matrix red(rest, rest);
    for (std::size_t r = 0; r < rest; ++r)
      for (std::size_t s = 0; s < rest; ++s) {
        Complex t = 0.0;
        for (std::size_t i = 0; i < d; ++i) t += m(i * rest + r, i * rest + s);
        red(r, s) = t;
      }
    Matrix id = Matrix::identity(d);
    id *= 1.0 / static_cast<double>(d);
    return tensor(id, red);
  });
}

inline std::vector<std::size_t> complement(const SubsystemShape& shape,
                                           std::span<const std::size_t> idx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < shape.count(); ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(i);
  return out;
}

}  // namespace detail

inline Superoperator Superoperator::from_kraus(KrausChannel channel) {
  auto in = channel.input_shape();
  auto out = channel.output_shape();
  return Superoperator(std::make_shared<const Node>(Node{std::move(channel)}), std::move(in),
                       std::move(out));
}

inline Superoperator Superoperator::pair_twirl(const SubsystemShape& shape, std::size_t first,
                                               std::size_t second) {
  const std::array<std::size_t, 2> idx{first, second};
  detail::require_subsystem_indices(shape, idx, "pair_twirl");
  if (shape[first] != 2 || shape[second] != 2) {
    throw std::invalid_argument("pair_twirl: both subsystems must be qubits");
  }
  return Superoperator(std::make_shared<const Node>(Node{PairTwirl{first, second}}), shape, shape);
}

inline Superoperator Superoperator::double_twirl(const SubsystemShape& shape) {
  if (shape != SubsystemShape{2, 2, 2, 2}) {
    throw std::invalid_argument("double_twirl: expected shape [2,2,2,2] (A,B,C1,C2)");
  }
  return compose(pair_twirl(shape, 0, 2), pair_twirl(shape, 1, 3));
}

inline Superoperator Superoperator::depolarize(const SubsystemShape& shape,
                                               std::vector<std::size_t> targets) {
  detail::require_subsystem_indices(shape, targets, "depolarize");
  return Superoperator(std::make_shared<const Node>(Node{Depolarize{std::move(targets)}}), shape,
                       shape);
}

inline Superoperator Superoperator::trace_out(const SubsystemShape& shape,
                                              std::vector<std::size_t> traced) {
  detail::require_subsystem_indices(shape, traced, "trace_out");
  const auto kept = detail::complement(shape, traced);
  if (kept.empty()) throw std::invalid_argument("trace_out: cannot discard every subsystem");
  std::vector<std::size_t> d;
  for (auto i : kept) d.push_back(shape[i]);
  return Superoperator(std::make_shared<const Node>(Node{TraceOut{std::move(traced)}}), shape,
                       SubsystemShape(std::move(d)));
}

inline Superoperator compose(const Superoperator& outer, const Superoperator& inner) {
  if (inner.output_shape() != outer.input_shape()) {
    throw std::invalid_argument("compose: inner output " + to_string(inner.output_shape()) +
                                " does not match outer input " + to_string(outer.input_shape()));
  }
  return Superoperator(
      std::make_shared<const Superoperator::Node>(Superoperator::Node{Composition{outer, inner}}),
      inner.input_shape(), outer.output_shape());
}

inline SuperoperatorKind Superoperator::kind() const {
  if (std::holds_alternative<KrausChannel>(node_->op)) return SuperoperatorKind::kraus;
  if (std::holds_alternative<Composition>(node_->op)) return SuperoperatorKind::composition;
  return SuperoperatorKind::closed_form;
}

inline std::string Superoperator::description() const {
  struct Visitor {
    std::string operator()(const KrausChannel& k) const {
      return "kraus(" + std::to_string(k.operators().size()) + ")";
    }
    std::string operator()(const PairTwirl& t) const {
      return "twirl(" + std::to_string(t.first) + "," + std::to_string(t.second) + ")";
    }
    std::string operator()(const Depolarize&) const { return "depolarize"; }
    std::string operator()(const TraceOut&) const { return "trace_out"; }
    std::string operator()(const Composition& c) const {
      return c.outer.description() + " o " + c.inner.description();
    }
  };
  return std::visit(Visitor{}, node_->op);
}

inline Matrix Superoperator::apply(const Matrix& x, std::size_t ancilla_dim) const {
  const SubsystemShape in_ext = ancilla_dim > 1 ? in_.with_appended(ancilla_dim) : in_;
  if (!x.is_square() || x.rows() != in_ext.total()) {
    throw std::invalid_argument("Superoperator::apply: dimension mismatch");
  }
  struct Visitor {
    const Matrix& x;
    const SubsystemShape& shape;
    std::size_t anc;
    Matrix operator()(const KrausChannel& k) const { return k.apply(x, anc); }
    Matrix operator()(const PairTwirl& t) const {
      return detail::pair_twirl_matrix(x, shape, t.first, t.second);
    }
    Matrix operator()(const Depolarize& d) const {
      return detail::depolarize_matrix(x, shape, d.targets);
    }
    Matrix operator()(const TraceOut& t) const {
      return partial_trace(x, shape, detail::complement(shape, t.traced));
    }
    Matrix operator()(const Composition& c) const {
      return c.outer.apply(c.inner.apply(x, anc), anc);
    }
  };
  return std::visit(Visitor{x, in_ext, ancilla_dim}, node_->op);
}

inline DensityMatrix apply(const Superoperator& channel, const DensityMatrix& state) {
  return channel.apply(state);
}

}  // namespace erbox
