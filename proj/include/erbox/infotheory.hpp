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

// Entropic quantities. Logarithms are base 2 throughout.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "erbox/linalg.hpp"
#include "erbox/qstate.hpp"

namespace erbox {

inline constexpr double kEigenClip = 1e-12;

/// -x log2 x with 0 log 0 = 0, after clipping x below kEigenClip to zero.
inline double entropy_term(double x) {
  if (x < -kNegativeEigenvalueTol) {
    throw std::domain_error("entropy: negative eigenvalue " + std::to_string(x));
  }
  if (x <= kEigenClip) return 0.0;
  return -x * std::log2(x);
}

inline double von_neumann_entropy(const Matrix& rho) {
  double s = 0.0;
  for (double l : eig_hermitian(hermitian_part(rho)).eigenvalues) s += entropy_term(l);
  return s;
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  }
  return entropy_term(x) + entropy_term(1.0 - x);
}

inline double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += entropy_term(x);
  return s;
}

inline double shannon_entropy(const std::vector<double>& p) {
  return shannon_entropy(std::span<const double>(p));
}

using IndexSet = std::vector<std::size_t>;

namespace detail {

inline IndexSet merged(const IndexSet& a, const IndexSet& b) {
  IndexSet out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline void require_disjoint(const SubsystemShape& shape, std::initializer_list<const IndexSet*> parts,
                             const char* where) {
  std::vector<bool> used(shape.count(), false);
  for (const IndexSet* part : parts) {
    if (part->empty()) throw std::invalid_argument(std::string(where) + ": empty part");
    for (auto i : *part) {
      if (i >= shape.count()) throw std::invalid_argument(std::string(where) + ": subsystem out of range");
      if (used[i]) throw std::invalid_argument(std::string(where) + ": parts overlap");
      used[i] = true;
    }
  }
}

inline double marginal_entropy(const Matrix& rho, const SubsystemShape& shape, const IndexSet& keep) {
  IndexSet k(keep);
  std::sort(k.begin(), k.end());
  if (k.size() == shape.count()) return von_neumann_entropy(rho);
  return von_neumann_entropy(partial_trace(rho, shape, k));
}

}  // namespace detail

/// I(L:R) = S(L) + S(R) - S(LR).
inline double mutual_information(const Matrix& rho, const SubsystemShape& shape, const IndexSet& left,
                                 const IndexSet& right) {
  detail::require_disjoint(shape, {&left, &right}, "mutual_information");
  return detail::marginal_entropy(rho, shape, left) + detail::marginal_entropy(rho, shape, right) -
         detail::marginal_entropy(rho, shape, detail::merged(left, right));
}

inline double mutual_information(const DensityMatrix& rho, const IndexSet& left, const IndexSet& right) {
  return mutual_information(rho.matrix(), rho.shape(), left, right);
}

/// I(A:B|R) = S(AR) + S(BR) - S(ABR) - S(R).
inline double conditional_mutual_information(const Matrix& rho, const SubsystemShape& shape,
                                             const IndexSet& a, const IndexSet& b, const IndexSet& r) {
  detail::require_disjoint(shape, {&a, &b, &r}, "conditional_mutual_information");
  return detail::marginal_entropy(rho, shape, detail::merged(a, r)) +
         detail::marginal_entropy(rho, shape, detail::merged(b, r)) -
         detail::marginal_entropy(rho, shape, detail::merged(detail::merged(a, b), r)) -
         detail::marginal_entropy(rho, shape, r);
}

inline double conditional_mutual_information(const DensityMatrix& rho, const IndexSet& a,
                                             const IndexSet& b, const IndexSet& r) {
  return conditional_mutual_information(rho.matrix(), rho.shape(), a, b, r);
}

struct EnsembleEntry {
  double probability;
  DensityMatrix state;
};

class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("Ensemble: no members");
    double total = 0.0;
    for (const auto& e : entries_) {
      if (e.probability < 0.0) throw std::invalid_argument("Ensemble: negative probability");
      if (e.state.shape() != entries_.front().state.shape()) {
        throw std::invalid_argument("Ensemble: members have different shapes");
      }
      total += e.probability;
    }
    if (std::abs(total - 1.0) > kStateTol) throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
  }

  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  const SubsystemShape& shape() const { return entries_.front().state.shape(); }
  std::size_t size() const { return entries_.size(); }

  std::vector<double> probabilities() const {
    std::vector<double> p;
    for (const auto& e : entries_) p.push_back(e.probability);
    return p;
  }

  Matrix average() const {
    Matrix avg(shape().total(), shape().total());
    for (const auto& e : entries_) avg += e.probability * e.state.matrix();
    return avg;
  }

  /// sum_i p_i rho_i (x) |i><i|_R with R appended as the last subsystem.
  DensityMatrix cq_embedding() const {
    const std::size_t n = entries_.size();
    Matrix joint(shape().total() * n, shape().total() * n);
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix flag = outer(Matrix::basis_vector(n, i), Matrix::basis_vector(n, i));
      joint += entries_[i].probability * tensor(entries_[i].state.matrix(), flag);
    }
    return DensityMatrix(std::move(joint), shape().with_appended(n));
  }

 private:
  std::vector<EnsembleEntry> entries_;
};

/// chi = S(sum p_i rho_i) - sum p_i S(rho_i).
inline double holevo(const Ensemble& ens) {
  double chi = von_neumann_entropy(ens.average());
  for (const auto& e : ens.entries()) chi -= e.probability * von_neumann_entropy(e.state);
  return chi;
}

struct DeltaReport {
  double delta_I = 0.0;
  double delta_S = 0.0;
  double slack = 0.0;
  // Same quantities through the classical-register embedding.
  double delta_I_embedded = 0.0;
  double delta_S_embedded = 0.0;
  double embedding_residual = 0.0;
};

/// Average gain of mutual information across the cut against the average
/// entropy drop, computed directly and through the c-q embedding.
inline DeltaReport delta_lemma(const Ensemble& ens, const IndexSet& left, const IndexSet& right) {
  const SubsystemShape& shape = ens.shape();
  const IndexSet both = detail::merged(left, right);
  const Matrix avg = ens.average();

  DeltaReport r;
  double mean_i = 0.0;
  double mean_s = 0.0;
  for (const auto& e : ens.entries()) {
    mean_i += e.probability * mutual_information(e.state.matrix(), shape, left, right);
    mean_s += e.probability * detail::marginal_entropy(e.state.matrix(), shape, both);
  }
  r.delta_I = mean_i - mutual_information(avg, shape, left, right);
  r.delta_S = detail::marginal_entropy(avg, shape, both) - mean_s;
  r.slack = r.delta_S - r.delta_I;

  const DensityMatrix joint = ens.cq_embedding();
  const IndexSet reg{shape.count()};
  r.delta_I_embedded = conditional_mutual_information(joint, left, right, reg) - mutual_information(joint, left, right);
  r.delta_S_embedded = mutual_information(joint, both, reg);
  r.embedding_residual =
      std::max(std::abs(r.delta_I - r.delta_I_embedded), std::abs(r.delta_S - r.delta_S_embedded));
  return r;
}

// ---------------------------------------------------------------------------
// Entanglement-assisted functional

struct Purification {
  Matrix vector;  // on input (x) E, E last
  std::size_t reference_dim = 0;
};

/// sum_k sqrt(l_k) |v_k>|k>_E over eigenvalues above kEigenClip.
inline Purification purify(const Matrix& rho) {
  const auto e = eig_hermitian(hermitian_part(rho));
  const std::size_t n = rho.rows();
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < n; ++j)
    if (e.eigenvalues[j] > kEigenClip) support.push_back(j);
  if (support.empty()) throw std::invalid_argument("purify: zero matrix");
  const std::size_t r = support.size();
  Matrix psi(n * r, 1);
  for (std::size_t k = 0; k < r; ++k) {
    const double w = std::sqrt(e.eigenvalues[support[k]]);
    for (std::size_t x = 0; x < n; ++x) psi(x * r + k, 0) = w * e.eigenvectors(x, support[k]);
  }
  psi *= 1.0 / vector_norm(psi);
  return {std::move(psi), r};
}

/// S(rho) + S(L(rho)) - S((L (x) id_E)(Phi)) for a given purification Phi of rho.
inline double eaccqc_from_purification(const Superoperator& channel, const Matrix& rho,
                                       const Purification& phi) {
  if (rho.rows() != channel.input_shape().total()) {
    throw std::invalid_argument("eaccqc: input shape does not match channel");
  }
  const Matrix out = channel.apply(rho);
  const Matrix joint = channel.apply(outer(phi.vector, phi.vector), phi.reference_dim);
  return von_neumann_entropy(rho) + von_neumann_entropy(out) - von_neumann_entropy(joint);
}

inline double eaccqc_value(const Superoperator& channel, const DensityMatrix& input) {
  if (input.shape().total() != channel.input_shape().total()) {
    throw std::invalid_argument("eaccqc_value: input shape does not match channel");
  }
  return eaccqc_from_purification(channel, input.matrix(), purify(input.matrix()));
}

// ---------------------------------------------------------------------------
// Classical-quantum capacity

struct CqCapacity {
  double lower = 0.0;  // Holevo quantity of the returned prior
  double upper = 0.0;  // max_k D(rho_k || sigma), a certified upper bound
  std::vector<double> prior;
  int iterations = 0;
};

/// D(rho || sigma) in bits; infinite if rho leaves the support of sigma.
inline double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  const auto es = eig_hermitian(hermitian_part(sigma));
  const std::size_t n = sigma.rows();
  Matrix log_sigma(n, n);
  double outside = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix v(n, 1);
    for (std::size_t k = 0; k < n; ++k) v(k, 0) = es.eigenvectors(k, j);
    const double weight = (v.adjoint() * rho * v)(0, 0).real();
    if (es.eigenvalues[j] <= kEigenClip) {
      outside += weight;
      continue;
    }
    log_sigma += std::log2(es.eigenvalues[j]) * outer(v, v);
  }
  if (outside > 1e-9) return std::numeric_limits<double>::infinity();
  return -von_neumann_entropy(rho) - (rho * log_sigma).trace().real();
}

/// Blahut-Arimoto iteration for the capacity of the classical-quantum
/// channel k -> states[k]. Stops once upper - lower <= tol.
inline CqCapacity cq_capacity(const std::vector<Matrix>& states, double tol = 1e-9,
                              int max_iterations = 100000) {
  if (states.empty()) throw std::invalid_argument("cq_capacity: no states");
  const std::size_t m = states.size();
  const std::size_t n = states.front().rows();
  CqCapacity r;
  r.prior.assign(m, 1.0 / static_cast<double>(m));
  std::vector<double> d(m);
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    Matrix sigma(n, n);
    for (std::size_t k = 0; k < m; ++k) sigma += r.prior[k] * states[k];
    double lower = 0.0;
    double upper = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      d[k] = relative_entropy(states[k], sigma);
      lower += r.prior[k] * d[k];
      upper = std::max(upper, d[k]);
    }
    r.lower = lower;
    r.upper = upper;
    if (upper - lower <= tol) break;
    double norm = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      r.prior[k] *= std::exp2(d[k] - upper);
      norm += r.prior[k];
    }
    for (auto& q : r.prior) q /= norm;
  }
  return r;
}

}  // namespace erbox
