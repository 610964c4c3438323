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

// Dense complex linear algebra for small (<= 256 dimensional) Hilbert spaces.
//
// Conventions: matrices are row-major; subsystem 0 of a SubsystemShape is
// the leftmost tensor factor and carries the most significant index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace erbox {

using Complex = std::complex<double>;

class Matrix {
 public:
  Matrix() : Matrix(1, 1) {}

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("Matrix: dimensions must be at least 1");
    }
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("Matrix: dimensions must be at least 1");
    }
    if (data_.size() != rows * cols) {
      throw std::invalid_argument("Matrix: entry count does not match rows*cols");
    }
  }

  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) {
      throw std::invalid_argument("Matrix: dimensions must be at least 1");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Column vector (n x 1) from amplitudes.
  static Matrix column(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    return Matrix(n, 1, std::move(amplitudes));
  }

  static Matrix basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("basis_vector: index out of range");
    Matrix v(dim, 1);
    v(index, 0) = 1.0;
    return v;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool is_column() const { return cols_ == 1; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  Matrix conjugate() const {
    Matrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  Complex trace() const {
    if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& other) {
    require_same_shape(other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& other) {
    require_same_shape(other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }

  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("operator*: inner dimensions differ (" +
                                  std::to_string(a.cols_) + " vs " + std::to_string(b.rows_) + ")");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        const Complex* brow = &b.data_[k * b.cols_];
        Complex* orow = &out.data_[i * out.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const Matrix& other, const char* where) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw std::invalid_argument(std::string(where) + ": shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Ordered local dimensions of a composite Hilbert space.
struct SubsystemShape {
  std::vector<std::size_t> dims;

  SubsystemShape() = default;
  SubsystemShape(std::initializer_list<std::size_t> d) : dims(d) { check(); }
  explicit SubsystemShape(std::vector<std::size_t> d) : dims(std::move(d)) { check(); }

  std::size_t count() const { return dims.size(); }
  std::size_t operator[](std::size_t i) const { return dims.at(i); }

  std::size_t total() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  }

  std::size_t total_of(std::span<const std::size_t> subsystems) const {
    std::size_t t = 1;
    for (auto s : subsystems) t *= dims.at(s);
    return t;
  }

  SubsystemShape with_appended(std::size_t dim) const {
    auto d = dims;
    d.push_back(dim);
    return SubsystemShape(std::move(d));
  }

  friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

 private:
  void check() const {
    for (auto d : dims) {
      if (d == 0) throw std::invalid_argument("SubsystemShape: every dimension must be >= 1");
    }
  }
};

inline std::string to_string(const SubsystemShape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape.dims[i]);
  }
  return s + "]";
}

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // columns
};

// ---------------------------------------------------------------------------
// Elementwise helpers

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-9) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

inline Matrix hermitian_part(const Matrix& m) {
  Matrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

/// |v><w| for column vectors.
inline Matrix outer(const Matrix& v, const Matrix& w) { return v * w.adjoint(); }

/// <v|w> for column vectors.
inline Complex inner(const Matrix& v, const Matrix& w) {
  if (!v.is_column() || !w.is_column() || v.rows() != w.rows()) {
    throw std::invalid_argument("inner: expected column vectors of equal length");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) s += std::conj(v(i, 0)) * w(i, 0);
  return s;
}

inline double vector_norm(const Matrix& v) { return frobenius_norm(v); }

inline Matrix diagonal(std::span<const double> values) {
  Matrix d(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d(i, i) = values[i];
  return d;
}

// ---------------------------------------------------------------------------
// Tensor structure

inline Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      if (x == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return out;
}

inline Matrix tensor(std::initializer_list<Matrix> factors) {
  if (factors.size() == 0) throw std::invalid_argument("tensor: no factors");
  auto it = factors.begin();
  Matrix out = *it++;
  for (; it != factors.end(); ++it) out = tensor(out, *it);
  return out;
}

namespace detail {

inline void require_subsystem_indices(const SubsystemShape& shape,
                                      std::span<const std::size_t> idx,
                                      const char* where) {
  std::vector<bool> seen(shape.count(), false);
  for (auto i : idx) {
    if (i >= shape.count()) {
      throw std::invalid_argument(std::string(where) + ": subsystem index " + std::to_string(i) +
                                  " out of range for shape " + to_string(shape));
    }
    if (seen[i]) {
      throw std::invalid_argument(std::string(where) + ": repeated subsystem index " +
                                  std::to_string(i));
    }
    seen[i] = true;
  }
}

// For each flat index of the permuted space, the flat index it came from.
inline std::vector<std::size_t> permutation_map(const SubsystemShape& shape,
                                                std::span<const std::size_t> order) {
  const std::size_t n = shape.count();
  std::vector<std::size_t> old_strides(n, 1);
  for (std::size_t i = n; i-- > 1;) old_strides[i - 1] = old_strides[i] * shape.dims[i];

  const std::size_t total = shape.total();
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digits(n, 0);  // digits in the permuted ordering
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t old = 0;
    for (std::size_t j = 0; j < n; ++j) old += digits[j] * old_strides[order[j]];
    map[flat] = old;
    for (std::size_t j = n; j-- > 0;) {
      if (++digits[j] < shape.dims[order[j]]) break;
      digits[j] = 0;
    }
  }
  return map;
}

}  // namespace detail

inline void require_shape_matches(const Matrix& m, const SubsystemShape& shape, const char* where) {
  const std::size_t total = shape.total();
  const bool ok = m.rows() == total && (m.cols() == total || m.cols() == 1);
  if (!ok) {
    throw std::invalid_argument(std::string(where) + ": matrix " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " does not match shape " +
                                to_string(shape));
  }
}

/// Reorders tensor factors: subsystem j of the result is subsystem order[j]
/// of the input. Works on square matrices and column vectors.
inline Matrix permute_subsystems(const Matrix& m, const SubsystemShape& shape,
                                 std::span<const std::size_t> order) {
  require_shape_matches(m, shape, "permute_subsystems");
  if (order.size() != shape.count()) {
    throw std::invalid_argument("permute_subsystems: order must list every subsystem once");
  }
  detail::require_subsystem_indices(shape, order, "permute_subsystems");
  const auto map = detail::permutation_map(shape, order);
  Matrix out(m.rows(), m.cols());
  if (m.is_column() && m.rows() != 1) {
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, 0) = m(map[r], 0);
  } else {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(map[r], map[c]);
  }
  return out;
}

inline SubsystemShape permuted_shape(const SubsystemShape& shape, std::span<const std::size_t> order) {
  std::vector<std::size_t> d;
  d.reserve(order.size());
  for (auto i : order) d.push_back(shape.dims.at(i));
  return SubsystemShape(std::move(d));
}

inline std::vector<std::size_t> inverse_order(std::span<const std::size_t> order) {
  std::vector<std::size_t> inv(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) inv[order[j]] = j;
  return inv;
}

/// `targets` first (in the given order), then the remaining subsystems ascending.
inline std::vector<std::size_t> targets_first_order(const SubsystemShape& shape,
                                                    std::span<const std::size_t> targets) {
  std::vector<std::size_t> order(targets.begin(), targets.end());
  for (std::size_t i = 0; i < shape.count(); ++i) {
    if (std::find(targets.begin(), targets.end(), i) == targets.end()) order.push_back(i);
  }
  return order;
}

/// Reduced operator on the `keep` subsystems (kept in ascending order).
inline Matrix partial_trace(const Matrix& m, const SubsystemShape& shape,
                            std::span<const std::size_t> keep) {
  if (!m.is_square()) throw std::invalid_argument("partial_trace: matrix is not square");
  require_shape_matches(m, shape, "partial_trace");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  detail::require_subsystem_indices(shape, keep, "partial_trace");

  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const auto order = targets_first_order(shape, kept);
  const std::size_t dk = shape.total_of(kept);
  const std::size_t dt = shape.total() / dk;

  const auto map = detail::permutation_map(shape, order);
  Matrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) s += m(map[i * dt + t], map[j * dt + t]);
      out(i, j) = s;
    }
  return out;
}

inline Matrix partial_trace(const Matrix& m, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(m, shape, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Full trace as a 1x1 matrix; the "keep nothing" case of partial_trace.
inline Matrix trace_all(const Matrix& m) { return Matrix(1, 1, {m.trace()}); }

/// Operator acting as `op` on `targets` (in that order) and as identity elsewhere.
inline Matrix embed(const Matrix& op, const SubsystemShape& shape,
                    std::span<const std::size_t> targets) {
  detail::require_subsystem_indices(shape, targets, "embed");
  const std::size_t dt = shape.total_of(targets);
  if (op.rows() != dt || op.cols() != dt) {
    throw std::invalid_argument("embed: operator dimension does not match target subsystems");
  }
  const auto order = targets_first_order(shape, targets);
  const Matrix front = tensor(op, Matrix::identity(shape.total() / dt));
  const auto inv = inverse_order(order);
  return permute_subsystems(front, permuted_shape(shape, order), inv);
}

inline Matrix embed(const Matrix& op, const SubsystemShape& shape,
                    std::initializer_list<std::size_t> targets) {
  return embed(op, shape, std::span<const std::size_t>(targets.begin(), targets.size()));
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic complex Jacobi)

inline EigenDecomposition eig_hermitian(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("eig_hermitian: matrix is not square");
  if (!is_hermitian(m, 1e-9)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");

  const std::size_t n = m.rows();
  Matrix a = hermitian_part(m);
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += std::norm(a(p, p));
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (off == 0.0 || off < 1e-34 * (diag + off)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (r < 1e-300 || (r * 1e17 < std::abs(app) && r * 1e17 < std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] zeroes a(p, q) in G^H A G.
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase_conj = std::conj(apq / r);
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase_conj;
        const Complex gqq = c * phase_conj;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(idx[j], idx[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = v(k, idx[j]);
  }
  return out;
}

/// f(m) for Hermitian m, applied through the spectrum.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  const auto e = eig_hermitian(m);
  std::vector<double> fv(e.eigenvalues.size());
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = f(e.eigenvalues[i]);
  return e.eigenvectors * diagonal(fv) * e.eigenvectors.adjoint();
}

/// Singular values, descending, min(rows, cols) of them. Each is taken as
/// |M v| for an eigenvector v of the Gram matrix, which stays accurate for
/// values far below sqrt(machine epsilon).
inline std::vector<double> singular_values(const Matrix& m) {
  const Matrix& side = m.rows() <= m.cols() ? m.adjoint() : m;
  const auto e = eig_hermitian(hermitian_part(side.adjoint() * side));
  const std::size_t n = e.eigenvalues.size();
  std::vector<double> s;
  s.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix v(n, 1);
    for (std::size_t k = 0; k < n; ++k) v(k, 0) = e.eigenvectors(k, j);
    s.push_back(frobenius_norm(side * v));
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

inline std::size_t matrix_rank(const Matrix& m, double threshold = 1e-8) {
  std::size_t r = 0;
  for (double s : singular_values(m))
    if (s > threshold) ++r;
  return r;
}

/// Half the trace norm of (a - b) for Hermitian a, b.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const auto e = eig_hermitian(hermitian_part(a - b));
  double s = 0.0;
  for (double l : e.eigenvalues) s += std::abs(l);
  return 0.5 * s;
}

/// Schmidt coefficients (descending) of a normalized vector across the cut
/// `left | everything else`.
inline std::vector<double> schmidt_coefficients(const Matrix& v, const SubsystemShape& shape,
                                                std::span<const std::size_t> left) {
  if (!v.is_column()) throw std::invalid_argument("schmidt_coefficients: expected a column vector");
  require_shape_matches(v, shape, "schmidt_coefficients");
  if (std::abs(vector_norm(v) - 1.0) > 1e-9) {
    throw std::invalid_argument("schmidt_coefficients: vector is not normalized");
  }
  detail::require_subsystem_indices(shape, left, "schmidt_coefficients");
  const auto order = targets_first_order(shape, left);
  const Matrix w = permute_subsystems(v, shape, order);
  const std::size_t dl = shape.total_of(left);
  const std::size_t dr = shape.total() / dl;
  Matrix amp(dl, dr);
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t j = 0; j < dr; ++j) amp(i, j) = w(i * dr + j, 0);
  return singular_values(amp);
}

inline std::vector<double> schmidt_coefficients(const Matrix& v, const SubsystemShape& shape,
                                                std::initializer_list<std::size_t> left) {
  return schmidt_coefficients(v, shape, std::span<const std::size_t>(left.begin(), left.size()));
}

// ---------------------------------------------------------------------------
// Seeded randomness. Generators are always caller-owned.

using Rng = std::mt19937_64;

inline Matrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (auto& z : g.entries()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return g;
}

/// Haar-random unitary: QR of a complex Ginibre matrix. Gram-Schmidt gives
/// an R factor with positive real diagonal, which fixes the column phases.
inline Matrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dim must be >= 1");
  Matrix q = random_ginibre(dim, dim, rng);
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < dim; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) q(i, j) /= norm;
  }
  return q;
}

inline Matrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

/// Haar-random unit column vector.
inline Matrix random_unit_vector(std::size_t dim, Rng& rng) {
  Matrix v = random_ginibre(dim, 1, rng);
  v *= 1.0 / vector_norm(v);
  return v;
}

/// Random density matrix G G^H / Tr with G of shape dim x rank.
inline Matrix random_density(std::size_t dim, Rng& rng, std::size_t rank = 0) {
  if (rank == 0) rank = dim;
  const Matrix g = random_ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace erbox
