#pragma once

// Dense exact linear algebra over Q: row reduction, kernels, affine solves
// and the subspace lattice. Pivoting is always "first nonzero entry in
// column order", so every result is reproducible bit for bit.

#include "scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pbwforge {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw input_error("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

  Vector col_vector(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void append_row(std::span<const Scalar> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw input_error("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector operator*(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw input_error("matrix-vector shape mismatch");
    Vector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw input_error("matrix product shape mismatch");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = (*this)(i, k);
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (sgn(o(k, j)) != 0) p(i, j) += a * o(k, j);
      }
    return p;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

// In-place Gauss-Jordan on the first `pivot_cols` columns. Returns pivot
// columns; rows beyond pivots.size() are zero on those columns afterwards.
inline std::vector<std::size_t> gauss_jordan(Matrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline Matrix take_rows(const Matrix& m, std::size_t count) {
  Matrix out(count, m.cols());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace detail

/// Reduced row-echelon form with zero rows dropped.
inline Matrix rref(Matrix m) {
  const auto pivots = detail::gauss_jordan(m, m.cols());
  return detail::take_rows(m, pivots.size());
}

inline std::size_t rank(Matrix m) { return detail::gauss_jordan(m, m.cols()).size(); }

/// Pivot column of each row of a matrix already in RREF.
inline std::vector<std::size_t> rref_pivots(const Matrix& m) {
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t j = 0;
    while (j < m.cols() && sgn(m(i, j)) == 0) ++j;
    pivots.push_back(j);
  }
  return pivots;
}

/// A subspace of Q^n held by its canonical RREF basis, so equality of
/// subspaces is equality of representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n) { return span(Matrix::identity(n)); }

  /// Row space of `generators`.
  static Subspace span(Matrix generators) {
    Subspace s(generators.cols());
    s.basis_ = rref(std::move(generators));
    s.pivots_ = rref_pivots(s.basis_);
    return s;
  }
  static Subspace span(const std::vector<Vector>& generators, std::size_t n) {
    return span(Matrix::from_rows(generators, n));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }

  /// v minus its projection along the pivot coordinates; zero iff v is in the space.
  Vector reduce(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw input_error("ambient dimension mismatch");
    Vector r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      const Scalar f = r[pivots_[i]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (sgn(basis_(i, j)) != 0) r[j] -= f * basis_(i, j);
    }
    return r;
  }

  bool contains(std::span<const Scalar> v) const { return pbwforge::is_zero(reduce(v)); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {x : M x = 0}
inline Subspace kernel(const Matrix& m) {
  Matrix r = m;
  const auto pivots = detail::gauss_jordan(r, r.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> gens;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    gens.push_back(std::move(v));
  }
  return Subspace::span(gens, m.cols());
}

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw input_error("subspaces live in different ambient spaces (" + std::to_string(a.ambient_dim()) +
                      " vs " + std::to_string(b.ambient_dim()) + ")");
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  Matrix m = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) m.append_row(b.basis().row(i));
  if (m.rows() == 0) return Subspace::zero(a.ambient_dim());
  return Subspace::span(std::move(m));
}

/// a ∩ b via the kernel of [A^T | -B^T].
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(n);
  Matrix m(n, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, i) = a.basis()(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, a.dim() + i) = -b.basis()(i, j);
  const Subspace k = kernel(m);
  std::vector<Vector> gens;
  for (std::size_t r = 0; r < k.dim(); ++r) {
    Vector v(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const Scalar& c = k.basis()(r, i);
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] += c * a.basis()(i, j);
    }
    gens.push_back(std::move(v));
  }
  return Subspace::span(gens, n);
}

inline bool contains(const Subspace& a, std::span<const Scalar> v) { return a.contains(v); }

inline bool contains(const Subspace& outer, const Subspace& inner) {
  require_same_ambient(outer, inner);
  for (std::size_t i = 0; i < inner.dim(); ++i)
    if (!outer.contains(inner.basis().row(i))) return false;
  return true;
}

inline bool equal(const Subspace& a, const Subspace& b) { return a == b; }

/// Image of a subspace under the coordinate projection onto `coords`.
inline Subspace project(const Subspace& s, std::span<const std::size_t> coords) {
  Matrix m(s.dim(), coords.size());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) m(i, j) = s.basis()(i, coords[j]);
  if (m.rows() == 0) return Subspace::zero(coords.size());
  return Subspace::span(std::move(m));
}

struct AffineSolution {
  bool feasible = false;
  Vector particular;    // empty when infeasible
  Subspace homogeneous; // kernel of M
  /// When infeasible: y with y^T M = 0 and y^T rhs = 1.
  std::optional<Vector> certificate;
};

/// Full solution set of M x = rhs.
inline AffineSolution solve_affine(const Matrix& m, std::span<const Scalar> rhs) {
  if (rhs.size() != m.rows()) throw input_error("rhs length does not match matrix rows");
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();
  // [M | rhs | I] so the row operations double as an infeasibility certificate.
  Matrix aug(rows, n + 1 + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
    aug(i, n + 1 + i) = 1;
  }
  const auto pivots = detail::gauss_jordan(aug, n);
  AffineSolution out;
  out.homogeneous = kernel(m);
  for (std::size_t i = pivots.size(); i < rows; ++i) {
    if (sgn(aug(i, n)) != 0) {
      Vector y(rows);
      const Scalar inv = 1 / aug(i, n);
      for (std::size_t k = 0; k < rows; ++k) y[k] = aug(i, n + 1 + k) * inv;
      out.certificate = std::move(y);
      return out;
    }
  }
  out.feasible = true;
  out.particular.assign(n, Scalar(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = aug(i, n);
  return out;
}

/// Coordinates of vectors with respect to a fixed (linearly independent)
/// family of generators. Precomputes the reduction once.
class BasisSolver {
 public:
  BasisSolver() = default;
  explicit BasisSolver(const Matrix& generators) : count_(generators.rows()), ambient_(generators.cols()) {
    Matrix aug(count_, ambient_ + count_);
    for (std::size_t i = 0; i < count_; ++i) {
      for (std::size_t j = 0; j < ambient_; ++j) aug(i, j) = generators(i, j);
      aug(i, ambient_ + i) = 1;
    }
    pivots_ = detail::gauss_jordan(aug, ambient_);
    if (pivots_.size() != count_) throw input_error("generators are linearly dependent");
    reduced_ = std::move(aug);
  }

  std::size_t count() const { return count_; }
  std::size_t ambient_dim() const { return ambient_; }

  /// c with v = sum_i c_i generator_i, or nullopt when v is outside the span.
  std::optional<Vector> coordinates(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw input_error("ambient dimension mismatch");
    Vector r(v.begin(), v.end());
    Vector c(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      const Scalar f = r[pivots_[i]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (sgn(reduced_(i, j)) != 0) r[j] -= f * reduced_(i, j);
      for (std::size_t k = 0; k < count_; ++k)
        if (sgn(reduced_(i, ambient_ + k)) != 0) c[k] += f * reduced_(i, ambient_ + k);
    }
    if (!pbwforge::is_zero(r)) return std::nullopt;
    return c;
  }

 private:
  std::size_t count_ = 0;
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix reduced_;
};

/// Random integer combination (entries in [-bound, bound]) of a basis.
inline Vector random_point(const Subspace& s, std::mt19937_64& rng, int bound = 5) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Vector v(s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Scalar c = dist(rng);
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(s.basis()(i, j)) != 0) v[j] += c * s.basis()(i, j);
  }
  return v;
}

inline Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw input_error("vector length mismatch");
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vector scaled(const Vector& a, const Scalar& t) {
  Vector r(a);
  for (auto& x : r) x *= t;
  return r;
}

}  // namespace pbwforge
