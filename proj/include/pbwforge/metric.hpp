#pragma once

// Nondegenerate symmetric bilinear forms on Q^{s+1} and the tensor-index
// helpers shared by the Yang-Mills and super Yang-Mills builders.
// `lower` holds g_{λμ}; `upper` holds g^{λμ} with g_{λμ} g^{μν} = δ_λ^ν.
// Indices are raised and lowered only through these two matrices.

#include "linalg.hpp"

#include <random>
#include <string>

namespace pbwforge {

class Metric {
 public:
  Metric() = default;

  /// Takes g_{λμ}; rejects nonsymmetric or degenerate input.
  static Metric from_lower(Matrix g) {
    const std::size_t d = g.rows();
    if (d == 0 || g.cols() != d) throw input_error("metric must be a nonempty square matrix");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (g(i, j) != g(j, i)) throw input_error("metric is not symmetric");
    Matrix aug(d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) aug(i, j) = g(i, j);
      aug(i, d + i) = 1;
    }
    const auto pivots = detail::gauss_jordan(aug, d);
    if (pivots.size() != d) throw input_error("metric is degenerate");
    Metric m;
    m.lower_ = std::move(g);
    m.upper_ = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m.upper_(i, j) = aug(i, d + j);
    return m;
  }

  static Metric euclidean(std::size_t d) { return from_lower(Matrix::identity(d)); }

  /// diag(-1, 1, ..., 1)
  static Metric minkowski(std::size_t d) {
    Matrix g = Matrix::identity(d);
    g(0, 0) = -1;
    return from_lower(std::move(g));
  }

  /// Random symmetric rational matrix, redrawn until nondegenerate.
  static Metric random(std::size_t d, std::mt19937_64& rng, int bound = 5) {
    for (;;) {
      Matrix g(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) g(i, j) = g(j, i) = random_rational(rng, bound);
      if (rank(g) == d) return from_lower(std::move(g));
    }
  }

  std::size_t dim() const { return lower_.rows(); }
  const Matrix& lower() const { return lower_; }
  const Matrix& upper() const { return upper_; }
  const Scalar& up(std::size_t i, std::size_t j) const { return upper_(i, j); }
  const Scalar& down(std::size_t i, std::size_t j) const { return lower_(i, j); }

  /// b^λ = g^{λμ} b_μ
  Vector raise(const Vector& covector) const { return upper_ * covector; }

 private:
  Matrix lower_;
  Matrix upper_;
};

/// Flat index of a rank-k tensor with every index in [0, d), first index slowest.
inline std::size_t tidx(std::size_t d, std::size_t a, std::size_t b) { return a * d + b; }
inline std::size_t tidx(std::size_t d, std::size_t a, std::size_t b, std::size_t c) { return (a * d + b) * d + c; }
inline std::size_t tidx(std::size_t d, std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
  return ((a * d + b) * d + c) * d + e;
}

inline bool is_symmetric2(const Vector& t, std::size_t d) {
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (t[tidx(d, a, b)] != t[tidx(d, b, a)]) return false;
  return true;
}

inline bool is_antisymmetric2(const Vector& t, std::size_t d) {
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (t[tidx(d, a, b)] != -t[tidx(d, b, a)]) return false;
  return true;
}

/// Invariance (sign = 1) or sign change (sign = -1) under both generating
/// transpositions of three indices.
inline bool has_symmetry3(const Vector& t, std::size_t d, int sign) {
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        const Scalar& x = t[tidx(d, a, b, c)];
        if (x != sign * t[tidx(d, b, a, c)] || x != sign * t[tidx(d, a, c, b)]) return false;
      }
  return true;
}

inline bool is_symmetric3(const Vector& t, std::size_t d) { return has_symmetry3(t, d, 1); }
inline bool is_antisymmetric3(const Vector& t, std::size_t d) { return has_symmetry3(t, d, -1); }

inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw input_error("dot: length mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// t^{...ρ} b_ρ on the last index.
inline Vector contract_last(const Vector& t, const Vector& b) {
  const std::size_t d = b.size();
  Vector out(t.size() / d);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t r = 0; r < d; ++r) out[i] += t[i * d + r] * b[r];
  return out;
}

/// Sets every permutation of (a,b,c) to ±value (sign = -1 for antisymmetric fill).
inline void fill_symmetric3(Vector& t, std::size_t d, std::size_t a, std::size_t b, std::size_t c, const Scalar& value, int sign) {
  const std::size_t idx[3] = {a, b, c};
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  for (int p = 0; p < 6; ++p) {
    const int parity = p < 3 ? 1 : sign;
    t[tidx(d, idx[perms[p][0]], idx[perms[p][1]], idx[perms[p][2]])] = parity * value;
  }
  if (sign == -1 && (a == b || b == c || a == c) && value != 0)
    throw input_error("antisymmetric tensor with a repeated index must vanish");
}

/// Basis of the totally symmetric (sign = 1) or antisymmetric (sign = -1)
/// 3-tensors, one generator per index multiset (resp. set).
inline std::vector<Vector> symmetric3_basis(std::size_t d, int sign) {
  std::vector<Vector> out;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b)
      for (std::size_t c = b; c < d; ++c) {
        if (sign == -1 && (a == b || b == c)) continue;
        Vector t(d * d * d);
        fill_symmetric3(t, d, a, b, c, 1, sign);
        out.push_back(std::move(t));
      }
  return out;
}

inline std::vector<Vector> symmetric2_basis(std::size_t d, int sign) {
  std::vector<Vector> out;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      if (sign == -1 && a == b) continue;
      Vector t(d * d);
      t[tidx(d, a, b)] = 1;
      t[tidx(d, b, a)] = sign;
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace pbwforge
