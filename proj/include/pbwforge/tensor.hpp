#pragma once

// The tensor algebra T(V) on V = Q^d (d = s+1): words, the lexicographic
// basis of each V^{⊗n}, mixed-degree elements of the filtered pieces
// F^n = ⊕_{i<=n} V^{⊗i}, and the lifting of maps R -> V^{⊗j} to the
// factors R⊗V and V⊗R.
//
// Basis convention (fixed globally): the words of degree n are numbered in
// lexicographic order, word (w_1..w_n) <-> sum_k w_k d^{n-k}. Filtered
// coordinates of F^n stack degrees 0, 1, ..., n in that order.

#include "linalg.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace pbwforge {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Degree first, then lexicographic.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// d^n with an overflow check.
inline std::size_t power(std::size_t d, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (d != 0 && r > static_cast<std::size_t>(-1) / d) throw resource_error("tensor dimension overflows");
    r *= d;
  }
  return r;
}

/// dim F^n = sum_{i<=n} d^i
inline std::size_t filtered_dim(std::size_t d, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i <= n; ++i) total += power(d, i);
  return total;
}

inline std::size_t word_index(const Word& w, std::size_t d) {
  std::size_t idx = 0;
  for (Letter l : w) {
    if (l >= d) throw input_error("letter " + std::to_string(l) + " out of range for " + std::to_string(d) + " generators");
    idx = idx * d + l;
  }
  return idx;
}

inline Word index_word(std::size_t degree, std::size_t index, std::size_t d) {
  if (index >= power(d, degree)) throw input_error("word index out of range");
  Word w(degree);
  for (std::size_t k = degree; k-- > 0;) {
    w[k] = static_cast<Letter>(index % d);
    index /= d;
  }
  return w;
}

/// Element of the free algebra on d generators, stored as word -> coefficient.
class TensorElement {
 public:
  using Terms = std::map<Word, Scalar, WordOrder>;

  TensorElement() = default;
  explicit TensorElement(std::size_t dim_v) : dim_v_(dim_v) {}

  static TensorElement unit(std::size_t dim_v, const Scalar& c = 1) { return monomial(dim_v, {}, c); }
  static TensorElement generator(std::size_t dim_v, Letter l) { return monomial(dim_v, {l}, 1); }
  static TensorElement monomial(std::size_t dim_v, Word w, const Scalar& c = 1) {
    TensorElement t(dim_v);
    t.add_term(std::move(w), c);
    return t;
  }

  /// Element of V^{⊗n} from its lexicographic coordinates.
  static TensorElement from_coords(std::size_t dim_v, std::size_t degree, std::span<const Scalar> coords) {
    if (coords.size() != power(dim_v, degree)) throw input_error("coordinate vector has wrong length");
    TensorElement t(dim_v);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (sgn(coords[i]) != 0) t.terms_.emplace(index_word(degree, i, dim_v), coords[i]);
    return t;
  }

  std::size_t dim_v() const { return dim_v_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest degree present; 0 for the zero element.
  std::size_t max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

  bool is_homogeneous(std::size_t degree) const {
    for (const auto& [w, c] : terms_)
      if (w.size() != degree) return false;
    return true;
  }

  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(Word w, const Scalar& c) {
    if (sgn(c) == 0) return;
    for (Letter l : w)
      if (l >= dim_v_) throw input_error("letter out of range");
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  /// Degree-n component as lexicographic coordinates of V^{⊗n}.
  Vector degree_coords(std::size_t degree) const {
    Vector v(power(dim_v_, degree));
    for (const auto& [w, c] : terms_)
      if (w.size() == degree) v[word_index(w, dim_v_)] = c;
    return v;
  }

  TensorElement degree_part(std::size_t degree) const {
    TensorElement t(dim_v_);
    for (const auto& [w, c] : terms_)
      if (w.size() == degree) t.terms_.emplace(w, c);
    return t;
  }

  /// Coordinates in F^n (degree blocks 0..n stacked).
  Vector filtered_coords(std::size_t n) const {
    if (max_degree() > n) throw input_error("element does not lie in F^" + std::to_string(n));
    Vector v(filtered_dim(dim_v_, n));
    for (const auto& [w, c] : terms_) {
      const std::size_t offset = w.empty() ? 0 : filtered_dim(dim_v_, w.size() - 1);
      v[offset + word_index(w, dim_v_)] = c;
    }
    return v;
  }

  TensorElement& operator+=(const TensorElement& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  TensorElement& operator*=(const Scalar& t) {
    if (sgn(t) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= t;
    return *this;
  }

  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator-(TensorElement a) { return a *= Scalar(-1); }
  friend TensorElement operator*(const Scalar& t, TensorElement a) { return a *= t; }

  /// Concatenation product (the product of T(V)).
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    a.check_compatible(b);
    TensorElement out(a.dim_v_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(std::move(w), ca * cb);
      }
    return out;
  }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.dim_v_ == b.dim_v_ && a.terms_ == b.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const TensorElement& t) {
    if (t.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [w, c] : t.terms_) {
      if (!first) os << " + ";
      first = false;
      os << '(' << c.get_str() << ")";
      if (w.empty()) os << "1";
      for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "." : "") << 'e' << w[k];
    }
    return os;
  }

 private:
  void check_compatible(const TensorElement& o) const {
    if (dim_v_ != o.dim_v_) throw input_error("tensor elements over different generator sets");
  }

  std::size_t dim_v_ = 0;
  Terms terms_;
};

inline TensorElement tensor_product(const TensorElement& a, const TensorElement& b) { return a * b; }

/// a*b - b*a
inline TensorElement commutator(const TensorElement& a, const TensorElement& b) { return a * b - b * a; }

/// a*b + b*a
inline TensorElement anticommutator(const TensorElement& a, const TensorElement& b) { return a * b + b * a; }

enum class Side { left, right };

/// span{r⊗e_λ} (right) or span{e_λ⊗r} (left) inside V^{⊗(n+1)}, for a
/// subspace of V^{⊗n}.
inline Subspace side_tensor(const Subspace& sub, Side side, std::size_t dim_v) {
  const std::size_t n_dim = sub.ambient_dim();
  const std::size_t out_dim = n_dim * dim_v;
  Matrix gens(sub.dim() * dim_v, out_dim);
  for (std::size_t i = 0; i < sub.dim(); ++i)
    for (std::size_t l = 0; l < dim_v; ++l) {
      const std::size_t row = i * dim_v + l;
      for (std::size_t t = 0; t < n_dim; ++t) {
        const Scalar& c = sub.basis()(i, t);
        if (sgn(c) == 0) continue;
        const std::size_t col = side == Side::right ? t * dim_v + l : l * n_dim + t;
        gens(row, col) = c;
      }
    }
  if (gens.rows() == 0) return Subspace::zero(out_dim);
  return Subspace::span(std::move(gens));
}

/// A linear map φ_j : R -> V^{⊗j}, given on a distinguished basis of R.
/// Column a holds the V^{⊗j} coordinates of φ_j(r_a).
struct GradedMap {
  std::size_t dim_v = 0;
  std::size_t target_degree = 0;
  Matrix matrix;  // d^j rows, dim R columns

  static GradedMap zero(std::size_t dim_v, std::size_t target_degree, std::size_t source_dim) {
    return {dim_v, target_degree, Matrix(power(dim_v, target_degree), source_dim)};
  }

  std::size_t source_dim() const { return matrix.cols(); }
  bool is_zero() const { return matrix.is_zero(); }

  /// φ_j applied to the element with relation-basis coordinates y.
  Vector apply(std::span<const Scalar> y) const { return matrix * y; }
};

/// Lexicographic coordinates of (φ⊗I)(x) when x = sum_{a,λ} c[a*d+λ] r_a⊗e_λ.
inline Vector lift_right(const GradedMap& phi, std::span<const Scalar> c) {
  const std::size_t d = phi.dim_v;
  const std::size_t rows = phi.matrix.rows();
  if (c.size() != phi.source_dim() * d) throw input_error("lift_right: coordinate length mismatch");
  Vector out(rows * d);
  for (std::size_t a = 0; a < phi.source_dim(); ++a)
    for (std::size_t l = 0; l < d; ++l) {
      const Scalar& coef = c[a * d + l];
      if (sgn(coef) == 0) continue;
      for (std::size_t t = 0; t < rows; ++t)
        if (sgn(phi.matrix(t, a)) != 0) out[t * d + l] += coef * phi.matrix(t, a);
    }
  return out;
}

/// Lexicographic coordinates of (I⊗φ)(x) when x = sum_{λ,a} c[λ*dimR+a] e_λ⊗r_a.
inline Vector lift_left(const GradedMap& phi, std::span<const Scalar> c) {
  const std::size_t d = phi.dim_v;
  const std::size_t rows = phi.matrix.rows();
  const std::size_t m = phi.source_dim();
  if (c.size() != m * d) throw input_error("lift_left: coordinate length mismatch");
  Vector out(rows * d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t a = 0; a < m; ++a) {
      const Scalar& coef = c[l * m + a];
      if (sgn(coef) == 0) continue;
      for (std::size_t t = 0; t < rows; ++t)
        if (sgn(phi.matrix(t, a)) != 0) out[l * rows + t] += coef * phi.matrix(t, a);
    }
  return out;
}

/// Factorizes elements of V^{⊗(N+1)} along R⊗V or V⊗R, given the
/// distinguished relation basis r_a (rows of lexicographic coordinates).
class SideFactorizer {
 public:
  SideFactorizer(const std::vector<Vector>& relation_basis, std::size_t dim_v, Side side)
      : side_(side), dim_v_(dim_v), count_(relation_basis.size()) {
    const std::size_t n_dim = relation_basis.empty() ? 0 : relation_basis.front().size();
    Matrix gens(count_ * dim_v, n_dim * dim_v);
    // Generator order matches lift_right / lift_left coordinate layouts.
    for (std::size_t a = 0; a < count_; ++a)
      for (std::size_t l = 0; l < dim_v; ++l) {
        const std::size_t row = side == Side::right ? a * dim_v + l : l * count_ + a;
        for (std::size_t t = 0; t < n_dim; ++t) {
          const Scalar& c = relation_basis[a][t];
          if (sgn(c) == 0) continue;
          gens(row, side == Side::right ? t * dim_v + l : l * n_dim + t) = c;
        }
      }
    solver_ = BasisSolver(gens);
  }

  Side side() const { return side_; }

  /// Coordinates of x in the r_a⊗e_λ (or e_λ⊗r_a) basis; nullopt if x is
  /// outside R⊗V (resp. V⊗R).
  std::optional<Vector> factor(std::span<const Scalar> x) const { return solver_.coordinates(x); }

 private:
  Side side_;
  std::size_t dim_v_;
  std::size_t count_;
  BasisSolver solver_;
};

/// (φ⊗I)(x) or (I⊗φ)(x) for x in R⊗V (resp. V⊗R). Throws if x is not there.
inline Vector apply_graded_map(const GradedMap& phi, const SideFactorizer& factorizer, std::span<const Scalar> x) {
  auto coords = factorizer.factor(x);
  if (!coords) throw input_error("element is not in the required side tensor of R");
  return factorizer.side() == Side::right ? lift_right(phi, *coords) : lift_left(phi, *coords);
}

}  // namespace pbwforge
