#pragma once

// N-homogeneous algebras A = T(V)/(R): the presentation, the graded
// components of the two-sided ideal (R), Hilbert coefficients by brute
// quotient dimension, and the overlap space W_{N+1} = (R⊗V) ∩ (V⊗R).

#include "sparse_echelon.hpp"
#include "tensor.hpp"

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

namespace pbwforge {

/// Largest tensor-space dimension any single computation may touch.
/// Default 10^4; PBWFORGE_MAX_DIM overrides it.
inline std::size_t dimension_limit() {
  if (const char* env = std::getenv("PBWFORGE_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

inline void guard_dimension(std::size_t dim, const std::string& what) {
  const std::size_t limit = dimension_limit();
  if (dim > limit)
    throw resource_error(what + " has dimension " + std::to_string(dim) + ", above the limit " + std::to_string(limit));
}

class AlgebraPresentation {
 public:
  AlgebraPresentation() = default;

  /// relation_basis rows are lexicographic coordinates in V^{⊗N}; they must
  /// be linearly independent (an empty list is allowed).
  AlgebraPresentation(std::size_t dim_v, std::size_t degree, std::vector<Vector> relation_basis)
      : dim_v_(dim_v), degree_(degree), relations_(std::move(relation_basis)) {
    if (dim_v_ < 1) throw input_error("need at least one generator");
    if (degree_ < 2) throw input_error("relation degree must be at least 2");
    const std::size_t n_dim = power(dim_v_, degree_);
    for (const auto& r : relations_)
      if (r.size() != n_dim) throw input_error("relation has wrong coordinate length");
    space_ = relations_.empty() ? Subspace::zero(n_dim) : Subspace::span(relations_, n_dim);
    if (space_.dim() != relations_.size()) throw input_error("relation basis is linearly dependent");
  }

  static AlgebraPresentation from_elements(std::size_t dim_v, std::size_t degree,
                                           const std::vector<TensorElement>& relations) {
    std::vector<Vector> rows;
    for (const auto& r : relations) {
      if (!r.is_homogeneous(degree)) throw input_error("relation is not homogeneous of degree " + std::to_string(degree));
      rows.push_back(r.degree_coords(degree));
    }
    return AlgebraPresentation(dim_v, degree, std::move(rows));
  }

  std::size_t dim_v() const { return dim_v_; }
  std::size_t degree() const { return degree_; }
  std::size_t relation_count() const { return relations_.size(); }
  const std::vector<Vector>& relation_basis() const { return relations_; }
  const Subspace& relation_space() const { return space_; }

  TensorElement relation(std::size_t a) const { return TensorElement::from_coords(dim_v_, degree_, relations_.at(a)); }

 private:
  std::size_t dim_v_ = 1;
  std::size_t degree_ = 2;
  std::vector<Vector> relations_;
  Subspace space_;
};

/// Sparse echelon bases of the ideal components I_n = (R) ∩ V^{⊗n}, built
/// degree by degree from I_n = V⊗I_{n-1} + R⊗V^{⊗(n-N)}. The V⊗I_{n-1}
/// rows keep distinct pivots (a leading letter is prepended), so only the
/// R⊗V^{⊗(n-N)} generators need reducing.
class IdealComponents {
 public:
  explicit IdealComponents(AlgebraPresentation a) : a_(std::move(a)) {}

  const AlgebraPresentation& algebra() const { return a_; }

  const EchelonBasis& component(std::size_t n) {
    while (levels_.size() <= n) build_next();
    return levels_[n];
  }

  std::size_t ideal_dim(std::size_t n) { return component(n).rank(); }

 private:
  void build_next() {
    const std::size_t n = levels_.size();
    const std::size_t d = a_.dim_v();
    const std::size_t N = a_.degree();
    const std::size_t n_dim = power(d, n);
    guard_dimension(n_dim, "V^{⊗" + std::to_string(n) + "}");
    EchelonBasis basis(n_dim);
    if (n >= N) {
      if (n > N) {
        const std::size_t block = power(d, n - 1);
        for (std::size_t l = 0; l < d; ++l)
          for (const auto& row : levels_[n - 1].rows()) {
            SparseVector v;
            v.reserve(row.size());
            for (const auto& e : row) v.push_back({l * block + e.index, e.value});
            basis.insert_unreduced(std::move(v));
          }
      }
      const std::size_t tail = power(d, n - N);
      for (const auto& r : a_.relation_basis())
        for (std::size_t t = 0; t < tail; ++t) {
          SparseVector v;
          for (std::size_t i = 0; i < r.size(); ++i)
            if (sgn(r[i]) != 0) v.push_back({i * tail + t, r[i]});
          basis.insert(v);
        }
    }
    levels_.push_back(std::move(basis));
  }

  AlgebraPresentation a_;
  std::vector<EchelonBasis> levels_;
};

inline Subspace to_subspace(const EchelonBasis& e) {
  if (e.rank() == 0) return Subspace::zero(e.ambient_dim());
  Matrix m(e.rank(), e.ambient_dim());
  for (std::size_t i = 0; i < e.rank(); ++i)
    for (const auto& entry : e.rows()[i]) m(i, entry.index) = entry.value;
  return Subspace::span(std::move(m));
}

/// Degree-n part of the two-sided ideal (R), as a canonical subspace of V^{⊗n}.
inline Subspace ideal_component(const AlgebraPresentation& a, std::size_t n) {
  IdealComponents ideal(a);
  return to_subspace(ideal.component(n));
}

/// dim A_n = d^n - dim I_n
inline std::size_t graded_dim(const AlgebraPresentation& a, std::size_t n) {
  IdealComponents ideal(a);
  return power(a.dim_v(), n) - ideal.ideal_dim(n);
}

/// dim A_0 .. dim A_{n_max}
inline std::vector<std::size_t> hilbert_coefficients(const AlgebraPresentation& a, std::size_t n_max) {
  IdealComponents ideal(a);
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(power(a.dim_v(), n) - ideal.ideal_dim(n));
  return out;
}

/// W_{N+1} = (R⊗V) ∩ (V⊗R)
inline Subspace overlap_space(const AlgebraPresentation& a) {
  const Subspace& r = a.relation_space();
  return intersect(side_tensor(r, Side::right, a.dim_v()), side_tensor(r, Side::left, a.dim_v()));
}

/// Relations = full antisymmetrizations of N distinct letters (increasing
/// letter tuples, in lexicographic order). For N = 2 this presents S(V).
inline AlgebraPresentation build_antisymmetrizer_relations(std::size_t dim_v, std::size_t degree) {
  std::vector<Vector> rows;
  const std::size_t n_dim = power(dim_v, degree);
  auto emit = [&](const std::vector<Letter>& tuple) {
    Vector v(n_dim);
    std::vector<std::size_t> perm(degree);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < degree; ++i)
        for (std::size_t j = i + 1; j < degree; ++j)
          if (perm[i] > perm[j]) ++inversions;
      Word w(degree);
      for (std::size_t i = 0; i < degree; ++i) w[i] = tuple[perm[i]];
      v[word_index(w, dim_v)] += (inversions % 2 == 0) ? 1 : -1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    rows.push_back(std::move(v));
  };
  if (degree <= dim_v) {
    std::vector<bool> choose(dim_v, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(degree), true);
    // prev_permutation over a sorted-descending mask walks the subsets in
    // lexicographic order of their element tuples
    do {
      std::vector<Letter> tuple;
      for (std::size_t i = 0; i < dim_v; ++i)
        if (choose[i]) tuple.push_back(static_cast<Letter>(i));
      emit(tuple);
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  return AlgebraPresentation(dim_v, degree, std::move(rows));
}

}  // namespace pbwforge
