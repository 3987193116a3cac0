#pragma once

// The PBW decision for U = T(V)/(P), P = {x - φ(x) : x ∈ R}, with
// φ = φ_0 + ... + φ_{N-1}, φ_j : R -> V^{⊗j}.
//
// Under Koszulity of A = T(V)/(R), U has the PBW property iff
//   P ∩ F^{N-1} = 0                     (automatic: P is the graph of φ over R,
//                                        so x - φ(x) ∈ F^{N-1} forces x = 0)
//   (PV + VP) ∩ F^N ⊆ P,
// and the second condition unfolds on w ∈ W_{N+1} = (R⊗V) ∩ (V⊗R), with
// D_j = φ_j⊗I - I⊗φ_j and X = D_{N-1}(w), into
//   (J1)  X ∈ R
//   (J2)  φ_j(X) + D_{j-1}(w) = 0      for 1 <= j <= N-1
//   (J3)  φ_0(X) = 0.
//
// Two independent routes back this up: a brute-force filtered-ideal oracle
// (which only looks at spans of a·p·b), and for Yang-Mills shaped maps the
// conservation residual of [∇_μ, J^μ].

#include "algebra.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbwforge {

class DeformationMap {
 public:
  DeformationMap() = default;

  /// All φ_j zero.
  explicit DeformationMap(AlgebraPresentation algebra) : algebra_(std::move(algebra)) {
    for (std::size_t j = 0; j < algebra_.degree(); ++j)
      phi_.push_back(GradedMap::zero(algebra_.dim_v(), j, algebra_.relation_count()));
  }

  /// images[a] = φ(r_a), an element of F^{N-1}.
  static DeformationMap from_images(AlgebraPresentation algebra, const std::vector<TensorElement>& images) {
    DeformationMap d(std::move(algebra));
    const std::size_t m = d.algebra_.relation_count();
    if (images.size() != m) throw input_error("need one image per relation");
    for (std::size_t a = 0; a < m; ++a) {
      if (images[a].dim_v() != d.algebra_.dim_v()) throw input_error("image over a different generator set");
      if (!images[a].is_zero() && images[a].max_degree() >= d.algebra_.degree())
        throw input_error("φ must map into F^{N-1}");
      for (std::size_t j = 0; j < d.algebra_.degree(); ++j) {
        const Vector coords = images[a].degree_coords(j);
        for (std::size_t t = 0; t < coords.size(); ++t) d.phi_[j].matrix(t, a) = coords[t];
      }
    }
    return d;
  }

  const AlgebraPresentation& algebra() const { return algebra_; }
  const GradedMap& phi(std::size_t j) const { return phi_.at(j); }

  void set_phi(std::size_t j, Matrix m) {
    if (j >= algebra_.degree()) throw input_error("φ_j needs j < N");
    if (m.rows() != power(algebra_.dim_v(), j) || m.cols() != algebra_.relation_count())
      throw input_error("φ_" + std::to_string(j) + " matrix has the wrong shape");
    phi_[j].matrix = std::move(m);
  }

  /// φ(r_a) as a mixed-degree element.
  TensorElement image(std::size_t a) const {
    TensorElement t(algebra_.dim_v());
    for (std::size_t j = 0; j < phi_.size(); ++j) t += TensorElement::from_coords(algebra_.dim_v(), j, phi_[j].matrix.col_vector(a));
    return t;
  }

  /// p_a = r_a - φ(r_a)
  TensorElement relation_element(std::size_t a) const { return algebra_.relation(a) - image(a); }

  /// φ_j ↦ t^{N-j} φ_j
  DeformationMap rescaled(const Scalar& t) const {
    DeformationMap d = *this;
    for (std::size_t j = 0; j < phi_.size(); ++j) {
      Scalar f = 1;
      for (std::size_t k = j; k < algebra_.degree(); ++k) f *= t;
      for (std::size_t r = 0; r < d.phi_[j].matrix.rows(); ++r)
        for (std::size_t c = 0; c < d.phi_[j].matrix.cols(); ++c) d.phi_[j].matrix(r, c) *= f;
    }
    return d;
  }

  /// The same deformation described on the relation basis r'_a = sum_b M_ab r_b.
  DeformationMap rebased(const Matrix& change) const {
    const std::size_t m = algebra_.relation_count();
    if (change.rows() != m || change.cols() != m) throw input_error("basis change must be square");
    std::vector<Vector> rows;
    std::vector<TensorElement> images;
    for (std::size_t a = 0; a < m; ++a) {
      Vector r(power(algebra_.dim_v(), algebra_.degree()));
      TensorElement img(algebra_.dim_v());
      for (std::size_t b = 0; b < m; ++b) {
        if (sgn(change(a, b)) == 0) continue;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += change(a, b) * algebra_.relation_basis()[b][i];
        img += change(a, b) * image(b);
      }
      rows.push_back(std::move(r));
      images.push_back(std::move(img));
    }
    return from_images(AlgebraPresentation(algebra_.dim_v(), algebra_.degree(), std::move(rows)), images);
  }

 private:
  AlgebraPresentation algebra_;
  std::vector<GradedMap> phi_;
};

struct PbwVerdict {
  bool j1_holds = false;
  /// j2[j-1] for j = 1..N-1; nullopt = not applicable because J1 failed.
  std::vector<std::optional<bool>> j2;
  std::optional<bool> j3;
  /// Nonzero certificate when overall is false: X ∉ R for J1, the nonzero
  /// value of the J2/J3 expression otherwise.
  std::optional<TensorElement> witness;
  std::string failed_condition;  // "J1", "J2[j]", "J3" or empty
  bool overall = false;
};

struct ConditionResult {
  std::optional<bool> holds;  // nullopt = not applicable
  std::optional<TensorElement> witness;
};

/// Precomputes W_{N+1} and its factorizations along R⊗V and V⊗R, so that
/// many deformations of one algebra can be checked cheaply.
class PbwChecker {
 public:
  explicit PbwChecker(AlgebraPresentation a)
      : a_(std::move(a)),
        overlap_(overlap_space(a_)),
        relation_solver_(a_.relation_count() ? BasisSolver(Matrix::from_rows(a_.relation_basis(), power(a_.dim_v(), a_.degree())))
                                             : BasisSolver()) {
    const SideFactorizer right(a_.relation_basis(), a_.dim_v(), Side::right);
    const SideFactorizer left(a_.relation_basis(), a_.dim_v(), Side::left);
    for (std::size_t k = 0; k < overlap_.dim(); ++k) {
      const Vector w = overlap_.basis_vector(k);
      right_.push_back(*right.factor(w));
      left_.push_back(*left.factor(w));
    }
  }

  const AlgebraPresentation& algebra() const { return a_; }
  const Subspace& overlap() const { return overlap_; }
  std::size_t overlap_dim() const { return overlap_.dim(); }

  /// Factorization of the k-th overlap basis vector along R⊗V (layout a*d+λ)
  /// and V⊗R (layout λ*dimR+a).
  const Vector& right_coords(std::size_t k) const { return right_.at(k); }
  const Vector& left_coords(std::size_t k) const { return left_.at(k); }

  /// D_j(w_k) = (φ_j⊗I - I⊗φ_j)(w_k), coordinates in V^{⊗(j+1)}.
  Vector lifted_difference(const GradedMap& phi, std::size_t k) const {
    Vector out = lift_right(phi, right_[k]);
    const Vector l = lift_left(phi, left_[k]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= l[i];
    return out;
  }

  /// X_k = D_{N-1}(w_k) for every overlap basis vector.
  std::vector<Vector> top_images(const DeformationMap& d) const {
    check_algebra(d);
    std::vector<Vector> xs;
    for (std::size_t k = 0; k < overlap_.dim(); ++k) xs.push_back(lifted_difference(d.phi(a_.degree() - 1), k));
    return xs;
  }

  /// Relation-basis coordinates of v ∈ V^{⊗N}, nullopt if v ∉ R.
  std::optional<Vector> relation_coords(std::span<const Scalar> v) const {
    if (a_.relation_count() == 0) {
      if (pbwforge::is_zero(Vector(v.begin(), v.end()))) return Vector{};
      return std::nullopt;
    }
    return relation_solver_.coordinates(v);
  }

  ConditionResult check_j1(const DeformationMap& d) const {
    ConditionResult r{true, std::nullopt};
    for (const auto& x : top_images(d))
      if (!relation_coords(x)) {
        r.holds = false;
        r.witness = TensorElement::from_coords(a_.dim_v(), a_.degree(), x);
        return r;
      }
    return r;
  }

  /// φ_j(X_k) + D_{j-1}(w_k) = 0 for all k; 1 <= j <= N-1.
  ConditionResult check_j2(const DeformationMap& d, std::size_t j) const {
    if (j < 1 || j + 1 > a_.degree()) throw input_error("J2 level must satisfy 1 <= j <= N-1");
    const auto ys = relation_images(d);
    if (!ys) return {std::nullopt, std::nullopt};
    for (std::size_t k = 0; k < ys->size(); ++k) {
      Vector v = d.phi(j).apply((*ys)[k]);
      const Vector diff = lifted_difference(d.phi(j - 1), k);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += diff[i];
      if (!pbwforge::is_zero(v)) return {false, TensorElement::from_coords(a_.dim_v(), j, v)};
    }
    return {true, std::nullopt};
  }

  /// φ_0(X_k) = 0 for all k.
  ConditionResult check_j3(const DeformationMap& d) const {
    const auto ys = relation_images(d);
    if (!ys) return {std::nullopt, std::nullopt};
    for (const auto& y : *ys) {
      const Vector v = d.phi(0).apply(y);
      if (!pbwforge::is_zero(v)) return {false, TensorElement::from_coords(a_.dim_v(), 0, v)};
    }
    return {true, std::nullopt};
  }

  PbwVerdict verdict(const DeformationMap& d) const {
    PbwVerdict v;
    const auto j1 = check_j1(d);
    v.j1_holds = *j1.holds;
    if (!v.j1_holds) {
      v.witness = j1.witness;
      v.failed_condition = "J1";
    }
    for (std::size_t j = 1; j < a_.degree(); ++j) {
      const auto r = check_j2(d, j);
      v.j2.push_back(r.holds);
      if (r.holds == false && v.failed_condition.empty()) {
        v.witness = r.witness;
        v.failed_condition = "J2[" + std::to_string(j) + "]";
      }
    }
    const auto j3 = check_j3(d);
    v.j3 = j3.holds;
    if (j3.holds == false && v.failed_condition.empty()) {
      v.witness = j3.witness;
      v.failed_condition = "J3";
    }
    v.overall = v.j1_holds && v.j3 == true;
    for (const auto& x : v.j2) v.overall = v.overall && x == true;
    return v;
  }

 private:
  void check_algebra(const DeformationMap& d) const {
    if (d.algebra().dim_v() != a_.dim_v() || d.algebra().degree() != a_.degree() ||
        d.algebra().relation_basis() != a_.relation_basis())
      throw input_error("deformation belongs to a different presentation");
  }

  // Relation-basis coordinates of each X_k, or nullopt if some X_k ∉ R.
  std::optional<std::vector<Vector>> relation_images(const DeformationMap& d) const {
    std::vector<Vector> ys;
    for (const auto& x : top_images(d)) {
      auto y = relation_coords(x);
      if (!y) return std::nullopt;
      ys.push_back(std::move(*y));
    }
    return ys;
  }

  AlgebraPresentation a_;
  Subspace overlap_;
  BasisSolver relation_solver_;
  std::vector<Vector> right_;
  std::vector<Vector> left_;
};

inline ConditionResult check_j1(const DeformationMap& d) { return PbwChecker(d.algebra()).check_j1(d); }
inline ConditionResult check_j2(const DeformationMap& d, std::size_t j) { return PbwChecker(d.algebra()).check_j2(d, j); }
inline ConditionResult check_j3(const DeformationMap& d) { return PbwChecker(d.algebra()).check_j3(d); }
inline PbwVerdict pbw_verdict(const DeformationMap& d) { return PbwChecker(d.algebra()).verdict(d); }

// ---------------------------------------------------------------------------
// Brute-force oracle

/// span{a·p·b : p ∈ P basis, |a| + N + |b| <= cutoff} inside F^cutoff.
/// Columns are ordered by decreasing degree (lexicographic inside a degree),
/// so the rows whose pivot has degree <= n span the intersection with F^n.
class FilteredIdeal {
 public:
  FilteredIdeal(const DeformationMap& d, std::size_t cutoff)
      : dim_v_(d.algebra().dim_v()), cutoff_(cutoff), echelon_(0) {
    const std::size_t N = d.algebra().degree();
    guard_dimension(power(dim_v_, cutoff), "V^{⊗" + std::to_string(cutoff) + "}");
    offsets_.assign(cutoff + 1, 0);
    std::size_t total = 0;
    for (std::size_t k = cutoff + 1; k-- > 0;) {
      offsets_[k] = total;
      total += power(dim_v_, k);
    }
    echelon_ = EchelonBasis(total);
    pivots_by_degree_.assign(cutoff + 1, 0);
    if (cutoff < N) return;

    struct Term {
      std::size_t degree, index;
      Scalar value;
    };
    for (std::size_t a = 0; a < d.algebra().relation_count(); ++a) {
      std::vector<Term> p;
      const TensorElement element = d.relation_element(a);
      for (const auto& [w, c] : element.terms()) p.push_back({w.size(), word_index(w, dim_v_), c});
      for (std::size_t m = 0; m + N <= cutoff; ++m)
        for (std::size_t i = 0; i <= m; ++i) {
          const std::size_t left_count = power(dim_v_, i);
          const std::size_t right_len = m - i;
          const std::size_t right_count = power(dim_v_, right_len);
          for (std::size_t ia = 0; ia < left_count; ++ia)
            for (std::size_t ib = 0; ib < right_count; ++ib) {
              SparseVector v;
              v.reserve(p.size());
              for (const auto& t : p) {
                const std::size_t deg = i + t.degree + right_len;
                const std::size_t idx = (ia * power(dim_v_, t.degree) + t.index) * right_count + ib;
                v.push_back({offsets_[deg] + idx, t.value});
              }
              std::sort(v.begin(), v.end(), [](const SparseEntry& x, const SparseEntry& y) { return x.index < y.index; });
              if (echelon_.insert(v)) ++pivots_by_degree_[degree_of(echelon_.rows().back().front().index)];
            }
        }
    }
  }

  std::size_t cutoff() const { return cutoff_; }

  /// dim (J^{(cutoff)} ∩ F^n)
  std::size_t dim_in(std::size_t n) const {
    std::size_t total = 0;
    for (std::size_t k = 0; k <= std::min(n, cutoff_); ++k) total += pivots_by_degree_[k];
    return total;
  }

  /// Canonical residual of x modulo the span (support avoids pivot columns).
  TensorElement normal_form(const TensorElement& x) {
    if (x.max_degree() > cutoff_) throw input_error("element above the cutoff degree");
    SparseVector v;
    for (const auto& [w, c] : x.terms()) v.push_back({offsets_[w.size()] + word_index(w, dim_v_), c});
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    TensorElement out(dim_v_);
    for (const auto& e : echelon_.normal_form(v)) {
      const std::size_t deg = degree_of(e.index);
      out.add_term(index_word(deg, e.index - offsets_[deg], dim_v_), e.value);
    }
    return out;
  }

 private:
  std::size_t degree_of(std::size_t col) const {
    for (std::size_t k = 0; k <= cutoff_; ++k)
      if (col >= offsets_[k] && col < offsets_[k] + power(dim_v_, k)) return k;
    throw input_error("column out of range");
  }

  std::size_t dim_v_;
  std::size_t cutoff_;
  std::vector<std::size_t> offsets_;
  EchelonBasis echelon_;
  std::vector<std::size_t> pivots_by_degree_;
};

enum class OracleVerdict { consistent, fail };

struct OracleResult {
  std::size_t n_max = 0;
  std::size_t cutoff = 0;
  /// dim F^n / J_n^{(cutoff)} for n = 0..n_max
  std::vector<std::size_t> quotient_dims;
  /// sum_{i<=n} dim A_i for n = 0..n_max
  std::vector<std::size_t> expected_dims;
  OracleVerdict verdict = OracleVerdict::consistent;
  /// First degree where the quotient is strictly smaller.
  std::optional<std::size_t> failure_degree;
};

/// FAIL is a definitive refutation of PBW at that degree; CONSISTENT is
/// bounded evidence only (ideal spans grow with the cutoff).
inline OracleResult brute_force_oracle(const DeformationMap& d, std::size_t n_max, std::size_t cutoff) {
  if (cutoff < n_max) throw input_error("oracle cutoff must be at least n_max");
  const FilteredIdeal ideal(d, cutoff);
  const auto graded = hilbert_coefficients(d.algebra(), n_max);
  OracleResult r;
  r.n_max = n_max;
  r.cutoff = cutoff;
  std::size_t expected = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    expected += graded[n];
    const std::size_t quotient = filtered_dim(d.algebra().dim_v(), n) - ideal.dim_in(n);
    r.quotient_dims.push_back(quotient);
    r.expected_dims.push_back(expected);
    // The leading forms of the a·p·b already span the ideal of A in each
    // degree, so the quotient can never exceed the graded count.
    if (quotient > expected) throw std::logic_error("oracle quotient exceeds graded dimension");
    if (quotient < expected && !r.failure_degree) {
      r.failure_degree = n;
      r.verdict = OracleVerdict::fail;
    }
  }
  return r;
}

inline const char* to_string(OracleVerdict v) { return v == OracleVerdict::fail ? "FAIL" : "CONSISTENT"; }

// ---------------------------------------------------------------------------
// Conservation residual (Yang-Mills shaped maps)

struct ConservationResult {
  TensorElement current_divergence;  // Σ_μ (∇_μ⊗J^μ − J^μ⊗∇_μ)
  TensorElement residual;            // its normal form modulo span(P)
  bool conserved = false;
};

/// Requires N = 3 and one relation per generator, relation μ paired with
/// generator μ (the Yang-Mills layout W^μ). The divergence always lies in the
/// two-sided ideal generated by P (it equals the w-cancellation combination),
/// so the meaningful test is membership in span(P) = J_3^{(3)}: conservation
/// must follow from the relations themselves without leaving filtration 3.
inline ConservationResult conservation_residual(const DeformationMap& d) {
  const auto& a = d.algebra();
  if (a.degree() != 3 || a.relation_count() != a.dim_v())
    throw input_error("conservation residual needs a cubic presentation with one relation per generator");
  ConservationResult out;
  out.current_divergence = TensorElement(a.dim_v());
  for (std::size_t mu = 0; mu < a.dim_v(); ++mu) {
    const TensorElement gen = TensorElement::generator(a.dim_v(), static_cast<Letter>(mu));
    const TensorElement j = d.image(mu);
    out.current_divergence += gen * j - j * gen;
  }
  FilteredIdeal span_p(d, a.degree());
  out.residual = span_p.normal_form(out.current_divergence);
  out.conserved = out.residual.is_zero();
  return out;
}

}  // namespace pbwforge
