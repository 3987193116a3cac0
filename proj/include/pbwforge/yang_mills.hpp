#pragma once

// The cubic Yang-Mills algebra on ∇_0..∇_s with relations
//   W^ρ = W^{ρλμν} ∇_λ⊗∇_μ⊗∇_ν,
//   W^{ρλμν} = g^{ρλ}g^{μν} + g^{ρν}g^{λμ} − 2 g^{ρμ}g^{λν},
// and its inhomogeneous currents
//   J^ρ = φ(W^ρ) = j^{μνρ} ∇_μ⊗∇_ν + j^{λρ} ∇_λ + j^ρ 1.
//
// Index convention: the relation label ρ is always the LAST slot of the
// current coefficients. Example (s = 1): j3[tidx(2, 0, 1, 1)] = j^{011} is
// the coefficient of ∇_0⊗∇_1 in J^1.
//
// Regular currents (PBW property) are exactly
//   j^{αβγ} = (g^{αρ}g^{βγ} − g^{αγ}g^{βρ}) b_ρ + ω^{αβγ} + s^{αβγ}
//   j^{αβ}  = −½ ω^{αβρ} b_ρ + s^{αβ}
//   j^α     = s^α
// with ω totally antisymmetric, s^{αβγ} totally symmetric, s^{αβ}
// symmetric and s^{αβρ}b_ρ = s^{αρ}b_ρ = s^ρ b_ρ = 0.

#include "metric.hpp"
#include "pbw.hpp"

#include <random>
#include <vector>

namespace pbwforge::ym {

/// W^{ρλμν} as a flat d^4 array, index tidx(d, ρ, λ, μ, ν).
inline Vector relation_coefficients(const Metric& g) {
  const std::size_t d = g.dim();
  Vector w(d * d * d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          w[tidx(d, r, l, m, n)] = g.up(r, l) * g.up(m, n) + g.up(r, n) * g.up(l, m) - 2 * g.up(r, m) * g.up(l, n);
  return w;
}

/// Rows W^ρ (lexicographic V^{⊗3} coordinates) from a coefficient array.
inline std::vector<Vector> relation_rows(const Vector& coeffs, std::size_t d) {
  const std::size_t block = d * d * d;
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < d; ++r) rows.emplace_back(coeffs.begin() + static_cast<std::ptrdiff_t>(r * block),
                                                        coeffs.begin() + static_cast<std::ptrdiff_t>((r + 1) * block));
  return rows;
}

inline AlgebraPresentation build_ym(const Metric& g) {
  if (g.dim() < 2) throw input_error("Yang-Mills algebra needs s >= 1");
  return AlgebraPresentation(g.dim(), 3, relation_rows(relation_coefficients(g), g.dim()));
}

/// g^{λμ} g^{νρ} [∇_λ, [∇_μ, ∇_ν]] for each ρ, expanded in T(V).
inline std::vector<TensorElement> commutator_form(const Metric& g) {
  const std::size_t d = g.dim();
  std::vector<TensorElement> out;
  for (std::size_t r = 0; r < d; ++r) {
    TensorElement sum(d);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
          const Scalar c = g.up(l, m) * g.up(n, r);
          if (c == 0) continue;
          auto x = [&](std::size_t i) { return TensorElement::generator(d, static_cast<Letter>(i)); };
          sum += c * commutator(x(l), commutator(x(m), x(n)));
        }
    out.push_back(std::move(sum));
  }
  return out;
}

struct IdentityReport {
  bool cyclic = false;            // W^{λμνρ} = W^{ρλμν}
  bool w_two_sided = false;       // W^ρ⊗∇_ρ = ∇_ρ⊗W^ρ
  bool cyclic_sum = false;        // W^{ρλμν} + W^{ρνλμ} + W^{ρμνλ} = 0
  bool relations_independent = false;
  std::size_t overlap_dim = 0;
  bool w_spans_overlap = false;   // dim W_4 = 1 and w ∈ W_4
  bool all() const { return cyclic && w_two_sided && cyclic_sum && relations_independent && w_spans_overlap; }
};

/// w = W^ρ⊗∇_ρ (right = true) or ∇_ρ⊗W^ρ, lexicographic V^{⊗4} coordinates.
inline Vector w_element(const Vector& coeffs, std::size_t d, bool right) {
  Vector w(d * d * d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
          const Scalar& c = coeffs[tidx(d, r, l, m, n)];
          if (right)
            w[tidx(d, l, m, n, r)] += c;
          else
            w[tidx(d, r, l, m, n)] += c;
        }
  return w;
}

/// Checks the structural identities on an arbitrary coefficient array (so a
/// deliberately corrupted array can serve as a negative control).
inline IdentityReport verify_identities(const Vector& coeffs, std::size_t d) {
  IdentityReport rep;
  rep.cyclic = rep.cyclic_sum = true;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
          if (coeffs[tidx(d, l, m, n, r)] != coeffs[tidx(d, r, l, m, n)]) rep.cyclic = false;
          if (coeffs[tidx(d, r, l, m, n)] + coeffs[tidx(d, r, n, l, m)] + coeffs[tidx(d, r, m, n, l)] != 0)
            rep.cyclic_sum = false;
        }
  const Vector w = w_element(coeffs, d, true);
  rep.w_two_sided = w == w_element(coeffs, d, false);
  const auto rows = relation_rows(coeffs, d);
  rep.relations_independent = rank(Matrix::from_rows(rows, d * d * d)) == d;
  if (rep.relations_independent) {
    const Subspace overlap = overlap_space(AlgebraPresentation(d, 3, rows));
    rep.overlap_dim = overlap.dim();
    rep.w_spans_overlap = overlap.dim() == 1 && !is_zero(w) && overlap.contains(w);
  }
  return rep;
}

inline IdentityReport verify_identities(const Metric& g) { return verify_identities(relation_coefficients(g), g.dim()); }

struct Current {
  std::size_t dim = 0;
  Vector j3;  // j^{μνρ}, tidx(d, μ, ν, ρ)
  Vector j2;  // j^{λρ},  tidx(d, λ, ρ)
  Vector j1;  // j^ρ

  static Current zero(std::size_t d) { return {d, Vector(d * d * d), Vector(d * d), Vector(d)}; }

  /// J^ρ as an element of F^2.
  TensorElement element(std::size_t rho) const {
    TensorElement t(dim);
    for (std::size_t m = 0; m < dim; ++m)
      for (std::size_t n = 0; n < dim; ++n)
        t.add_term({static_cast<Letter>(m), static_cast<Letter>(n)}, j3[tidx(dim, m, n, rho)]);
    for (std::size_t l = 0; l < dim; ++l) t.add_term({static_cast<Letter>(l)}, j2[tidx(dim, l, rho)]);
    t.add_term({}, j1[rho]);
    return t;
  }

  friend bool operator==(const Current&, const Current&) = default;
};

struct CurrentParameters {
  Vector b;       // b_ρ
  Vector omega3;  // ω^{αβγ}, totally antisymmetric
  Vector s3;      // s^{αβγ}, totally symmetric
  Vector s2;      // s^{αβ}, symmetric
  Vector s1;      // s^α

  static CurrentParameters zero(std::size_t d) { return {Vector(d), Vector(d * d * d), Vector(d * d * d), Vector(d * d), Vector(d)}; }
  std::size_t dim() const { return b.size(); }

  void validate() const {
    const std::size_t d = dim();
    if (omega3.size() != d * d * d || s3.size() != d * d * d || s2.size() != d * d || s1.size() != d)
      throw input_error("current parameters have inconsistent shapes");
    if (!is_antisymmetric3(omega3, d)) throw input_error("omega3 is not totally antisymmetric");
    if (!is_symmetric3(s3, d)) throw input_error("s3 is not totally symmetric");
    if (!is_symmetric2(s2, d)) throw input_error("s2 is not symmetric");
  }
};

/// The side conditions are reported, never silently enforced.
struct SideConditions {
  bool s3_b = false;  // s^{αβρ} b_ρ = 0
  bool s2_b = false;  // s^{αρ} b_ρ = 0
  bool s1_b = false;  // s^ρ b_ρ = 0
  bool all() const { return s3_b && s2_b && s1_b; }
};

inline SideConditions side_conditions(const CurrentParameters& p) {
  return {is_zero(contract_last(p.s3, p.b)), is_zero(contract_last(p.s2, p.b)), dot(p.s1, p.b) == 0};
}

inline Current current_from_parameters(const CurrentParameters& p, const Metric& g) {
  p.validate();
  const std::size_t d = p.dim();
  if (g.dim() != d) throw input_error("metric and parameters disagree on s");
  Current c = Current::zero(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t be = 0; be < d; ++be) {
      for (std::size_t ga = 0; ga < d; ++ga) {
        Scalar x = p.omega3[tidx(d, a, be, ga)] + p.s3[tidx(d, a, be, ga)];
        for (std::size_t r = 0; r < d; ++r) x += (g.up(a, r) * g.up(be, ga) - g.up(a, ga) * g.up(be, r)) * p.b[r];
        c.j3[tidx(d, a, be, ga)] = x;
      }
      Scalar y = p.s2[tidx(d, a, be)];
      for (std::size_t r = 0; r < d; ++r) y -= Scalar(1, 2) * p.omega3[tidx(d, a, be, r)] * p.b[r];
      c.j2[tidx(d, a, be)] = y;
    }
  c.j1 = p.s1;
  return c;
}

/// φ(W^ρ) = J^ρ on the relation basis of build_ym.
inline DeformationMap current_to_deformation(const Current& c, const AlgebraPresentation& a) {
  if (a.dim_v() != c.dim || a.degree() != 3 || a.relation_count() != c.dim)
    throw input_error("current does not match the Yang-Mills presentation");
  std::vector<TensorElement> images;
  for (std::size_t r = 0; r < c.dim; ++r) images.push_back(c.element(r));
  return DeformationMap::from_images(a, images);
}

struct PhysicsCurrent {
  Current current;
  bool b_omega_zero = false;  // b_λ ω^{λμν} = 0
  bool b_s_zero = false;      // b_λ s^λ = 0
  bool constraints_hold() const { return b_omega_zero && b_s_zero; }
};

/// J^μ = b_λ F^{λμ} + ω^{λρμ} F_{λρ} + s^μ 1 with F_{λρ} = [∇_λ, ∇_ρ] and
/// F^{λμ} = g^{λα} g^{μβ} F_{αβ}. (The constraint b_λ s^λ = 0 is the
/// generalized Ohm's law reading of the regular currents.)
inline PhysicsCurrent physics_current(const Vector& b, const Vector& omega3, const Vector& s1, const Metric& g) {
  const std::size_t d = g.dim();
  if (b.size() != d || omega3.size() != d * d * d || s1.size() != d) throw input_error("physics current: shape mismatch");
  if (!is_antisymmetric3(omega3, d)) throw input_error("omega3 is not totally antisymmetric");
  PhysicsCurrent out;
  out.current = Current::zero(d);
  for (std::size_t al = 0; al < d; ++al)
    for (std::size_t be = 0; be < d; ++be)
      for (std::size_t mu = 0; mu < d; ++mu) {
        Scalar x = omega3[tidx(d, al, be, mu)] - omega3[tidx(d, be, al, mu)];
        for (std::size_t l = 0; l < d; ++l) x += b[l] * (g.up(l, al) * g.up(mu, be) - g.up(l, be) * g.up(mu, al));
        out.current.j3[tidx(d, al, be, mu)] = x;
      }
  out.current.j1 = s1;
  // b_λ ω^{λμν}: contract the first slot (ω is antisymmetric, so any slot works up to sign)
  Vector bw(d * d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d * d; ++i) bw[i] += b[l] * omega3[l * d * d + i];
  out.b_omega_zero = is_zero(bw);
  out.b_s_zero = dot(b, s1) == 0;
  return out;
}

// ---------------------------------------------------------------------------
// Seeded samplers

/// Random point of span(generators) ∩ ker(constraint); constraint may be empty.
inline Vector sample_constrained(const std::vector<Vector>& generators, const Matrix& constraint, std::size_t ambient,
                                 std::mt19937_64& rng) {
  Subspace space = generators.empty() ? Subspace::zero(ambient) : Subspace::span(generators, ambient);
  if (constraint.rows() > 0) space = intersect(space, kernel(constraint));
  return random_point(space, rng);
}

/// Matrix of T ↦ T^{...ρ} b_ρ acting on flat tensors of the given size.
inline Matrix contraction_matrix(const Vector& b, std::size_t size) {
  const std::size_t d = b.size();
  Matrix m(size / d, size);
  for (std::size_t i = 0; i < size / d; ++i)
    for (std::size_t r = 0; r < d; ++r) m(i, i * d + r) = b[r];
  return m;
}

inline Vector random_covector(std::size_t d, std::mt19937_64& rng, int bound = 20) {
  Vector b(d);
  for (auto& x : b) x = random_rational(rng, bound);
  return b;
}

/// Parameters satisfying every side condition, with a nonzero b.
inline CurrentParameters random_regular_parameters(std::size_t d, std::mt19937_64& rng) {
  CurrentParameters p = CurrentParameters::zero(d);
  do p.b = random_covector(d, rng); while (is_zero(p.b));
  p.omega3 = sample_constrained(symmetric3_basis(d, -1), Matrix(), d * d * d, rng);
  p.s3 = sample_constrained(symmetric3_basis(d, 1), contraction_matrix(p.b, d * d * d), d * d * d, rng);
  p.s2 = sample_constrained(symmetric2_basis(d, 1), contraction_matrix(p.b, d * d), d * d, rng);
  Matrix row(1, d);
  for (std::size_t i = 0; i < d; ++i) row(0, i) = p.b[i];
  std::vector<Vector> unit;
  for (std::size_t i = 0; i < d; ++i) {
    Vector e(d);
    e[i] = 1;
    unit.push_back(e);
  }
  p.s1 = sample_constrained(unit, row, d, rng);
  return p;
}

}  // namespace pbwforge::ym
