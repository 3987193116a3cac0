#pragma once

// The cubic super Yang-Mills algebra on S_0..S_s with relations
//   W̃^ρ = W̃^{ρλμν} S_λ⊗S_μ⊗S_ν,   W̃^{ρλμν} = g^{ρλ}g^{μν} − g^{ρν}g^{λμ}.
// No Z/2-graded sign calculus is involved: these are ordinary tensors.
//
// Writing q = g^{λμ} S_λ S_μ, the expansion of [q, S_ν] is exactly
// −g_{νρ} W̃^ρ, so the relations say that q is central.
//
// Current convention. A super current J̃^ρ = j̃^{αβρ} S_α⊗S_β + j̃^{αρ} S_α
// + j̃^ρ 1 is attached to the relations in their commutator form
//   [q, S_ν] = g_{νρ} J̃^ρ,   i.e.   W̃^ρ + J̃^ρ = 0,
// so the deformation map is φ̃(W̃^ρ) = −J̃^ρ. With this attachment the regular
// currents are exactly
//   j̃^{αβγ} = (g^{αγ}g^{βρ} − g^{βγ}g^{αρ}) b_ρ,  j̃^{αβ} = ω^{αβ},
//   j̃^α = −½ ω^{αρ} b_ρ     (ω antisymmetric),
// and the shifted generators Ŝ_λ = S_λ + ½ b_λ turn the relations into
// [g^{λμ} Ŝ_λ Ŝ_μ, Ŝ_ν] = ω^{τρ} g_{ρν} Ŝ_τ. Attaching J̃ with the other sign
// (W̃^ρ = J̃^ρ) flips the sign of the j̃^α term in the regular family.

#include "metric.hpp"
#include "pbw.hpp"
#include "yang_mills.hpp"

#include <random>
#include <vector>

namespace pbwforge::sym {

/// W̃^{ρλμν}, index tidx(d, ρ, λ, μ, ν).
inline Vector relation_coefficients(const Metric& g) {
  const std::size_t d = g.dim();
  Vector w(d * d * d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          w[tidx(d, r, l, m, n)] = g.up(r, l) * g.up(m, n) - g.up(r, n) * g.up(l, m);
  return w;
}

inline AlgebraPresentation build_sym(const Metric& g) {
  if (g.dim() < 2) throw input_error("super Yang-Mills algebra needs s >= 1");
  return AlgebraPresentation(g.dim(), 3, ym::relation_rows(relation_coefficients(g), g.dim()));
}

/// g^{λμ} [S_λ, {S_μ, S_ν}] for each ν, expanded in T(V).
inline std::vector<TensorElement> anticommutator_form(const Metric& g) {
  const std::size_t d = g.dim();
  auto x = [d](std::size_t i) { return TensorElement::generator(d, static_cast<Letter>(i)); };
  std::vector<TensorElement> out;
  for (std::size_t n = 0; n < d; ++n) {
    TensorElement sum(d);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        if (g.up(l, m) != 0) sum += g.up(l, m) * commutator(x(l), anticommutator(x(m), x(n)));
    out.push_back(std::move(sum));
  }
  return out;
}

/// q = g^{λμ} S_λ⊗S_μ
inline TensorElement quadratic_element(const Metric& g) {
  const std::size_t d = g.dim();
  TensorElement q(d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t m = 0; m < d; ++m) q.add_term({static_cast<Letter>(l), static_cast<Letter>(m)}, g.up(l, m));
  return q;
}

struct IdentityReport {
  bool anticyclic = false;         // W̃^{λμνρ} = −W̃^{ρλμν}
  bool w_two_sided = false;        // S_ρ⊗W̃^ρ = −W̃^ρ⊗S_ρ
  bool relations_independent = false;
  std::size_t overlap_dim = 0;
  bool w_spans_overlap = false;
  bool all() const { return anticyclic && w_two_sided && relations_independent && w_spans_overlap; }
};

inline IdentityReport verify_super_identities(const Vector& coeffs, std::size_t d) {
  IdentityReport rep;
  rep.anticyclic = true;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          if (coeffs[tidx(d, l, m, n, r)] != -coeffs[tidx(d, r, l, m, n)]) rep.anticyclic = false;
  const Vector left = ym::w_element(coeffs, d, false);   // S_ρ⊗W̃^ρ
  const Vector right = ym::w_element(coeffs, d, true);   // W̃^ρ⊗S_ρ
  rep.w_two_sided = left == scaled(right, -1);
  const auto rows = ym::relation_rows(coeffs, d);
  rep.relations_independent = rank(Matrix::from_rows(rows, d * d * d)) == d;
  if (rep.relations_independent) {
    const Subspace overlap = overlap_space(AlgebraPresentation(d, 3, rows));
    rep.overlap_dim = overlap.dim();
    rep.w_spans_overlap = overlap.dim() == 1 && !is_zero(left) && overlap.contains(left);
  }
  return rep;
}

inline IdentityReport verify_super_identities(const Metric& g) {
  return verify_super_identities(relation_coefficients(g), g.dim());
}

struct CentralityReport {
  bool spans_match = false;               // span{[q, S_ν]} = R̃
  std::vector<std::size_t> degrees;       // n checked for [q, m] ∈ I_n
  std::vector<bool> central_in_degree;
  bool all() const {
    if (!spans_match) return false;
    for (bool b : central_in_degree)
      if (!b) return false;
    return true;
  }
};

/// [q, m] ∈ I_n for all monomials m of degree n−2, 3 <= n <= n_max, plus the
/// degree-3 span equality.
inline CentralityReport centrality_check(const AlgebraPresentation& a, const Metric& g, std::size_t n_max) {
  const std::size_t d = a.dim_v();
  if (g.dim() != d || a.degree() != 3) throw input_error("centrality check needs the matching super Yang-Mills presentation");
  const TensorElement q = quadratic_element(g);
  CentralityReport rep;
  std::vector<Vector> comms;
  for (std::size_t n = 0; n < d; ++n) comms.push_back(commutator(q, TensorElement::generator(d, static_cast<Letter>(n))).degree_coords(3));
  rep.spans_match = Subspace::span(comms, d * d * d) == a.relation_space();
  IdealComponents ideal(a);
  for (std::size_t n = 3; n <= n_max; ++n) {
    EchelonBasis comp = ideal.component(n);
    bool ok = true;
    for (std::size_t i = 0; i < power(d, n - 2) && ok; ++i) {
      const TensorElement m = TensorElement::monomial(d, index_word(n - 2, i, d));
      const Vector v = commutator(q, m).degree_coords(n);
      SparseVector sv;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(v[k]) != 0) sv.push_back({k, v[k]});
      ok = comp.contains(sv);
    }
    rep.degrees.push_back(n);
    rep.central_in_degree.push_back(ok);
  }
  return rep;
}

struct SuperCurrent {
  std::size_t dim = 0;
  Vector jt3;  // j̃^{αβρ}, tidx(d, α, β, ρ)
  Vector jt2;  // j̃^{αρ}
  Vector jt1;  // j̃^ρ

  static SuperCurrent zero(std::size_t d) { return {d, Vector(d * d * d), Vector(d * d), Vector(d)}; }

  TensorElement element(std::size_t rho) const {
    TensorElement t(dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) t.add_term({static_cast<Letter>(a), static_cast<Letter>(b)}, jt3[tidx(dim, a, b, rho)]);
    for (std::size_t a = 0; a < dim; ++a) t.add_term({static_cast<Letter>(a)}, jt2[tidx(dim, a, rho)]);
    t.add_term({}, jt1[rho]);
    return t;
  }
};

inline SuperCurrent super_current_from_parameters(const Vector& b, const Vector& omega2, const Metric& g) {
  const std::size_t d = g.dim();
  if (b.size() != d || omega2.size() != d * d) throw input_error("super current parameters: shape mismatch");
  if (!is_antisymmetric2(omega2, d)) throw input_error("omega2 is not antisymmetric");
  SuperCurrent c = SuperCurrent::zero(d);
  for (std::size_t al = 0; al < d; ++al)
    for (std::size_t be = 0; be < d; ++be)
      for (std::size_t ga = 0; ga < d; ++ga) {
        Scalar x = 0;
        for (std::size_t r = 0; r < d; ++r) x += (g.up(al, ga) * g.up(be, r) - g.up(be, ga) * g.up(al, r)) * b[r];
        c.jt3[tidx(d, al, be, ga)] = x;
      }
  c.jt2 = omega2;
  for (std::size_t al = 0; al < d; ++al)
    for (std::size_t r = 0; r < d; ++r) c.jt1[al] -= Scalar(1, 2) * omega2[tidx(d, al, r)] * b[r];
  return c;
}

/// φ̃(W̃^ρ) = −J̃^ρ (relations W̃^ρ + J̃^ρ = 0, see the header comment).
inline DeformationMap super_current_to_deformation(const SuperCurrent& c, const AlgebraPresentation& a) {
  if (a.dim_v() != c.dim || a.degree() != 3 || a.relation_count() != c.dim)
    throw input_error("current does not match the super Yang-Mills presentation");
  std::vector<TensorElement> images;
  for (std::size_t r = 0; r < c.dim; ++r) images.push_back(-c.element(r));
  return DeformationMap::from_images(a, images);
}

struct ShiftReport {
  bool commutator_form_matches = false;  // [q,S_ν] = −[g^{λμ}b_λS_μ,S_ν] + ω^{λρ}g_{ρν}(S_λ + ½b_λ)
  bool shifted_form_matches = false;     // [q̂, Ŝ_ν] = ω^{τρ}g_{ρν}Ŝ_τ,  Ŝ = S + shift·b
  bool all() const { return commutator_form_matches && shifted_form_matches; }
};

/// Compares span{relations} ⊂ F^3 of both rewritings with span(P) for the
/// regular current with parameters (b, ω). `shift` is the coefficient in
/// Ŝ_λ = S_λ + shift·b_λ (½ is the correct one).
inline ShiftReport shifted_generator_check(const Vector& b, const Vector& omega2, const Metric& g,
                                           const Scalar& shift = Scalar(1, 2)) {
  const std::size_t d = g.dim();
  const AlgebraPresentation a = build_sym(g);
  const DeformationMap phi = super_current_to_deformation(super_current_from_parameters(b, omega2, g), a);
  const std::size_t fdim = filtered_dim(d, 3);

  std::vector<Vector> p_rows;
  for (std::size_t r = 0; r < d; ++r) p_rows.push_back(phi.relation_element(r).filtered_coords(3));
  const Subspace p_span = Subspace::span(p_rows, fdim);

  auto s = [d](std::size_t i) { return TensorElement::generator(d, static_cast<Letter>(i)); };
  const TensorElement one = TensorElement::unit(d);
  const TensorElement q = quadratic_element(g);
  TensorElement bs(d);  // g^{λμ} b_λ S_μ
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t m = 0; m < d; ++m)
      if (g.up(l, m) != 0 && b[l] != 0) bs += (g.up(l, m) * b[l]) * s(m);

  // rot(ν, X) = ω^{λρ} g_{ρν} X_λ
  auto rotation = [&](std::size_t nu, auto&& x_of) {
    TensorElement t(d);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t r = 0; r < d; ++r) {
        const Scalar c = omega2[tidx(d, l, r)] * g.down(r, nu);
        if (c != 0) t += c * x_of(l);
      }
    return t;
  };

  std::vector<Vector> commutator_rows, shifted_rows;
  for (std::size_t nu = 0; nu < d; ++nu) {
    TensorElement lhs = commutator(q, s(nu)) + commutator(bs, s(nu));
    lhs -= rotation(nu, [&](std::size_t l) { return s(l) + (Scalar(1, 2) * b[l]) * one; });
    commutator_rows.push_back(lhs.filtered_coords(3));

    auto hat = [&](std::size_t l) { return s(l) + (shift * b[l]) * one; };
    TensorElement qhat(d);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        if (g.up(l, m) != 0) qhat += g.up(l, m) * (hat(l) * hat(m));
    TensorElement rel = commutator(qhat, hat(nu)) - rotation(nu, hat);
    shifted_rows.push_back(rel.filtered_coords(3));
  }
  ShiftReport rep;
  rep.commutator_form_matches = Subspace::span(commutator_rows, fdim) == p_span;
  rep.shifted_form_matches = Subspace::span(shifted_rows, fdim) == p_span;
  return rep;
}

// ---------------------------------------------------------------------------
// Seeded samplers

inline Vector random_antisymmetric2(std::size_t d, std::mt19937_64& rng) {
  return ym::sample_constrained(symmetric2_basis(d, -1), Matrix(), d * d, rng);
}

}  // namespace pbwforge::sym
