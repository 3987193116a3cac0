#pragma once

// The quadratic case: S(V) = T(V)/(e_i e_j − e_j e_i) deformed by a bracket,
// φ_1(e_i e_j − e_j e_i) = [e_i, e_j], φ_0 = 0. The PBW conditions then
// reduce to the Jacobi identity, which is also computed directly here from
// the structure constants so the two can be compared.

#include "pbw.hpp"

#include <random>
#include <vector>

namespace pbwforge::lie {

/// c[(i*d + j)*d + k] = coefficient of e_k in [e_i, e_j]; antisymmetric in (i, j).
struct Bracket {
  std::size_t dim = 0;
  Vector c;

  static Bracket zero(std::size_t d) { return {d, Vector(d * d * d)}; }

  void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    c[(i * dim + j) * dim + k] = v;
    c[(j * dim + i) * dim + k] = -v;
  }
  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * dim + j) * dim + k]; }

  bool antisymmetric() const {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (at(i, j, k) != -at(j, i, k)) return false;
    return true;
  }
};

/// Relations e_i e_j − e_j e_i for i < j, in that order.
inline AlgebraPresentation symmetric_algebra(std::size_t d) {
  std::vector<TensorElement> rel;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      TensorElement x = TensorElement::monomial(d, {static_cast<Letter>(i), static_cast<Letter>(j)});
      x -= TensorElement::monomial(d, {static_cast<Letter>(j), static_cast<Letter>(i)});
      rel.push_back(std::move(x));
    }
  return AlgebraPresentation::from_elements(d, 2, rel);
}

inline DeformationMap bracket_deformation(const Bracket& br) {
  if (!br.antisymmetric()) throw input_error("bracket is not antisymmetric");
  const std::size_t d = br.dim;
  std::vector<TensorElement> images;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      TensorElement img(d);
      for (std::size_t k = 0; k < d; ++k) img.add_term({static_cast<Letter>(k)}, br.at(i, j, k));
      images.push_back(std::move(img));
    }
  return DeformationMap::from_images(symmetric_algebra(d), images);
}

/// Jacobiator [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] for every
/// i < j < k, flattened; all zero iff the bracket is a Lie bracket.
inline std::vector<Vector> jacobiators(const Bracket& br) {
  const std::size_t d = br.dim;
  auto bracket_with = [&](std::size_t i, const Vector& x) {
    Vector out(d);
    for (std::size_t m = 0; m < d; ++m)
      if (x[m] != 0)
        for (std::size_t k = 0; k < d; ++k) out[k] += x[m] * br.at(i, m, k);
    return out;
  };
  auto basis_bracket = [&](std::size_t i, std::size_t j) {
    Vector out(d);
    for (std::size_t k = 0; k < d; ++k) out[k] = br.at(i, j, k);
    return out;
  };
  std::vector<Vector> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k)
        out.push_back(add(add(bracket_with(i, basis_bracket(j, k)), bracket_with(j, basis_bracket(k, i))),
                          bracket_with(k, basis_bracket(i, j))));
  return out;
}

inline bool satisfies_jacobi(const Bracket& br) {
  for (const auto& v : jacobiators(br))
    if (!is_zero(v)) return false;
  return true;
}

/// [e_0,e_1] = e_2 and cyclically.
inline Bracket so3() {
  Bracket b = Bracket::zero(3);
  b.set(0, 1, 2, 1);
  b.set(1, 2, 0, 1);
  b.set(2, 0, 1, 1);
  return b;
}

/// [e_0,e_1] = e_0 + e_2, [e_1,e_2] = e_0, [e_2,e_0] = e_1; its Jacobiator is e_1.
inline Bracket broken() {
  Bracket b = Bracket::zero(3);
  b.set(0, 1, 0, 1);
  b.set(0, 1, 2, 1);
  b.set(1, 2, 0, 1);
  b.set(2, 0, 1, 1);
  return b;
}

/// Uniform random antisymmetric structure constants with |p|, q <= bound.
inline Bracket random_bracket(std::size_t d, std::mt19937_64& rng, int bound = 5) {
  Bracket b = Bracket::zero(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) b.set(i, j, k, random_rational(rng, bound));
  return b;
}

}  // namespace pbwforge::lie
