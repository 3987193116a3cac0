#include <pbwforge/algebra.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pbwforge;

namespace {

TensorElement x(std::size_t d, Letter l) { return TensorElement::generator(d, l); }

}  // namespace

TEST(Words, IndexRoundTripAndOrder) {
  const std::size_t d = 3;
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t i = 0; i < power(d, n); ++i) EXPECT_EQ(word_index(index_word(n, i, d), d), i);
  EXPECT_EQ(word_index({2, 0, 1}, 3), 2u * 9 + 0 * 3 + 1);
  WordOrder lt;
  EXPECT_TRUE(lt({2}, {0, 0}));       // shorter words first
  EXPECT_TRUE(lt({0, 1}, {1, 0}));    // lexicographic inside a degree
  EXPECT_EQ(filtered_dim(3, 2), 1u + 3 + 9);
}

TEST(Words, PowerOverflowIsAResourceError) { EXPECT_THROW(power(1000, 20), resource_error); }

TEST(TensorElement, ConcatenationAndCancellation) {
  const std::size_t d = 2;
  const TensorElement a = x(d, 0) + 2 * x(d, 1);
  const TensorElement b = x(d, 1) - TensorElement::unit(d);
  const TensorElement p = a * b;
  // (x0 + 2 x1)(x1 − 1) = x0x1 + 2x1x1 − x0 − 2x1
  EXPECT_EQ(p.coefficient({0, 1}), 1);
  EXPECT_EQ(p.coefficient({1, 1}), 2);
  EXPECT_EQ(p.coefficient({0}), -1);
  EXPECT_EQ(p.coefficient({1}), -2);
  EXPECT_EQ(p.terms().size(), 4u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.max_degree(), 2u);
  EXPECT_THROW(TensorElement::generator(2, 5), input_error);
}

TEST(TensorElement, NestedCommutatorExpansion) {
  // [x0,[x1,x2]] = x0x1x2 − x0x2x1 − x1x2x0 + x2x1x0
  const std::size_t d = 3;
  const TensorElement c = commutator(x(d, 0), commutator(x(d, 1), x(d, 2)));
  TensorElement expected(d);
  expected.add_term({0, 1, 2}, 1);
  expected.add_term({0, 2, 1}, -1);
  expected.add_term({1, 2, 0}, -1);
  expected.add_term({2, 1, 0}, 1);
  EXPECT_EQ(c, expected);
  EXPECT_EQ(anticommutator(x(d, 0), x(d, 0)), 2 * TensorElement::monomial(d, {0, 0}));
}

TEST(TensorElement, CoordinateViews) {
  const std::size_t d = 2;
  TensorElement t(d);
  t.add_term({1, 0}, 3);
  t.add_term({1}, -1);
  t.add_term({}, 5);
  EXPECT_EQ(t.degree_coords(2), (Vector{0, 0, 3, 0}));
  EXPECT_EQ(t.degree_part(1), -1 * x(d, 1));
  // filtered_coords stacks degree 0, 1, 2 blocks
  EXPECT_EQ(t.filtered_coords(2), (Vector{5, 0, -1, 0, 0, 3, 0}));
  EXPECT_EQ(TensorElement::from_coords(d, 2, t.degree_coords(2)), t.degree_part(2));
}

TEST(SideTensor, DimensionsAndPlacement) {
  const std::size_t d = 2;
  const Subspace r = Subspace::span(std::vector<Vector>{TensorElement::monomial(d, {0, 1}).degree_coords(2)}, 4);
  const Subspace right = side_tensor(r, Side::right, d);
  const Subspace left = side_tensor(r, Side::left, d);
  EXPECT_EQ(right.dim(), 2u);
  EXPECT_TRUE(right.contains(TensorElement::monomial(d, {0, 1, 1}).degree_coords(3)));
  EXPECT_FALSE(right.contains(TensorElement::monomial(d, {1, 0, 1}).degree_coords(3)));
  EXPECT_TRUE(left.contains(TensorElement::monomial(d, {1, 0, 1}).degree_coords(3)));
}

TEST(GradedMaps, LiftsAgreeWithDirectTensorProducts) {
  // R = span{r_0 = x0x1 − x1x0, r_1 = x0x0}; φ_1(r_0) = x1, φ_1(r_1) = 2x0 − x1.
  const std::size_t d = 2;
  const std::vector<TensorElement> rel = {commutator(x(d, 0), x(d, 1)), TensorElement::monomial(d, {0, 0})};
  const std::vector<TensorElement> img = {x(d, 1), 2 * x(d, 0) - x(d, 1)};
  GradedMap phi = GradedMap::zero(d, 1, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t t = 0; t < d; ++t) phi.matrix(t, a) = img[a].degree_coords(1)[t];
  std::vector<Vector> rows;
  for (const auto& r : rel) rows.push_back(r.degree_coords(2));
  const SideFactorizer right(rows, d, Side::right);
  const SideFactorizer left(rows, d, Side::left);

  // u = 3 r_0⊗x1 − r_1⊗x0 and its left analogue, built and mapped by hand.
  const TensorElement u = 3 * (rel[0] * x(d, 1)) - rel[1] * x(d, 0);
  const TensorElement u_img = 3 * (img[0] * x(d, 1)) - img[1] * x(d, 0);
  EXPECT_EQ(TensorElement::from_coords(d, 2, apply_graded_map(phi, right, u.degree_coords(3))), u_img);
  const TensorElement v = x(d, 0) * rel[1] + 5 * (x(d, 1) * rel[0]);
  const TensorElement v_img = x(d, 0) * img[1] + 5 * (x(d, 1) * img[0]);
  EXPECT_EQ(TensorElement::from_coords(d, 2, apply_graded_map(phi, left, v.degree_coords(3))), v_img);
  // An element outside R⊗V is rejected.
  EXPECT_THROW(apply_graded_map(phi, right, TensorElement::monomial(d, {1, 1, 1}).degree_coords(3)), input_error);
}

class EchelonProperty : public ::testing::TestWithParam<int> {};

TEST_P(EchelonProperty, RankMatchesDenseAndNormalFormIsCanonical) {
  std::mt19937_64 rng(GetParam());
  const std::size_t n = 12;
  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<Vector> rows;
  for (int i = 0; i < 8; ++i) {
    Vector v(n);
    for (auto& e : v) e = coin(rng) == 0 ? random_nonzero_rational(rng, 5) : Scalar(0);
    rows.push_back(v);
  }
  rows.push_back(add(rows[0], scaled(rows[1], 3)));  // a dependent row
  auto sparse = [](const Vector& v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) s.push_back({i, v[i]});
    return s;
  };
  EchelonBasis forward(n), backward(n);
  for (const auto& r : rows) forward.insert(sparse(r));
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) backward.insert(sparse(*it));
  const std::size_t dense_rank = rank(Matrix::from_rows(rows, n));
  EXPECT_EQ(forward.rank(), dense_rank);
  EXPECT_EQ(backward.rank(), dense_rank);
  Vector probe(n);
  for (auto& e : probe) e = random_rational(rng, 5);
  const auto nf1 = forward.normal_form(sparse(probe));
  const auto nf2 = backward.normal_form(sparse(probe));
  ASSERT_EQ(nf1.size(), nf2.size());
  for (std::size_t i = 0; i < nf1.size(); ++i) {
    EXPECT_EQ(nf1[i].index, nf2[i].index);
    EXPECT_EQ(nf1[i].value, nf2[i].value);
  }
  EXPECT_TRUE(forward.contains(sparse(add(rows[2], scaled(rows[5], -2)))));
  EXPECT_EQ(to_subspace(forward), Subspace::span(rows, n));
}

INSTANTIATE_TEST_SUITE_P(Seeds, EchelonProperty, ::testing::Range(1, 21));
