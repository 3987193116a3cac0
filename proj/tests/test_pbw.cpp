#include <pbwforge/lie.hpp>
#include <pbwforge/yang_mills.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pbwforge;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DeformationMap ym_map(const ym::CurrentParameters& p, const Metric& g) {
  return ym::current_to_deformation(ym::current_from_parameters(p, g), ym::build_ym(g));
}

ym::CurrentParameters regular(std::uint64_t seed, std::size_t d = 3) {
  std::mt19937_64 rng(seed);
  return ym::random_regular_parameters(d, rng);
}

/// Random invertible matrix by rejection.
Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 4);
    if (rank(m) == n) return m;
  }
}

}  // namespace

// Quadratic case: the conditions reduce to the Jacobi identity.

TEST(QuadraticPbw, So3BracketIsPbw) {
  const DeformationMap d = lie::bracket_deformation(lie::so3());
  const PbwVerdict v = pbw_verdict(d);
  EXPECT_TRUE(v.j1_holds);
  ASSERT_EQ(v.j2.size(), 1u);
  EXPECT_EQ(v.j2[0], true);
  EXPECT_EQ(v.j3, true);
  EXPECT_TRUE(v.overall);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(QuadraticPbw, BrokenBracketWitnessIsTheJacobiator) {
  const lie::Bracket br = lie::broken();
  const PbwVerdict v = pbw_verdict(lie::bracket_deformation(br));
  ASSERT_FALSE(v.overall);
  EXPECT_EQ(v.failed_condition, "J2[1]");
  ASSERT_TRUE(v.witness.has_value());
  // Hand computation: the Jacobiator of this bracket is e_1.
  const auto jac = lie::jacobiators(br);
  ASSERT_EQ(jac.size(), 1u);
  EXPECT_EQ(jac[0], (Vector{0, 1, 0}));
  const Vector w = v.witness->degree_coords(1);
  EXPECT_EQ(rank(Matrix::from_rows({w, jac[0]}, 3)), 1u);
  EXPECT_EQ(v.witness->max_degree(), 1u);
}

class RandomBracket : public ::testing::TestWithParam<int> {};

TEST_P(RandomBracket, VerdictEqualsJacobi) {
  std::mt19937_64 rng(GetParam());
  const lie::Bracket br = lie::random_bracket(3, rng);
  EXPECT_EQ(pbw_verdict(lie::bracket_deformation(br)).overall, lie::satisfies_jacobi(br));
}

TEST_P(RandomBracket, LieBracketsOnFourGeneratorsPass) {
  // Every bracket of the form [x, y] = f(x)y − f(y)x is Lie (a solvable
  // algebra); a random linear form f gives a guaranteed positive case.
  std::mt19937_64 rng(GetParam());
  const std::size_t d = 4;
  Vector f(d);
  for (auto& c : f) c = random_rational(rng, 5);
  lie::Bracket br = lie::Bracket::zero(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      br.set(i, j, j, f[i]);
      Scalar existing = br.at(i, j, i);
      br.set(i, j, i, existing - f[j]);
    }
  ASSERT_TRUE(lie::satisfies_jacobi(br));
  EXPECT_TRUE(pbw_verdict(lie::bracket_deformation(br)).overall);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomBracket, ::testing::Range(1, 21));

TEST(QuadraticPbw, WeylAlgebraConstantTermsPass) {
  // φ_1 = 0, φ_0 = a constant antisymmetric form: Weyl/Heisenberg type, PBW.
  const AlgebraPresentation a = lie::symmetric_algebra(4);
  std::vector<TensorElement> images;
  for (std::size_t k = 0; k < a.relation_count(); ++k) images.push_back(TensorElement::unit(4, make_scalar(static_cast<long>(k) + 1)));
  EXPECT_TRUE(pbw_verdict(DeformationMap::from_images(a, images)).overall);
}

TEST(QuadraticPbw, OracleMatchesSymmetricAlgebraDimensions) {
  const OracleResult o = brute_force_oracle(lie::bracket_deformation(lie::so3()), 6, 7);
  EXPECT_EQ(o.verdict, OracleVerdict::consistent);
  for (std::size_t n = 0; n <= 6; ++n) {
    const std::size_t graded = o.quotient_dims[n] - (n ? o.quotient_dims[n - 1] : 0);
    EXPECT_EQ(graded, binomial(n + 2, 2)) << n;
  }
  const OracleResult bad = brute_force_oracle(lie::bracket_deformation(lie::broken()), 4, 5);
  EXPECT_EQ(bad.verdict, OracleVerdict::fail);
}

// Cubic Yang-Mills currents.

TEST(CubicPbw, ZeroDeformationAlwaysPasses) {
  for (std::size_t d = 2; d <= 4; ++d) EXPECT_TRUE(pbw_verdict(DeformationMap(ym::build_ym(Metric::euclidean(d)))).overall);
  EXPECT_TRUE(pbw_verdict(DeformationMap(build_antisymmetrizer_relations(4, 3))).overall);
}

TEST(CubicPbw, RegularFamilyPasses) {
  const Metric g = Metric::euclidean(3);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PbwVerdict v = pbw_verdict(ym_map(regular(seed), g));
    EXPECT_TRUE(v.overall) << seed << " " << v.failed_condition;
    EXPECT_EQ(v.j2.size(), 2u);
  }
}

TEST(CubicPbw, NoncyclicTopPartFailsFirstCondition) {
  const Metric g = Metric::euclidean(3);
  const AlgebraPresentation a = ym::build_ym(g);
  ym::Current c = ym::Current::zero(3);
  c.j3[tidx(3, 0, 0, 1)] = 1;
  const PbwVerdict v = pbw_verdict(ym::current_to_deformation(c, a));
  EXPECT_FALSE(v.overall);
  EXPECT_FALSE(v.j1_holds);
  EXPECT_EQ(v.failed_condition, "J1");
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_FALSE(v.witness->is_zero());
  // Independent membership test: the witness is not in R.
  EXPECT_FALSE(a.relation_space().contains(v.witness->degree_coords(3)));
  // Lower conditions are not applicable.
  for (const auto& x : v.j2) EXPECT_FALSE(x.has_value());
  EXPECT_FALSE(v.j3.has_value());
}

TEST(CubicPbw, EachSideConditionIsDetectedAtItsLevel) {
  const Metric g = Metric::euclidean(3);
  ym::CurrentParameters base = ym::CurrentParameters::zero(3);
  base.b = {1, 0, 0};

  ym::CurrentParameters p3 = base;
  fill_symmetric3(p3.s3, 3, 0, 0, 0, 1, 1);  // s^{00ρ} b_ρ = 1
  EXPECT_EQ(pbw_verdict(ym_map(p3, g)).failed_condition, "J2[2]");

  ym::CurrentParameters p2 = base;
  p2.s2[tidx(3, 0, 0)] = 1;
  EXPECT_EQ(pbw_verdict(ym_map(p2, g)).failed_condition, "J2[1]");

  ym::CurrentParameters p1 = base;
  p1.s1 = {1, 0, 0};  // j^ρ = b^ρ
  const PbwVerdict v1 = pbw_verdict(ym_map(p1, g));
  EXPECT_EQ(v1.failed_condition, "J3");
  ASSERT_TRUE(v1.witness.has_value());
  EXPECT_EQ(v1.witness->max_degree(), 0u);

  // Moving the same tensors off b makes them harmless.
  ym::CurrentParameters ok = base;
  fill_symmetric3(ok.s3, 3, 1, 2, 2, 1, 1);
  ok.s2[tidx(3, 1, 2)] = ok.s2[tidx(3, 2, 1)] = 4;
  ok.s1 = {0, 1, -1};
  EXPECT_TRUE(pbw_verdict(ym_map(ok, g)).overall);
}

TEST(CubicPbw, SideConditionsReportMatchesVerdict) {
  const Metric g = Metric::minkowski(3);
  ym::CurrentParameters p = ym::CurrentParameters::zero(3);
  p.b = {2, 1, 0};
  p.s1 = {1, 0, 0};  // s·b = 2
  EXPECT_FALSE(ym::side_conditions(p).all());
  EXPECT_FALSE(pbw_verdict(ym_map(p, g)).overall);
  p.s1 = {1, -2, 5};
  EXPECT_TRUE(ym::side_conditions(p).all());
  EXPECT_TRUE(pbw_verdict(ym_map(p, g)).overall);
}

class DeformationInvariance : public ::testing::TestWithParam<int> {};

TEST_P(DeformationInvariance, ScalingAndBasisChangeKeepTheVerdict) {
  std::mt19937_64 rng(GetParam());
  const Metric g = Metric::random(3, rng);
  ym::CurrentParameters p = ym::random_regular_parameters(3, rng);
  if (GetParam() % 2 == 0) p.s1 = p.b;  // breaks s·b = 0 when b·b ≠ 0 (b^ρ b_ρ uses no metric here)
  const DeformationMap d = ym_map(p, g);
  const bool verdict = pbw_verdict(d).overall;
  EXPECT_EQ(verdict, ym::side_conditions(p).all());
  EXPECT_EQ(pbw_verdict(d.rescaled(random_nonzero_rational(rng, 5))).overall, verdict);
  const DeformationMap rebased = d.rebased(random_invertible(3, rng));
  EXPECT_EQ(pbw_verdict(rebased).overall, verdict);
  // A cyclic reshuffle of the relation basis.
  Matrix cyc(3, 3);
  cyc(0, 1) = cyc(1, 2) = cyc(2, 0) = 1;
  EXPECT_EQ(pbw_verdict(d.rebased(cyc)).overall, verdict);
}

INSTANTIATE_TEST_SUITE_P(Seeds, DeformationInvariance, ::testing::Range(1, 13));

TEST(Oracle, RegularAndViolatingCurrents) {
  const Metric g = Metric::euclidean(3);
  const OracleResult good = brute_force_oracle(ym_map(regular(3), g), 5, 6);
  EXPECT_EQ(good.verdict, OracleVerdict::consistent);
  EXPECT_EQ(good.quotient_dims, good.expected_dims);
  EXPECT_EQ(good.expected_dims, (std::vector<std::size_t>{1, 4, 13, 37, 101, 269}));

  ym::CurrentParameters p = ym::CurrentParameters::zero(3);
  p.b = {1, 0, 0};
  p.s1 = {1, 0, 0};
  const OracleResult bad = brute_force_oracle(ym_map(p, g), 5, 6);
  EXPECT_EQ(bad.verdict, OracleVerdict::fail);
  ASSERT_TRUE(bad.failure_degree.has_value());
  EXPECT_LT(bad.quotient_dims[*bad.failure_degree], bad.expected_dims[*bad.failure_degree]);
  EXPECT_THROW(brute_force_oracle(ym_map(p, g), 5, 4), input_error);
}

TEST(Conservation, RegularCurrentsAreConservedAndViolatorsAreNot) {
  const Metric g = Metric::minkowski(3);
  EXPECT_TRUE(conservation_residual(ym_map(regular(8), g)).conserved);
  ym::CurrentParameters p = regular(8);
  p.s1 = g.raise(p.b);
  if (dot(p.s1, p.b) != 0) {
    const ConservationResult c = conservation_residual(ym_map(p, g));
    EXPECT_FALSE(c.conserved);
    EXPECT_FALSE(c.residual.is_zero());
  }
  // Lie data is not of the cubic shape.
  EXPECT_THROW(conservation_residual(lie::bracket_deformation(lie::so3())), input_error);
}

TEST(Conservation, DivergenceIsTheTopOverlapCombination) {
  // Σ_μ [∇_μ, J^μ] differs from −Σ_μ [∇_μ, W^μ − J^μ] by Σ_μ [∇_μ, W^μ] = 0,
  // which is the overlap identity W^ρ⊗∇_ρ = ∇_ρ⊗W^ρ.
  const Metric g = Metric::euclidean(3);
  const AlgebraPresentation a = ym::build_ym(g);
  TensorElement total(3);
  for (std::size_t mu = 0; mu < 3; ++mu)
    total += commutator(TensorElement::generator(3, static_cast<Letter>(mu)), a.relation(mu));
  EXPECT_TRUE(total.is_zero());
}
