#include <pbwforge/yang_mills.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pbwforge;

namespace {

std::vector<Metric> metrics(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {Metric::euclidean(d), Metric::minkowski(d), Metric::random(d, rng), Metric::random(d, rng)};
}

}  // namespace

TEST(Metric, InverseAndValidation) {
  Matrix g(2, 2);
  g(0, 0) = 2;
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = 1;
  const Metric m = Metric::from_lower(g);
  EXPECT_EQ(m.lower() * m.upper(), Matrix::identity(2));
  EXPECT_EQ(m.up(0, 1), -1);
  Matrix degenerate(2, 2);
  degenerate(0, 0) = 1;
  degenerate(0, 1) = degenerate(1, 0) = 2;
  degenerate(1, 1) = 4;
  EXPECT_THROW(Metric::from_lower(degenerate), input_error);
  Matrix asym = Matrix::identity(2);
  asym(0, 1) = 1;
  EXPECT_THROW(Metric::from_lower(asym), input_error);
  EXPECT_EQ(Metric::minkowski(3).down(0, 0), -1);
}

TEST(YangMills, RelationCoefficientsByHand) {
  // Euclidean s = 1: W^{0λμν} = δ^{0λ}δ^{μν} + δ^{0ν}δ^{λμ} − 2δ^{0μ}δ^{λν}.
  const Vector w = ym::relation_coefficients(Metric::euclidean(2));
  EXPECT_EQ(w[tidx(2, 0, 0, 1, 1)], 1);   // λ=0, μ=ν=1
  EXPECT_EQ(w[tidx(2, 0, 1, 1, 0)], 1);   // ν=0, λ=μ=1
  EXPECT_EQ(w[tidx(2, 0, 1, 0, 1)], -2);  // μ=0, λ=ν=1
  EXPECT_EQ(w[tidx(2, 0, 0, 0, 0)], 0);   // 1 + 1 − 2
}

TEST(YangMills, CommutatorFormSpansTheRelations) {
  for (const Metric& g : metrics(3, 5)) {
    const AlgebraPresentation a = ym::build_ym(g);
    std::vector<Vector> rows;
    for (const auto& t : ym::commutator_form(g)) rows.push_back(t.degree_coords(3));
    EXPECT_EQ(Subspace::span(rows, 27), a.relation_space());
  }
}

TEST(YangMills, StructuralIdentitiesForAllRanksAndMetrics) {
  for (std::size_t d = 2; d <= 4; ++d)
    for (const Metric& g : metrics(d, 10 + d)) {
      const auto rep = ym::verify_identities(g);
      EXPECT_TRUE(rep.cyclic);
      EXPECT_TRUE(rep.w_two_sided);
      EXPECT_TRUE(rep.cyclic_sum);
      EXPECT_TRUE(rep.relations_independent);
      EXPECT_EQ(rep.overlap_dim, 1u);
      EXPECT_TRUE(rep.w_spans_overlap);
    }
}

TEST(YangMills, PerturbedCoefficientsBreakTheIdentities) {
  const Metric g = Metric::euclidean(3);
  Vector w = ym::relation_coefficients(g);
  w[tidx(3, 0, 1, 2, 0)] += 1;
  const auto rep = ym::verify_identities(w, 3);
  EXPECT_FALSE(rep.cyclic);
  EXPECT_FALSE(rep.cyclic_sum);
  EXPECT_FALSE(rep.all());
}

TEST(YangMills, RegularFamilyIsClosedUnderItsOwnSideConditions) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    const auto p = ym::random_regular_parameters(3, rng);
    EXPECT_TRUE(ym::side_conditions(p).all());
    EXPECT_NO_THROW(p.validate());
  }
}

TEST(YangMills, CurrentComponentsFollowTheFamilyFormula) {
  // b = e_0, everything else zero, Euclidean: j^{αβγ} = δ^{α0}δ^{βγ} − δ^{αγ}δ^{β0}.
  const Metric g = Metric::euclidean(3);
  ym::CurrentParameters p = ym::CurrentParameters::zero(3);
  p.b = {1, 0, 0};
  const ym::Current c = ym::current_from_parameters(p, g);
  EXPECT_EQ(c.j3[tidx(3, 0, 1, 1)], 1);
  EXPECT_EQ(c.j3[tidx(3, 1, 0, 1)], -1);
  EXPECT_EQ(c.j3[tidx(3, 0, 0, 0)], 0);
  EXPECT_TRUE(is_zero(c.j2));
  // The antisymmetric part enters j^{αβ} as −½ ω^{αβρ} b_ρ.
  fill_symmetric3(p.omega3, 3, 1, 2, 0, 2, -1);
  const ym::Current c2 = ym::current_from_parameters(p, g);
  EXPECT_EQ(c2.j2[tidx(3, 1, 2)], -1);
  EXPECT_EQ(c2.j2[tidx(3, 2, 1)], 1);
  // J^ρ places ρ last.
  EXPECT_EQ(c.element(1).coefficient({0, 1}), 1);
}

TEST(YangMills, ParametersAreValidated) {
  ym::CurrentParameters p = ym::CurrentParameters::zero(3);
  p.omega3[tidx(3, 0, 1, 2)] = 1;
  EXPECT_THROW(p.validate(), input_error);
  p = ym::CurrentParameters::zero(3);
  p.s2[tidx(3, 0, 1)] = 1;
  EXPECT_THROW(p.validate(), input_error);
  EXPECT_THROW(ym::build_ym(Metric::euclidean(1)), input_error);
}

TEST(YangMills, PhysicsCurrentsAreRegularExactlyUnderTheirConstraints) {
  const Metric g = Metric::minkowski(3);
  const AlgebraPresentation a = ym::build_ym(g);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 6; ++i) {
    const Vector b = ym::random_covector(3, rng, 5);
    // In three generators ω^{λμν} is a multiple of ε, so b_λ ω^{λμν} = 0 forces ω = 0 when b ≠ 0.
    Vector omega(27);
    if (i % 3 == 1) fill_symmetric3(omega, 3, 0, 1, 2, random_nonzero_rational(rng, 5), -1);
    Vector s1 = ym::random_covector(3, rng, 5);
    if (i % 3 == 0) {
      // project s onto b^⊥
      const Scalar t = dot(s1, b) / dot(b, b);
      s1 = add(s1, scaled(b, -t));
    }
    const auto pc = ym::physics_current(b, omega, s1, g);
    const PbwVerdict v = pbw_verdict(ym::current_to_deformation(pc.current, a));
    EXPECT_EQ(v.overall, pc.constraints_hold()) << i;
    EXPECT_EQ(conservation_residual(ym::current_to_deformation(pc.current, a)).conserved, pc.constraints_hold()) << i;
  }
}
