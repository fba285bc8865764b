#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nabla_kit/families.hpp"
#include "nabla_kit/positivity.hpp"
#include "oracles.hpp"

using namespace nabla_kit;

namespace {

Function1D poly(std::vector<double> c) { return Function1D::polynomial(Polynomial{std::move(c)}); }

// T(s) = (s+1)^3 (1-s)^2 and P = T'''. The moments of P against (1-y)^i/i!
// vanish for i = 1, 2 but not for i = 0: int P = T''(1) - T''(-1) = 16 - 0.
Function1D third_derivative_kernel() {
  const auto T = Polynomial::power_of_linear(-1.0, 3) * Polynomial::power_of_linear(1.0, 2);
  return Function1D::polynomial(T.derivative(3));
}

}  // namespace

TEST(RodriguesWeight, MatchesExplicitLegendreSum) {
  for (int M = 0; M <= 6; ++M) {
    const auto w = rodrigues_weight(M);
    for (double x : {-1.0, -0.6, 0.1, 0.75, 1.0}) {
      const double ref = (M % 2 ? 1.0 : -1.0) * oracle::legendre(M + 1, x);
      EXPECT_NEAR(w(x), ref, 1e-12) << M << " " << x;
    }
  }
  const auto shifted = rodrigues_weight(2, 0.0, 4.0);
  EXPECT_NEAR(shifted(1.0), rodrigues_weight(2)(-0.5), 1e-14);
  EXPECT_THROW(rodrigues_weight(11), ContractViolation);
}

TEST(RodriguesWeight, TruncatedMomentClosedForm) {
  for (int M = 0; M <= 4; ++M) {
    const auto w = rodrigues_weight(M);
    for (double s : chebyshev_lobatto(-1.0, 1.0, 21)) {
      const double got = integrate(
          [&](double y) { return w(y) * std::pow(s - y, M) / oracle::factorial(M); }, -1.0, s, {});
      EXPECT_NEAR(got, oracle::rodrigues_truncated_moment(M, s), 1e-10) << M << " " << s;
    }
  }
}

TEST(CertifyIntegral1D, RodriguesCertifiedAndNegationRefuted) {
  for (int M = 0; M <= 4; ++M) {
    const auto c = certify_integral_1d(rodrigues_weight(M), -1.0, 1.0, M);
    EXPECT_TRUE(c.certified()) << M;
    EXPECT_EQ(c.condition("(7)").instances, static_cast<std::size_t>(M) + 1);
    EXPECT_EQ(c.condition("(8)").instances, 21u);
    const auto n = certify_integral_1d(scale(-1.0, rodrigues_weight(M)), -1.0, 1.0, M);
    EXPECT_EQ(n.verdict, Verdict::refuted) << M;
  }
}

TEST(CertifyIntegral1D, ConstantKernelFailsZerothMoment) {
  const auto c = certify_integral_1d(Function1D::constant(1.0), 0.0, 2.0, 1);
  EXPECT_EQ(c.verdict, Verdict::refuted);
  EXPECT_FALSE(c.condition("(7)").pass);
  EXPECT_DOUBLE_EQ(c.condition("(7)").value, 2.0);
  EXPECT_THROW(c.condition("(99)"), ContractViolation);
}

TEST(CertifyIntegral1D, ZerothMomentIsRequired) {
  const auto P = third_derivative_kernel();
  const auto loose = certify_integral_1d(P, -1.0, 1.0, 2, 21, MomentIndexing::from_one);
  EXPECT_TRUE(loose.certified());
  // ...yet the constant -1, which is 2-nabla-convex, gets a negative value
  const double value = integrate([&](double y) { return -P(y); }, -1.0, 1.0, {});
  EXPECT_NEAR(value, -16.0, 1e-12);
  const auto strict = certify_integral_1d(P, -1.0, 1.0, 2, 21, MomentIndexing::from_zero);
  EXPECT_EQ(strict.verdict, Verdict::refuted);
  EXPECT_NEAR(strict.condition("(7)").value, 16.0, 1e-12);
}

TEST(CertifyIntegral1D, InconclusiveNearTolerance) {
  // zeroth moment 5e-10: above tol, below 10 tol
  const auto P = sum(rodrigues_weight(1), Function1D::constant(2.5e-10));
  const auto c = certify_integral_1d(P, -1.0, 1.0, 1);
  EXPECT_EQ(c.verdict, Verdict::inconclusive);
}

TEST(CertifyDoubleSum, MixedDifferenceWeightIsCertified) {
  const Matrix p{{1, -1}, {-1, 1}};
  const Grid2D g{Grid1D{0, 1}, Grid1D{0, 1}};
  const auto c = certify_double_sum(p, g, 1, 1);
  EXPECT_TRUE(c.certified());
  EXPECT_EQ(c.conditions.size(), 4u);
  const Matrix q{{1, 0}, {0, 1}};
  EXPECT_EQ(certify_double_sum(q, g, 1, 1).verdict, Verdict::refuted);
}

TEST(CertifyDoubleSum, TensorOfCertifiedSequencesIsCertified) {
  // second differences in each direction on non-uniform grids
  const Grid1D y{0.0, 0.4, 1.5}, z{1.0, 1.3, 2.0};
  auto second = [](const Grid1D& g) {
    const double h1 = g[1] - g[0], h2 = g[2] - g[1];
    return std::vector<double>{1.0 / h1, -(1.0 / h1 + 1.0 / h2), 1.0 / h2};
  };
  const auto a = second(y), b = second(z);
  Matrix p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(i, j) = a[i] * b[j];
  EXPECT_TRUE(certify_double_sum(p, {y, z}, 2, 2).certified());
}

TEST(CertifyDoubleIntegral, TensorRodriguesKernel) {
  for (int M = 0; M <= 2; ++M) {
    const auto rect = Rectangle::closed(-1, 1, -1, 1);
    FunctionalSpec spec{rodrigues_kernel(M, M, rect), rect, M, M, {}};
    EXPECT_TRUE(certify_double_integral(spec, 11, 11).certified()) << M;
    FunctionalSpec neg{scale(-1.0, spec.kernel), rect, M, M, {}};
    EXPECT_EQ(certify_double_integral(neg, 11, 11).verdict, Verdict::refuted) << M;
  }
  const auto rect = Rectangle::closed(0, 2, 1, 2);
  FunctionalSpec shifted{rodrigues_kernel(1, 0, rect), rect, 1, 0, {}};
  EXPECT_TRUE(certify_double_integral(shifted, 11, 11).certified());
}

TEST(CertifyDoubleIntegral, GenericPathAgreesWithTensorPath) {
  const auto rect = Rectangle::closed(-1, 1, -1, 1);
  const auto K = rodrigues_kernel(1, 1, rect);
  const auto generic = Function2D("k", Rectangle{}, 0, 0,
                                  [K](int, int, double y, double z) { return K(y, z); });
  FunctionalSpec a{K, rect, 1, 1, {8, 2}};
  FunctionalSpec b{generic, rect, 1, 1, {8, 2}};
  const auto ca = certify_double_integral(a, 5, 5);
  const auto cb = certify_double_integral(b, 5, 5);
  EXPECT_EQ(ca.verdict, cb.verdict);
  for (std::size_t k = 0; k < ca.conditions.size(); ++k)
    EXPECT_NEAR(ca.conditions[k].value, cb.conditions[k].value, 1e-12) << ca.conditions[k].label;
}

TEST(PositivityStress, CertifiedWeightsStayNonnegative) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> Q(-2.0, 2.0), A(-2.0, 0.0), C(0.1, 3.0);

  const Matrix p{{1, -1}, {-1, 1}};
  const Grid2D g{Grid1D{0.2, 1.1}, Grid1D{-0.3, 0.5}};
  std::vector<Function2D> samples;
  for (int k = 0; k < 60; ++k) {
    if (k % 2) {
      samples.push_back(family_zeta_q(Q(rng), 0));
    } else {
      samples.push_back(family_catalog_2d().make_2d("exp_sum", {{"alpha", A(rng)}, {"beta", A(rng)}, {"c", C(rng)}}));
    }
  }
  EXPECT_GE(positivity_stress(p, g, samples).worst, -1e-9);

  for (int M = 0; M <= 2; ++M) {
    const auto rect = Rectangle::closed(-1, 1, -1, 1);
    FunctionalSpec spec{rodrigues_kernel(M, M, rect), rect, M, M, {}};
    std::vector<Function2D> fs;
    for (int k = 0; k < 50; ++k) fs.push_back(family_zeta_q(Q(rng), M));
    EXPECT_GE(positivity_stress(spec, fs).worst, -1e-9) << M;

    std::vector<Function1D> gs;
    for (int k = 0; k < 50; ++k) gs.push_back(family_psi_v(C(rng), M));
    EXPECT_GE(positivity_stress(rodrigues_weight(M), -1.0, 1.0, gs).worst, -1e-9) << M;
  }
}

TEST(PositivityStress, UncertifiedWeightHasNegativeWitness) {
  const auto P = third_derivative_kernel();
  const auto r = positivity_stress(P, -1.0, 1.0, {family_psi_v(1.0, 2), scale(-1.0, Function1D::constant(1.0))});
  EXPECT_EQ(r.worst_index, 1u);
  EXPECT_NEAR(r.worst, -16.0, 1e-12);
}

TEST(EvaluateFunctional, SeparablePathMatchesGenericAndIsSchemeStable) {
  const auto rect = Rectangle::closed(-1, 1, -1, 1);
  const auto f = family_psi_q(0.5, 1, 2.0, -2.0);
  ASSERT_TRUE(f.factors().has_value());
  const auto flat = Function2D("flat", f.domain(), 0, 0, [f](int, int, double y, double z) { return f(y, z); });
  const FunctionalSpec spec{rodrigues_kernel(1, 1, rect), rect, 1, 1, {}};
  const double sep = evaluate_functional(spec, f);
  EXPECT_NEAR(evaluate_functional(spec, flat), sep, 1e-9 * std::abs(sep));

  // order 4 near an integer exponent: the one-axis-at-a-time value barely moves with the rule
  const auto g = family_psi_q(1.044, 4, 2.0, -2.0);
  const FunctionalSpec a{rodrigues_kernel(4, 4, rect), rect, 4, 4, {16, 8}};
  const FunctionalSpec b{rodrigues_kernel(4, 4, rect), rect, 4, 4, {32, 16}};
  const double va = evaluate_functional(a, g), vb = evaluate_functional(b, g);
  EXPECT_GT(va, 0.0);
  EXPECT_NEAR(va, vb, 1e-10 * va);
}
