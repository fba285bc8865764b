#include <gtest/gtest.h>

#include <cmath>

#include "nabla_kit/families.hpp"

using namespace nabla_kit;

namespace {

// Finite-difference estimate from values alone, independent of the analytic partials.
double fd_derivative(const Function1D& f, double y, int order) {
  const auto v = Function1D::from_callable("v", f.domain(), [f](double x) { return f(x); });
  return numeric_derivative(v, y, order);
}

double fd_partial(const Function2D& f, double y, double z, int i, int j) {
  const auto v = Function2D::from_callable("v", f.domain(), [f](double a, double b) { return f(a, b); });
  return numeric_partial(v, y, z, i, j);
}

void expect_close(double got, double ref, double rel, const std::string& what) {
  EXPECT_NEAR(got, ref, rel * std::max(1.0, std::abs(ref))) << what;
}

}  // namespace

TEST(Families1D, AnalyticDerivativesMatchFiniteDifferences) {
  const auto cat = family_catalog_1d();
  const std::vector<std::pair<std::string, double>> cases{
      {"inverse_power", 1.3}, {"shifted_power", 0.8}, {"neg_log", 0.7}, {"neg_log_complement", 2.1},
      {"exp_inverse", 1.4},   {"psi_v", 0.3},         {"phi_v", 0.9}};
  for (const auto& [name, y] : cases) {
    const auto f = cat.make_1d(name);
    for (int k = 1; k <= 3; ++k) expect_close(f.derivative(k, y), fd_derivative(f, y, k), 1e-5, name);
  }
}

TEST(Families1D, ClosedFormsAtSamplePoints) {
  EXPECT_DOUBLE_EQ(family_inverse_power(0.5)(4.0), 0.25);
  EXPECT_DOUBLE_EQ(family_shifted_power(2.0, 1.0)(1.0), 0.2);
  EXPECT_DOUBLE_EQ(family_psi_v(2.0, 1)(0.0), 0.5);
  EXPECT_NEAR(family_phi_v(2.0, 1)(1.0), 0.5 / std::log(2.0), 1e-15);
  // v = 1 uses (-1)^m y^m / m!
  EXPECT_DOUBLE_EQ(family_phi_v(1.0, 3)(2.0), -8.0 / 6.0);
  EXPECT_NEAR(family_neg_log_complement()(2.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(family_exp_inverse().derivative(2, 1.0), std::exp(1.0) * 3.0, 1e-13);
  EXPECT_DOUBLE_EQ(descending_product(0.5, 1), -0.25);
}

TEST(Families1D, ParameterValidation) {
  EXPECT_THROW(family_inverse_power(1.5), ContractViolation);
  EXPECT_THROW(family_psi_v(0.0, 1), ContractViolation);
  EXPECT_THROW(family_phi_v(-1.0, 1), ContractViolation);
  EXPECT_THROW(family_constant(-1.0), ContractViolation);
  const auto cat = family_catalog_1d();
  EXPECT_THROW(cat.find("nope"), ContractViolation);
  EXPECT_THROW(cat.make_1d("psi_v", {{"w", 1.0}}), ContractViolation);
  EXPECT_THROW(cat.make_1d("psi_v", {{"m", 1.5}}), ContractViolation);
  EXPECT_THROW(cat.make_2d("psi_v"), ContractViolation);
}

TEST(Families1D, VerifiedClaimsHoldOnTheirRegion) {
  const auto cat = family_catalog_1d();
  for (const auto& e : cat.entries()) {
    const auto params = cat.resolve(e, {});
    const auto claim = e.claim(params);
    if (!claim.verified) continue;
    const auto f = e.make_1d(params);
    double lo = std::max(claim.region.y.lo, f.domain().lo);
    double hi = std::min(claim.region.y.hi, 6.0);
    if (std::isinf(lo)) lo = -2.0;
    const auto grid = Grid1D::uniform(lo + 0.05, hi, 25);
    const auto v = verify_cm_order(f, grid, std::min(claim.order_y, 5));
    EXPECT_TRUE(v.verified) << e.name << " worst " << v.worst_value << " at " << v.worst_y;
  }
}

TEST(Families1D, NegLogOnlyHoldsBelowOne) {
  const auto f = family_neg_log();
  EXPECT_TRUE(verify_cm_order(f, Grid1D::uniform(0.1, 1.0, 10), 4).verified);
  const auto v = verify_cm_order(f, Grid1D::uniform(0.5, 3.0, 11), 4);
  EXPECT_FALSE(v.verified);
  EXPECT_EQ(v.worst_i, 0);
}

TEST(Families1D, PhiVBelowOneIsRefutedAtLowerOrder) {
  const auto cat = family_catalog_1d();
  const ParamRecord p{{"v", 0.5}, {"m", 3.0}};
  EXPECT_FALSE(cat.find("phi_v").claim(p).verified);
  const auto f = cat.make_1d("phi_v", p);
  const auto v = verify_cm_order(f, Grid1D::uniform(0.0, 2.0, 9), 3);
  EXPECT_FALSE(v.verified);
  // top order keeps its sign
  const auto top = -f.derivative(3, 1.0);
  EXPECT_GT(top, 0.0);
}

TEST(Families2D, AnalyticPartialsMatchFiniteDifferences) {
  const std::vector<Function2D> fs{family_zeta_q(-1.0, 1), family_zeta_q(0.0, 1),
                                   family_zeta_q(0.5, 0),  family_phi_q_2d(0.5, 1),
                                   family_phi_q_2d(1.0, 1), family_psi_q(0.5, 1, 2.0, -2.0),
                                   family_psi_q(0.0, 2, 2.0, -2.0), family_psi_q(2.0, 2, 2.0, -2.0)};
  for (const auto& f : fs)
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        if (i + j == 0) continue;
        expect_close(f.partial(i, j, 0.6, 0.9), fd_partial(f, 0.6, 0.9, i, j), 1e-5,
                     f.name() + " " + std::to_string(i) + std::to_string(j));
      }
}

TEST(Families2D, IntegerBranchClosedForm) {
  // q = 1, M = 1: uv ln^2(uv) / 2
  const auto f = family_psi_q(1.0, 1, 0.0, 0.0);
  const double u = 1.5, v = 2.0;
  EXPECT_NEAR(f(u, v), u * v * std::pow(std::log(u * v), 2) / 2.0, 1e-14);
  // zeta at q = 0, m = 0: (y+z)^2 / 2
  EXPECT_DOUBLE_EQ(family_zeta_q(0.0, 0)(1.0, 2.0), 4.5);
}

TEST(Families2D, ClaimsHoldOnGrids) {
  const auto cat = family_catalog_2d();
  const Grid2D grid{Grid1D::uniform(0.2, 2.0, 7), Grid1D::uniform(0.3, 1.5, 6)};
  for (const auto& [name, p] : std::vector<std::pair<std::string, ParamRecord>>{
           {"zeta_q", {{"q", -0.7}, {"m", 1.0}}},
           {"phi_q", {{"q", -0.5}, {"m", 1.0}}},
           {"psi_q", {{"q", -1.5}, {"M", 2.0}}},
           {"exp_sum", {}}}) {
    const auto claim = cat.find(name).claim(cat.resolve(cat.find(name), p));
    ASSERT_TRUE(claim.all_orders) << name;
    const auto f = cat.make_2d(name, p);
    const auto v = verify_cm_order(f, grid, std::min(claim.order_y, 4), std::min(claim.order_z, 4));
    EXPECT_TRUE(v.verified) << name << " worst " << v.worst_value;
  }
  // positive q: only the top mixed partial keeps its sign
  const auto claim = cat.find("zeta_q").claim({{"q", 2.0}, {"m", 1.0}});
  EXPECT_FALSE(claim.all_orders);
  const auto z = family_zeta_q(2.0, 1);
  EXPECT_FALSE(verify_cm_order(z, grid, 2, 2).verified);
  EXPECT_GT(z.partial(2, 2, 0.5, 0.5), 0.0);
}
