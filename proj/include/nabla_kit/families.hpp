#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/grid.hpp"

namespace nabla_kit {

// Univariate families ----------------------------------------------------

/// e^{-v y} / v^m, v > 0.
Function1D family_psi_v(double v, int m);
/// v^{-y} / (ln v)^m for v != 1, and (-1)^m y^m / m! at v = 1 exactly.
Function1D family_phi_v(double v, int m);

/// c (c >= 0)
Function1D family_constant(double c);
/// alpha / y^{1 - alpha}, 0 <= alpha <= 1, y > 0
Function1D family_inverse_power(double alpha);
/// 1 / (y + alpha^2)^beta, alpha >= 0, beta >= 0, y > 0
Function1D family_shifted_power(double alpha, double beta);
/// -ln y, y > 0
Function1D family_neg_log();
/// -ln(1 - 1/y), y > 1
Function1D family_neg_log_complement();
/// e^{1/y}, y > 0
Function1D family_exp_inverse();

// Bivariate families -----------------------------------------------------

/// e^{q(y+z)} / q^{2m+2}; (y+z)^{2m+2} / (2m+2)! at q = 0.
Function2D family_zeta_q(double q, int m);
/// (yz)^q / [q(q-1)...(q-m)]^2, with the squared-log branch at integer
/// q in {0..m}. Domain y, z > 0.
Function2D family_phi_q_2d(double q, int m);
/// [(y+k1)(z-k2)]^q / [q(q-1)...(q-M)]^2, with the branch
/// [(y+k1)(z-k2)]^q [ln (y+k1)(z-k2)]^2 / (2 [q!(M-q)!]^2) at integer q in {0..M}.
/// Domain y + k1 > 0, z - k2 > 0.
Function2D family_psi_q(double q, int M, double k1, double k2);

/// q(q-1)...(q-M) as an explicit product.
double descending_product(double q, int M);

// Catalog ----------------------------------------------------------------

/// What a catalog member asserts about its derivative signs.
struct MonotonicityClaim {
  int order_y = 0;
  int order_z = 0;
  /// true: (-1)^{i+j} f_(i,j) >= 0 for every i <= order_y, j <= order_z.
  /// false: only the top-order sign (-1)^{order_y+order_z} f_(order_y,order_z) >= 0.
  bool all_orders = true;
  Rectangle region;   // where the claim is made (z ignored for arity 1)
  bool verified = true;
  std::string note;
};

struct CatalogEntry {
  std::string name;
  int arity = 1;
  std::string description;
  ParamRecord defaults;
  std::function<Function1D(const ParamRecord&)> make_1d;
  std::function<Function2D(const ParamRecord&)> make_2d;
  std::function<MonotonicityClaim(const ParamRecord&)> claim;
};

class FamilyCatalog {
 public:
  explicit FamilyCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  /// Throws ContractViolation for an unknown name.
  const CatalogEntry& find(const std::string& name) const;
  bool contains(const std::string& name) const;
  /// Missing parameters fall back to the entry defaults; unknown ones are rejected.
  ParamRecord resolve(const CatalogEntry& entry, const ParamRecord& params) const;
  Function1D make_1d(const std::string& name, const ParamRecord& params = {}) const;
  Function2D make_2d(const std::string& name, const ParamRecord& params = {}) const;

 private:
  std::vector<CatalogEntry> entries_;
};

/// Univariate members: constant, inverse_power, shifted_power, neg_log,
/// neg_log_complement, exp_inverse, psi_v, phi_v.
FamilyCatalog family_catalog_1d();
/// Bivariate members: zeta_q, phi_q, psi_q, exp_sum.
FamilyCatalog family_catalog_2d();

// Complete-monotonicity verification -------------------------------------

struct CmVerdict {
  bool verified = false;
  double worst_value = 0.0;  // min over nodes/orders of (-1)^{i+j} f_(i,j)
  double worst_y = 0.0;
  double worst_z = 0.0;
  int worst_i = 0;
  int worst_j = 0;
  std::size_t checks = 0;
};

/// Checks (-1)^i f^(i)(y) >= -abs_tol for i = 0..m at every node.
CmVerdict verify_cm_order(const Function1D& f, const Grid1D& grid, int m,
                          const TolerancePolicy& tol = {});
/// Checks (-1)^{i+j} f_(i,j) >= -abs_tol for i <= m, j <= n at every node.
CmVerdict verify_cm_order(const Function2D& f, const Grid2D& grid, int m, int n,
                          const TolerancePolicy& tol = {});

}  // namespace nabla_kit
