#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/grid.hpp"

namespace nabla_kit {

/// Both sides of an identity. `rhs` is the compensated sum of `block_values`
/// taken in the listed order.
struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<std::pair<std::string, double>> block_values;
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // abs_residual / max(1, |lhs|, |rhs|)

  double block(const std::string& label) const;
};

IdentityReport make_identity_report(double lhs,
                                    std::vector<std::pair<std::string, double>> blocks);

// Coefficients shared by the discrete identities and the certifier.
// All indices are 1-based, as in y_1 ... y_M.

/// sum_{j=1}^{M-k} p_j (y_M - y_j)^{k}
double boundary_coefficient(std::span<const double> p, const Grid1D& y, int k);
/// sum_{j=1}^{k} p_j (y_{k+m-1} - y_j)^{m-1}
double remainder_coefficient(std::span<const double> p, const Grid1D& y, int m, int k);

/// sum_{s<=M-t} sum_{r<=N-k} p_sr (z_N - z_r)^{k} (y_M - y_s)^{t}
double coeff_boundary_boundary(const Matrix& p, const Grid2D& g, int t, int k);
/// sum_{s<=t} sum_{r<=N-k} p_sr (z_N - z_r)^{k} (y_{t+m-1} - y_s)^{m-1}
double coeff_remainder_boundary(const Matrix& p, const Grid2D& g, int m, int t, int k);
/// sum_{s<=M-t} sum_{r<=k} p_sr (z_{k+n-1} - z_r)^{n-1} (y_M - y_s)^{t}
double coeff_boundary_remainder(const Matrix& p, const Grid2D& g, int n, int t, int k);
/// sum_{s<=t} sum_{r<=k} p_sr (y_{t+m-1} - y_s)^{m-1} (z_{k+n-1} - z_r)^{n-1}
double coeff_remainder_remainder(const Matrix& p, const Grid2D& g, int m, int n, int t, int k);

/// Weighted sum of a sequence split into k-th backward differences at the
/// tail and m-th differences along the sequence. Requires 1 <= m <= M.
IdentityReport seq_identity(std::span<const double> p, std::span<const double> a, int m);

/// Same split for samples of f on an arbitrary increasing grid, using
/// nabla divided differences.
IdentityReport func_identity(std::span<const double> p, const Function1D& f, const Grid1D& y,
                             int m);
IdentityReport func_identity(std::span<const double> p, std::span<const double> values,
                             const Grid1D& y, int m);

/// Integral of P f over [a, b] as Taylor moments at b plus the truncated
/// kernel integrated against (-1)^{m+1} f^(m+1).
IdentityReport integral_identity_1d(const Function1D& P, const Function1D& f, double a, double b,
                                    int m, const QuadratureScheme& scheme = {});

/// Four-block split of sum_ij p_ij f(y_i, z_j) for order (m, n).
IdentityReport double_sum_identity(const Matrix& p, const Function2D& f, const Grid2D& grid, int m,
                                   int n);
IdentityReport double_sum_identity(const Matrix& p, const Matrix& values, const Grid2D& grid,
                                   int m, int n);

/// The same split for f(y_i) g(z_j), built from one-dimensional differences.
IdentityReport separable_double_sum_identity(const Matrix& p, const Function1D& f,
                                             const Function1D& g, const Grid2D& grid, int m,
                                             int n);

/// Double integral of P f over the rectangle expanded at the upper corner
/// (b, d). Kernels with tensor factors are integrated one axis at a time
/// unless `allow_separable` is false.
IdentityReport double_integral_identity(const Function2D& P, const Function2D& f,
                                        const Rectangle& rect, int M, int N,
                                        const QuadratureScheme& scheme = {},
                                        bool allow_separable = true);

/// The expansion anchored at the lower corner (a, c), without sign factors.
IdentityReport corner_double_integral_identity(const Function2D& P, const Function2D& f,
                                               const Rectangle& rect, int M, int N,
                                               const QuadratureScheme& scheme = {},
                                               bool allow_separable = true);

}  // namespace nabla_kit
