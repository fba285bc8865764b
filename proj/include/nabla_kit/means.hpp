#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/positivity.hpp"

namespace nabla_kit {

/// (-1)^{M+N} y^{M+1} z^{N+1} / ((M+1)! (N+1)!), as a tensor product.
Function2D g0(int M, int N);

/// A ratio of functional values compared with the range of a pointwise
/// quantity over a uniform grid on the rectangle.
struct BracketResult {
  double ratio = 0.0;
  double range_min = 0.0;
  double range_max = 0.0;
  bool bracketed = false;
  double witness_y = 0.0;  // grid point whose value is closest to `ratio`
  double witness_z = 0.0;
  double witness_value = 0.0;
  std::size_t grid = 0;
};

/// Lambda(f) / Lambda(G0) against the range of (-1)^{M+N} f_(M+1,N+1).
/// The functional is expected to be certified. Throws NumericalError when
/// Lambda(G0) <= abs_tol.
BracketResult mvt_localize(const FunctionalSpec& spec, const Function2D& f, std::size_t grid = 41,
                           const TolerancePolicy& tol = {});

/// Lambda(f) / Lambda(g) against the range of f_(M+1,N+1) / g_(M+1,N+1).
/// Throws NumericalError when |Lambda(g)| <= abs_tol and DomainError when
/// g_(M+1,N+1) vanishes on the grid.
BracketResult cauchy_ratio(const FunctionalSpec& spec, const Function2D& f, const Function2D& g,
                           std::size_t grid = 41, const TolerancePolicy& tol = {});

struct PowerMeanResult {
  double value = 0.0;  // eta * zeta
  double lower = 0.0;  // min of yz over the rectangle
  double upper = 0.0;
  bool bracketed = false;
  double lambda_p = 0.0;  // Lambda((yz)^{p+1})
  double lambda_q = 0.0;
};

/// eta zeta from the power pair (yz)^{p+1}, (yz)^{q+1}. Requires M = N, a
/// rectangle in the open positive quadrant, p != q and p, q outside
/// {-1, 0, ..., M-1}.
PowerMeanResult power_mean(const FunctionalSpec& spec, double p, double q,
                           const TolerancePolicy& tol = {});

/// Shifts k1 = 1 + |a|, k2 = c - 1, which keep y + k1 and z - k2 at least 1.
std::pair<double, double> default_shifts(const Rectangle& rect);

/// Exponents within this distance of an integer in {0..M} use the log branch.
inline constexpr double kBranchSnap = 1e-6;
double snap_exponent(double q, int M);

/// Lambda(psi^(q)) with the given shifts. Requires M = N.
double lambda_psi(const FunctionalSpec& spec, double q, double k1, double k2);

struct MeanParams {
  FunctionalSpec functional;
  double k1 = 0.0;
  double k2 = 0.0;
};

/// (Lambda psi^(s) / Lambda psi^(t))^{1/(s-t)}; for s = t the logarithmic
/// derivative in q, by central differences with one Richardson step.
double m_st_mean(const MeanParams& params, double s, double t, double step = 1e-4);

struct GramResult {
  std::vector<double> exponents;
  Matrix matrix;  // Lambda(psi^((q_i + q_j) / 2))
  PsdReport psd;
};

struct GramSpec {
  std::vector<double> exponents;
  MeanParams params;
};

GramResult gram_test(const GramSpec& spec, const TolerancePolicy& tol = {});

struct LyapunovResult {
  bool applicable = false;  // all three Lambda values positive
  bool holds = false;       // residual >= -abs_tol
  double residual = 0.0;
  double lambda_r = 0.0;
  double lambda_s = 0.0;
  double lambda_t = 0.0;
};

/// (t-s) log Lr + (s-r) log Lt - (t-r) log Ls for positive values, r < s < t.
double lyapunov_residual(double r, double s, double t, double Lr, double Ls, double Lt);

/// Evaluates Lambda(psi^(.)) at r < s < t. Nonpositive values make the check
/// inapplicable rather than failed.
LyapunovResult lyapunov_check(const MeanParams& params, double r, double s, double t,
                              const TolerancePolicy& tol = {});

/// sum_ij rho_i rho_j omega((y_i + y_j) / 2).
double expconv_sequence_test(const Function1D& omega, std::span<const double> rhos,
                             std::span<const double> ys);

}  // namespace nabla_kit
