#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nabla_kit/errors.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/grid.hpp"

namespace nabla_kit {

/// Global tolerances. `psd_eig_floor` is relative: the absolute floor is
/// psd_eig_floor * max|a_ij|.
struct TolerancePolicy {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double psd_eig_floor = -1e-10;

  void validate() const;
  /// Defaults, with abs_tol taken from NABLA_KIT_TOL when set.
  static TolerancePolicy from_environment();
};

/// Composite Gauss-Legendre: `order` nodes on each of `panels` equal panels.
struct QuadratureScheme {
  int order = 16;
  int panels = 8;

  void validate() const;
  int nodes() const { return order * panels; }
};

/// Neumaier-compensated running sum. Order of `add` calls fixes the result.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

/// Nodes and weights of a composite rule mapped onto [a, b].
struct QuadratureNodes {
  std::vector<double> x;
  std::vector<double> w;
};
QuadratureNodes composite_nodes(double a, double b, const QuadratureScheme& scheme);

/// Composite Gauss-Legendre integral of an arbitrary callable. Throws
/// EvaluationError naming the node if the integrand is not finite there.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureScheme& scheme) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw ContractViolation("integrate: requires a < b");
  }
  const auto q = composite_nodes(a, b, scheme);
  CompensatedSum acc;
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    const double v = f(q.x[k]);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite integrand value at y = " + std::to_string(q.x[k]));
    }
    acc.add(q.w[k] * v);
  }
  return acc.value();
}

template <class F>
double integrate2(F&& f, const Rectangle& rect, const QuadratureScheme& scheme) {
  const double a = rect.y.lo, b = rect.y.hi, c = rect.z.lo, d = rect.z.hi;
  if (!(a < b) || !(c < d)) {
    if (a == b || c == d) return 0.0;
    throw ContractViolation("integrate2: requires a < b and c < d");
  }
  const auto qy = composite_nodes(a, b, scheme);
  const auto qz = composite_nodes(c, d, scheme);
  CompensatedSum acc;
  for (std::size_t i = 0; i < qy.x.size(); ++i) {
    CompensatedSum row;
    for (std::size_t j = 0; j < qz.x.size(); ++j) {
      const double v = f(qy.x[i], qz.x[j]);
      if (!std::isfinite(v)) {
        throw EvaluationError("non-finite integrand value at (y, z) = (" +
                              std::to_string(qy.x[i]) + ", " + std::to_string(qz.x[j]) + ")");
      }
      row.add(qz.w[j] * v);
    }
    acc.add(qy.w[i] * row.value());
  }
  return acc.value();
}

double integrate_1d(const Function1D& f, double a, double b, const QuadratureScheme& scheme = {});
double integrate_2d(const Function2D& f, const Rectangle& rect, const QuadratureScheme& scheme = {});

/// Factorial power (y_k - y_i)^{exponent} = prod_{r=0}^{exponent-1} (y_{k-r} - y_i)
/// with 1-based k and i. Returns exactly 1 for exponent 0.
double factorial_power(const Grid1D& points, std::size_t k, std::size_t i, unsigned exponent);

/// Falling factorial x (x-1) ... (x-n+1); the factorial power on the
/// integer grid.
double falling_factorial(double x, unsigned n);

double factorial(unsigned n);
double binomial(unsigned n, unsigned k);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  std::vector<double> eigenvalues;      // ascending
  std::vector<double> leading_minors;   // det of leading k x k blocks, k = 1..n
  std::vector<int> leading_minor_signs; // -1, 0, +1
  double floor = 0.0;                   // absolute eigenvalue floor used
  double scale = 0.0;                   // max |a_ij|
};

/// Symmetric eigenvalues by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);
double determinant(const Matrix& a);

/// PSD verdict from the smallest eigenvalue; leading principal minors are
/// reported as a secondary diagnostic. Throws ContractViolation on a
/// non-square or non-symmetric input.
PsdReport psd_check(const Matrix& a, const TolerancePolicy& tol = {});

/// Default central-difference step for total derivative order `order`.
double default_fd_step(int order, double scale = 1.0);

/// Tensor central-difference estimate of f_(i,j) at (y, z), Richardson
/// extrapolated twice. Requires i + j <= 6 and the stencil inside the domain.
double numeric_partial(const Function2D& f, double y, double z, int i, int j, double step = 0.0);
double numeric_derivative(const Function1D& f, double y, int order, double step = 0.0);

/// Chebyshev-Lobatto points on [a, b], both endpoints included, ascending.
std::vector<double> chebyshev_lobatto(double a, double b, std::size_t count);

}  // namespace nabla_kit
