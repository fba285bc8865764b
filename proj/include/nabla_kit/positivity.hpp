#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/grid.hpp"

namespace nabla_kit {

enum class Verdict { certified, refuted, inconclusive };
enum class ConditionKind { equality, inequality };

std::string to_string(Verdict v);
std::string to_string(ConditionKind k);

/// One family of conditions, reduced to its worst instance. For equalities
/// `value` is the residual of largest magnitude; for inequalities it is the
/// minimum. `where` names the index or probe point that attains it.
struct Condition {
  std::string label;
  ConditionKind kind = ConditionKind::equality;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string where;
  std::size_t instances = 0;
};

struct Certificate {
  std::vector<Condition> conditions;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::size_t> probes;
  TolerancePolicy tolerance;
  std::vector<std::string> notes;

  bool certified() const { return verdict == Verdict::certified; }
  /// Throws ContractViolation when no condition carries the label.
  const Condition& condition(const std::string& label) const;
};

/// Sets the verdict from the conditions: certified when all pass, refuted
/// when an equality misses by more than 10x its tolerance or an inequality
/// falls below -10 abs_tol, inconclusive otherwise.
void finalize(Certificate& cert);

/// Which Taylor moments at the right endpoint must vanish.
enum class MomentIndexing {
  from_zero,  // i = 0..m
  from_one,   // i = 1..m; kept only to reproduce the counterexample with f = -1
};

/// Moments of P against (b-y)^i/i! must vanish and the truncated moment
/// int_a^s P (s-y)^m/m! must be nonnegative at every probe s (Chebyshev-Lobatto,
/// endpoints included).
Certificate certify_integral_1d(const Function1D& P, double a, double b, int m,
                                std::size_t probes = 21,
                                MomentIndexing indexing = MomentIndexing::from_zero,
                                const TolerancePolicy& tol = {},
                                const QuadratureScheme& scheme = {});

/// Exact finite-sum check of the four coefficient families of the order
/// (m, n) double-sum expansion.
Certificate certify_double_sum(const Matrix& p, const Grid2D& grid, int m, int n,
                               const TolerancePolicy& tol = {});

/// Kernel, rectangle, order (M, N) and quadrature for
/// Lambda(f) = int int P(y, z) f(y, z) dz dy.
struct FunctionalSpec {
  Function2D kernel;
  Rectangle rect;
  int M = 0;
  int N = 0;
  QuadratureScheme scheme;

  void validate() const;
};

Certificate certify_double_integral(const FunctionalSpec& spec, std::size_t probes_y = 21,
                                    std::size_t probes_z = 21, const TolerancePolicy& tol = {});

double evaluate_functional(const FunctionalSpec& spec, const Function2D& f);

/// (-1)^{M+1} times the degree M+1 Legendre polynomial, mapped affinely from
/// [-1, 1] onto [a, b]. Requires M <= 10.
Function1D rodrigues_weight(int M, double a = -1.0, double b = 1.0);
/// Tensor product of Rodrigues weights of orders M and N on the rectangle.
Function2D rodrigues_kernel(int M, int N, const Rectangle& rect);

struct StressResult {
  double worst = 0.0;
  std::size_t worst_index = 0;
  std::vector<double> values;
};

/// Lambda(f) for each sample; the minimum is reported.
StressResult positivity_stress(const FunctionalSpec& spec, const std::vector<Function2D>& sample);
/// sum_ij p_ij f(y_i, z_j) for each sample.
StressResult positivity_stress(const Matrix& p, const Grid2D& grid,
                               const std::vector<Function2D>& sample);
/// int_a^b P f for each sample.
StressResult positivity_stress(const Function1D& P, double a, double b,
                               const std::vector<Function1D>& sample,
                               const QuadratureScheme& scheme = {});

}  // namespace nabla_kit
