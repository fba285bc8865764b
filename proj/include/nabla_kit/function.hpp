#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nabla_kit/grid.hpp"

namespace nabla_kit {

using ParamRecord = std::map<std::string, double>;

/// Dense polynomial, coefficients in increasing degree.
struct Polynomial {
  std::vector<double> coeffs;

  double operator()(double y) const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Polynomial derivative(int order = 1) const;
  /// Antiderivative vanishing at `anchor`.
  Polynomial antiderivative(double anchor = 0.0) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double c) const;
  Polynomial operator+(const Polynomial& other) const;
  /// (y - root)^power
  static Polynomial power_of_linear(double root, int power);
};

/// Univariate function with derivatives up to `max_order`.
///
/// The evaluator receives (order, y). `operator()` and `derivative()` check
/// the domain, the order capability and finiteness of the result.
class Function1D {
 public:
  using Evaluator = std::function<double(int, double)>;

  Function1D() = default;
  Function1D(std::string name, Interval domain, int max_order, Evaluator eval,
             ParamRecord params = {});

  /// Value-only function (max_order 0).
  static Function1D from_callable(std::string name, Interval domain,
                                  std::function<double(double)> f);
  static Function1D constant(double c, Interval domain = Interval::real_line());
  static Function1D polynomial(Polynomial p, Interval domain = Interval::real_line(),
                               std::string name = "polynomial");
  /// Piecewise-linear interpolation of tabulated samples (value only).
  static Function1D tabulated(Grid1D nodes, std::vector<double> values);

  double operator()(double y) const { return derivative(0, y); }
  double derivative(int order, double y) const;
  /// Evaluation without the domain / capability checks; used in quadrature
  /// inner loops after the caller validated the range once.
  double eval_unchecked(int order, double y) const { return eval_(order, y); }

  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }
  int max_order() const { return max_order_; }
  const ParamRecord& params() const { return params_; }
  bool valid() const { return static_cast<bool>(eval_); }

 private:
  std::string name_;
  Interval domain_;
  int max_order_ = 0;
  Evaluator eval_;
  ParamRecord params_;
};

/// Bivariate function exposing mixed partials f_(i,j) for i <= max_i, j <= max_j.
class Function2D {
 public:
  using Evaluator = std::function<double(int, int, double, double)>;

  Function2D() = default;
  Function2D(std::string name, Rectangle domain, int max_i, int max_j, Evaluator eval,
             ParamRecord params = {});

  static Function2D from_callable(std::string name, Rectangle domain,
                                  std::function<double(double, double)> f);
  static Function2D constant(double c, Rectangle domain = {});
  /// Bilinear interpolation of samples on a tensor grid (value only).
  static Function2D tabulated(Grid2D grid, Matrix values);

  double operator()(double y, double z) const { return partial(0, 0, y, z); }
  double partial(int i, int j, double y, double z) const;
  double eval_unchecked(int i, int j, double y, double z) const { return eval_(i, j, y, z); }

  const std::string& name() const { return name_; }
  const Rectangle& domain() const { return domain_; }
  int max_i() const { return max_i_; }
  int max_j() const { return max_j_; }
  const ParamRecord& params() const { return params_; }
  bool valid() const { return static_cast<bool>(eval_); }

  /// Present when the function is a tensor product g(y) h(z).
  const std::optional<std::pair<Function1D, Function1D>>& factors() const { return factors_; }
  /// Copy with a different name and parameter record; factors are kept.
  Function2D with_identity(std::string name, ParamRecord params) const;

  friend Function2D tensor(const Function1D& g, const Function1D& h);

 private:
  std::string name_;
  Rectangle domain_;
  int max_i_ = 0;
  int max_j_ = 0;
  Evaluator eval_;
  ParamRecord params_;
  std::optional<std::pair<Function1D, Function1D>> factors_;
};

/// (y, z) -> g(y) h(z); exact partials from the factors, separable fast paths enabled.
Function2D tensor(const Function1D& g, const Function1D& h);
/// (y, z) -> g(y)
Function2D lift_y(const Function1D& g, Interval zdomain = Interval::real_line());
/// (y, z) -> h(z)
Function2D lift_z(const Function1D& h, Interval ydomain = Interval::real_line());

Function1D scale(double c, const Function1D& f);
Function2D scale(double c, const Function2D& f);
Function1D sum(const Function1D& f, const Function1D& g);
Function2D sum(const Function2D& f, const Function2D& g);
/// (y, z) -> f(y, z) g(y, z), partials by the Leibniz rule.
Function2D product(const Function2D& f, const Function2D& g);
/// Swap the roles of y and z.
Function2D transpose(const Function2D& f);

/// Raise the derivative capability to order 6 per axis, using central
/// difference stencils beyond the exact orders. `step` <= 0 selects the
/// default step.
Function1D with_numeric_fallback(const Function1D& f, double step = 0.0);
Function2D with_numeric_fallback(const Function2D& f, double step = 0.0);

}  // namespace nabla_kit
