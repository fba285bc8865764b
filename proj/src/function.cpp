#include "nabla_kit/function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/errors.hpp"

namespace nabla_kit {

namespace {

// Order cap for functions whose higher derivatives vanish identically.
constexpr int kUnbounded = 64;

Interval intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo || (a.lo == b.lo && a.lo_open)) {
    r.lo = a.lo;
    r.lo_open = a.lo_open;
  } else {
    r.lo = b.lo;
    r.lo_open = b.lo_open;
  }
  if (a.hi < b.hi || (a.hi == b.hi && a.hi_open)) {
    r.hi = a.hi;
    r.hi_open = a.hi_open;
  } else {
    r.hi = b.hi;
    r.hi_open = b.hi_open;
  }
  return r;
}

std::string point_str(double y) {
  std::ostringstream os;
  os.precision(17);
  os << y;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

double Polynomial::operator()(double y) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  Polynomial p = *this;
  for (int k = 0; k < order; ++k) {
    if (p.coeffs.size() <= 1) return Polynomial{{0.0}};
    std::vector<double> d(p.coeffs.size() - 1);
    for (std::size_t i = 1; i < p.coeffs.size(); ++i) d[i - 1] = p.coeffs[i] * static_cast<double>(i);
    p.coeffs = std::move(d);
  }
  return p;
}

Polynomial Polynomial::antiderivative(double anchor) const {
  std::vector<double> a(coeffs.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) a[i + 1] = coeffs[i] / static_cast<double>(i + 1);
  Polynomial p{std::move(a)};
  p.coeffs[0] = -p(anchor);
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (coeffs.empty() || other.coeffs.empty()) return Polynomial{{0.0}};
  std::vector<double> r(coeffs.size() + other.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs.size(); ++j) r[i + j] += coeffs[i] * other.coeffs[j];
  return Polynomial{std::move(r)};
}

Polynomial Polynomial::operator*(double c) const {
  Polynomial p = *this;
  for (double& v : p.coeffs) v *= c;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> r(std::max(coeffs.size(), other.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] += coeffs[i];
  for (std::size_t i = 0; i < other.coeffs.size(); ++i) r[i] += other.coeffs[i];
  return Polynomial{std::move(r)};
}

Polynomial Polynomial::power_of_linear(double root, int power) {
  Polynomial p{{1.0}};
  const Polynomial lin{{-root, 1.0}};
  for (int k = 0; k < power; ++k) p = p * lin;
  return p;
}

// ---------------------------------------------------------------- Function1D

Function1D::Function1D(std::string name, Interval domain, int max_order, Evaluator eval,
                       ParamRecord params)
    : name_(std::move(name)),
      domain_(domain),
      max_order_(max_order),
      eval_(std::move(eval)),
      params_(std::move(params)) {
  if (max_order_ < 0) throw ContractViolation("Function1D: negative max_order");
  if (!eval_) throw ContractViolation("Function1D: empty evaluator");
}

double Function1D::derivative(int order, double y) const {
  if (order < 0 || order > max_order_) {
    throw CapabilityError(name_ + ": derivative of order " + std::to_string(order) +
                          " not available (max " + std::to_string(max_order_) + ")");
  }
  if (!domain_.contains(y)) {
    throw DomainError(name_ + ": y = " + point_str(y) + " outside domain " + domain_.str());
  }
  const double v = eval_(order, y);
  if (!std::isfinite(v)) {
    throw EvaluationError(name_ + ": non-finite value at y = " + point_str(y));
  }
  return v;
}

Function1D Function1D::from_callable(std::string name, Interval domain,
                                     std::function<double(double)> f) {
  return Function1D(std::move(name), domain, 0,
                    [f = std::move(f)](int, double y) { return f(y); });
}

Function1D Function1D::constant(double c, Interval domain) {
  return Function1D("constant", domain, kUnbounded,
                    [c](int order, double) { return order == 0 ? c : 0.0; }, {{"c", c}});
}

Function1D Function1D::polynomial(Polynomial p, Interval domain, std::string name) {
  const int deg = std::max(0, p.degree());
  std::vector<Polynomial> derivs;
  derivs.reserve(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) derivs.push_back(p.derivative(k));
  return Function1D(std::move(name), domain, kUnbounded,
                    [derivs = std::move(derivs)](int order, double y) {
                      return order < static_cast<int>(derivs.size())
                                 ? derivs[static_cast<std::size_t>(order)](y)
                                 : 0.0;
                    });
}

Function1D Function1D::tabulated(Grid1D nodes, std::vector<double> values) {
  if (values.size() != nodes.size() || nodes.size() < 2) {
    throw ContractViolation("tabulated: need >= 2 nodes and one value per node");
  }
  const Interval dom = Interval::closed(nodes.front(), nodes.back());
  return Function1D::from_callable(
      "tabulated", dom, [nodes = std::move(nodes), values = std::move(values)](double y) {
        const auto pts = nodes.points();
        auto it = std::upper_bound(pts.begin(), pts.end(), y);
        std::size_t k = static_cast<std::size_t>(std::distance(pts.begin(), it));
        k = std::clamp<std::size_t>(k, 1, pts.size() - 1);
        const double t = (y - pts[k - 1]) / (pts[k] - pts[k - 1]);
        return (1.0 - t) * values[k - 1] + t * values[k];
      });
}

// ---------------------------------------------------------------- Function2D

Function2D::Function2D(std::string name, Rectangle domain, int max_i, int max_j, Evaluator eval,
                       ParamRecord params)
    : name_(std::move(name)),
      domain_(domain),
      max_i_(max_i),
      max_j_(max_j),
      eval_(std::move(eval)),
      params_(std::move(params)) {
  if (max_i_ < 0 || max_j_ < 0) throw ContractViolation("Function2D: negative max order");
  if (!eval_) throw ContractViolation("Function2D: empty evaluator");
}

double Function2D::partial(int i, int j, double y, double z) const {
  if (i < 0 || j < 0 || i > max_i_ || j > max_j_) {
    throw CapabilityError(name_ + ": partial (" + std::to_string(i) + "," + std::to_string(j) +
                          ") not available (max (" + std::to_string(max_i_) + "," +
                          std::to_string(max_j_) + "))");
  }
  if (!domain_.contains(y, z)) {
    throw DomainError(name_ + ": (" + point_str(y) + ", " + point_str(z) + ") outside domain " +
                      domain_.y.str() + " x " + domain_.z.str());
  }
  const double v = eval_(i, j, y, z);
  if (!std::isfinite(v)) {
    throw EvaluationError(name_ + ": non-finite value at (" + point_str(y) + ", " +
                          point_str(z) + ")");
  }
  return v;
}

Function2D Function2D::from_callable(std::string name, Rectangle domain,
                                     std::function<double(double, double)> f) {
  return Function2D(std::move(name), domain, 0, 0,
                    [f = std::move(f)](int, int, double y, double z) { return f(y, z); });
}

Function2D Function2D::constant(double c, Rectangle domain) {
  return Function2D("constant", domain, kUnbounded, kUnbounded,
                    [c](int i, int j, double, double) { return i == 0 && j == 0 ? c : 0.0; },
                    {{"c", c}});
}

Function2D Function2D::tabulated(Grid2D grid, Matrix values) {
  if (values.rows() != grid.ygrid.size() || values.cols() != grid.zgrid.size() ||
      grid.ygrid.size() < 2 || grid.zgrid.size() < 2) {
    throw ContractViolation("tabulated: value matrix must match a grid of at least 2x2");
  }
  const Rectangle dom = Rectangle::closed(grid.ygrid.front(), grid.ygrid.back(),
                                          grid.zgrid.front(), grid.zgrid.back());
  return Function2D::from_callable(
      "tabulated", dom, [grid = std::move(grid), values = std::move(values)](double y, double z) {
        auto locate = [](std::span<const double> pts, double v) {
          auto it = std::upper_bound(pts.begin(), pts.end(), v);
          std::size_t k = static_cast<std::size_t>(std::distance(pts.begin(), it));
          k = std::clamp<std::size_t>(k, 1, pts.size() - 1);
          return std::pair{k, (v - pts[k - 1]) / (pts[k] - pts[k - 1])};
        };
        const auto [ky, ty] = locate(grid.ygrid.points(), y);
        const auto [kz, tz] = locate(grid.zgrid.points(), z);
        return (1 - ty) * (1 - tz) * values(ky - 1, kz - 1) + ty * (1 - tz) * values(ky, kz - 1) +
               (1 - ty) * tz * values(ky - 1, kz) + ty * tz * values(ky, kz);
      });
}

Function2D tensor(const Function1D& g, const Function1D& h) {
  Function2D f(g.name() + "*" + h.name(), Rectangle{g.domain(), h.domain()}, g.max_order(),
               h.max_order(), [g, h](int i, int j, double y, double z) {
                 return g.eval_unchecked(i, y) * h.eval_unchecked(j, z);
               });
  f.factors_ = std::pair{g, h};
  return f;
}

Function2D Function2D::with_identity(std::string name, ParamRecord params) const {
  Function2D f = *this;
  f.name_ = std::move(name);
  f.params_ = std::move(params);
  return f;
}

Function2D lift_y(const Function1D& g, Interval zdomain) {
  return Function2D(g.name() + "(y)", Rectangle{g.domain(), zdomain}, g.max_order(), kUnbounded,
                    [g](int i, int j, double y, double) {
                      return j == 0 ? g.eval_unchecked(i, y) : 0.0;
                    },
                    g.params());
}

Function2D lift_z(const Function1D& h, Interval ydomain) {
  return Function2D(h.name() + "(z)", Rectangle{ydomain, h.domain()}, kUnbounded, h.max_order(),
                    [h](int i, int j, double, double z) {
                      return i == 0 ? h.eval_unchecked(j, z) : 0.0;
                    },
                    h.params());
}

Function1D scale(double c, const Function1D& f) {
  return Function1D(f.name(), f.domain(), f.max_order(),
                    [c, f](int k, double y) { return c * f.eval_unchecked(k, y); }, f.params());
}

Function2D scale(double c, const Function2D& f) {
  Function2D r(f.name(), f.domain(), f.max_i(), f.max_j(),
               [c, f](int i, int j, double y, double z) { return c * f.eval_unchecked(i, j, y, z); },
               f.params());
  if (f.factors()) r = tensor(scale(c, f.factors()->first), f.factors()->second);
  return r;
}

Function1D sum(const Function1D& f, const Function1D& g) {
  return Function1D(f.name() + "+" + g.name(), intersect(f.domain(), g.domain()),
                    std::min(f.max_order(), g.max_order()), [f, g](int k, double y) {
                      return f.eval_unchecked(k, y) + g.eval_unchecked(k, y);
                    });
}

Function2D sum(const Function2D& f, const Function2D& g) {
  return Function2D(f.name() + "+" + g.name(),
                    Rectangle{intersect(f.domain().y, g.domain().y),
                              intersect(f.domain().z, g.domain().z)},
                    std::min(f.max_i(), g.max_i()), std::min(f.max_j(), g.max_j()),
                    [f, g](int i, int j, double y, double z) {
                      return f.eval_unchecked(i, j, y, z) + g.eval_unchecked(i, j, y, z);
                    });
}

Function2D product(const Function2D& f, const Function2D& g) {
  return Function2D(
      f.name() + "*" + g.name(),
      Rectangle{intersect(f.domain().y, g.domain().y), intersect(f.domain().z, g.domain().z)},
      std::min(f.max_i(), g.max_i()), std::min(f.max_j(), g.max_j()),
      [f, g](int i, int j, double y, double z) {
        CompensatedSum acc;
        for (int a = 0; a <= i; ++a)
          for (int b = 0; b <= j; ++b)
            acc.add(binomial(static_cast<unsigned>(i), static_cast<unsigned>(a)) *
                    binomial(static_cast<unsigned>(j), static_cast<unsigned>(b)) *
                    f.eval_unchecked(a, b, y, z) * g.eval_unchecked(i - a, j - b, y, z));
        return acc.value();
      });
}

Function2D transpose(const Function2D& f) {
  if (f.factors()) return tensor(f.factors()->second, f.factors()->first);
  return Function2D(f.name() + "^T", Rectangle{f.domain().z, f.domain().y}, f.max_j(), f.max_i(),
                    [f](int i, int j, double y, double z) { return f.eval_unchecked(j, i, z, y); },
                    f.params());
}

Function1D with_numeric_fallback(const Function1D& f, double step) {
  constexpr int kCap = 6;
  return Function1D(f.name(), f.domain(), std::max(kCap, f.max_order()),
                    [f, step](int k, double y) {
                      if (k <= f.max_order()) return f.eval_unchecked(k, y);
                      return numeric_derivative(f, y, k, step);
                    },
                    f.params());
}

Function2D with_numeric_fallback(const Function2D& f, double step) {
  constexpr int kCap = 6;
  return Function2D(f.name(), f.domain(), std::max(kCap, f.max_i()), std::max(kCap, f.max_j()),
                    [f, step](int i, int j, double y, double z) {
                      if (i <= f.max_i() && j <= f.max_j()) return f.eval_unchecked(i, j, y, z);
                      if (i + j > kCap) {
                        throw CapabilityError(f.name() + ": numeric partial order above 6");
                      }
                      return numeric_partial(f, y, z, i, j, step);
                    },
                    f.params());
}

}  // namespace nabla_kit
