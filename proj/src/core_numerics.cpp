#include "nabla_kit/core_numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace nabla_kit {

void TolerancePolicy::validate() const {
  if (!std::isfinite(abs_tol) || !std::isfinite(rel_tol) || !std::isfinite(psd_eig_floor)) {
    throw ContractViolation("TolerancePolicy: all fields must be finite");
  }
  if (abs_tol <= 0 || rel_tol <= 0) {
    throw ContractViolation("TolerancePolicy: abs_tol and rel_tol must be positive");
  }
}

TolerancePolicy TolerancePolicy::from_environment() {
  TolerancePolicy tol;
  if (const char* env = std::getenv("NABLA_KIT_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw ContractViolation(std::string("NABLA_KIT_TOL is not a number: ") + env);
    }
    tol.abs_tol = v;
  }
  tol.validate();
  return tol;
}

void QuadratureScheme::validate() const {
  if (order < 2) throw ContractViolation("QuadratureScheme: order must be >= 2");
  if (panels < 1) throw ContractViolation("QuadratureScheme: panels must be >= 1");
}

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw ContractViolation("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  GaussLegendreRule rule;
  const auto n = static_cast<std::size_t>(order);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(order, std::move(rule)).first->second;
}

QuadratureNodes composite_nodes(double a, double b, const QuadratureScheme& scheme) {
  scheme.validate();
  const auto& rule = gauss_legendre(scheme.order);
  QuadratureNodes q;
  q.x.reserve(static_cast<std::size_t>(scheme.nodes()));
  q.w.reserve(static_cast<std::size_t>(scheme.nodes()));
  const double h = (b - a) / scheme.panels;
  for (int p = 0; p < scheme.panels; ++p) {
    const double lo = a + h * p;
    const double hi = (p + 1 == scheme.panels) ? b : a + h * (p + 1);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      q.x.push_back(mid + half * rule.nodes[k]);
      q.w.push_back(half * rule.weights[k]);
    }
  }
  return q;
}

double integrate_1d(const Function1D& f, double a, double b, const QuadratureScheme& scheme) {
  return integrate([&f](double y) { return f(y); }, a, b, scheme);
}

double integrate_2d(const Function2D& f, const Rectangle& rect, const QuadratureScheme& scheme) {
  return integrate2([&f](double y, double z) { return f(y, z); }, rect, scheme);
}

double factorial_power(const Grid1D& points, std::size_t k, std::size_t i, unsigned exponent) {
  const std::size_t n = points.size();
  if (k == 0 || k > n || i == 0 || i > n) {
    throw ContractViolation("factorial_power: index out of range");
  }
  if (exponent > k) {
    throw ContractViolation("factorial_power: descending window y_" + std::to_string(k) +
                            " ... y_" + std::to_string(static_cast<long>(k) - exponent + 1) +
                            " leaves the grid");
  }
  double acc = 1.0;
  for (unsigned r = 0; r < exponent; ++r) acc *= points.node(k - r) - points.node(i);
  return acc;
}

double falling_factorial(double x, unsigned n) {
  double acc = 1.0;
  for (unsigned r = 0; r < n; ++r) acc *= x - static_cast<double>(r);
  return acc;
}

double factorial(unsigned n) {
  double acc = 1.0;
  for (unsigned k = 2; k <= n; ++k) acc *= static_cast<double>(k);
  return acc;
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (unsigned r = 1; r <= k; ++r) acc = acc * static_cast<double>(n - k + r) / r;
  return std::round(acc);
}

std::vector<double> symmetric_eigenvalues(const Matrix& input) {
  const std::size_t n = input.rows();
  Matrix a = input;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        total += a(p, q) * a(p, q);
        if (p != q) off += a(p, q) * a(p, q);
      }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) eig[k] = a(k, k);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double determinant(const Matrix& input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw ContractViolation("determinant: matrix not square");
  Matrix a = input;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

PsdReport psd_check(const Matrix& a, const TolerancePolicy& tol) {
  tol.validate();
  const std::size_t n = a.rows();
  if (n == 0 || n != a.cols()) throw ContractViolation("psd_check: matrix must be square");
  PsdReport rep;
  rep.scale = a.max_abs();
  const double sym_tol = tol.abs_tol * std::max(1.0, rep.scale);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      if (std::abs(a(r, c) - a(c, r)) > sym_tol) {
        throw ContractViolation("psd_check: matrix is not symmetric");
      }
  rep.eigenvalues = symmetric_eigenvalues(a);
  rep.min_eigenvalue = rep.eigenvalues.front();
  rep.floor = tol.psd_eig_floor * rep.scale;
  rep.psd = rep.min_eigenvalue >= rep.floor;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix lead(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) lead(r, c) = a(r, c);
    const double det = determinant(lead);
    rep.leading_minors.push_back(det);
    rep.leading_minor_signs.push_back(det > 0 ? 1 : (det < 0 ? -1 : 0));
  }
  return rep;
}

double default_fd_step(int order, double scale) {
  const double eps = std::numeric_limits<double>::epsilon();
  return 2.0 * std::pow(eps, 1.0 / (order + 6)) * scale;
}

namespace {

double central_stencil(const Function2D& f, double y, double z, int i, int j, double h) {
  CompensatedSum acc;
  for (int k = 0; k <= i; ++k) {
    const double wy = ((k % 2) ? -1.0 : 1.0) * binomial(static_cast<unsigned>(i), static_cast<unsigned>(k));
    const double yk = y + (0.5 * i - k) * h;
    for (int l = 0; l <= j; ++l) {
      const double wz = ((l % 2) ? -1.0 : 1.0) * binomial(static_cast<unsigned>(j), static_cast<unsigned>(l));
      const double zl = z + (0.5 * j - l) * h;
      acc.add(wy * wz * f(yk, zl));
    }
  }
  return acc.value() / std::pow(h, i + j);
}

}  // namespace

double numeric_partial(const Function2D& f, double y, double z, int i, int j, double step) {
  if (i < 0 || j < 0) throw ContractViolation("numeric_partial: negative order");
  if (i + j > 6) throw ContractViolation("numeric_partial: total order above 6 is not supported");
  if (i + j == 0) return f(y, z);
  const double h = step > 0 ? step : default_fd_step(i + j);
  const double ry = 0.5 * i * h, rz = 0.5 * j * h;
  if (!f.domain().contains(y - ry, z - rz) || !f.domain().contains(y + ry, z + rz)) {
    throw DomainError(f.name() + ": finite-difference stencil leaves the domain");
  }
  const double d1 = central_stencil(f, y, z, i, j, h);
  const double d2 = central_stencil(f, y, z, i, j, h / 2);
  const double d4 = central_stencil(f, y, z, i, j, h / 4);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d4 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

double numeric_derivative(const Function1D& f, double y, int order, double step) {
  const Function2D lifted("lift", Rectangle{f.domain(), Interval::real_line()}, 0, 0,
                          [&f](int, int, double yy, double) { return f(yy); });
  return numeric_partial(lifted, y, 0.0, order, 0, step);
}

std::vector<double> chebyshev_lobatto(double a, double b, std::size_t count) {
  if (count < 2) throw ContractViolation("chebyshev_lobatto: need at least 2 points");
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = -std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(count - 1));
    pts[k] = 0.5 * (a + b) + 0.5 * (b - a) * t;
  }
  pts.front() = a;
  pts.back() = b;
  return pts;
}

}  // namespace nabla_kit
