#include "nabla_kit/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nabla_kit/errors.hpp"

namespace nabla_kit {

namespace {

constexpr int kAnyOrder = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// i-th derivative of u^p (ln u)^r for r in {0, 1, 2}, u > 0.
double power_log_derivative(double u, double p, int r, int i) {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  c[static_cast<std::size_t>(r)] = 1.0;
  double exponent = p;
  for (int k = 0; k < i; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      c[l] = exponent * c[l] + (l + 1 < 3 ? static_cast<double>(l + 1) * c[l + 1] : 0.0);
    }
    exponent -= 1.0;
  }
  const double L = std::log(u);
  return std::pow(u, exponent) * (c[0] + L * (c[1] + L * c[2]));
}

double param(const ParamRecord& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) throw ContractViolation(std::string("missing parameter '") + key + "'");
  return it->second;
}

int int_param(const ParamRecord& p, const char* key) {
  const double v = param(p, key);
  if (v < 0 || v != std::floor(v) || v > 32) {
    throw ContractViolation(std::string("parameter '") + key + "' must be an integer in 0..32");
  }
  return static_cast<int>(v);
}

Rectangle plane() { return Rectangle{}; }

// Shared by the psi and phi families: u = y + k1, v = z - k2.
Function2D power_log_family(std::string name, double q, int M, double k1, double k2,
                            ParamRecord params) {
  if (M < 0) throw ContractViolation(name + ": order must be nonnegative");
  const Rectangle dom{Interval{-k1, kInf, true, false}, Interval{k2, kInf, true, false}};
  const bool integer_branch = q >= 0 && q <= M && q == std::floor(q);
  if (!integer_branch) {
    // u^q / d times v^q / d; the tensor form lets functionals integrate one axis at a time
    const double d = descending_product(q, M);
    const Function1D gy("u^q", dom.y, kAnyOrder, [q, k1, d](int i, double y) {
      return falling_factorial(q, static_cast<unsigned>(i)) * std::pow(y + k1, q - i) / d;
    });
    const Function1D gz("v^q", dom.z, kAnyOrder, [q, k2, d](int j, double z) {
      return falling_factorial(q, static_cast<unsigned>(j)) * std::pow(z - k2, q - j) / d;
    });
    return tensor(gy, gz).with_identity(std::move(name), std::move(params));
  }
  const auto k = static_cast<unsigned>(q);
  const double norm = factorial(k) * factorial(static_cast<unsigned>(M) - k);
  const double denom = 2.0 * norm * norm;
  return Function2D(std::move(name), dom, kAnyOrder, kAnyOrder,
                    [q, k1, k2, denom](int i, int j, double y, double z) {
                      const double u = y + k1, v = z - k2;
                      // [ln u + ln v]^2 = ln^2 u + 2 ln u ln v + ln^2 v
                      const double t0 = power_log_derivative(u, q, 2, i) * power_log_derivative(v, q, 0, j);
                      const double t1 = power_log_derivative(u, q, 1, i) * power_log_derivative(v, q, 1, j);
                      const double t2 = power_log_derivative(u, q, 0, i) * power_log_derivative(v, q, 2, j);
                      return (t0 + 2.0 * t1 + t2) / denom;
                    },
                    std::move(params));
}

}  // namespace

double descending_product(double q, int M) {
  double acc = 1.0;
  for (int j = 0; j <= M; ++j) acc *= q - j;
  return acc;
}

Function1D family_psi_v(double v, int m) {
  if (!(v > 0)) throw ContractViolation("psi_v: v must be positive");
  if (m < 0) throw ContractViolation("psi_v: m must be nonnegative");
  const double norm = std::pow(v, m);
  return Function1D("psi_v", Interval::real_line(), kAnyOrder,
                    [v, norm](int i, double y) { return std::pow(-v, i) * std::exp(-v * y) / norm; },
                    {{"v", v}, {"m", m}});
}

Function1D family_phi_v(double v, int m) {
  if (!(v > 0)) throw ContractViolation("phi_v: v must be positive");
  if (m < 0) throw ContractViolation("phi_v: m must be nonnegative");
  const Interval dom{0.0, kInf, false, false};
  const ParamRecord params{{"v", v}, {"m", m}};
  if (v == 1.0) {
    // Separate definition at v = 1, not the limit of the other branch.
    const double c = sign_pow(m) / factorial(static_cast<unsigned>(m));
    return Function1D("phi_v", dom, kAnyOrder,
                      [c, m](int i, double y) {
                        if (i > m) return 0.0;
                        return c * falling_factorial(m, static_cast<unsigned>(i)) * std::pow(y, m - i);
                      },
                      params);
  }
  const double lnv = std::log(v);
  const double norm = std::pow(lnv, m);
  return Function1D("phi_v", dom, kAnyOrder,
                    [v, lnv, norm](int i, double y) {
                      return std::pow(-lnv, i) * std::pow(v, -y) / norm;
                    },
                    params);
}

Function1D family_constant(double c) {
  if (!(c >= 0)) throw ContractViolation("constant: c must be nonnegative");
  Function1D f = Function1D::constant(c);
  return f;
}

Function1D family_inverse_power(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw ContractViolation("inverse_power: alpha must lie in [0, 1]");
  return Function1D("inverse_power", Interval::positive(), kAnyOrder,
                    [alpha](int i, double y) {
                      return alpha * falling_factorial(alpha - 1.0, static_cast<unsigned>(i)) *
                             std::pow(y, alpha - 1.0 - i);
                    },
                    {{"alpha", alpha}});
}

Function1D family_shifted_power(double alpha, double beta) {
  if (!(alpha >= 0) || !(beta >= 0)) {
    throw ContractViolation("shifted_power: alpha and beta must be nonnegative");
  }
  const double shift = alpha * alpha;
  return Function1D("shifted_power", Interval::positive(), kAnyOrder,
                    [shift, beta](int i, double y) {
                      double rising = 1.0;
                      for (int k = 0; k < i; ++k) rising *= beta + k;
                      return sign_pow(i) * rising * std::pow(y + shift, -beta - i);
                    },
                    {{"alpha", alpha}, {"beta", beta}});
}

Function1D family_neg_log() {
  return Function1D("neg_log", Interval::positive(), kAnyOrder, [](int i, double y) {
    if (i == 0) return -std::log(y);
    return sign_pow(i) * factorial(static_cast<unsigned>(i - 1)) / std::pow(y, i);
  });
}

Function1D family_neg_log_complement() {
  return Function1D("neg_log_complement", Interval{1.0, kInf, true, false}, kAnyOrder,
                    [](int i, double y) {
                      if (i == 0) return std::log(y) - std::log(y - 1.0);
                      return sign_pow(i - 1) * factorial(static_cast<unsigned>(i - 1)) *
                             (std::pow(y, -i) - std::pow(y - 1.0, -i));
                    });
}

Function1D family_exp_inverse() {
  return Function1D("exp_inverse", Interval::positive(), kAnyOrder, [](int n, double y) {
    const double e = std::exp(1.0 / y);
    if (n == 0) return e;
    // Lah numbers L(n, k) = C(n-1, k-1) n! / k!
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double lah = binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(k - 1)) *
                         factorial(static_cast<unsigned>(n)) / factorial(static_cast<unsigned>(k));
      acc += lah * std::pow(y, -(n + k));
    }
    return sign_pow(n) * e * acc;
  });
}

Function2D family_zeta_q(double q, int m) {
  if (m < 0) throw ContractViolation("zeta_q: m must be nonnegative");
  const ParamRecord params{{"q", q}, {"m", m}};
  const int top = 2 * m + 2;
  if (q == 0.0) {
    return Function2D("zeta_q", plane(), kAnyOrder, kAnyOrder,
                      [top](int i, int j, double y, double z) {
                        const int d = top - i - j;
                        if (d < 0) return 0.0;
                        return std::pow(y + z, d) / factorial(static_cast<unsigned>(d));
                      },
                      params);
  }
  const double half = std::pow(q, m + 1);
  const Function1D e("e^q", Interval::real_line(), kAnyOrder,
                     [q, half](int i, double y) { return std::pow(q, i) * std::exp(q * y) / half; });
  return tensor(e, e).with_identity("zeta_q", params);
}

Function2D family_phi_q_2d(double q, int m) {
  return power_log_family("phi_q", q, m, 0.0, 0.0, {{"q", q}, {"m", m}});
}

Function2D family_psi_q(double q, int M, double k1, double k2) {
  return power_log_family("psi_q", q, M, k1, k2, {{"q", q}, {"M", M}, {"k1", k1}, {"k2", k2}});
}

// ------------------------------------------------------------------ catalog

const CatalogEntry& FamilyCatalog::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw ContractViolation("unknown family '" + name + "'");
}

bool FamilyCatalog::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.name == name; });
}

ParamRecord FamilyCatalog::resolve(const CatalogEntry& entry, const ParamRecord& params) const {
  ParamRecord out = entry.defaults;
  for (const auto& [k, v] : params) {
    if (!entry.defaults.contains(k)) {
      throw ContractViolation("family '" + entry.name + "' has no parameter '" + k + "'");
    }
    out[k] = v;
  }
  return out;
}

Function1D FamilyCatalog::make_1d(const std::string& name, const ParamRecord& params) const {
  const auto& e = find(name);
  if (e.arity != 1) throw ContractViolation("family '" + name + "' is not univariate");
  return e.make_1d(resolve(e, params));
}

Function2D FamilyCatalog::make_2d(const std::string& name, const ParamRecord& params) const {
  const auto& e = find(name);
  if (e.arity != 2) throw ContractViolation("family '" + name + "' is not bivariate");
  return e.make_2d(resolve(e, params));
}

FamilyCatalog family_catalog_1d() {
  const Rectangle positive{Interval::positive(), Interval::real_line()};
  auto fixed = [](int order, Rectangle region, std::string note = {}) {
    return [order, region, note](const ParamRecord&) {
      return MonotonicityClaim{order, 0, true, region, true, note};
    };
  };
  std::vector<CatalogEntry> e;
  e.push_back({"constant", 1, "c, c >= 0", {{"c", 1.0}},
               [](const ParamRecord& p) { return family_constant(param(p, "c")); }, {},
               fixed(6, plane())});
  e.push_back({"inverse_power", 1, "alpha / y^(1-alpha), 0 <= alpha <= 1, y > 0", {{"alpha", 0.5}},
               [](const ParamRecord& p) { return family_inverse_power(param(p, "alpha")); }, {},
               fixed(6, positive)});
  e.push_back({"shifted_power", 1, "1 / (y + alpha^2)^beta, alpha, beta >= 0, y > 0",
               {{"alpha", 1.0}, {"beta", 1.0}},
               [](const ParamRecord& p) {
                 return family_shifted_power(param(p, "alpha"), param(p, "beta"));
               },
               {}, fixed(6, positive)});
  e.push_back({"neg_log", 1, "-ln y, y > 0", {},
               [](const ParamRecord&) { return family_neg_log(); }, {},
               fixed(6, Rectangle{Interval{0.0, 1.0, true, false}, Interval::real_line()},
                     "value is negative for y > 1; the sign pattern holds on (0, 1] only")});
  e.push_back({"neg_log_complement", 1, "-ln(1 - 1/y), y > 1", {},
               [](const ParamRecord&) { return family_neg_log_complement(); }, {},
               fixed(6, Rectangle{Interval{1.0, kInf, true, false}, Interval::real_line()},
                     "defined only for y > 1")});
  e.push_back({"exp_inverse", 1, "e^(1/y), y > 0", {},
               [](const ParamRecord&) { return family_exp_inverse(); }, {}, fixed(6, positive)});
  e.push_back({"psi_v", 1, "e^(-v y) / v^m, v > 0", {{"v", 1.0}, {"m", 2.0}},
               [](const ParamRecord& p) { return family_psi_v(param(p, "v"), int_param(p, "m")); }, {},
               [](const ParamRecord& p) {
                 return MonotonicityClaim{int_param(p, "m"), 0, true, plane(), true, {}};
               }});
  e.push_back({"phi_v", 1, "v^(-y) / (ln v)^m, (-1)^m y^m / m! at v = 1", {{"v", 2.0}, {"m", 2.0}},
               [](const ParamRecord& p) { return family_phi_v(param(p, "v"), int_param(p, "m")); }, {},
               [](const ParamRecord& p) {
                 const double v = param(p, "v");
                 const int m = int_param(p, "m");
                 MonotonicityClaim c{m, 0, true,
                                     Rectangle{Interval{0.0, kInf, false, false}, Interval::real_line()},
                                     v > 1.0, {}};
                 if (!(v > 1.0) && m > 0) {
                   c.note = "for v <= 1 only the top-order sign (-1)^m f^(m) >= 0 holds; "
                            "order m-1 has the wrong sign";
                 }
                 return c;
               }});
  return FamilyCatalog(std::move(e));
}

FamilyCatalog family_catalog_2d() {
  const Rectangle quadrant{Interval::positive(), Interval::positive()};
  std::vector<CatalogEntry> e;
  e.push_back({"zeta_q", 2, "e^(q(y+z)) / q^(2m+2); (y+z)^(2m+2)/(2m+2)! at q = 0",
               {{"q", -1.0}, {"m", 1.0}}, {},
               [](const ParamRecord& p) { return family_zeta_q(param(p, "q"), int_param(p, "m")); },
               [](const ParamRecord& p) {
                 const int m = int_param(p, "m");
                 const bool all = param(p, "q") < 0;
                 return MonotonicityClaim{m + 1, m + 1, all, plane(), true,
                                          all ? "" : "only the top mixed partial e^(q(y+z)) is "
                                                     "guaranteed nonnegative for q >= 0"};
               }});
  auto power_claim = [](int M, Rectangle region) {
    return [M, region](const ParamRecord& p) {
      const bool all = param(p, "q") < 0;
      return MonotonicityClaim{M + 1, M + 1, all, region, true,
                               all ? "" : "only the top mixed partial is guaranteed nonnegative "
                                          "for q >= 0"};
    };
  };
  e.push_back({"phi_q", 2, "(yz)^q / [q(q-1)...(q-m)]^2 with log branch, y, z > 0",
               {{"q", 0.5}, {"m", 1.0}}, {},
               [](const ParamRecord& p) { return family_phi_q_2d(param(p, "q"), int_param(p, "m")); },
               [quadrant, power_claim](const ParamRecord& p) {
                 return power_claim(int_param(p, "m"), quadrant)(p);
               }});
  e.push_back({"psi_q", 2, "[(y+k1)(z-k2)]^q / [q(q-1)...(q-M)]^2 with log branch",
               {{"q", 0.5}, {"M", 1.0}, {"k1", 2.0}, {"k2", -2.0}}, {},
               [](const ParamRecord& p) {
                 return family_psi_q(param(p, "q"), int_param(p, "M"), param(p, "k1"), param(p, "k2"));
               },
               [power_claim](const ParamRecord& p) {
                 const Rectangle region{Interval{-param(p, "k1"), kInf, true, false},
                                        Interval{param(p, "k2"), kInf, true, false}};
                 return power_claim(int_param(p, "M"), region)(p);
               }});
  e.push_back({"exp_sum", 2, "c e^(alpha y + beta z)", {{"alpha", -1.0}, {"beta", -1.0}, {"c", 1.0}},
               {},
               [](const ParamRecord& p) {
                 const double a = param(p, "alpha"), b = param(p, "beta"), c = param(p, "c");
                 return Function2D("exp_sum", plane(), kAnyOrder, kAnyOrder,
                                   [a, b, c](int i, int j, double y, double z) {
                                     return c * std::pow(a, i) * std::pow(b, j) * std::exp(a * y + b * z);
                                   },
                                   p);
               },
               [](const ParamRecord& p) {
                 const bool ok = param(p, "c") >= 0 && param(p, "alpha") <= 0 && param(p, "beta") <= 0;
                 return MonotonicityClaim{6, 6, true, plane(), ok,
                                          ok ? "" : "requires c >= 0, alpha <= 0, beta <= 0"};
               }});
  return FamilyCatalog(std::move(e));
}

// ------------------------------------------------------------- verification

CmVerdict verify_cm_order(const Function1D& f, const Grid1D& grid, int m,
                          const TolerancePolicy& tol) {
  if (m < 0) throw ContractViolation("verify_cm_order: negative order");
  if (m > f.max_order()) {
    throw CapabilityError(f.name() + ": derivatives up to order " + std::to_string(m) +
                          " are required");
  }
  CmVerdict v;
  v.worst_value = kInf;
  for (double y : grid.points()) {
    for (int i = 0; i <= m; ++i) {
      const double s = sign_pow(i) * f.derivative(i, y);
      ++v.checks;
      if (s < v.worst_value) {
        v.worst_value = s;
        v.worst_y = y;
        v.worst_i = i;
      }
    }
  }
  v.verified = v.worst_value >= -tol.abs_tol;
  return v;
}

CmVerdict verify_cm_order(const Function2D& f, const Grid2D& grid, int m, int n,
                          const TolerancePolicy& tol) {
  if (m < 0 || n < 0) throw ContractViolation("verify_cm_order: negative order");
  if (m > f.max_i() || n > f.max_j()) {
    throw CapabilityError(f.name() + ": partials up to order (" + std::to_string(m) + "," +
                          std::to_string(n) + ") are required");
  }
  CmVerdict v;
  v.worst_value = kInf;
  for (double y : grid.ygrid.points()) {
    for (double z : grid.zgrid.points()) {
      for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
          const double s = sign_pow(i + j) * f.partial(i, j, y, z);
          ++v.checks;
          if (s < v.worst_value) {
            v.worst_value = s;
            v.worst_y = y;
            v.worst_z = z;
            v.worst_i = i;
            v.worst_j = j;
          }
        }
      }
    }
  }
  v.verified = v.worst_value >= -tol.abs_tol;
  return v;
}

}  // namespace nabla_kit
