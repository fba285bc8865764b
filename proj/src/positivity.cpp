#include "nabla_kit/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nabla_kit/errors.hpp"
#include "nabla_kit/identities.hpp"

namespace nabla_kit {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Reduces all instances of one condition family to its worst member.
class Family {
 public:
  Family(std::string label, ConditionKind kind, double abs_tol) : abs_tol_(abs_tol) {
    c_.label = std::move(label);
    c_.kind = kind;
    c_.pass = true;
    c_.tolerance = abs_tol;
    if (kind == ConditionKind::inequality) c_.value = std::numeric_limits<double>::infinity();
  }

  // Residual `v` of an equality whose terms have absolute sum `scale`.
  void equality(double v, double scale, std::string where) {
    const double tol = abs_tol_ * std::max(1.0, scale);
    const double ratio = std::abs(v) / tol;
    ++c_.instances;
    if (c_.instances == 1 || ratio > worst_ratio_) {
      worst_ratio_ = ratio;
      c_.value = v;
      c_.tolerance = tol;
      c_.where = std::move(where);
    }
    c_.pass = c_.pass && ratio <= 1.0;
  }

  void inequality(double v, std::string where) {
    ++c_.instances;
    if (v < c_.value) {
      c_.value = v;
      c_.where = std::move(where);
    }
    c_.pass = c_.pass && v >= -abs_tol_;
  }

  void emit(Certificate& cert) {
    if (c_.instances > 0) cert.conditions.push_back(c_);
  }

 private:
  Condition c_;
  double abs_tol_;
  double worst_ratio_ = 0.0;
};

double taylor_weight(double base, double x, int i) {
  return std::pow(base - x, i) / factorial(static_cast<unsigned>(i));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(ConditionKind k) {
  return k == ConditionKind::equality ? "equality" : "inequality";
}

const Condition& Certificate::condition(const std::string& label) const {
  for (const auto& c : conditions)
    if (c.label == label) return c;
  throw ContractViolation("certificate has no condition '" + label + "'");
}

void finalize(Certificate& cert) {
  bool all_pass = true;
  bool violated = false;
  for (const auto& c : cert.conditions) {
    all_pass = all_pass && c.pass;
    if (c.kind == ConditionKind::equality) {
      violated = violated || std::abs(c.value) > 10.0 * c.tolerance;
    } else {
      violated = violated || c.value < -10.0 * c.tolerance;
    }
  }
  cert.verdict = all_pass ? Verdict::certified : violated ? Verdict::refuted : Verdict::inconclusive;
}

Certificate certify_integral_1d(const Function1D& P, double a, double b, int m,
                                std::size_t probes, MomentIndexing indexing,
                                const TolerancePolicy& tol, const QuadratureScheme& scheme) {
  if (!(a < b)) throw ContractViolation("certify_integral_1d: requires a < b");
  if (m < 0) throw ContractViolation("certify_integral_1d: order must be nonnegative");
  if (probes < 2) throw ContractViolation("certify_integral_1d: at least 2 probes required");
  tol.validate();
  scheme.validate();
  auto p = [&](double y) { return P(y); };

  Certificate cert;
  cert.tolerance = tol;
  cert.probes = {probes};

  Family moments("(7)", ConditionKind::equality, tol.abs_tol);
  const int first = indexing == MomentIndexing::from_zero ? 0 : 1;
  for (int i = first; i <= m; ++i) {
    const double v = integrate([&](double y) { return p(y) * taylor_weight(b, y, i); }, a, b, scheme);
    const double scale =
        integrate([&](double y) { return std::abs(p(y) * taylor_weight(b, y, i)); }, a, b, scheme);
    moments.equality(v, scale, "i=" + std::to_string(i));
  }
  moments.emit(cert);

  Family truncated("(8)", ConditionKind::inequality, tol.abs_tol);
  const double mf = factorial(static_cast<unsigned>(m));
  for (double s : chebyshev_lobatto(a, b, probes)) {
    const double v = integrate([&](double y) { return p(y) * std::pow(s - y, m) / mf; }, a, s, scheme);
    truncated.inequality(v, "s=" + fmt(s));
  }
  truncated.emit(cert);

  if (indexing == MomentIndexing::from_zero) {
    cert.notes.push_back("moment conditions cover i = 0.." + std::to_string(m) +
                         "; without i = 0 the constant -1 would violate positivity");
  } else {
    cert.notes.push_back("moment conditions restricted to i = 1.." + std::to_string(m) +
                         "; this variant is unsound (the constant -1 is a counterexample)");
  }
  cert.notes.push_back("the truncated-moment inequality is checked at " + std::to_string(probes) +
                       " Chebyshev-Lobatto probes, not on the continuum");
  finalize(cert);
  return cert;
}

Certificate certify_double_sum(const Matrix& p, const Grid2D& g, int m, int n,
                               const TolerancePolicy& tol) {
  const int M = static_cast<int>(g.ygrid.size()), N = static_cast<int>(g.zgrid.size());
  if (p.rows() != g.ygrid.size() || p.cols() != g.zgrid.size()) {
    throw ContractViolation("certify_double_sum: weight matrix does not match the grid");
  }
  if (m < 1 || m > M || n < 1 || n > N) {
    throw ContractViolation("certify_double_sum: order (" + std::to_string(m) + "," +
                            std::to_string(n) + ") exceeds the " + std::to_string(M) + "x" +
                            std::to_string(N) + " grid");
  }
  tol.validate();
  Matrix abs_p(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) abs_p(i, j) = std::abs(p(i, j));
  auto at = [](int t, int k) { return "t=" + std::to_string(t) + ",k=" + std::to_string(k); };

  Certificate cert;
  cert.tolerance = tol;
  cert.probes = {static_cast<std::size_t>(M), static_cast<std::size_t>(N)};

  Family c10("(10)", ConditionKind::equality, tol.abs_tol);
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < m; ++t)
      c10.equality(coeff_boundary_boundary(p, g, t, k), coeff_boundary_boundary(abs_p, g, t, k),
                   at(t, k));
  c10.emit(cert);

  Family c11("(11)", ConditionKind::equality, tol.abs_tol);
  for (int k = 0; k < n; ++k)
    for (int t = 1; t <= M - m; ++t)
      c11.equality(coeff_remainder_boundary(p, g, m, t, k),
                   coeff_remainder_boundary(abs_p, g, m, t, k), at(t, k));
  c11.emit(cert);

  Family c12("(12)", ConditionKind::equality, tol.abs_tol);
  for (int k = 1; k <= N - n; ++k)
    for (int t = 0; t < m; ++t)
      c12.equality(coeff_boundary_remainder(p, g, n, t, k),
                   coeff_boundary_remainder(abs_p, g, n, t, k), at(t, k));
  c12.emit(cert);

  Family c13("(13)", ConditionKind::inequality, tol.abs_tol);
  for (int k = 1; k <= N - n; ++k)
    for (int t = 1; t <= M - m; ++t)
      c13.inequality(coeff_remainder_remainder(p, g, m, n, t, k), at(t, k));
  c13.emit(cert);

  cert.notes.push_back("finite sums evaluated exactly; no probing involved");
  finalize(cert);
  return cert;
}

void FunctionalSpec::validate() const {
  if (!kernel.valid()) throw ContractViolation("functional: kernel is not set");
  if (!(rect.y.lo < rect.y.hi) || !(rect.z.lo < rect.z.hi) || !std::isfinite(rect.area())) {
    throw ContractViolation("functional: rectangle must be bounded and nondegenerate");
  }
  if (M < 0 || N < 0) throw ContractViolation("functional: orders must be nonnegative");
  scheme.validate();
}

Certificate certify_double_integral(const FunctionalSpec& spec, std::size_t probes_y,
                                    std::size_t probes_z, const TolerancePolicy& tol) {
  spec.validate();
  tol.validate();
  if (probes_y < 2 || probes_z < 2) {
    throw ContractViolation("certify_double_integral: at least 2 probes per axis required");
  }
  const double a = spec.rect.y.lo, b = spec.rect.y.hi, c = spec.rect.z.lo, d = spec.rect.z.hi;
  const int M = spec.M, N = spec.N;
  const auto& sch = spec.scheme;
  const auto sp = chebyshev_lobatto(a, b, probes_y);
  const auto tp = chebyshev_lobatto(c, d, probes_z);

  // Integral of P against wy(y) wz(z) over [a, yhi] x [c, zhi], with its
  // absolute counterpart.
  struct Value {
    double v, scale;
  };
  std::function<Value(double, double, const std::function<double(double)>&,
                      const std::function<double(double)>&)>
      moment;
  if (spec.kernel.factors()) {
    const Function1D& P1 = spec.kernel.factors()->first;
    const Function1D& P2 = spec.kernel.factors()->second;
    moment = [&, a, c](double yhi, double zhi, const std::function<double(double)>& wy,
                       const std::function<double(double)>& wz) {
      const double vy = integrate([&](double y) { return P1(y) * wy(y); }, a, yhi, sch);
      const double vz = integrate([&](double z) { return P2(z) * wz(z); }, c, zhi, sch);
      const double sy = integrate([&](double y) { return std::abs(P1(y) * wy(y)); }, a, yhi, sch);
      const double sz = integrate([&](double z) { return std::abs(P2(z) * wz(z)); }, c, zhi, sch);
      return Value{vy * vz, sy * sz};
    };
  } else {
    moment = [&, a, c](double yhi, double zhi, const std::function<double(double)>& wy,
                       const std::function<double(double)>& wz) {
      if (yhi == a || zhi == c) return Value{0.0, 0.0};
      const auto r = Rectangle::closed(a, yhi, c, zhi);
      const double v = integrate2(
          [&](double y, double z) { return spec.kernel(y, z) * wy(y) * wz(z); }, r, sch);
      const double s = integrate2(
          [&](double y, double z) { return std::abs(spec.kernel(y, z) * wy(y) * wz(z)); }, r, sch);
      return Value{v, s};
    };
  }
  auto up_y = [b](int i) { return [b, i](double y) { return taylor_weight(b, y, i); }; };
  auto up_z = [d](int j) { return [d, j](double z) { return taylor_weight(d, z, j); }; };
  auto trunc = [](double s, int M) { return [s, M](double y) { return taylor_weight(s, y, M); }; };

  Certificate cert;
  cert.tolerance = tol;
  cert.probes = {probes_y, probes_z};

  Family c34("(3-4)", ConditionKind::equality, tol.abs_tol);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= N; ++j) {
      const auto r = moment(b, d, up_y(i), up_z(j));
      c34.equality(r.v, r.scale, "i=" + std::to_string(i) + ",j=" + std::to_string(j));
    }
  c34.emit(cert);

  Family c35("(3-5)", ConditionKind::equality, tol.abs_tol);
  for (int j = 0; j <= N; ++j)
    for (double s : sp) {
      const auto r = moment(s, d, trunc(s, M), up_z(j));
      c35.equality(r.v, r.scale, "j=" + std::to_string(j) + ",s=" + fmt(s));
    }
  c35.emit(cert);

  Family c36("(3-6)", ConditionKind::equality, tol.abs_tol);
  for (int i = 0; i <= M; ++i)
    for (double t : tp) {
      const auto r = moment(b, t, up_y(i), trunc(t, N));
      c36.equality(r.v, r.scale, "i=" + std::to_string(i) + ",t=" + fmt(t));
    }
  c36.emit(cert);

  Family c37("(3-7)", ConditionKind::inequality, tol.abs_tol);
  for (double s : sp)
    for (double t : tp) {
      const auto r = moment(s, t, trunc(s, M), trunc(t, N));
      c37.inequality(r.v, "s=" + fmt(s) + ",t=" + fmt(t));
    }
  c37.emit(cert);

  cert.notes.push_back("continuum conditions checked on a " + std::to_string(probes_y) + "x" +
                       std::to_string(probes_z) + " Chebyshev-Lobatto probe lattice");
  finalize(cert);
  return cert;
}

double evaluate_functional(const FunctionalSpec& spec, const Function2D& f) {
  spec.validate();
  const auto& R = spec.rect;
  if (spec.kernel.factors() && f.factors()) {
    const auto& [ky, kz] = *spec.kernel.factors();
    const auto& [fy, fz] = *f.factors();
    const double iy = integrate([&](double y) { return ky(y) * fy(y); }, R.y.lo, R.y.hi, spec.scheme);
    const double iz = integrate([&](double z) { return kz(z) * fz(z); }, R.z.lo, R.z.hi, spec.scheme);
    return iy * iz;
  }
  return integrate2([&](double y, double z) { return spec.kernel(y, z) * f(y, z); }, spec.rect,
                    spec.scheme);
}

Function1D rodrigues_weight(int M, double a, double b) {
  if (M < 0 || M > 10) throw ContractViolation("rodrigues_weight: order must lie in 0..10");
  if (!(a < b)) throw ContractViolation("rodrigues_weight: requires a < b");
  // x(y) maps [a, b] onto [-1, 1]
  const Polynomial x{{-(a + b) / (b - a), 2.0 / (b - a)}};
  Polynomial prev{{1.0}};
  Polynomial cur = x;
  for (int n = 1; n <= M; ++n) {
    Polynomial next = (x * cur) * ((2.0 * n + 1.0) / (n + 1.0)) + prev * (-n / (n + 1.0));
    prev = std::move(cur);
    cur = std::move(next);
  }
  const double sign = (M + 1) % 2 == 0 ? 1.0 : -1.0;
  Function1D w = Function1D::polynomial(cur * sign, Interval::closed(a, b), "rodrigues");
  return Function1D("rodrigues", Interval::closed(a, b), w.max_order(),
                    [w](int i, double y) { return w.eval_unchecked(i, y); },
                    {{"M", M}, {"a", a}, {"b", b}});
}

Function2D rodrigues_kernel(int M, int N, const Rectangle& rect) {
  return tensor(rodrigues_weight(M, rect.y.lo, rect.y.hi), rodrigues_weight(N, rect.z.lo, rect.z.hi));
}

namespace {

StressResult reduce(std::vector<double> values) {
  StressResult r;
  if (values.empty()) throw ContractViolation("positivity_stress: empty sample");
  const auto it = std::min_element(values.begin(), values.end());
  r.worst = *it;
  r.worst_index = static_cast<std::size_t>(it - values.begin());
  r.values = std::move(values);
  return r;
}

}  // namespace

StressResult positivity_stress(const FunctionalSpec& spec, const std::vector<Function2D>& sample) {
  std::vector<double> v;
  for (const auto& f : sample) v.push_back(evaluate_functional(spec, f));
  return reduce(std::move(v));
}

StressResult positivity_stress(const Matrix& p, const Grid2D& grid,
                               const std::vector<Function2D>& sample) {
  if (p.rows() != grid.ygrid.size() || p.cols() != grid.zgrid.size()) {
    throw ContractViolation("positivity_stress: weight matrix does not match the grid");
  }
  std::vector<double> v;
  for (const auto& f : sample) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) acc.add(p(i, j) * f(grid.ygrid[i], grid.zgrid[j]));
    v.push_back(acc.value());
  }
  return reduce(std::move(v));
}

StressResult positivity_stress(const Function1D& P, double a, double b,
                               const std::vector<Function1D>& sample,
                               const QuadratureScheme& scheme) {
  std::vector<double> v;
  for (const auto& f : sample)
    v.push_back(integrate([&](double y) { return P(y) * f(y); }, a, b, scheme));
  return reduce(std::move(v));
}

}  // namespace nabla_kit
