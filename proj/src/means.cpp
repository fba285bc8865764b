#include "nabla_kit/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nabla_kit/errors.hpp"
#include "nabla_kit/families.hpp"

namespace nabla_kit {

namespace {

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Scans h over a uniform grid x grid lattice on the rectangle.
BracketResult bracket(double ratio, const Rectangle& rect, std::size_t grid,
                      const std::function<double(double, double)>& h, double abs_tol) {
  if (grid < 2) throw ContractViolation("bracketing grid needs at least 2 points per axis");
  const auto ys = Grid1D::uniform(rect.y.lo, rect.y.hi, grid);
  const auto zs = Grid1D::uniform(rect.z.lo, rect.z.hi, grid);
  BracketResult r;
  r.ratio = ratio;
  r.grid = grid;
  r.range_min = std::numeric_limits<double>::infinity();
  r.range_max = -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (double y : ys.points())
    for (double z : zs.points()) {
      const double v = h(y, z);
      r.range_min = std::min(r.range_min, v);
      r.range_max = std::max(r.range_max, v);
      if (std::abs(v - ratio) < best) {
        best = std::abs(v - ratio);
        r.witness_y = y;
        r.witness_z = z;
        r.witness_value = v;
      }
    }
  r.bracketed = ratio >= r.range_min - abs_tol && ratio <= r.range_max + abs_tol;
  return r;
}

void require_top_partial(const Function2D& f, int M, int N) {
  if (f.max_i() < M + 1 || f.max_j() < N + 1) {
    throw CapabilityError(f.name() + ": partial (" + std::to_string(M + 1) + "," +
                          std::to_string(N + 1) + ") is required");
  }
}

}  // namespace

Function2D g0(int M, int N) {
  if (M < 0 || N < 0) throw ContractViolation("g0: orders must be nonnegative");
  auto mono = [](int k) {
    Polynomial p;
    p.coeffs.assign(static_cast<std::size_t>(k + 1), 0.0);
    p.coeffs.back() = 1.0 / factorial(static_cast<unsigned>(k));
    return p;
  };
  auto g = Function1D::polynomial(mono(M + 1) * sign_pow(M + N), Interval::real_line(), "g0_y");
  auto h = Function1D::polynomial(mono(N + 1), Interval::real_line(), "g0_z");
  return tensor(g, h);
}

BracketResult mvt_localize(const FunctionalSpec& spec, const Function2D& f, std::size_t grid,
                           const TolerancePolicy& tol) {
  spec.validate();
  require_top_partial(f, spec.M, spec.N);
  const double lg = evaluate_functional(spec, g0(spec.M, spec.N));
  if (!(lg > tol.abs_tol)) {
    throw NumericalError("degenerate functional: Lambda(G0) = " + std::to_string(lg));
  }
  const double ratio = evaluate_functional(spec, f) / lg;
  const double sign = sign_pow(spec.M + spec.N);
  return bracket(ratio, spec.rect, grid,
                 [&](double y, double z) { return sign * f.partial(spec.M + 1, spec.N + 1, y, z); },
                 tol.abs_tol);
}

BracketResult cauchy_ratio(const FunctionalSpec& spec, const Function2D& f, const Function2D& g,
                           std::size_t grid, const TolerancePolicy& tol) {
  spec.validate();
  require_top_partial(f, spec.M, spec.N);
  require_top_partial(g, spec.M, spec.N);
  const double lg = evaluate_functional(spec, g);
  if (!(std::abs(lg) > tol.abs_tol)) {
    throw NumericalError("cauchy_ratio: Lambda(g) vanishes (" + std::to_string(lg) + ")");
  }
  const double ratio = evaluate_functional(spec, f) / lg;
  return bracket(ratio, spec.rect, grid,
                 [&](double y, double z) {
                   const double den = g.partial(spec.M + 1, spec.N + 1, y, z);
                   if (!(std::abs(den) > tol.abs_tol)) {
                     throw DomainError("cauchy_ratio: top partial of g vanishes at (" +
                                       std::to_string(y) + ", " + std::to_string(z) + ")");
                   }
                   return f.partial(spec.M + 1, spec.N + 1, y, z) / den;
                 },
                 tol.abs_tol);
}

PowerMeanResult power_mean(const FunctionalSpec& spec, double p, double q,
                           const TolerancePolicy& tol) {
  spec.validate();
  const int M = spec.M;
  if (spec.N != M) throw ContractViolation("power_mean: requires M = N");
  if (!(spec.rect.y.lo > 0) || !(spec.rect.z.lo > 0)) {
    throw DomainError("power_mean: rectangle must lie in the open positive quadrant");
  }
  if (p == q) throw ContractViolation("power_mean: requires p != q");
  for (double e : {p, q}) {
    if (e == std::round(e) && e >= -1 && e <= M - 1) {
      throw ContractViolation("power_mean: exponent " + std::to_string(e) +
                              " lies in the excluded set {-1, 0, ..., M-1}");
    }
  }
  auto power = [](double e) {
    return Function2D("yz_power", Rectangle{Interval::positive(), Interval::positive()}, 0, 0,
                      [e](int, int, double y, double z) { return std::pow(y * z, e); });
  };
  PowerMeanResult r;
  r.lambda_p = evaluate_functional(spec, power(p + 1));
  r.lambda_q = evaluate_functional(spec, power(q + 1));
  const double dq = descending_product(q + 1, M);
  const double dp = descending_product(p + 1, M);
  const double rhs = dq * dq * r.lambda_p / (dp * dp * r.lambda_q);
  if (!(rhs > 0) || !std::isfinite(rhs)) {
    throw DomainError("power_mean: moment ratio " + std::to_string(rhs) + " is not positive");
  }
  r.value = std::pow(rhs, 1.0 / (p - q));
  r.lower = spec.rect.y.lo * spec.rect.z.lo;
  r.upper = spec.rect.y.hi * spec.rect.z.hi;
  r.bracketed = r.value >= r.lower - tol.abs_tol && r.value <= r.upper + tol.abs_tol;
  return r;
}

std::pair<double, double> default_shifts(const Rectangle& rect) {
  return {1.0 + std::abs(rect.y.lo), rect.z.lo - 1.0};
}

double snap_exponent(double q, int M) {
  const double k = std::round(q);
  if (k >= 0 && k <= M && std::abs(q - k) < kBranchSnap) return k;
  return q;
}

double lambda_psi(const FunctionalSpec& spec, double q, double k1, double k2) {
  spec.validate();
  if (spec.N != spec.M) throw ContractViolation("lambda_psi: requires M = N");
  if (!(spec.rect.y.lo + k1 > 0) || !(spec.rect.z.lo - k2 > 0)) {
    throw DomainError("lambda_psi: rectangle leaves the domain y + k1 > 0, z - k2 > 0");
  }
  return evaluate_functional(spec, family_psi_q(snap_exponent(q, spec.M), spec.M, k1, k2));
}

double m_st_mean(const MeanParams& params, double s, double t, double step) {
  auto L = [&](double q) { return lambda_psi(params.functional, q, params.k1, params.k2); };
  if (s != t) {
    const double ls = L(s), lt = L(t);
    if (!(ls > 0) || !(lt > 0)) {
      throw DomainError("m_st_mean: Lambda(psi) must be positive (got " + std::to_string(ls) +
                        ", " + std::to_string(lt) + ")");
    }
    return std::pow(ls / lt, 1.0 / (s - t));
  }
  if (!(step > 0)) throw ContractViolation("m_st_mean: step must be positive");
  const double ls = L(s);
  if (!(ls > 0)) throw DomainError("m_st_mean: Lambda(psi) must be positive");
  auto central = [&](double h) { return (L(s + h) - L(s - h)) / (2.0 * h); };
  const double d = (4.0 * central(step / 2.0) - central(step)) / 3.0;
  return std::exp(d / ls);
}

GramResult gram_test(const GramSpec& spec, const TolerancePolicy& tol) {
  const auto& q = spec.exponents;
  if (q.empty()) throw ContractViolation("gram_test: at least one exponent required");
  for (double e : q)
    if (!std::isfinite(e)) throw ContractViolation("gram_test: exponents must be finite");
  GramResult r;
  r.exponents = q;
  r.matrix = Matrix(q.size(), q.size());
  const auto& p = spec.params;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i; j < q.size(); ++j) {
      const double v = lambda_psi(p.functional, 0.5 * (q[i] + q[j]), p.k1, p.k2);
      r.matrix(i, j) = v;
      r.matrix(j, i) = v;
    }
  r.psd = psd_check(r.matrix, tol);
  return r;
}

double lyapunov_residual(double r, double s, double t, double Lr, double Ls, double Lt) {
  if (!(r < s && s < t)) throw ContractViolation("lyapunov: requires r < s < t");
  if (!(Lr > 0) || !(Ls > 0) || !(Lt > 0)) {
    throw DomainError("lyapunov: values must be positive");
  }
  return (t - s) * std::log(Lr) + (s - r) * std::log(Lt) - (t - r) * std::log(Ls);
}

LyapunovResult lyapunov_check(const MeanParams& params, double r, double s, double t,
                              const TolerancePolicy& tol) {
  if (!(r < s && s < t)) throw ContractViolation("lyapunov_check: requires r < s < t");
  auto L = [&](double q) { return lambda_psi(params.functional, q, params.k1, params.k2); };
  LyapunovResult out;
  out.lambda_r = L(r);
  out.lambda_s = L(s);
  out.lambda_t = L(t);
  out.applicable = out.lambda_r > 0 && out.lambda_s > 0 && out.lambda_t > 0;
  if (!out.applicable) return out;
  out.residual = lyapunov_residual(r, s, t, out.lambda_r, out.lambda_s, out.lambda_t);
  out.holds = out.residual >= -tol.abs_tol;
  return out;
}

double expconv_sequence_test(const Function1D& omega, std::span<const double> rhos,
                             std::span<const double> ys) {
  if (rhos.size() != ys.size()) {
    throw ContractViolation("expconv_sequence_test: rho and y lists differ in length");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      acc.add(rhos[i] * rhos[j] * omega(0.5 * (ys[i] + ys[j])));
  return acc.value();
}

}  // namespace nabla_kit
