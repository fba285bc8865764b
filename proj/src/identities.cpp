#include "nabla_kit/identities.hpp"

#include <algorithm>
#include <cmath>

#include "nabla_kit/differences.hpp"
#include "nabla_kit/errors.hpp"

namespace nabla_kit {

namespace {

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double fp(const Grid1D& g, int k, int i, int e) {
  return factorial_power(g, static_cast<std::size_t>(k), static_cast<std::size_t>(i),
                         static_cast<unsigned>(e));
}

void require_order(int m, std::size_t size, const char* what) {
  if (m < 1 || static_cast<std::size_t>(m) > size) {
    throw ContractViolation(std::string(what) + ": order " + std::to_string(m) +
                            " must lie in 1.." + std::to_string(size));
  }
}

// (-1)^{t+k} [y_{y0}..y_{y0+t}; [z_{z0}..z_{z0+k}; f]] with 1-based window starts.
double window_nabla(const Grid2D& g, const Matrix& values, int y0, int t, int z0, int k) {
  const auto ys = g.ygrid.points().subspan(static_cast<std::size_t>(y0 - 1),
                                           static_cast<std::size_t>(t + 1));
  const auto zs = g.zgrid.points().subspan(static_cast<std::size_t>(z0 - 1),
                                           static_cast<std::size_t>(k + 1));
  Matrix w(ys.size(), zs.size());
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < zs.size(); ++j)
      w(i, j) = values(static_cast<std::size_t>(y0 - 1) + i, static_cast<std::size_t>(z0 - 1) + j);
  return sign_pow(t + k) * divided_difference_2d(ys, zs, w);
}

// (-1)^t [y_{y0}..y_{y0+t}; values]
double window_nabla_1d(const Grid1D& g, std::span<const double> values, int y0, int t) {
  const auto first = static_cast<std::size_t>(y0 - 1);
  const auto count = static_cast<std::size_t>(t + 1);
  return sign_pow(t) * divided_difference(g.points().subspan(first, count),
                                          values.subspan(first, count));
}

void check_weight_shape(const Matrix& p, const Grid2D& g) {
  if (p.rows() != g.ygrid.size() || p.cols() != g.zgrid.size()) {
    throw ContractViolation("weight matrix is " + std::to_string(p.rows()) + "x" +
                            std::to_string(p.cols()) + " but the grid is " +
                            std::to_string(g.ygrid.size()) + "x" + std::to_string(g.zgrid.size()));
  }
}

bool covers(const Interval& dom, double lo, double hi) { return dom.lo <= lo && dom.hi >= hi; }

enum class Anchor { upper, lower };

// Shared machinery for the two double-integral expansions. With the upper
// anchor the Taylor point is (b, d) and truncated kernels live on [a, s];
// with the lower anchor the point is (a, c) and they live on [s, b].
class Expansion {
 public:
  Expansion(const Function2D& P, const Function2D& f, const Rectangle& rect, int M, int N,
            const QuadratureScheme& scheme, Anchor anchor)
      : P_(P), f_(f), M_(M), N_(N), scheme_(scheme), anchor_(anchor) {
    a_ = rect.y.lo;
    b_ = rect.y.hi;
    c_ = rect.z.lo;
    d_ = rect.z.hi;
    if (!(a_ < b_) || !(c_ < d_)) throw ContractViolation("rectangle must be nondegenerate");
    if (M < 0 || N < 0) throw ContractViolation("orders must be nonnegative");
    if (f.max_i() < M + 1 || f.max_j() < N + 1) {
      throw CapabilityError(f.name() + ": partials up to (" + std::to_string(M + 1) + "," +
                            std::to_string(N + 1) + ") are required");
    }
    if (!covers(P.domain().y, a_, b_) || !covers(P.domain().z, c_, d_)) {
      throw DomainError("kernel " + P.name() + " is not defined on the whole rectangle");
    }
    scheme.validate();
    Y_ = anchor == Anchor::upper ? b_ : a_;
    Z_ = anchor == Anchor::upper ? d_ : c_;
    qy_ = composite_nodes(a_, b_, scheme);
    qz_ = composite_nodes(c_, d_, scheme);
  }

  IdentityReport run(bool allow_separable) {
    const double lhs = integrate2(
        [&](double y, double z) { return P_.eval_unchecked(0, 0, y, z) * f_(y, z); },
        Rectangle::closed(a_, b_, c_, d_), scheme_);
    if (allow_separable && P_.factors()) return separable(lhs);
    return generic(lhs);
  }

 private:
  // Taylor weight of order i in y: (b-y)^i/i! or (y-a)^i/i!.
  double wy(double y, int i) const {
    return std::pow(anchor_ == Anchor::upper ? b_ - y : y - a_, i) / factorial(i);
  }
  double wz(double z, int j) const {
    return std::pow(anchor_ == Anchor::upper ? d_ - z : z - c_, j) / factorial(j);
  }
  // Truncated weight (s-y)^M/M! on [a,s], or (y-s)^M/M! on [s,b].
  double ty(double s, double y) const {
    return std::pow(anchor_ == Anchor::upper ? s - y : y - s, M_) / factorial(M_);
  }
  double tz(double t, double z) const {
    return std::pow(anchor_ == Anchor::upper ? t - z : z - t, N_) / factorial(N_);
  }
  QuadratureNodes region_y(double s) const {
    return anchor_ == Anchor::upper ? composite_nodes(a_, s, scheme_)
                                    : composite_nodes(s, b_, scheme_);
  }
  QuadratureNodes region_z(double t) const {
    return anchor_ == Anchor::upper ? composite_nodes(c_, t, scheme_)
                                    : composite_nodes(t, d_, scheme_);
  }
  double sgn(int k) const { return anchor_ == Anchor::upper ? sign_pow(k) : 1.0; }

  IdentityReport separable(double lhs) const {
    const Function1D& P1 = P_.factors()->first;
    const Function1D& P2 = P_.factors()->second;
    auto p1 = [&](double y) { return P1.eval_unchecked(0, y); };
    auto p2 = [&](double z) { return P2.eval_unchecked(0, z); };
    std::vector<double> my(static_cast<std::size_t>(M_ + 1)), mz(static_cast<std::size_t>(N_ + 1));
    for (int i = 0; i <= M_; ++i)
      my[static_cast<std::size_t>(i)] = integrate([&](double y) { return p1(y) * wy(y, i); }, a_, b_, scheme_);
    for (int j = 0; j <= N_; ++j)
      mz[static_cast<std::size_t>(j)] = integrate([&](double z) { return p2(z) * wz(z, j); }, c_, d_, scheme_);

    std::vector<double> Ty(qy_.x.size()), Tz(qz_.x.size());
    for (std::size_t k = 0; k < qy_.x.size(); ++k) {
      const double s = qy_.x[k];
      const auto r = region_y(s);
      CompensatedSum acc;
      for (std::size_t l = 0; l < r.x.size(); ++l) acc.add(r.w[l] * p1(r.x[l]) * ty(s, r.x[l]));
      Ty[k] = acc.value();
    }
    for (std::size_t k = 0; k < qz_.x.size(); ++k) {
      const double t = qz_.x[k];
      const auto r = region_z(t);
      CompensatedSum acc;
      for (std::size_t l = 0; l < r.x.size(); ++l) acc.add(r.w[l] * p2(r.x[l]) * tz(t, r.x[l]));
      Tz[k] = acc.value();
    }

    CompensatedSum corner, edge_y, edge_z, interior;
    for (int i = 0; i <= M_; ++i)
      for (int j = 0; j <= N_; ++j)
        corner.add(my[static_cast<std::size_t>(i)] * mz[static_cast<std::size_t>(j)] * sgn(i + j) *
                   f_.partial(i, j, Y_, Z_));
    for (int j = 0; j <= N_; ++j) {
      CompensatedSum outer;
      for (std::size_t k = 0; k < qy_.x.size(); ++k)
        outer.add(qy_.w[k] * Ty[k] * sgn(M_ + j + 1) * f_.partial(M_ + 1, j, qy_.x[k], Z_));
      edge_y.add(mz[static_cast<std::size_t>(j)] * outer.value());
    }
    for (int i = 0; i <= M_; ++i) {
      CompensatedSum outer;
      for (std::size_t k = 0; k < qz_.x.size(); ++k)
        outer.add(qz_.w[k] * Tz[k] * sgn(i + N_ + 1) * f_.partial(i, N_ + 1, Y_, qz_.x[k]));
      edge_z.add(my[static_cast<std::size_t>(i)] * outer.value());
    }
    for (std::size_t k = 0; k < qy_.x.size(); ++k) {
      CompensatedSum row;
      for (std::size_t l = 0; l < qz_.x.size(); ++l)
        row.add(qz_.w[l] * Tz[l] * f_.partial(M_ + 1, N_ + 1, qy_.x[k], qz_.x[l]));
      interior.add(qy_.w[k] * Ty[k] * row.value());
    }
    return make_identity_report(lhs, {{"corner", corner.value()},
                                      {"edge_y", edge_y.value()},
                                      {"edge_z", edge_z.value()},
                                      {"interior", sgn(M_ + N_) * interior.value()}});
  }

  IdentityReport generic(double lhs) const {
    auto P = [&](double y, double z) { return P_.eval_unchecked(0, 0, y, z); };
    const Rectangle rect = Rectangle::closed(a_, b_, c_, d_);

    CompensatedSum corner;
    for (int i = 0; i <= M_; ++i)
      for (int j = 0; j <= N_; ++j) {
        const double mu =
            integrate2([&](double y, double z) { return P(y, z) * wy(y, i) * wz(z, j); }, rect, scheme_);
        corner.add(mu * sgn(i + j) * f_.partial(i, j, Y_, Z_));
      }

    // Edge in y: for each outer s, the inner double integral over region(s) x [c,d].
    CompensatedSum edge_y;
    for (std::size_t k = 0; k < qy_.x.size(); ++k) {
      const double s = qy_.x[k];
      const auto r = region_y(s);
      CompensatedSum at_s;
      for (int j = 0; j <= N_; ++j) {
        CompensatedSum inner;
        for (std::size_t u = 0; u < r.x.size(); ++u) {
          CompensatedSum row;
          for (std::size_t v = 0; v < qz_.x.size(); ++v)
            row.add(qz_.w[v] * P(r.x[u], qz_.x[v]) * wz(qz_.x[v], j));
          inner.add(r.w[u] * ty(s, r.x[u]) * row.value());
        }
        at_s.add(inner.value() * sgn(M_ + j + 1) * f_.partial(M_ + 1, j, s, Z_));
      }
      edge_y.add(qy_.w[k] * at_s.value());
    }

    CompensatedSum edge_z;
    for (std::size_t k = 0; k < qz_.x.size(); ++k) {
      const double t = qz_.x[k];
      const auto r = region_z(t);
      CompensatedSum at_t;
      for (int i = 0; i <= M_; ++i) {
        CompensatedSum inner;
        for (std::size_t u = 0; u < qy_.x.size(); ++u) {
          CompensatedSum row;
          for (std::size_t v = 0; v < r.x.size(); ++v)
            row.add(r.w[v] * P(qy_.x[u], r.x[v]) * tz(t, r.x[v]));
          inner.add(qy_.w[u] * wy(qy_.x[u], i) * row.value());
        }
        at_t.add(inner.value() * sgn(i + N_ + 1) * f_.partial(i, N_ + 1, Y_, t));
      }
      edge_z.add(qz_.w[k] * at_t.value());
    }

    // Interior: inner nodes and truncated weights per outer node are reused.
    std::vector<QuadratureNodes> ry, rz;
    for (double s : qy_.x) {
      auto r = region_y(s);
      for (std::size_t u = 0; u < r.x.size(); ++u) r.w[u] *= ty(s, r.x[u]);
      ry.push_back(std::move(r));
    }
    for (double t : qz_.x) {
      auto r = region_z(t);
      for (std::size_t v = 0; v < r.x.size(); ++v) r.w[v] *= tz(t, r.x[v]);
      rz.push_back(std::move(r));
    }
    CompensatedSum interior;
    for (std::size_t k = 0; k < qy_.x.size(); ++k) {
      CompensatedSum row;
      for (std::size_t l = 0; l < qz_.x.size(); ++l) {
        CompensatedSum kernel;
        for (std::size_t u = 0; u < ry[k].x.size(); ++u) {
          double acc = 0.0;
          for (std::size_t v = 0; v < rz[l].x.size(); ++v) acc += rz[l].w[v] * P(ry[k].x[u], rz[l].x[v]);
          kernel.add(ry[k].w[u] * acc);
        }
        row.add(qz_.w[l] * kernel.value() * f_.partial(M_ + 1, N_ + 1, qy_.x[k], qz_.x[l]));
      }
      interior.add(qy_.w[k] * row.value());
    }
    return make_identity_report(lhs, {{"corner", corner.value()},
                                      {"edge_y", edge_y.value()},
                                      {"edge_z", edge_z.value()},
                                      {"interior", sgn(M_ + N_) * interior.value()}});
  }

  const Function2D& P_;
  const Function2D& f_;
  int M_, N_;
  QuadratureScheme scheme_;
  Anchor anchor_;
  double a_ = 0, b_ = 0, c_ = 0, d_ = 0, Y_ = 0, Z_ = 0;
  QuadratureNodes qy_, qz_;
};

}  // namespace

double IdentityReport::block(const std::string& label) const {
  for (const auto& [name, v] : block_values)
    if (name == label) return v;
  throw ContractViolation("no block named '" + label + "'");
}

IdentityReport make_identity_report(double lhs,
                                    std::vector<std::pair<std::string, double>> blocks) {
  IdentityReport r;
  r.lhs = lhs;
  CompensatedSum acc;
  for (const auto& b : blocks) acc.add(b.second);
  r.rhs = acc.value();
  r.block_values = std::move(blocks);
  r.abs_residual = std::abs(r.lhs - r.rhs);
  r.rel_residual = r.abs_residual / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  return r;
}

double boundary_coefficient(std::span<const double> p, const Grid1D& y, int k) {
  const int M = static_cast<int>(y.size());
  CompensatedSum acc;
  for (int j = 1; j <= M - k; ++j) acc.add(p[static_cast<std::size_t>(j - 1)] * fp(y, M, j, k));
  return acc.value();
}

double remainder_coefficient(std::span<const double> p, const Grid1D& y, int m, int k) {
  CompensatedSum acc;
  for (int j = 1; j <= k; ++j)
    acc.add(p[static_cast<std::size_t>(j - 1)] * fp(y, k + m - 1, j, m - 1));
  return acc.value();
}

double coeff_boundary_boundary(const Matrix& p, const Grid2D& g, int t, int k) {
  const int M = static_cast<int>(g.ygrid.size()), N = static_cast<int>(g.zgrid.size());
  CompensatedSum acc;
  for (int s = 1; s <= M - t; ++s)
    for (int r = 1; r <= N - k; ++r)
      acc.add(p(s - 1, r - 1) * fp(g.zgrid, N, r, k) * fp(g.ygrid, M, s, t));
  return acc.value();
}

double coeff_remainder_boundary(const Matrix& p, const Grid2D& g, int m, int t, int k) {
  const int N = static_cast<int>(g.zgrid.size());
  CompensatedSum acc;
  for (int s = 1; s <= t; ++s)
    for (int r = 1; r <= N - k; ++r)
      acc.add(p(s - 1, r - 1) * fp(g.zgrid, N, r, k) * fp(g.ygrid, t + m - 1, s, m - 1));
  return acc.value();
}

double coeff_boundary_remainder(const Matrix& p, const Grid2D& g, int n, int t, int k) {
  const int M = static_cast<int>(g.ygrid.size());
  CompensatedSum acc;
  for (int s = 1; s <= M - t; ++s)
    for (int r = 1; r <= k; ++r)
      acc.add(p(s - 1, r - 1) * fp(g.zgrid, k + n - 1, r, n - 1) * fp(g.ygrid, M, s, t));
  return acc.value();
}

double coeff_remainder_remainder(const Matrix& p, const Grid2D& g, int m, int n, int t, int k) {
  CompensatedSum acc;
  for (int s = 1; s <= t; ++s)
    for (int r = 1; r <= k; ++r)
      acc.add(p(s - 1, r - 1) * fp(g.ygrid, t + m - 1, s, m - 1) *
              fp(g.zgrid, k + n - 1, r, n - 1));
  return acc.value();
}

IdentityReport seq_identity(std::span<const double> p, std::span<const double> a, int m) {
  const int M = static_cast<int>(a.size());
  if (p.size() != a.size()) throw ContractViolation("seq_identity: p and a differ in length");
  require_order(m, a.size(), "seq_identity");
  CompensatedSum lhs;
  for (int i = 0; i < M; ++i) lhs.add(p[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)]);

  CompensatedSum boundary;
  for (int k = 0; k < m; ++k) {
    CompensatedSum w;
    for (int i = 1; i <= M - k; ++i)
      w.add(falling_factorial(M - i, static_cast<unsigned>(k)) * p[static_cast<std::size_t>(i - 1)]);
    boundary.add(sequence_nabla(a, static_cast<unsigned>(k), static_cast<std::size_t>(M - k)) *
                 w.value() / factorial(static_cast<unsigned>(k)));
  }
  CompensatedSum remainder;
  for (int k = 1; k <= M - m; ++k) {
    CompensatedSum w;
    for (int i = 1; i <= k; ++i)
      w.add(falling_factorial(k - i + m - 1, static_cast<unsigned>(m - 1)) *
            p[static_cast<std::size_t>(i - 1)]);
    remainder.add(w.value() * sequence_nabla(a, static_cast<unsigned>(m), static_cast<std::size_t>(k)));
  }
  return make_identity_report(
      lhs.value(), {{"boundary", boundary.value()},
                    {"remainder", remainder.value() / factorial(static_cast<unsigned>(m - 1))}});
}

IdentityReport func_identity(std::span<const double> p, const Function1D& f, const Grid1D& y,
                             int m) {
  const auto values = sample(f, y);
  return func_identity(p, values, y, m);
}

IdentityReport func_identity(std::span<const double> p, std::span<const double> values,
                             const Grid1D& y, int m) {
  const int M = static_cast<int>(y.size());
  if (p.size() != y.size() || values.size() != y.size()) {
    throw ContractViolation("func_identity: weights, values and grid differ in length");
  }
  require_order(m, y.size(), "func_identity");
  CompensatedSum lhs;
  for (int i = 0; i < M; ++i)
    lhs.add(p[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)]);
  CompensatedSum boundary;
  for (int k = 0; k < m; ++k)
    boundary.add(boundary_coefficient(p, y, k) * window_nabla_1d(y, values, M - k, k));
  CompensatedSum remainder;
  for (int k = 1; k <= M - m; ++k)
    remainder.add(remainder_coefficient(p, y, m, k) * window_nabla_1d(y, values, k, m) *
                  (y.node(static_cast<std::size_t>(k + m)) - y.node(static_cast<std::size_t>(k))));
  return make_identity_report(lhs.value(),
                              {{"boundary", boundary.value()}, {"remainder", remainder.value()}});
}

IdentityReport integral_identity_1d(const Function1D& P, const Function1D& f, double a, double b,
                                    int m, const QuadratureScheme& scheme) {
  if (!(a < b)) throw ContractViolation("integral_identity_1d: requires a < b");
  if (m < 0) throw ContractViolation("integral_identity_1d: order must be nonnegative");
  if (f.max_order() < m + 1) {
    throw CapabilityError(f.name() + ": derivative of order " + std::to_string(m + 1) +
                          " is required");
  }
  scheme.validate();
  auto p = [&](double y) { return P(y); };
  const double lhs = integrate([&](double y) { return p(y) * f(y); }, a, b, scheme);

  CompensatedSum boundary;
  for (int i = 0; i <= m; ++i) {
    const double mom = integrate(
        [&](double y) { return p(y) * std::pow(b - y, i) / factorial(static_cast<unsigned>(i)); },
        a, b, scheme);
    boundary.add(mom * sign_pow(i) * f.derivative(i, b));
  }
  const double mf = factorial(static_cast<unsigned>(m));
  const auto outer = composite_nodes(a, b, scheme);
  CompensatedSum remainder;
  for (std::size_t k = 0; k < outer.x.size(); ++k) {
    const double s = outer.x[k];
    const double T = integrate([&](double y) { return p(y) * std::pow(s - y, m) / mf; }, a, s, scheme);
    remainder.add(outer.w[k] * T * sign_pow(m + 1) * f.derivative(m + 1, s));
  }
  return make_identity_report(lhs,
                              {{"boundary", boundary.value()}, {"remainder", remainder.value()}});
}

IdentityReport double_sum_identity(const Matrix& p, const Function2D& f, const Grid2D& grid, int m,
                                   int n) {
  return double_sum_identity(p, sample(f, grid), grid, m, n);
}

IdentityReport double_sum_identity(const Matrix& p, const Matrix& values, const Grid2D& g, int m,
                                   int n) {
  check_weight_shape(p, g);
  check_weight_shape(values, g);
  require_order(m, g.ygrid.size(), "double_sum_identity (y)");
  require_order(n, g.zgrid.size(), "double_sum_identity (z)");
  const int M = static_cast<int>(g.ygrid.size()), N = static_cast<int>(g.zgrid.size());
  const auto& y = g.ygrid;
  const auto& z = g.zgrid;
  auto Y = [&](int i) { return y.node(static_cast<std::size_t>(i)); };
  auto Z = [&](int j) { return z.node(static_cast<std::size_t>(j)); };

  CompensatedSum lhs;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j) lhs.add(p(i, j) * values(i, j));

  CompensatedSum bb, rb, br, rr;
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < m; ++t)
      bb.add(coeff_boundary_boundary(p, g, t, k) * window_nabla(g, values, M - t, t, N - k, k));
  for (int k = 0; k < n; ++k)
    for (int t = 1; t <= M - m; ++t)
      rb.add(coeff_remainder_boundary(p, g, m, t, k) * window_nabla(g, values, t, m, N - k, k) *
             (Y(t + m) - Y(t)));
  for (int k = 1; k <= N - n; ++k)
    for (int t = 0; t < m; ++t)
      br.add(coeff_boundary_remainder(p, g, n, t, k) * window_nabla(g, values, M - t, t, k, n) *
             (Z(k + n) - Z(k)));
  for (int k = 1; k <= N - n; ++k)
    for (int t = 1; t <= M - m; ++t)
      rr.add(coeff_remainder_remainder(p, g, m, n, t, k) * window_nabla(g, values, t, m, k, n) *
             (Y(t + m) - Y(t)) * (Z(k + n) - Z(k)));
  return make_identity_report(lhs.value(), {{"boundary/boundary", bb.value()},
                                            {"remainder/boundary", rb.value()},
                                            {"boundary/remainder", br.value()},
                                            {"remainder/remainder", rr.value()}});
}

IdentityReport separable_double_sum_identity(const Matrix& p, const Function1D& f,
                                             const Function1D& g, const Grid2D& grid, int m,
                                             int n) {
  check_weight_shape(p, grid);
  require_order(m, grid.ygrid.size(), "separable_double_sum_identity (y)");
  require_order(n, grid.zgrid.size(), "separable_double_sum_identity (z)");
  const int M = static_cast<int>(grid.ygrid.size()), N = static_cast<int>(grid.zgrid.size());
  const auto& y = grid.ygrid;
  const auto& z = grid.zgrid;
  const auto fv = sample(f, y);
  const auto gv = sample(g, z);
  auto Y = [&](int i) { return y.node(static_cast<std::size_t>(i)); };
  auto Z = [&](int j) { return z.node(static_cast<std::size_t>(j)); };

  CompensatedSum lhs;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j)
      lhs.add(p(i, j) * fv[static_cast<std::size_t>(i)] * gv[static_cast<std::size_t>(j)]);

  CompensatedSum bb, rb, br, rr;
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < m; ++t)
      bb.add(coeff_boundary_boundary(p, grid, t, k) * window_nabla_1d(y, fv, M - t, t) *
             window_nabla_1d(z, gv, N - k, k));
  for (int k = 0; k < n; ++k)
    for (int t = 1; t <= M - m; ++t)
      rb.add(coeff_remainder_boundary(p, grid, m, t, k) * window_nabla_1d(z, gv, N - k, k) *
             window_nabla_1d(y, fv, t, m) * (Y(t + m) - Y(t)));
  for (int k = 1; k <= N - n; ++k)
    for (int t = 0; t < m; ++t)
      br.add(coeff_boundary_remainder(p, grid, n, t, k) * window_nabla_1d(z, gv, k, n) *
             (Z(k + n) - Z(k)) * window_nabla_1d(y, fv, M - t, t));
  for (int k = 1; k <= N - n; ++k)
    for (int t = 1; t <= M - m; ++t)
      rr.add(coeff_remainder_remainder(p, grid, m, n, t, k) * window_nabla_1d(z, gv, k, n) *
             (Z(k + n) - Z(k)) * window_nabla_1d(y, fv, t, m) * (Y(t + m) - Y(t)));
  return make_identity_report(lhs.value(), {{"boundary/boundary", bb.value()},
                                            {"remainder/boundary", rb.value()},
                                            {"boundary/remainder", br.value()},
                                            {"remainder/remainder", rr.value()}});
}

IdentityReport double_integral_identity(const Function2D& P, const Function2D& f,
                                        const Rectangle& rect, int M, int N,
                                        const QuadratureScheme& scheme, bool allow_separable) {
  return Expansion(P, f, rect, M, N, scheme, Anchor::upper).run(allow_separable);
}

IdentityReport corner_double_integral_identity(const Function2D& P, const Function2D& f,
                                               const Rectangle& rect, int M, int N,
                                               const QuadratureScheme& scheme,
                                               bool allow_separable) {
  return Expansion(P, f, rect, M, N, scheme, Anchor::lower).run(allow_separable);
}

}  // namespace nabla_kit
