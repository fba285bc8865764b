#include "nabla_kit/differences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nabla_kit/errors.hpp"

namespace nabla_kit {

namespace {

void require_distinct(std::span<const double> points) {
  if (points.empty()) throw ContractViolation("divided difference: at least one point required");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) {
        throw ContractViolation(
            "divided difference: coincident points are not supported (confluent case)");
      }
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

DividedDiffTable::DividedDiffTable(Grid1D points, std::vector<double> values)
    : points_(std::move(points)) {
  if (values.size() != points_.size()) {
    throw ContractViolation("DividedDiffTable: one value per point required");
  }
  const std::size_t n = points_.size();
  rows_.push_back(std::move(values));
  for (std::size_t r = 1; r < n; ++r) {
    const auto& prev = rows_.back();
    std::vector<double> next(n - r);
    for (std::size_t i = 0; i + r < n; ++i) {
      next[i] = (prev[i + 1] - prev[i]) / (points_[i + r] - points_[i]);
    }
    rows_.push_back(std::move(next));
  }
}

DividedDiffTable DividedDiffTable::of(const Function1D& f, const Grid1D& points) {
  return DividedDiffTable(points, sample(f, points));
}

double divided_difference(std::span<const double> points, std::span<const double> values) {
  if (points.size() != values.size()) {
    throw ContractViolation("divided_difference: one value per point required");
  }
  require_distinct(points);
  std::vector<double> cur(values.begin(), values.end());
  const std::size_t n = points.size();
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i + r < n; ++i) {
      cur[i] = (cur[i + 1] - cur[i]) / (points[i + r] - points[i]);
    }
  }
  return cur.front();
}

double divided_difference(const Function1D& f, std::span<const double> points) {
  std::vector<double> vals;
  vals.reserve(points.size());
  for (double p : points) vals.push_back(f(p));
  return divided_difference(points, vals);
}

double divided_difference(const Function1D& f, const Grid1D& points) {
  return divided_difference(f, points.points());
}

double nabla_diff(const Function1D& f, const Grid1D& points) {
  const int m = static_cast<int>(points.size()) - 1;
  return sign_pow(m) * divided_difference(f, points);
}

double divided_difference_2d(std::span<const double> ys, std::span<const double> zs,
                             const Matrix& values, InnerAxis inner) {
  if (values.rows() != ys.size() || values.cols() != zs.size()) {
    throw ContractViolation("divided_difference_2d: value matrix does not match the grid");
  }
  require_distinct(ys);
  require_distinct(zs);
  if (inner == InnerAxis::z) {
    std::vector<double> partial(ys.size());
    std::vector<double> row(zs.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
      for (std::size_t j = 0; j < zs.size(); ++j) row[j] = values(i, j);
      partial[i] = divided_difference(zs, row);
    }
    return divided_difference(ys, partial);
  }
  std::vector<double> partial(zs.size());
  std::vector<double> col(ys.size());
  for (std::size_t j = 0; j < zs.size(); ++j) {
    for (std::size_t i = 0; i < ys.size(); ++i) col[i] = values(i, j);
    partial[j] = divided_difference(ys, col);
  }
  return divided_difference(zs, partial);
}

double divided_difference_2d(const Function2D& f, const Grid2D& grid, InnerAxis inner) {
  return divided_difference_2d(grid.ygrid.points(), grid.zgrid.points(), sample(f, grid), inner);
}

double nabla_diff_2d(const Function2D& f, const Grid2D& grid) {
  const int m = static_cast<int>(grid.ygrid.size()) - 1;
  const int n = static_cast<int>(grid.zgrid.size()) - 1;
  return sign_pow(m + n) * divided_difference_2d(f, grid);
}

double finite_difference_2d(const Function2D& f, double y, double z, double h, double k, int m,
                            int n) {
  if (m < 0 || n < 0) throw ContractViolation("finite_difference_2d: negative order");
  if ((m > 0 && h == 0.0) || (n > 0 && k == 0.0)) {
    throw ContractViolation("finite_difference_2d: steps must be nonzero");
  }
  CompensatedSum acc;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double w = sign_pow(m + n - i - j) * binomial(static_cast<unsigned>(m), static_cast<unsigned>(i)) *
                       binomial(static_cast<unsigned>(n), static_cast<unsigned>(j));
      acc.add(w * f(y + i * h, z + j * k));
    }
  }
  return acc.value();
}

double sequence_nabla(std::span<const double> a, unsigned n, std::size_t m) {
  if (m == 0 || m + n > a.size()) {
    throw ContractViolation("sequence_nabla: indices " + std::to_string(m) + ".." +
                            std::to_string(m + n) + " exceed the sequence");
  }
  std::vector<double> cur(a.begin() + static_cast<std::ptrdiff_t>(m - 1),
                          a.begin() + static_cast<std::ptrdiff_t>(m + n));
  for (unsigned r = 0; r < n; ++r) {
    for (std::size_t i = 0; i + 1 < cur.size() - r; ++i) cur[i] = cur[i] - cur[i + 1];
  }
  return cur.front();
}

ConvexityVerdict classify_sampled(const Grid1D& grid, std::span<const double> values, int m,
                                  const TolerancePolicy& tol) {
  if (m < 0 || static_cast<std::size_t>(m) + 1 > grid.size()) {
    throw ContractViolation("classify_sampled: grid shorter than order + 1");
  }
  if (values.size() != grid.size()) throw ContractViolation("classify_sampled: value count mismatch");
  ConvexityVerdict v;
  v.order_y = m;
  v.worst_delta.value = v.worst_nabla.value = std::numeric_limits<double>::infinity();
  const auto w = static_cast<std::size_t>(m) + 1;
  for (std::size_t s = 0; s + w <= grid.size(); ++s) {
    const double dd = divided_difference(grid.points().subspan(s, w), values.subspan(s, w));
    const double nd = sign_pow(m) * dd;
    if (dd < v.worst_delta.value) v.worst_delta = {s, 0, dd};
    if (nd < v.worst_nabla.value) v.worst_nabla = {s, 0, nd};
    ++v.windows;
  }
  v.convex = v.worst_delta.value >= -tol.abs_tol;
  v.nabla_convex = v.worst_nabla.value >= -tol.abs_tol;
  return v;
}

ConvexityVerdict classify_sampled(const Function1D& f, const Grid1D& grid, int m,
                                  const TolerancePolicy& tol) {
  return classify_sampled(grid, sample(f, grid), m, tol);
}

ConvexityVerdict classify_sampled(const Grid2D& grid, const Matrix& values, int m, int n,
                                  const TolerancePolicy& tol) {
  if (m < 0 || n < 0 || static_cast<std::size_t>(m) + 1 > grid.ygrid.size() ||
      static_cast<std::size_t>(n) + 1 > grid.zgrid.size()) {
    throw ContractViolation("classify_sampled: grid shorter than order + 1 on some axis");
  }
  if (values.rows() != grid.ygrid.size() || values.cols() != grid.zgrid.size()) {
    throw ContractViolation("classify_sampled: value matrix does not match the grid");
  }
  ConvexityVerdict v;
  v.order_y = m;
  v.order_z = n;
  v.worst_delta.value = v.worst_nabla.value = std::numeric_limits<double>::infinity();
  const auto wy = static_cast<std::size_t>(m) + 1, wz = static_cast<std::size_t>(n) + 1;
  Matrix block(wy, wz);
  for (std::size_t s = 0; s + wy <= grid.ygrid.size(); ++s) {
    for (std::size_t t = 0; t + wz <= grid.zgrid.size(); ++t) {
      for (std::size_t i = 0; i < wy; ++i)
        for (std::size_t j = 0; j < wz; ++j) block(i, j) = values(s + i, t + j);
      const double dd = divided_difference_2d(grid.ygrid.points().subspan(s, wy),
                                              grid.zgrid.points().subspan(t, wz), block);
      const double nd = sign_pow(m + n) * dd;
      if (dd < v.worst_delta.value) v.worst_delta = {s, t, dd};
      if (nd < v.worst_nabla.value) v.worst_nabla = {s, t, nd};
      ++v.windows;
    }
  }
  v.convex = v.worst_delta.value >= -tol.abs_tol;
  v.nabla_convex = v.worst_nabla.value >= -tol.abs_tol;
  return v;
}

ConvexityVerdict classify_sampled(const Function2D& f, const Grid2D& grid, int m, int n,
                                  const TolerancePolicy& tol) {
  return classify_sampled(grid, sample(f, grid), m, n, tol);
}

Matrix sample(const Function2D& f, const Grid2D& grid) {
  Matrix v(grid.ygrid.size(), grid.zgrid.size());
  for (std::size_t i = 0; i < grid.ygrid.size(); ++i)
    for (std::size_t j = 0; j < grid.zgrid.size(); ++j) v(i, j) = f(grid.ygrid[i], grid.zgrid[j]);
  return v;
}

std::vector<double> sample(const Function1D& f, const Grid1D& grid) {
  std::vector<double> v;
  v.reserve(grid.size());
  for (double p : grid.points()) v.push_back(f(p));
  return v;
}

}  // namespace nabla_kit
