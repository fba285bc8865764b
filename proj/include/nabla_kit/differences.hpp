#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/function.hpp"
#include "nabla_kit/grid.hpp"

namespace nabla_kit {

/// Triangular table of divided differences. Row 0 holds the values; row r
/// holds [y_i, ..., y_{i+r}; f] for i = 0 .. n-1-r.
class DividedDiffTable {
 public:
  DividedDiffTable(Grid1D points, std::vector<double> values);
  static DividedDiffTable of(const Function1D& f, const Grid1D& points);

  const Grid1D& points() const { return points_; }
  int order() const { return static_cast<int>(points_.size()) - 1; }
  std::span<const double> row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
  double entry(int r, std::size_t i) const { return rows_.at(static_cast<std::size_t>(r)).at(i); }
  /// Highest-order entry [y_0, ..., y_n; f].
  double top() const { return rows_.back().front(); }

 private:
  Grid1D points_;
  std::vector<std::vector<double>> rows_;
};

/// m-th divided difference over m+1 distinct points, in any order, by the
/// recursive definition. Duplicate points are a contract violation.
double divided_difference(std::span<const double> points, std::span<const double> values);
double divided_difference(const Function1D& f, std::span<const double> points);
double divided_difference(const Function1D& f, const Grid1D& points);

/// (-1)^m times the m-th divided difference, m = #points - 1.
double nabla_diff(const Function1D& f, const Grid1D& points);

enum class InnerAxis { z, y };

/// Iterated divided difference [y..; [z..; f]] of order (m, n) from values
/// sampled on the (m+1) x (n+1) grid. `inner` selects which axis is
/// differenced first; both orders agree mathematically.
double divided_difference_2d(std::span<const double> ys, std::span<const double> zs,
                             const Matrix& values, InnerAxis inner = InnerAxis::z);
double divided_difference_2d(const Function2D& f, const Grid2D& grid,
                             InnerAxis inner = InnerAxis::z);
/// (-1)^{m+n} times divided_difference_2d.
double nabla_diff_2d(const Function2D& f, const Grid2D& grid);

/// Double binomial sum of f(y + i h, z + j k); equals the composition of
/// the one-dimensional forward differences.
double finite_difference_2d(const Function2D& f, double y, double z, double h, double k, int m,
                            int n);

/// nabla^{(n)} a_m with a 1-based index m, where nabla a_m = a_m - a_{m+1}.
double sequence_nabla(std::span<const double> a, unsigned n, std::size_t m);

struct WindowValue {
  std::size_t y_start = 0;  // 0-based first node of the window
  std::size_t z_start = 0;
  double value = 0.0;
};

struct ConvexityVerdict {
  int order_y = 0;
  int order_z = 0;  // 0 for univariate data
  bool convex = false;         // every Delta-difference >= -abs_tol
  bool nabla_convex = false;   // every nabla-difference >= -abs_tol
  WindowValue worst_delta;     // smallest Delta-difference
  WindowValue worst_nabla;     // smallest nabla-difference
  std::size_t windows = 0;
};

/// Checks every consecutive window of m+1 points.
ConvexityVerdict classify_sampled(const Grid1D& grid, std::span<const double> values, int m,
                                  const TolerancePolicy& tol = {});
ConvexityVerdict classify_sampled(const Function1D& f, const Grid1D& grid, int m,
                                  const TolerancePolicy& tol = {});
/// Checks every consecutive (m+1) x (n+1) window.
ConvexityVerdict classify_sampled(const Grid2D& grid, const Matrix& values, int m, int n,
                                  const TolerancePolicy& tol = {});
ConvexityVerdict classify_sampled(const Function2D& f, const Grid2D& grid, int m, int n,
                                  const TolerancePolicy& tol = {});

/// f sampled on the tensor grid, values(i, j) = f(y_i, z_j).
Matrix sample(const Function2D& f, const Grid2D& grid);
std::vector<double> sample(const Function1D& f, const Grid1D& grid);

}  // namespace nabla_kit
