#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace nabla_kit {

/// Closed or half-open interval; infinite endpoints allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }

  bool contains(double y) const;
  double width() const { return hi - lo; }
  std::string str() const;
};

/// Axis-aligned rectangle [a,b] x [c,d].
struct Rectangle {
  Interval y = Interval::real_line();
  Interval z = Interval::real_line();

  static Rectangle closed(double a, double b, double c, double d) {
    return {Interval::closed(a, b), Interval::closed(c, d)};
  }
  bool contains(double yv, double zv) const { return y.contains(yv) && z.contains(zv); }
  double area() const { return y.width() * z.width(); }
};

/// Strictly increasing sample points.
///
/// Storage is 0-based; `node(i)` gives the 1-based view used by the
/// identity formulas (y_1 ... y_M).
class Grid1D {
 public:
  Grid1D() = default;
  explicit Grid1D(std::vector<double> points);
  Grid1D(std::initializer_list<double> points) : Grid1D(std::vector<double>(points)) {}

  /// Uniform grid with `count` points on [lo, hi].
  static Grid1D uniform(double lo, double hi, std::size_t count);
  /// Integer grid 1, 2, ..., count.
  static Grid1D integers(std::size_t count);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double node(std::size_t one_based) const;
  std::span<const double> points() const { return points_; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

  /// Consecutive sub-grid of `count` points starting at 0-based `first`.
  Grid1D window(std::size_t first, std::size_t count) const;

 private:
  std::vector<double> points_;
};

struct Grid2D {
  Grid1D ygrid;
  Grid1D zgrid;
};

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> data() const { return data_; }

  Matrix transposed() const;
  double max_abs() const;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace nabla_kit
