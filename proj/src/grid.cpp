#include "nabla_kit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nabla_kit/errors.hpp"

namespace nabla_kit {

bool Interval::contains(double v) const {
  if (std::isnan(v)) return false;
  const bool above = lo_open ? v > lo : v >= lo;
  const bool below = hi_open ? v < hi : v <= hi;
  return above && below;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
  return os.str();
}

Grid1D::Grid1D(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw ContractViolation("Grid1D: at least one point required");
  for (double p : points_) {
    if (!std::isfinite(p)) throw ContractViolation("Grid1D: non-finite point");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1] < points_[i])) {
      throw ContractViolation("Grid1D: points must be distinct and strictly increasing");
    }
  }
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t count) {
  if (count == 0) throw ContractViolation("Grid1D::uniform: count must be positive");
  if (count == 1) return Grid1D({lo});
  std::vector<double> pts(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = lo + h * static_cast<double>(i);
  pts.back() = hi;
  return Grid1D(std::move(pts));
}

Grid1D Grid1D::integers(std::size_t count) {
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) pts[i] = static_cast<double>(i + 1);
  return Grid1D(std::move(pts));
}

double Grid1D::node(std::size_t one_based) const {
  if (one_based == 0 || one_based > points_.size()) {
    throw ContractViolation("Grid1D::node: index " + std::to_string(one_based) +
                            " outside 1.." + std::to_string(points_.size()));
  }
  return points_[one_based - 1];
}

Grid1D Grid1D::window(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > points_.size()) {
    throw ContractViolation("Grid1D::window: window leaves the grid");
  }
  return Grid1D(std::vector<double>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                    points_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ContractViolation("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace nabla_kit
