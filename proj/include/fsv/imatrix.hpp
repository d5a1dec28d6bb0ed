#pragma once

#include <vector>

#include "fsv/interval.hpp"

namespace fsv {

// Dense interval matrix.  Every operation preserves containment and checks
// shapes on entry.
class IMatrix {
 public:
  IMatrix() : rows_(0), cols_(0) {}
  IMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {}

  static IMatrix identity(int n) {
    IMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Interval(1.0);
    return m;
  }
  static IMatrix from_rows(std::vector<std::vector<Interval>> rows);
  static IMatrix from_point(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Interval& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Interval& operator()(int i, int j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  IMatrix transpose() const;
  std::vector<Interval> mul(const std::vector<Interval>& v) const;

  // entrywise magnitude suprema, rounded up
  std::vector<std::vector<double>> mag() const;

  double norm_inf_up() const;  // max row sum of magnitudes, rounded up

 private:
  int rows_, cols_;
  std::vector<Interval> e_;
};

IMatrix operator+(const IMatrix& a, const IMatrix& b);
IMatrix operator-(const IMatrix& a, const IMatrix& b);
IMatrix operator*(const IMatrix& a, const IMatrix& b);
IMatrix operator*(const Interval& s, const IMatrix& a);

}  // namespace fsv
