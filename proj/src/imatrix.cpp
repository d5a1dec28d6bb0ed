#include "fsv/imatrix.hpp"

namespace fsv {

IMatrix IMatrix::from_rows(std::vector<std::vector<Interval>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  IMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw Error(ErrorCode::DimensionMismatch, "IMatrix: ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IMatrix IMatrix::from_point(const std::vector<std::vector<double>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  IMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Interval(rows[i][j]);
  return m;
}

IMatrix IMatrix::transpose() const {
  IMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Interval> IMatrix::mul(const std::vector<Interval>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error(ErrorCode::DimensionMismatch, "IMatrix: vector size mismatch");
  std::vector<Interval> out(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    Interval acc(0.0);
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

std::vector<std::vector<double>> IMatrix::mag() const {
  std::vector<std::vector<double>> m(static_cast<size_t>(rows_),
                                     std::vector<double>(static_cast<size_t>(cols_)));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*this)(i, j).mag();
  return m;
}

double IMatrix::norm_inf_up() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s = rnd::up(s + (*this)(i, j).mag());
    best = std::max(best, s);
  }
  return best;
}

IMatrix operator+(const IMatrix& a, const IMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "IMatrix: add shape mismatch");
  IMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

IMatrix operator-(const IMatrix& a, const IMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "IMatrix: sub shape mismatch");
  IMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

IMatrix operator*(const IMatrix& a, const IMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "IMatrix: mul shape mismatch");
  IMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Interval acc(0.0);
      for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

IMatrix operator*(const Interval& s, const IMatrix& a) {
  IMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

}  // namespace fsv
