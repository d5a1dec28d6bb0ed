#include "fsv/linalg.hpp"

#include <cmath>

namespace fsv {

double sigma_max_bound(const IMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  const auto M = A.mag();
  double norm_inf = 0.0;  // max row sum
  for (int i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols(); ++j)
      if (M[i][j] != 0.0) s = rnd::up(s + M[i][j]);
    norm_inf = std::max(norm_inf, s);
  }
  double norm_1 = 0.0;  // max column sum
  for (int j = 0; j < A.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < A.rows(); ++i)
      if (M[i][j] != 0.0) s = rnd::up(s + M[i][j]);
    norm_1 = std::max(norm_1, s);
  }
  if (norm_1 == 0.0 || norm_inf == 0.0) return 0.0;
  return rnd::up(std::sqrt(rnd::up(norm_1 * norm_inf)));
}

EigenPairBound eig2_enclose(const IMatrix& J) {
  if (J.rows() != 2 || J.cols() != 2)
    throw Error(ErrorCode::DimensionMismatch, "eig2_enclose: expects 2x2");
  const Interval tr = J(0, 0) + J(1, 1);
  const Interval det = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
  const Interval disc = sqr(tr) - 4.0 * det;
  if (disc.lo() <= 0.0)
    throw Error(ErrorCode::ComplexPossible,
                "eig2_enclose: discriminant interval touches zero");
  const Interval s = sqrt(disc);
  EigenPairBound out;
  out.lambda_unstable = (tr + s) * Interval(0.5);
  out.mu_stable = (tr - s) * Interval(0.5);
  if (!(out.lambda_unstable.lo() > 0.0 && out.mu_stable.hi() < 0.0))
    throw Error(ErrorCode::NotSaddle, "eig2_enclose: eigenvalues not a saddle pair");
  out.lambda_A = rnd::down(out.lambda_unstable.lo());
  out.mu_B = rnd::up(out.mu_stable.hi());
  if (!(out.lambda_A > 0.0 && out.mu_B < 0.0))
    throw Error(ErrorCode::NotSaddle, "eig2_enclose: margin collapsed to zero");
  return out;
}

// Point Gaussian elimination with partial pivoting; nullptr-free, throws on
// numerically singular input.
static std::vector<std::vector<double>> approx_inverse(
    std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> inv(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::fabs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
        piv = r;
    if (a[static_cast<size_t>(piv)][static_cast<size_t>(col)] == 0.0)
      throw Error(ErrorCode::SingularOrIllConditioned, "approx_inverse: zero pivot");
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
    std::swap(inv[static_cast<size_t>(col)], inv[static_cast<size_t>(piv)]);
    const double d = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int j = 0; j < n; ++j) {
      a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= d;
      inv[static_cast<size_t>(col)][static_cast<size_t>(j)] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
        inv[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
      }
    }
  }
  return inv;
}

VerifiedInverse verified_inverse(const std::vector<std::vector<double>>& P) {
  const int n = static_cast<int>(P.size());
  for (const auto& row : P)
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "verified_inverse: not square");

  VerifiedInverse out;
  try {
    out.approx = approx_inverse(P);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularOrIllConditioned,
                "verified_inverse: approximate inversion failed");
  }
  const IMatrix A = IMatrix::from_point(P);
  const IMatrix R = IMatrix::from_point(out.approx);
  const IMatrix E = IMatrix::identity(n) - A * R;  // residual I - A R
  const double e = E.norm_inf_up();
  out.residual_norm = e;
  if (!(e < 1.0))
    throw Error(ErrorCode::SingularOrIllConditioned,
                "verified_inverse: residual contraction norm >= 1");
  // ||A^{-1} - R||_inf <= ||R||_inf ||E||_inf / (1 - ||E||_inf)
  const double rn = R.norm_inf_up();
  const double bound = rnd::up(rnd::up(rn * e) / rnd::down(1.0 - e));
  out.enclosure = IMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double c = out.approx[static_cast<size_t>(i)][static_cast<size_t>(j)];
      out.enclosure(i, j) = Interval(rnd::down(c - bound), rnd::up(c + bound));
    }
  return out;
}

std::vector<GershgorinDisc> gershgorin_residual(const IMatrix& D) {
  if (D.rows() != D.cols())
    throw Error(ErrorCode::DimensionMismatch, "gershgorin_residual: not square");
  std::vector<GershgorinDisc> out;
  out.reserve(static_cast<size_t>(D.rows()));
  for (int i = 0; i < D.rows(); ++i) {
    double r = 0.0;
    for (int j = 0; j < D.cols(); ++j) {
      const double mag = D(i, j).mag();
      if (j != i && mag != 0.0) r = rnd::up(r + mag);
    }
    out.push_back({D(i, i), r});
  }
  return out;
}

}  // namespace fsv
