#include <doctest.h>

#include <cmath>
#include <random>

#include "fsv/linalg.hpp"

using fsv::IMatrix;
using fsv::Interval;

namespace {

std::mt19937_64 rng(77123u);

double rand_in(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

// largest singular value via power iteration on A^T A in plain doubles
double sigma_oracle(const std::vector<std::vector<double>>& A) {
  const size_t m = A.size(), n = A[0].size();
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double s = 0.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> av(m, 0.0);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) av[i] += A[i][j] * v[j];
    std::vector<double> atav(n, 0.0);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < m; ++i) atav[j] += A[i][j] * av[i];
    double norm = 0.0;
    for (double x : atav) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (size_t j = 0; j < n; ++j) v[j] = atav[j] / norm;
    s = std::sqrt(norm);
  }
  return s;
}

}  // namespace

TEST_CASE("sigma_max_bound basic cases") {
  CHECK(fsv::sigma_max_bound(IMatrix::identity(2)) >= 1.0);
  CHECK(fsv::sigma_max_bound(IMatrix::identity(2)) < 1.0 + 1e-12);
  CHECK(fsv::sigma_max_bound(IMatrix(3, 3)) == 0.0);

  const IMatrix a = IMatrix::from_point({{3, 0}, {4, 0}});
  const double bound = fsv::sigma_max_bound(a);
  CHECK(bound >= 5.0);                      // exact sigma_max
  CHECK(bound == doctest::Approx(std::sqrt(28.0)).epsilon(1e-12));
}

TEST_CASE("sigma_max_bound dominates the oracle on random matrices") {
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = dim(rng), n = dim(rng);
    std::vector<std::vector<double>> a(static_cast<size_t>(m),
                                       std::vector<double>(static_cast<size_t>(n)));
    for (auto& row : a)
      for (auto& x : row) x = rand_in(-5.0, 5.0);
    const double oracle = sigma_oracle(a);
    const double bound = fsv::sigma_max_bound(IMatrix::from_point(a));
    double tol = oracle;
    for (int i = 0; i < 8; ++i) tol = std::nextafter(tol, 0.0);
    CHECK(bound >= tol);
  }
}

TEST_CASE("eig2_enclose") {
  const auto diag = fsv::eig2_enclose(IMatrix::from_point({{2, 0}, {0, -1}}));
  CHECK(diag.lambda_unstable.contains(2.0));
  CHECK(diag.mu_stable.contains(-1.0));
  CHECK(diag.lambda_A < 2.0);
  CHECK(diag.lambda_A > 1.9999999);
  CHECK(diag.mu_B > -1.0);

  // fast Jacobian at the origin with a=0.3, delta=9, c=0.8
  IMatrix J(2, 2);
  J(0, 0) = Interval(0.0);
  J(0, 1) = Interval(1.0);
  J(1, 0) = Interval(0.3) / Interval(9.0);
  J(1, 1) = Interval(0.8) / Interval(9.0);
  const auto eig = fsv::eig2_enclose(J);
  CHECK(eig.lambda_unstable.mid() == doctest::Approx(0.23235).epsilon(1e-4));
  CHECK(eig.mu_stable.mid() == doctest::Approx(-0.14346).epsilon(1e-4));
  CHECK(eig.lambda_unstable.width() < 1e-10);

  // discriminant interval straddling a double root
  IMatrix dbl(2, 2);
  dbl(0, 0) = Interval(1.0);
  dbl(0, 1) = Interval(-1e-12, 1e-12);
  dbl(1, 0) = Interval(1.0);
  dbl(1, 1) = Interval(1.0);
  CHECK_THROWS_AS(fsv::eig2_enclose(dbl), fsv::Error);

  IMatrix same_sign(2, 2);
  same_sign(0, 0) = Interval(2.0);
  same_sign(0, 1) = Interval(0.0);
  same_sign(1, 0) = Interval(0.0);
  same_sign(1, 1) = Interval(1.0);
  CHECK_THROWS_AS(fsv::eig2_enclose(same_sign), fsv::Error);

  // eigenvalue containment against the companion quadratic at random saddles
  for (int trial = 0; trial < 100; ++trial) {
    const double tr = rand_in(-2.0, 2.0);
    const double det = rand_in(-4.0, -0.1);
    IMatrix m = IMatrix::from_point({{0.0, 1.0}, {-det, tr}});
    const auto e = fsv::eig2_enclose(m);
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    CHECK(e.lambda_unstable.contains((tr + disc) / 2.0));
    CHECK(e.mu_stable.contains((tr - disc) / 2.0));
  }
}

TEST_CASE("verified_inverse") {
  const auto id = fsv::verified_inverse({{1, 0}, {0, 1}});
  CHECK(id.enclosure(0, 0).contains(1.0));
  CHECK(id.residual_norm < 1e-14);

  const auto d = fsv::verified_inverse({{2, 0}, {0, 4}});
  CHECK(d.enclosure(0, 0).contains(0.5));
  CHECK(d.enclosure(1, 1).contains(0.25));

  CHECK_THROWS_AS(fsv::verified_inverse({{1, 1}, {1, 1}}), fsv::Error);

  // containment of the dense-solve oracle for well-conditioned matrices
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<std::vector<double>> a(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (i == j ? 3.0 : 0.0) + rand_in(-1.0, 1.0);
    const auto inv = fsv::verified_inverse(a);
    // check A * enclosure contains the identity
    const IMatrix prod = IMatrix::from_point(a) * inv.enclosure;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(prod(i, j).contains(i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("gershgorin_residual") {
  const auto discs =
      fsv::gershgorin_residual(IMatrix::from_point({{1, 0}, {0, -1}}));
  CHECK(discs[0].center.contains(1.0));
  CHECK(discs[0].radius == 0.0);
  CHECK(discs[1].center.contains(-1.0));

  const auto d2 =
      fsv::gershgorin_residual(IMatrix::from_point({{1, 0.1}, {0.1, -1}}));
  CHECK(d2[0].radius == doctest::Approx(0.1));
  CHECK(d2[1].radius == doctest::Approx(0.1));
  // discs separated from the imaginary axis
  CHECK(d2[0].center.lo() - d2[0].radius > 0.0);
  CHECK(d2[1].center.hi() + d2[1].radius < 0.0);
}
