#include <doctest.h>

#include <random>

#include "fsv/covering.hpp"

using fsv::HSet;
using fsv::ImageHull;
using fsv::Interval;

namespace {

std::mt19937_64 rng(31337u);
double rand_in(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

// planar affine map images of the unit square as covering inputs
struct AffineMap {
  double a11, a12, a21, a22, t1, t2;
  std::pair<double, double> apply(double x, double y) const {
    return {a11 * x + a12 * y + t1, a21 * x + a22 * y + t2};
  }
};

ImageHull image_of_segment(const AffineMap& m, double x0, double x1, double y0,
                           double y1) {
  Interval u = Interval(m.apply(x0, y0).first);
  Interval s = Interval(m.apply(x0, y0).second);
  for (double x : {x0, x1})
    for (double y : {y0, y1}) {
      const auto p = m.apply(x, y);
      u = fsv::hull(u, Interval(p.first));
      s = fsv::hull(s, Interval(p.second));
    }
  return {u, {s}};
}

bool rigorous_covering(const AffineMap& m, const HSet& tgt,
                       fsv::CoveringMargins* mg = nullptr) {
  const ImageHull left = image_of_segment(m, -1, -1, -1, 1);
  const ImageHull right = image_of_segment(m, 1, 1, -1, 1);
  const ImageHull full = image_of_segment(m, -1, 1, -1, 1);
  const ImageHull mid = image_of_segment(m, -1, 1, 0, 0);
  return fsv::check_covering_u1(left, right, full, mid, tgt, mg);
}

// dense point sampling: true when a covering violation is exhibited
bool sampled_violation(const AffineMap& m, const HSet& tgt) {
  const int n = 100;  // 10^4 points
  bool left_out_l = true, left_out_r = true;
  bool right_out_l = true, right_out_r = true;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = -1.0 + 2.0 * i / n;
      const double y = -1.0 + 2.0 * j / n;
      const auto p = m.apply(x, y);
      // entrance violation: an image point crosses the s-boundary
      if (p.second >= tgt.s[0].hi() || p.second <= tgt.s[0].lo()) return true;
      if (i == 0) {
        left_out_l = left_out_l && p.first < tgt.u.lo();
        left_out_r = left_out_r && p.first > tgt.u.hi();
      }
      if (i == n) {
        right_out_l = right_out_l && p.first < tgt.u.lo();
        right_out_r = right_out_r && p.first > tgt.u.hi();
      }
    }
  const bool edges_ok =
      (left_out_l && right_out_r) || (left_out_r && right_out_l);
  return !edges_ok;
}

}  // namespace

TEST_CASE("canonical expansion/contraction covers itself") {
  const HSet tgt{Interval(-1, 1), {Interval(-1, 1)}};
  const AffineMap expand{2.0, 0.0, 0.0, 0.5, 0.0, 0.0};
  fsv::CoveringMargins mg;
  CHECK(rigorous_covering(expand, tgt, &mg));
  CHECK(mg.left == doctest::Approx(1.0));
  CHECK(mg.right == doctest::Approx(1.0));
  CHECK(mg.full_s == doctest::Approx(0.5));
}

TEST_CASE("identity map does not cover (edges not expelled)") {
  const HSet tgt{Interval(-1, 1), {Interval(-1, 1)}};
  const AffineMap id{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  CHECK_FALSE(rigorous_covering(id, tgt));
}

TEST_CASE("orientation-flipping expansion covers") {
  const HSet tgt{Interval(-1, 1), {Interval(-1, 1)}};
  const AffineMap flip{-3.0, 0.0, 0.0, 0.25, 0.1, 0.0};
  fsv::CoveringMargins mg;
  CHECK(rigorous_covering(flip, tgt, &mg));
  CHECK(mg.flipped);
}

TEST_CASE("soundness against the sampling oracle on random affine maps") {
  const HSet tgt{Interval(-1, 1), {Interval(-1, 1)}};
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    AffineMap m{rand_in(-3, 3), rand_in(-0.5, 0.5), rand_in(-0.5, 0.5),
                rand_in(-0.9, 0.9), rand_in(-0.5, 0.5), rand_in(-0.4, 0.4)};
    if (rigorous_covering(m, tgt)) {
      ++positives;
      CHECK_FALSE(sampled_violation(m, tgt));
    }
  }
  CHECK(positives > 10);  // the test exercises the passing branch too
}

TEST_CASE("degenerate s-dimension mismatch throws") {
  const HSet tgt{Interval(-1, 1), {Interval(-1, 1), Interval(0, 1)}};
  const ImageHull img{Interval(0), {Interval(0)}};
  CHECK_THROWS_AS(fsv::check_covering_u1(img, img, img, img, tgt), fsv::Error);
}
