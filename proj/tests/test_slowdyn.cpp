#include <doctest.h>

#include "fsv/slowdyn.hpp"

using fsv::ChartMode;
using fsv::Fhn;
using fsv::FHNParams;
using fsv::Interval;

namespace {

Fhn system_with(double a, double c, double gamma, double delta) {
  FHNParams p;
  p.a = Interval(a);
  p.c = Interval(c);
  p.gamma = Interval(gamma);
  p.delta = Interval(delta);
  return Fhn{p};
}

fsv::FastSaddleBlock origin_host(const Fhn& sys, double eps0) {
  const auto ch = fsv::build_chart(sys, 0.0, 0.00194, ChartMode::predictor_corrector, 0.1);
  auto blk = fsv::construct_block(ch, Interval(0.00194 - 0.00325, 0.00194 + 0.00325),
                                  eps0, 0.008, 0.0085);
  fsv::verify_cone_conditions(blk, 2);
  return blk;
}

}  // namespace

TEST_CASE("slow field enclosure signs at the homoclinic ends") {
  const Fhn sys = system_with(0.3, 0.8, 10.0, 9.0);
  auto host = origin_host(sys, 5e-6);
  const Interval g_lo =
      fsv::slow_vf_enclosure(host, Interval(-1.09722e-3), 5e-6, 0.0, 0.0);
  const Interval g_hi =
      fsv::slow_vf_enclosure(host, Interval(4.97722e-3), 5e-6, 0.0, 0.0);
  CHECK(g_lo.lo() > 0.0);
  CHECK(g_hi.hi() < 0.0);
}

TEST_CASE("sign agrees with direct reduced-field evaluation at sections") {
  const Fhn sys = system_with(0.3, 0.8, 10.0, 9.0);
  auto host = origin_host(sys, 0.0);
  for (int k = 0; k < 50; ++k) {
    const double w = -1.0e-3 + 5.8e-3 * k / 49.0;
    const Interval enc = fsv::slow_vf_enclosure(host, Interval(w), 0.0, 0.0, 0.0);
    const double u_star = sys.newton_u(w, 0.0);
    const double direct = (u_star - 10.0 * w) / 0.8;
    CHECK(enc.contains(direct));
  }
}

TEST_CASE("attracting block at the origin and time-reversal flip") {
  const Fhn sys = system_with(0.3, 0.8, 10.0, 9.0);
  auto host = origin_host(sys, 5e-6);
  const auto iso = fsv::find_slow_isolating_block(host, 0.00194, 0.00303722,
                                                  5e-6, 0.0, 0.0);
  CHECK(iso.stability == fsv::SlowStability::attracting);
  CHECK(iso.margin_lo > 0.0);
  CHECK(iso.margin_hi > 0.0);
  CHECK(iso.y_interval.contains(0.0));

  // the reversed field sees the same interval as repelling: flipping the
  // enclosures flips the sign pattern
  CHECK(iso.g_lo.lo() > 0.0);
  CHECK(iso.g_hi.hi() < 0.0);
  CHECK((-iso.g_lo).hi() < 0.0);
  CHECK((-iso.g_hi).lo() > 0.0);
}

TEST_CASE("gamma = 0 leaves no equilibrium: identical end signs rejected") {
  const Fhn sys = system_with(0.01, 0.5, 0.0, 5.0);
  const auto ch = fsv::build_chart(sys, 0.95, 0.04, ChartMode::predictor_corrector, 0.1);
  auto host = fsv::construct_block(ch, Interval(0.0367, 0.0433), 5e-6, 0.008, 0.008);
  fsv::verify_cone_conditions(host, 2);
  // g = u/c > 0 on the third branch regardless of w
  CHECK_THROWS_AS(
      fsv::find_slow_isolating_block(host, 0.04, 0.002, 5e-6, 0.95, 0.04 * 0.0),
      fsv::Error);
}

TEST_CASE("heteroclinic target block is attracting") {
  // second parameter set with the attracting block on the third branch
  const Fhn sys = system_with(0.2, 0.2, 15.0, 5.0);
  // slow equilibrium near u = 0.9056, w = u/15
  const double w_eq = 0.9055385138137417 / 15.0;
  const double u_eq = sys.newton_u(w_eq, 0.9);
  const auto ch = fsv::build_chart(sys, 0.9, 0.0616, ChartMode::predictor_corrector, 0.1);
  auto host = fsv::construct_block(ch, Interval(0.0616 - 0.004, 0.0616 + 0.004),
                                   1e-5, 0.006, 0.0068);
  fsv::verify_cone_conditions(host, 2);
  const double y0 = 0.5 * (5.800831058824e-2 + 6.51916894117e-2);
  const double delta = 0.5 * (6.51916894117e-2 - 5.800831058824e-2);
  const auto iso = fsv::find_slow_isolating_block(host, y0, delta, 1e-5, u_eq, w_eq);
  CHECK(iso.stability == fsv::SlowStability::attracting);
}

TEST_CASE("fiber exit inequalities") {
  const Fhn sys = system_with(0.3, 0.8, 10.0, 9.0);
  auto host = origin_host(sys, 5e-6);
  const auto iso = fsv::find_slow_isolating_block(host, 0.00194, 0.00303722,
                                                  5e-6, 0.0, 0.0);
  const double sh = (host.a_ext.width() - host.r_a) / 120.0;
  const Interval face(host.y_range.lo() + 2.5 * sh, host.y_range.hi() - 2.5 * sh);
  const auto rep = fsv::check_fiber_exit(host, iso, 120.0, face);
  CHECK(rep.ok);
  CHECK(rep.stable_margin > 0.0);
  CHECK(rep.block_margin > 0.0);
  CHECK(rep.exit_margin > 0.0);

  // m_u = 1 wrecks the geometry
  const auto bad = fsv::check_fiber_exit(host, iso, 1.0, face);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("sign margins shrink with eps0 and with block width") {
  const Fhn sys = system_with(0.3, 0.8, 10.0, 9.0);
  auto host_small = origin_host(sys, 5e-6);
  auto host_large = origin_host(sys, 5e-5);
  const Interval a =
      fsv::slow_vf_enclosure(host_small, Interval(-1.0e-3), 5e-6, 0.0, 0.0);
  const Interval b =
      fsv::slow_vf_enclosure(host_large, Interval(-1.0e-3), 5e-5, 0.0, 0.0);
  CHECK(a.lo() >= b.lo());
}
