#include <doctest.h>

#include "fsv/blocks.hpp"

using fsv::ChartMode;
using fsv::Fhn;
using fsv::FHNParams;
using fsv::Interval;

namespace {

Fhn homoclinic_system() {
  FHNParams p;
  p.a = Interval(0.3);
  p.c = Interval(0.799, 0.801);
  p.gamma = Interval(10.0);
  p.delta = Interval(9.0);
  return Fhn{p};
}

fsv::FastSaddleBlock make_origin_block(double eps0, double r_a = 0.008,
                                       double r_b = 0.0085, double H = 0.0065) {
  const Fhn sys = homoclinic_system();
  const auto ch = fsv::build_chart(sys, 0.0, 0.00175,
                                   ChartMode::predictor_corrector, 0.1);
  return fsv::construct_block(ch, Interval(0.00175 - H / 2, 0.00175 + H / 2),
                              eps0, r_a, r_b);
}

}  // namespace

TEST_CASE("block construction is self-consistent at reproduction parameters") {
  auto blk = make_origin_block(5e-5);
  CHECK(blk.a_ext.contains(blk.a_core));
  CHECK(blk.b_ext.contains(blk.b_core));
  CHECK(blk.a_ext.width() > 2.0 * blk.r_a);
  CHECK(blk.carrier_z1.contains(blk.a_ext));
  // cores are small against the spaces at this eps
  CHECK(blk.a_core.width() < blk.r_a);
  CHECK(blk.b_core.width() < blk.r_b);
}

TEST_CASE("construction fails once eps0 grows past the enclosure budget") {
  CHECK_NOTHROW(make_origin_block(5e-5));
  bool failed = false;
  double eps_fail = 0.0;
  for (double eps : {1e-2, 5e-2, 1e-1, 1.0}) {
    try {
      make_origin_block(eps);
    } catch (const fsv::Error& e) {
      CHECK(e.code() == fsv::ErrorCode::SelfConsistencyFailed);
      failed = true;
      eps_fail = eps;
      break;
    }
  }
  CHECK(failed);
  CHECK(eps_fail > 0.0);
}

TEST_CASE("boundary signs hold with margins lambda*r") {
  auto blk = make_origin_block(5e-5);
  const auto rep = fsv::verify_boundary_signs(blk);
  CHECK(rep.ok);
  // each face margin is at least |rate| * space up to enclosure slack
  CHECK(rep.a_plus >= 0.5 * blk.chart.eig.lambda_A * blk.r_a);
  CHECK(rep.a_minus >= 0.5 * blk.chart.eig.lambda_A * blk.r_a);
  CHECK(rep.b_plus >= 0.5 * (-blk.chart.eig.mu_B) * blk.r_b);
  CHECK(rep.b_minus >= 0.5 * (-blk.chart.eig.mu_B) * blk.r_b);
}

TEST_CASE("sign verification fails when the block is widened past the basin") {
  auto blk = make_origin_block(5e-5);
  // grow the b-extent far beyond the linearization basin
  blk.b_ext = Interval(blk.b_ext.lo() * 40.0, blk.b_ext.hi() * 40.0);
  blk.carrier_z2 = fsv::hull(blk.carrier_z2, blk.b_ext);
  const auto rep = fsv::verify_boundary_signs(blk);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("cone conditions and rates at reproduction parameters") {
  auto blk = make_origin_block(5e-5);
  const auto rep = fsv::verify_cone_conditions(blk, 2);
  CHECK(rep.ok);
  CHECK(rep.lyapunov_ok);
  CHECK(rep.lambda_min > 0.0);
  CHECK(rep.mu_min < 0.0);
  CHECK(rep.lambda_min < blk.chart.eig.lambda_A);
  CHECK(rep.mu_min > blk.chart.eig.mu_B);
  CHECK(blk.status.cones_ok);
}

TEST_CASE("m = 1 cone matches the plain verdict") {
  auto blk = make_origin_block(5e-5);
  const auto plain = fsv::verify_cone_conditions(blk, 2);
  const auto m1u = fsv::verify_m_cone(blk, 1.0, 0.0, +1, true, blk.y_range, 0.0, 0, 2);
  const auto m1s = fsv::verify_m_cone(blk, 1.0, 0.0, +1, false, blk.y_range, 0.0, 0, 2);
  CHECK(m1u.ok == plain.ok);
  CHECK(m1s.ok == plain.ok);
  CHECK(m1u.margin_graph == doctest::Approx(plain.margin_graph_u).epsilon(1e-9));
  CHECK(m1s.margin_graph == doctest::Approx(plain.margin_graph_s).epsilon(1e-9));
}

TEST_CASE("huge m breaks the sharpened condition") {
  auto blk = make_origin_block(5e-6);
  const auto rep =
      fsv::verify_m_cone(blk, 1e6, 0.0, +1, true, blk.y_range, 0.0, 0, 1);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("monotonicity: shrinking the block or eps never flips pass to fail") {
  auto wide = make_origin_block(5e-5);
  auto rep_wide = fsv::verify_cone_conditions(wide, 1);
  auto tight = make_origin_block(1e-5);
  auto rep_tight = fsv::verify_cone_conditions(tight, 1);
  if (rep_wide.ok) {
    CHECK(rep_tight.ok);
    CHECK(rep_tight.margin_cone_u >= rep_wide.margin_cone_u - 1e-12);
  }
  // narrower y-window only helps the m-cone margins
  auto m_full =
      fsv::verify_m_cone(wide, 30.0, 0.0, +1, true, wide.y_range, 0.0, 0, 1);
  const Interval thin(wide.y_range.mid() - 1e-4, wide.y_range.mid() + 1e-4);
  auto m_thin = fsv::verify_m_cone(wide, 30.0, 0.0, +1, true, thin, 0.0, 0, 1);
  CHECK(m_thin.margin_cone >= m_full.margin_cone - 1e-12);
}

TEST_CASE("rate profile is monotone in the distance cells") {
  auto blk = make_origin_block(5e-6);
  const auto rep = fsv::verify_m_cone(blk, 50.0, 0.04, +1, true,
                                      fsv::widened(Interval(blk.y_range.mid()), 5e-4),
                                      0.75 * blk.r_a, 12, 1);
  REQUIRE(rep.rate_cells.size() == 12);
  for (size_t i = 1; i < rep.rate_cells.size(); ++i)
    CHECK(rep.rate_cells[i] <= rep.rate_cells[i - 1] + 1e-12);
  CHECK(rep.cell_tops.front() > 0.75 * blk.r_a);
}
