#include "fsv/slowdyn.hpp"

namespace fsv {

Interval slow_vf_enclosure(const FastSaddleBlock& host, const Interval& y,
                           double eps0, double u_ref, double w_ref) {
  const Fhn& sys = host.chart.sys;
  if (!host.y_range.contains(y))
    throw Error(ErrorCode::DomainError, "slow_vf_enclosure: section outside host");

  // graph position on the critical manifold at this section, plus the
  // fast-width of the core both manifold graphs are trapped in
  const double u_approx = sys.newton_u(y.mid(), host.chart.ubar);
  const Interval u_star = sys.enclose_u(y, u_approx);
  const Interval beta_u = Interval(host.chart.P[0][0]) * host.a_core +
                          Interval(host.chart.P[0][1]) * host.b_core;
  const Interval Uenc = widened(u_star, rnd::up(beta_u.width()));
  (void)eps0;  // the FHN slow field has no explicit eps dependence

  // implicit-function rewrite around (u_ref, w_ref): keeps the principal
  // slope explicit and the deviation term small
  const Interval fu_ref = sys.f_u(Interval(u_ref));
  if (fu_ref.contains(0.0))
    throw Error(ErrorCode::SingularJacobian, "slow_vf_enclosure: fold reference");
  const Interval dy = y - Interval(w_ref);
  const Interval principal = (Interval(1.0) / fu_ref - sys.p.gamma) * dy;
  const Interval deviation = Uenc - Interval(u_ref) - dy / fu_ref;
  const Interval residual = Interval(u_ref) - sys.p.gamma * Interval(w_ref);
  return (principal + deviation + residual) / sys.p.c;
}

SlowIsolatingBlock find_slow_isolating_block(const FastSaddleBlock& host,
                                             double y0, double delta,
                                             double eps0, double u_ref,
                                             double w_ref) {
  SlowIsolatingBlock blk;
  blk.y_interval = Interval(y0 - delta, y0 + delta);
  if (!host.y_range.contains(blk.y_interval))
    throw Error(ErrorCode::NotIsolating,
                "find_slow_isolating_block: interval leaves the host block");
  blk.g_lo = slow_vf_enclosure(host, Interval(y0 - delta), eps0, u_ref, w_ref);
  blk.g_hi = slow_vf_enclosure(host, Interval(y0 + delta), eps0, u_ref, w_ref);
  if (blk.g_lo.lo() > 0.0 && blk.g_hi.hi() < 0.0) {
    blk.stability = SlowStability::attracting;
    blk.margin_lo = blk.g_lo.lo();
    blk.margin_hi = -blk.g_hi.hi();
  } else if (blk.g_lo.hi() < 0.0 && blk.g_hi.lo() > 0.0) {
    blk.stability = SlowStability::repelling;
    blk.margin_lo = -blk.g_lo.hi();
    blk.margin_hi = blk.g_hi.lo();
  } else {
    throw Error(ErrorCode::NotIsolating,
                "find_slow_isolating_block: end signs indeterminate or equal");
  }
  return blk;
}

FiberExitReport check_fiber_exit(const FastSaddleBlock& host,
                                 const SlowIsolatingBlock& iso, double m_u,
                                 const Interval& exit_face_y) {
  FiberExitReport rep;
  const Interval diam(host.a_ext.width());
  const Interval shr = (diam - Interval(host.r_a)) / Interval(m_u);
  rep.shrink = shr.hi();
  rep.fiber_width_quantity = (2.0 * shr).hi();
  rep.stable_margin = rnd::down(host.r_b - rep.shrink);

  // fiber spread in the slow coordinate is a metric quantity
  const double shr_y = rnd::up(host.chart.y_metric * rep.shrink);
  const Interval yN = host.y_range;
  rep.block_margin =
      std::min(rnd::down(iso.y_interval.lo() - (yN.lo() + shr_y)),
               rnd::down((yN.hi() - shr_y) - iso.y_interval.hi()));
  const double shr2 = rnd::up(2.0 * shr_y);
  rep.exit_margin =
      std::min(rnd::down(exit_face_y.lo() - (yN.lo() + shr2)),
               rnd::down((yN.hi() - shr2) - exit_face_y.hi()));
  rep.ok = rep.stable_margin > 0.0 && rep.block_margin > 0.0 &&
           rep.exit_margin > 0.0;
  return rep;
}

}  // namespace fsv
