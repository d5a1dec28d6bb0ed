#include "fsv/blocks.hpp"

#include <cmath>

namespace fsv {

namespace {

Interval delta_fu(const LocalChart& ch, const Interval& U) {
  // f_u(ubar) - f_u(U); mean value form intersected with direct evaluation
  const Interval ubar(ch.ubar);
  const Interval direct = ch.fu_bar - ch.sys.f_u(U);
  const Interval mv = Interval(0.0) - ch.sys.f_uu(hull(ubar, U)) * (U - ubar);
  const Interval r = intersect(direct, mv);
  return r.is_empty() ? direct : r;
}

struct JacPieces {
  IMatrix Pi;          // 2x2 fast perturbation in chart coordinates
  Interval ycol[2];    // d(fast)/d(wt) after P^{-1}
  Interval etacol[2];  // d(fast)/d(eta) after P^{-1}
  Interval gz1, gz2, gwt, geta;
};

JacPieces jacobian_pieces(const LocalChart& ch, const Interval& z1,
                          const Interval& z2, const Interval& wt, double eps0) {
  const Fhn& sys = ch.sys;
  const Interval eps(0.0, eps0);
  const Interval U = ch.u_range(z1, z2, wt);
  const Interval W = ch.w_range(wt);
  const Interval dfu = delta_fu(ch, U);
  const bool pc = ch.mode == ChartMode::predictor_corrector;

  IMatrix JXX(2, 2);
  JXX(0, 0) = pc ? Interval(0.0) - eps / (sys.p.c * ch.fu_bar) : Interval(0.0);
  JXX(0, 1) = Interval(1.0);
  JXX(1, 0) = Interval(0.0) - (ch.fu_bar - dfu) / sys.p.delta;
  JXX(1, 1) = sys.p.c / sys.p.delta;

  const IMatrix Pm = IMatrix::from_point(ch.P);
  JacPieces jp;
  jp.Pi = ch.Pinv.enclosure * JXX * Pm;
  jp.Pi(0, 0) = jp.Pi(0, 0) - Interval(ch.lam1);
  jp.Pi(1, 1) = jp.Pi(1, 1) - Interval(ch.lam2);

  // slow coordinate enters the cone metric as wt / y_metric; derivatives with
  // respect to the metric coordinate pick up a y_metric factor, the slow row
  // loses one
  const Interval Y(ch.y_metric);
  Interval fy0, fy1;
  if (pc) {
    fy0 = eps * (sys.p.gamma - Interval(1.0) / ch.fu_bar) / (sys.p.c * ch.fu_bar);
    fy1 = dfu / (sys.p.delta * ch.fu_bar);
  } else {
    fy0 = Interval(0.0);
    fy1 = Interval(1.0) / sys.p.delta;
  }
  auto yc = ch.Pinv.enclosure.mul({Y * fy0, Y * fy1});
  jp.ycol[0] = yc[0];
  jp.ycol[1] = yc[1];

  Interval fe0(0.0), fe1(0.0);
  if (pc) fe0 = Interval(0.0) - Interval(eps0) * (U - sys.p.gamma * W) / (sys.p.c * ch.fu_bar);
  auto ec = ch.Pinv.enclosure.mul({fe0, fe1});
  jp.etacol[0] = ec[0];
  jp.etacol[1] = ec[1];

  const Interval eta(0.0, 1.0);
  jp.gz1 = eta * Interval(ch.P[0][0]) / (sys.p.c * Y);
  jp.gz2 = eta * Interval(ch.P[0][1]) / (sys.p.c * Y);
  jp.gwt = pc ? eta * (ch.slope_u - sys.p.gamma) / sys.p.c
              : eta * (Interval(0.0) - sys.p.gamma) / sys.p.c;
  jp.geta = (U - sys.p.gamma * W) / (sys.p.c * Y);  // d(eta g)/d(eta) term
  return jp;
}

double row_sigma(const Interval& e0, const Interval& e1, const Interval& e2) {
  IMatrix r(1, 3);
  r(0, 0) = e0;
  r(0, 1) = e1;
  r(0, 2) = e2;
  return sigma_max_bound(r);
}

SigmaSextet sigmas_one_box(const LocalChart& ch, const Interval& z1,
                           const Interval& z2, const Interval& wt, double eps0,
                           double m, bool unstable_side) {
  const JacPieces jp = jacobian_pieces(ch, z1, z2, wt, eps0);
  const Interval im(1.0 / m);
  SigmaSextet s;
  if (unstable_side) {
    s.A1 = jp.Pi(0, 0).mag();
    s.A2 = row_sigma(im * jp.Pi(0, 1), im * jp.ycol[0], im * jp.etacol[0]);
    s.B1 = rnd::up(m * jp.Pi(1, 0).mag());
    s.B2 = row_sigma(jp.Pi(1, 1), jp.ycol[1], jp.etacol[1]);
    s.g1 = rnd::up(m * jp.gz1.mag());
    s.g2 = row_sigma(jp.gz2, jp.gwt, jp.geta);
  } else {
    s.A1 = rnd::up(m * jp.Pi(0, 1).mag());
    s.A2 = row_sigma(jp.Pi(0, 0), jp.ycol[0], jp.etacol[0]);
    s.B1 = jp.Pi(1, 1).mag();
    s.B2 = row_sigma(im * jp.Pi(1, 0), im * jp.ycol[1], im * jp.etacol[1]);
    s.g1 = rnd::up(m * jp.gz2.mag());
    s.g2 = row_sigma(jp.gz1, jp.gwt, jp.geta);
  }
  return s;
}

SigmaSextet max_of(const SigmaSextet& a, const SigmaSextet& b) {
  SigmaSextet r;
  r.A1 = std::max(a.A1, b.A1);
  r.A2 = std::max(a.A2, b.A2);
  r.B1 = std::max(a.B1, b.B1);
  r.B2 = std::max(a.B2, b.B2);
  r.g1 = std::max(a.g1, b.g1);
  r.g2 = std::max(a.g2, b.g2);
  return r;
}

double sum_up(std::initializer_list<double> xs) {
  double s = 0.0;
  for (double x : xs) s = rnd::up(s + x);
  return s;
}

}  // namespace

SigmaSextet cone_sigmas(const LocalChart& chart, const Interval& z1,
                        const Interval& z2, const Interval& wt, double eps0,
                        double m, bool unstable_side, int refine_depth) {
  if (refine_depth <= 0)
    return sigmas_one_box(chart, z1, z2, wt, eps0, m, unstable_side);
  // bisect the widest box axis; supremum over the union is the max over parts
  int axis = 0;
  double w0 = z1.width(), w1 = z2.width(), w2 = wt.width();
  if (w1 > w0 && w1 >= w2) axis = 1;
  else if (w2 > w0 && w2 > w1) axis = 2;
  auto half = [](const Interval& x, int which) {
    return which == 0 ? Interval(x.lo(), x.mid()) : Interval(x.mid(), x.hi());
  };
  SigmaSextet best;
  bool first = true;
  for (int h = 0; h < 2; ++h) {
    Interval a = z1, b = z2, c = wt;
    if (axis == 0) a = half(z1, h);
    if (axis == 1) b = half(z2, h);
    if (axis == 2) c = half(wt, h);
    SigmaSextet s = cone_sigmas(chart, a, b, c, eps0, m, unstable_side,
                                refine_depth - 1);
    best = first ? s : max_of(best, s);
    first = false;
  }
  return best;
}

FastSaddleBlock construct_block(const LocalChart& chart, const Interval& y_range,
                                double eps0, double r_a, double r_b, int max_iter) {
  FastSaddleBlock blk;
  blk.chart = chart;
  blk.y_range = y_range;
  blk.eps0 = eps0;
  blk.r_a = r_a;
  blk.r_b = r_b;

  const Interval wt = blk.wt_range();
  Interval z1 = Interval(-1.5 * r_a, 1.5 * r_a);
  Interval z2 = Interval(-1.5 * r_b, 1.5 * r_b);
  for (int it = 0; it < max_iter; ++it) {
    const ErrorEnclosure d =
        error_term_enclosure(chart, z1, z2, wt, Interval(0.0, eps0));
    const Interval core_a = (Interval(0.0) - d.d1) / Interval(chart.lam1);
    const Interval core_b = (Interval(0.0) - d.d2) / Interval(chart.lam2);
    const Interval ext_a = widened(core_a, r_a);
    const Interval ext_b = widened(core_b, r_b);
    if (z1.contains(ext_a) && z2.contains(ext_b)) {
      blk.deltas = d;
      blk.a_core = core_a;
      blk.b_core = core_b;
      blk.a_ext = ext_a;
      blk.b_ext = ext_b;
      blk.carrier_z1 = z1;
      blk.carrier_z2 = z2;
      return blk;
    }
    z1 = widened(hull(z1, ext_a), 0.3 * ext_a.mag() + 1e-14);
    z2 = widened(hull(z2, ext_b), 0.3 * ext_b.mag() + 1e-14);
  }
  throw Error(ErrorCode::SelfConsistencyFailed,
              "construct_block: enclosure did not stabilize");
}

SignReport verify_boundary_signs(const FastSaddleBlock& blk) {
  const LocalChart& ch = blk.chart;
  const Interval wt = blk.wt_range();
  const Interval eps(0.0, blk.eps0);
  SignReport rep;

  auto d1_on = [&](const Interval& z1, const Interval& z2) {
    return error_term_enclosure(ch, z1, z2, wt, eps).d1;
  };
  auto d2_on = [&](const Interval& z1, const Interval& z2) {
    return error_term_enclosure(ch, z1, z2, wt, eps).d2;
  };

  // a' = lam1 a + F1 must point outward on both a-faces
  const Interval fa_p = Interval(ch.lam1) * Interval(blk.a_ext.hi()) +
                        d1_on(Interval(blk.a_ext.hi()), blk.b_ext);
  const Interval fa_m = Interval(0.0) - (Interval(ch.lam1) * Interval(blk.a_ext.lo()) +
                                         d1_on(Interval(blk.a_ext.lo()), blk.b_ext));
  // b' = lam2 b + F2 must point inward on both b-faces
  const Interval fb_p = Interval(0.0) - (Interval(ch.lam2) * Interval(blk.b_ext.hi()) +
                                         d2_on(blk.a_ext, Interval(blk.b_ext.hi())));
  const Interval fb_m = Interval(ch.lam2) * Interval(blk.b_ext.lo()) +
                        d2_on(blk.a_ext, Interval(blk.b_ext.lo()));

  rep.a_plus = fa_p.lo();
  rep.a_minus = fa_m.lo();
  rep.b_plus = fb_p.lo();
  rep.b_minus = fb_m.lo();
  rep.ok = rep.a_plus > 0.0 && rep.a_minus > 0.0 && rep.b_plus > 0.0 &&
           rep.b_minus > 0.0;
  return rep;
}

ConeReport verify_cone_conditions(FastSaddleBlock& blk, int refine_depth) {
  const double lamA = blk.chart.eig.lambda_A;
  const double muB = blk.chart.eig.mu_B;
  const double amb = rnd::down(lamA - muB);  // lambda_A + |mu_B|
  ConeReport rep;

  for (int depth = 0; depth <= refine_depth; ++depth) {
    rep.unstable = cone_sigmas(blk.chart, blk.a_ext, blk.b_ext, blk.wt_range(),
                               blk.eps0, 1.0, true, depth);
    rep.stable = cone_sigmas(blk.chart, blk.a_ext, blk.b_ext, blk.wt_range(),
                             blk.eps0, 1.0, false, depth);
    const SigmaSextet& u = rep.unstable;
    const SigmaSextet& s = rep.stable;

    rep.margin_graph_u = rnd::down(lamA - sum_up({u.A1, u.A2}));
    rep.margin_cone_u = rnd::down(
        amb - sum_up({u.A1, u.A2, u.B1, u.B2, rnd::up(blk.eps0 * sum_up({u.g1, u.g2}))}));
    rep.margin_graph_s = rnd::down(-muB - sum_up({s.B1, s.B2}));
    rep.margin_cone_s = rnd::down(
        amb - sum_up({s.A1, s.A2, s.B1, s.B2, rnd::up(blk.eps0 * sum_up({s.g1, s.g2}))}));
    const double mixed = rnd::up(0.5 * sum_up({u.A2, s.B2}));
    rep.margin_lyap_a = rnd::down(lamA - sum_up({u.A1, mixed}));
    rep.margin_lyap_b = rnd::down(-muB - sum_up({s.B1, mixed}));

    rep.lambda_min = rnd::down(lamA - sum_up({u.A1, u.A2}));
    rep.mu_min = rnd::up(muB + sum_up({s.B1, s.B2}));

    rep.ok = rep.margin_graph_u > 0.0 && rep.margin_cone_u > 0.0 &&
             rep.margin_graph_s > 0.0 && rep.margin_cone_s > 0.0;
    rep.lyapunov_ok = rep.margin_lyap_a > 0.0 && rep.margin_lyap_b > 0.0;
    if (rep.ok && rep.lyapunov_ok) break;
  }
  blk.status.cones_ok = rep.ok;
  blk.status.lyapunov_ok = rep.lyapunov_ok;
  return rep;
}

MConeReport verify_m_cone(const FastSaddleBlock& blk, double m, double ell,
                          int side, bool unstable_side, const Interval& carrier_y,
                          double profile_start, int partitions, int refine_depth) {
  if (m < 1.0) throw Error(ErrorCode::MConeFailed, "verify_m_cone: m < 1");
  const LocalChart& ch = blk.chart;
  const double lamA = ch.eig.lambda_A;
  const double muB = ch.eig.mu_B;
  const double amb = rnd::down(lamA - muB);

  // V per the extension recipe: lengthen the sharpened axis by ell, widen the
  // complementary fast axis and the carrier window by ell/m
  Interval z1 = blk.a_ext, z2 = blk.b_ext;
  if (unstable_side) {
    z1 = (side > 0) ? Interval(z1.lo(), rnd::up(z1.hi() + ell))
                    : Interval(rnd::down(z1.lo() - ell), z1.hi());
    z2 = widened(z2, ell / m);
  } else {
    z2 = (side > 0) ? Interval(z2.lo(), rnd::up(z2.hi() + ell))
                    : Interval(rnd::down(z2.lo() - ell), z2.hi());
    z1 = widened(z1, ell / m);
  }
  const Interval wt = carrier_y - Interval(ch.wbar);

  MConeReport rep;
  rep.m = m;
  rep.ell = ell;
  rep.side = side;
  rep.unstable_side = unstable_side;
  rep.profile_start = profile_start;

  for (int depth = 0; depth <= refine_depth; ++depth) {
    rep.sig = cone_sigmas(ch, z1, z2, wt, blk.eps0, m, unstable_side, depth);
    const SigmaSextet& s = rep.sig;
    if (unstable_side) {
      rep.margin_graph = rnd::down(lamA - sum_up({s.A1, s.A2}));
    } else {
      rep.margin_graph = rnd::down(-muB - sum_up({s.B1, s.B2}));
    }
    rep.margin_cone = rnd::down(
        amb -
        sum_up({s.A1, s.A2, s.B1, s.B2, rnd::up(blk.eps0 * sum_up({s.g1, s.g2}))}));
    rep.ok = rep.margin_graph > 0.0 && rep.margin_cone > 0.0;
    if (rep.ok) break;
  }

  // Rate profile on distance cells for departure/arrival bounds.  A cell at
  // distance d keeps only points whose sharpened coordinate lies within d of
  // the core (where the invariant manifold is trapped).
  if (partitions > 0) {
    const Interval core = unstable_side ? blk.a_core : blk.b_core;
    const double top = (unstable_side ? blk.a_ext.width() : blk.b_ext.width()) + ell;
    const double L = top - profile_start;
    if (L <= 0.0)
      throw Error(ErrorCode::NonpositiveRate, "verify_m_cone: empty rate range");
    for (int j = 1; j <= partitions; ++j) {
      const double cell_top = profile_start + (L * j) / partitions;
      Interval zz1 = z1, zz2 = z2;
      Interval& sharp = unstable_side ? zz1 : zz2;
      if (side > 0)
        sharp = Interval(sharp.lo(), std::min(sharp.hi(), rnd::up(core.hi() + cell_top)));
      else
        sharp = Interval(std::max(sharp.lo(), rnd::down(core.lo() - cell_top)), sharp.hi());
      const SigmaSextet sc = cone_sigmas(ch, zz1, zz2, wt, blk.eps0, m,
                                         unstable_side, refine_depth > 0 ? 2 : 0);
      double rate = unstable_side ? rnd::down(lamA - sum_up({sc.A1, sc.A2}))
                                  : rnd::down(-muB - sum_up({sc.B1, sc.B2}));
      rep.rate_cells.push_back(rate);
      rep.cell_tops.push_back(cell_top);
    }
  }
  return rep;
}

}  // namespace fsv
