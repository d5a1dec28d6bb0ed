#include "fsv/chart.hpp"

#include <cmath>

namespace fsv {

void LocalChart::to_chart(const Box& xyz, Interval& z1, Interval& z2,
                          Interval& wt) const {
  wt = xyz[2] - Interval(wbar);
  Interval du = xyz[0] - Interval(ubar);
  if (mode == ChartMode::predictor_corrector) du -= slope_u * wt;
  const Interval dv = xyz[1];
  z1 = Pinv.enclosure(0, 0) * du + Pinv.enclosure(0, 1) * dv;
  z2 = Pinv.enclosure(1, 0) * du + Pinv.enclosure(1, 1) * dv;
}

LocalChart build_chart(const Fhn& sys, double ubar_guess, double wbar,
                       ChartMode mode, double scale) {
  LocalChart ch;
  ch.sys = sys;
  ch.mode = mode;
  ch.scale = scale;
  ch.y_metric = scale;
  ch.wbar = wbar;
  ch.ubar = sys.newton_u(wbar, ubar_guess);

  ch.fu_bar = sys.f_u(Interval(ch.ubar));
  if (ch.fu_bar.contains(0.0))
    throw Error(ErrorCode::SingularJacobian, "build_chart: f_u(ubar) contains zero");

  ch.eig = eig2_enclose(sys.fast_jacobian(Interval(ch.ubar)));
  ch.lam1 = ch.eig.lambda_unstable.mid();
  ch.lam2 = ch.eig.mu_stable.mid();

  // eigenvectors (1, lambda)^T of [[0,1],[-f_u/delta, c/delta]], unit columns
  // times the uniform chart scale
  auto column = [scale](double lam) {
    const double n = std::sqrt(1.0 + lam * lam);
    return std::pair<double, double>{scale / n, scale * lam / n};
  };
  const auto c1 = column(ch.lam1);
  const auto c2 = column(ch.lam2);
  ch.P = {{c1.first, c2.first}, {c1.second, c2.second}};
  ch.Pinv = verified_inverse(ch.P);

  ch.slope_u = (mode == ChartMode::predictor_corrector)
                   ? Interval(1.0) / ch.fu_bar
                   : Interval(0.0);
  return ch;
}

ErrorEnclosure error_term_enclosure(const LocalChart& chart, const Interval& z1,
                                    const Interval& z2, const Interval& wt,
                                    const Interval& eps) {
  const Fhn& sys = chart.sys;
  const Interval U = chart.u_range(z1, z2, wt);
  const Interval W = chart.w_range(wt);
  const Interval ubar(chart.ubar);
  const Interval wbar(chart.wbar);

  // quadratic remainder of f around ubar by the mean value form, with the
  // residual of the numerical zero kept explicitly
  const Interval xi = hull(ubar, U);
  const Interval du = U - ubar;
  const Interval quad =
      (Interval(3.0) * xi - (Interval(1.0) + sys.p.a)) * sqr(du);
  Interval e2 = (wbar - sys.f(ubar) + quad) / sys.p.delta;
  if (chart.mode == ChartMode::basic) e2 += wt / sys.p.delta;

  Interval e1(0.0);
  if (chart.mode == ChartMode::predictor_corrector)
    e1 = Interval(0.0) - eps * (U - sys.p.gamma * W) / (sys.p.c * chart.fu_bar);

  // linear-part residual (P does not exactly diagonalize the interval
  // Jacobian; c is an interval)
  const IMatrix A0 = sys.fast_jacobian(ubar);
  const IMatrix Pm = IMatrix::from_point(chart.P);
  IMatrix R = chart.Pinv.enclosure * A0 * Pm;
  R(0, 0) = R(0, 0) - Interval(chart.lam1);
  R(1, 1) = R(1, 1) - Interval(chart.lam2);
  const auto rz = R.mul({z1, z2});

  const auto d = chart.Pinv.enclosure.mul({e1, e2});
  return {d[0] + rz[0], d[1] + rz[1]};
}

}  // namespace fsv
