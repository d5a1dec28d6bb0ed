#pragma once

#include "fsv/fhn.hpp"
#include "fsv/linalg.hpp"

namespace fsv {

enum class ChartMode { basic, predictor_corrector };

// Affine normal-form frame around a numerical layer equilibrium (ubar,0,wbar):
//   u = ubar + P11 z1 + P12 z2 + slope_u * wt      (slope_u = 0 in basic mode)
//   v =        P21 z1 + P22 z2
//   w = wbar + wt
// P columns are approximate eigenvectors of the fast Jacobian, scaled by a
// uniform factor so chart-unit block parameters map to small physical sets.
struct LocalChart {
  Fhn sys;
  ChartMode mode = ChartMode::predictor_corrector;
  double ubar = 0.0, wbar = 0.0;
  double scale = 1.0;
  // metric weight of the slow coordinate in the cone inequalities; the cone
  // fields compare |Delta a| against |(Delta b, Delta w / y_metric)|
  double y_metric = 1.0;
  std::vector<std::vector<double>> P;  // 2x2 point matrix
  VerifiedInverse Pinv;
  EigenPairBound eig;
  double lam1 = 0.0, lam2 = 0.0;  // diagonal anchors, midpoints of eig intervals
  Interval fu_bar;                // f_u(ubar) over parameter intervals
  Interval slope_u;               // first component of -f_x^{-1} f_y = 1/f_u(ubar)

  Interval u_range(const Interval& z1, const Interval& z2, const Interval& wt) const {
    Interval u = Interval(ubar) + Interval(P[0][0]) * z1 + Interval(P[0][1]) * z2;
    if (mode == ChartMode::predictor_corrector) u += slope_u * wt;
    return u;
  }
  Interval v_range(const Interval& z1, const Interval& z2) const {
    return Interval(P[1][0]) * z1 + Interval(P[1][1]) * z2;
  }
  Interval w_range(const Interval& wt) const { return Interval(wbar) + wt; }

  // physical (u,v,w) hull of a chart box
  Box to_physical(const Interval& z1, const Interval& z2, const Interval& wt) const {
    return Box({u_range(z1, z2, wt), v_range(z1, z2), w_range(wt)}, DimTags{1, 1, 1});
  }

  // chart coordinates of a physical box (interval-safe)
  void to_chart(const Box& xyz, Interval& z1, Interval& z2, Interval& wt) const;
};

struct ErrorEnclosure {
  Interval d1;  // enclosure of the first chart-coordinate error term
  Interval d2;  // second
};

LocalChart build_chart(const Fhn& sys, double ubar_guess, double wbar,
                       ChartMode mode, double scale);

// Enclosure of the nonlinear + parameter error terms of the chart equations
// over the chart box (z1,z2) x wt x [0,eps0]; valid for every parameter
// selection inside the FHN parameter intervals.
ErrorEnclosure error_term_enclosure(const LocalChart& chart, const Interval& z1,
                                    const Interval& z2, const Interval& wt,
                                    const Interval& eps);

}  // namespace fsv
