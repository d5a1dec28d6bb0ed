#pragma once

#include "fsv/chart.hpp"

namespace fsv {

// Fast-saddle-type block in chart coordinates with spaces (u = s = 1).
// Extents are the spaced intervals; cores are the error-driven parts the
// slow manifold is trapped in.
struct FastSaddleBlock {
  LocalChart chart;
  Interval a_core, b_core;
  Interval a_ext, b_ext;
  double r_a = 0.0, r_b = 0.0;
  Interval y_range;  // absolute w-interval K
  double eps0 = 0.0;
  ErrorEnclosure deltas;            // valid over the carrier below
  Interval carrier_z1, carrier_z2;  // superset of the extents used for deltas

  struct Status {
    bool signs_ok = false;
    bool cones_ok = false;
    bool lyapunov_ok = false;
  } status;

  Interval wt_range() const { return y_range - Interval(chart.wbar); }
  Box physical_hull() const {
    return chart.to_physical(a_ext, b_ext, wt_range());
  }
};

struct SignReport {
  // inf of the outward derivative on each fast face, all required positive
  double a_plus = 0.0, a_minus = 0.0, b_plus = 0.0, b_minus = 0.0;
  bool ok = false;
};

struct SigmaSextet {
  double A1 = 0.0, A2 = 0.0, B1 = 0.0, B2 = 0.0, g1 = 0.0, g2 = 0.0;
};

struct ConeReport {
  SigmaSextet unstable;  // Frechet-block singular value bounds, unstable split
  SigmaSextet stable;
  double lambda_min = 0.0;  // expansion rate of unstable disks
  double mu_min = 0.0;      // contraction rate of stable disks (negative)
  double margin_graph_u = 0.0, margin_cone_u = 0.0;
  double margin_graph_s = 0.0, margin_cone_s = 0.0;
  double margin_lyap_a = 0.0, margin_lyap_b = 0.0;
  bool ok = false;
  bool lyapunov_ok = false;
};

struct MConeReport {
  double m = 1.0, ell = 0.0;
  bool unstable_side = true;
  int side = +1;  // face location in the sharpened coordinate
  SigmaSextet sig;
  double margin_graph = 0.0, margin_cone = 0.0;
  bool ok = false;
  // lower bounds of the expansion (or |contraction|) rate on distance cells
  std::vector<double> rate_cells;
  std::vector<double> cell_tops;
  double profile_start = 0.0;
};

FastSaddleBlock construct_block(const LocalChart& chart, const Interval& y_range,
                                double eps0, double r_a, double r_b,
                                int max_iter = 8);

SignReport verify_boundary_signs(const FastSaddleBlock& blk);

ConeReport verify_cone_conditions(FastSaddleBlock& blk, int refine_depth = 4);

// m-cone condition over the extension of the block by a length-ell cone on
// the given side, restricted to the carrier y-window (absolute w units).
MConeReport verify_m_cone(const FastSaddleBlock& blk, double m, double ell,
                          int side, bool unstable_side, const Interval& carrier_y,
                          double profile_start, int partitions,
                          int refine_depth = 4);

// sup of the six sigma bounds over a chart box, with optional bisection
SigmaSextet cone_sigmas(const LocalChart& chart, const Interval& z1,
                        const Interval& z2, const Interval& wt, double eps0,
                        double m, bool unstable_side, int refine_depth = 0);

}  // namespace fsv
