#pragma once

#include "fsv/blocks.hpp"

namespace fsv {

struct ChainParams {
  std::string name;
  double w_start = 0.0, w_end = 0.0;
  int q = +1;          // slow direction number
  double u_guess = 0.0;  // Newton seed for the first center
  double h_bar = 0.0, H = 0.0;
  double r_a = 0.0, r_b = 0.0;
  double d_a = 0.0, d_b = 0.0;
  double m_u = 1.0, m_s = 1.0;
  double chi = 1.0;
  double ss5_slab = 0.0;  // carrier halfwidth for pair cone checks; 0 = auto
  int refine_depth = 4;
};

struct SlowSpeed {
  double eps_low = 0.0, eps_up = 0.0, eps_bar = 0.0;
  Interval g_range;
};

struct ShadowVerdict {
  double lhs_a[2] = {0, 0}, lhs_b[2] = {0, 0}, rhs[2] = {0, 0};
  bool ok = false;
  int fail_k = -1;
  char fail_side = ' ';
};

struct SS5Report {
  bool flipped = false;          // orientation of the edge images
  double cov_left = 0.0, cov_right = 0.0, cov_b = 0.0;  // covering margins
  double ineq_lhs = 0.0, ineq_rhs = 0.0;                // sharpness transfer
  double mcone_margin_u = 0.0, mcone_margin_s = 0.0;    // carrier-slab margins
  bool ok = false;
};

struct ChainBlockEntry {
  double w_center = 0.0;
  FastSaddleBlock block;
  SignReport signs;
  ConeReport cones;
  SlowSpeed speed;
  // true when the block hosts a slow equilibrium: the monotone-drift
  // requirement is waived there, as the composition theorems do for the
  // terminal block of a connecting-orbit chain
  bool tail_exempt = false;
};

struct ChainPairEntry {
  ShadowVerdict shadow;
  SS5Report ss5;
  bool exempt = false;
};

struct ShadowChain {
  ChainParams params;
  double eps0 = 0.0;
  double scale = 1.0;
  std::vector<ChainBlockEntry> blocks;
  std::vector<ChainPairEntry> pairs;
  double build_seconds = 0.0;
  bool ok = false;
};

// Cone extension of a block end with per-section carrier verification.
struct ConeExtension {
  bool unstable_side = true;
  int side = +1;
  double m = 1.0, ell = 0.0;
  Interval face_y;          // chosen face window before the drift shift
  Interval face_y_shifted;  // after the departure/arrival shift
  Interval V_z1, V_z2, V_y;  // extension region (absolute y)
  double face_a = 0.0;       // sharpened coordinate of the face
  Interval face_b;           // complementary fast range of the face
  double T_bound = 0.0;      // departure (unstable) or arrival (stable) time
  double eps_low = 0.0, eps_up = 0.0;
  double kappa = 0.0;  // max deviation of adjacent section-chart transitions
  double worst_margin_graph = 0.0, worst_margin_cone = 0.0;
  std::vector<MConeReport> slabs;
  LocalChart base_chart;  // chart the face coordinates live in
  bool ok = false;
};

SlowSpeed slow_speed_bounds(const FastSaddleBlock& blk, double eps0, int q);

double chain_ratio(double H, double h_bar, double delta_w);

ShadowVerdict check_slow_shadowing(const ChainBlockEntry& b1,
                                   const ChainBlockEntry& b2, double chi,
                                   double h_bar, double d_a, double d_b);

SS5Report check_ss5(const Fhn& sys, const ChainBlockEntry& b1,
                    const ChainBlockEntry& b2, const ChainParams& p,
                    double eps0, double scale);

ShadowChain build_chain(const Fhn& sys, double eps0, double scale,
                        const ChainParams& p);

// Partition-sum upper bound for the traversal time of an extension cone.
double departure_arrival_time(const std::vector<double>& rate_cells,
                              const std::vector<double>& cell_tops,
                              double profile_start);

ConeExtension build_cone_extension(const Fhn& sys, const FastSaddleBlock& base,
                                   double m, double ell, int side,
                                   bool unstable_side, const Interval& face_y,
                                   double d_frac, int partitions,
                                   double slab_halfwidth, double scale,
                                   int refine_depth);

// Lemma-style cumulative section offsets used by the chain bookkeeping test.
std::vector<double> section_offsets(const ShadowChain& chain);

}  // namespace fsv
