#pragma once

#include "fsv/chain.hpp"

namespace fsv {

enum class SlowStability { attracting, repelling };

struct SlowIsolatingBlock {
  Interval y_interval;
  SlowStability stability = SlowStability::attracting;
  double margin_lo = 0.0, margin_hi = 0.0;  // strict-sign margins at the ends
  Interval g_lo, g_hi;                      // field enclosures at the ends
};

struct FiberExitReport {
  double shrink = 0.0;       // (diam pi_a(N) - r_a)/m_u
  double stable_margin = 0.0;   // r_b - shrink
  double block_margin = 0.0;    // iso inside the shrunk window
  double exit_margin = 0.0;     // face inside the doubly shrunk window
  double fiber_width_quantity = 0.0;  // 2 (diam pi_a(N) - r_a)/m_u
  bool ok = false;
};

// Enclosure of the reduced slow field g(h^eps(y), y, eps) on a y-section,
// over eps in [0, eps0], via the nullcline rewrite around (u_ref, w_ref)
// with f(u_ref) ~= w_ref.
Interval slow_vf_enclosure(const FastSaddleBlock& host, const Interval& y,
                           double eps0, double u_ref, double w_ref);

SlowIsolatingBlock find_slow_isolating_block(const FastSaddleBlock& host,
                                             double y0, double delta,
                                             double eps0, double u_ref,
                                             double w_ref);

FiberExitReport check_fiber_exit(const FastSaddleBlock& host,
                                 const SlowIsolatingBlock& iso, double m_u,
                                 const Interval& exit_face_y);

}  // namespace fsv
