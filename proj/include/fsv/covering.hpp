#pragma once

#include "fsv/chain.hpp"
#include "fsv/ivp.hpp"

namespace fsv {

// h-set with one expanding coordinate; s lists the contracting extents
struct HSet {
  Interval u;
  std::vector<Interval> s;
};

struct ImageHull {
  Interval u;
  std::vector<Interval> s;
};

struct CoveringMargins {
  double left = 0.0, right = 0.0;
  double full_s = 0.0, mid_s = 0.0;
  bool flipped = false;
};

// Sign-based covering test for u = 1: edge images expelled on opposite sides,
// the full image clear of the entrance, the mid segment inside the slab.
// Conservative: returns false whenever a condition is not provable.
bool check_covering_u1(const ImageHull& left, const ImageHull& right,
                       const ImageHull& full, const ImageHull& mid,
                       const HSet& target, CoveringMargins* margins = nullptr);

struct DropTarget {
  FastSaddleBlock head;
  const ConeExtension* stable = nullptr;  // arrival cone, optional
  int ent_side = +1;  // b-side of the head block the arrival cone extends from
  Interval y_window;  // section window of the head block
};

struct DropVerdict {
  bool ok = false;
  std::string fail_cond;
  bool flipped = false;           // orientation of the edge expulsion
  double margin_edge_lo = 0.0;    // lateral clearance of the w-lo edge strip
  double margin_edge_hi = 0.0;
  double margin_window = 0.0;     // worst b-window interiority of landed cells
  double margin_y_lo = 0.0, margin_y_hi = 0.0;  // arrival-shifted y margins
  double margin_mid = 0.0;        // worst mid-segment membership margin
  Interval landed_y;              // y-hull over cells inside the target window
  long cells_run = 0;
  int max_depth = 0;
  double seconds = 0.0;
  Interval c_used, eps_used;
  Interval face_w_used;
};

struct DropSpec {
  double T = 0.0;
  IntegratorConfig cfg;
  int w_cells = 12;
  int b_cells = 2;
  int c_cells = 4;  // parameter subdivision; the statement is per subinterval
  int max_refine = 9;
  Interval face_w;  // absolute sub-window of the shifted exit face
  bool face_w_given = false;
  int threads = 1;
};

DropVerdict verify_drop(const Fhn& sys, const ConeExtension& source,
                        const DropTarget& target, const Interval& eps_range,
                        const DropSpec& spec,
                        std::vector<std::pair<double, std::vector<Interval>>>*
                            trace = nullptr);

}  // namespace fsv
