#include "fsv/covering.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <thread>

namespace fsv {

bool check_covering_u1(const ImageHull& left, const ImageHull& right,
                       const ImageHull& full, const ImageHull& mid,
                       const HSet& target, CoveringMargins* margins) {
  CoveringMargins m;
  const double direct_l = rnd::down(target.u.lo() - left.u.hi());
  const double direct_r = rnd::down(right.u.lo() - target.u.hi());
  const double flip_l = rnd::down(left.u.lo() - target.u.hi());
  const double flip_r = rnd::down(target.u.lo() - right.u.hi());
  if (std::min(direct_l, direct_r) >= std::min(flip_l, flip_r)) {
    m.left = direct_l;
    m.right = direct_r;
  } else {
    m.flipped = true;
    m.left = flip_l;
    m.right = flip_r;
  }

  auto inside_s = [&](const ImageHull& img) {
    double worst = std::numeric_limits<double>::infinity();
    if (img.s.size() != target.s.size())
      throw Error(ErrorCode::DimensionMismatch, "check_covering_u1: s-dim mismatch");
    for (size_t i = 0; i < img.s.size(); ++i) {
      worst = std::min(worst, rnd::down(img.s[i].lo() - target.s[i].lo()));
      worst = std::min(worst, rnd::down(target.s[i].hi() - img.s[i].hi()));
    }
    return worst;
  };
  m.full_s = inside_s(full);
  m.mid_s = inside_s(mid);
  if (margins) *margins = m;
  return m.left > 0.0 && m.right > 0.0 && m.full_s > 0.0 && m.mid_s > 0.0;
}

namespace {

enum class CellKind { face, edge_lo, edge_hi, mid };

struct Cell {
  CellKind kind;
  Interval w, b;
  int depth = 0;
};

struct CellImage {
  bool failed_integration = false;
  std::string err;
  Interval z1, z2, y;
};

struct TargetGeom {
  Interval a_rect;    // lateral extent of the vertex slab
  Interval b_window;  // open b-window between the far face and the cone top
  Interval y_window;
  int side = +1;
  double m_s = 1.0;
  bool has_cone = false;
  double b_near = 0.0;  // cone-base boundary of the block
  double eps_low = 0.0, eps_up = 0.0, T_arr = 0.0;

  double infl_hi(const Interval& z2) const {
    if (!has_cone) return 0.0;
    const double over = side > 0 ? z2.hi() - b_near : b_near - z2.lo();
    return over > 0.0 ? rnd::up(over / m_s) : 0.0;
  }
};

struct CellVerdict {
  bool pass = false;
  bool clear_left = false, clear_right = false;
  double clear_margin = -std::numeric_limits<double>::infinity();
  double window_margin = -std::numeric_limits<double>::infinity();
  double y_lo_margin = 0.0, y_hi_margin = 0.0;
};

CellVerdict classify(const CellImage& img, const TargetGeom& g) {
  CellVerdict v;
  const double infl = g.infl_hi(img.z2);
  const double lm = rnd::down(g.a_rect.lo() - infl - img.z1.hi());
  const double rm = rnd::down(img.z1.lo() - (g.a_rect.hi() + infl));
  v.clear_left = lm > 0.0;
  v.clear_right = rm > 0.0;
  v.clear_margin = std::max(lm, rm);
  v.window_margin = std::min(rnd::down(img.z2.lo() - g.b_window.lo()),
                             rnd::down(g.b_window.hi() - img.z2.hi()));
  v.y_lo_margin = rnd::down(
      (Interval(img.y.lo()) + Interval(g.eps_low) * Interval(g.T_arr)).lo() -
      g.y_window.lo());
  v.y_hi_margin = rnd::down(
      g.y_window.hi() -
      (Interval(img.y.hi()) + Interval(g.eps_up) * Interval(g.T_arr)).hi());
  const bool landed = v.window_margin > 0.0 && v.y_lo_margin > 0.0 &&
                      v.y_hi_margin > 0.0;
  v.pass = v.clear_left || v.clear_right || landed;
  return v;
}

}  // namespace

DropVerdict verify_drop(const Fhn& sys, const ConeExtension& source,
                        const DropTarget& target, const Interval& eps_range,
                        const DropSpec& spec,
                        std::vector<std::pair<double, std::vector<Interval>>>* trace) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(spec.T > 0.0))
    throw Error(ErrorCode::DropFailed, "verify_drop: T must be positive");
  DropVerdict out;
  out.eps_used = eps_range;
  out.c_used = sys.p.c;

  const LocalChart& src = source.base_chart;
  Interval face_w = source.face_y_shifted;
  if (spec.face_w_given) {
    face_w = intersect(face_w, spec.face_w);
    if (face_w.is_empty())
      throw Error(ErrorCode::DropFailed, "verify_drop: face window empty");
  }
  out.face_w_used = face_w;

  TargetGeom geom;
  geom.side = target.ent_side;
  geom.a_rect = target.head.a_ext;
  geom.y_window = target.y_window;
  if (target.stable) {
    geom.has_cone = true;
    geom.m_s = target.stable->m;
    geom.T_arr = target.stable->T_bound;
    geom.eps_low = target.stable->eps_low;
    geom.eps_up = target.stable->eps_up;
    const double ell = target.stable->ell;
    if (geom.side > 0) {
      geom.b_near = target.head.b_ext.hi();
      geom.b_window = Interval(target.head.b_ext.lo(), rnd::up(geom.b_near + ell));
    } else {
      geom.b_near = target.head.b_ext.lo();
      geom.b_window = Interval(rnd::down(geom.b_near - ell), target.head.b_ext.hi());
    }
  } else {
    geom.b_window = target.head.b_ext;
    geom.b_near = geom.side > 0 ? target.head.b_ext.hi() : target.head.b_ext.lo();
  }

  auto face_box = [&](const Interval& b_part, const Interval& w_part) {
    const Interval wt = w_part - Interval(src.wbar);
    if (source.unstable_side)
      return src.to_physical(Interval(source.face_a), b_part, wt);
    return src.to_physical(b_part, Interval(source.face_a), wt);
  };

  const FhnParamTaylorField field(sys);
  Interval c_slice = sys.p.c;
  auto integrate_cell = [&](const Cell& cell) {
    CellImage img;
    try {
      IntegratorConfig cfg = spec.cfg;
      cfg.keep_trace = trace != nullptr && cell.kind == CellKind::face;
      // parallelepiped aligned with the face parametrization so the
      // stable-direction structure of the exit face is not boxed away
      const auto& P = src.P;
      const double su = src.slope_u.mid();
      std::vector<std::vector<double>> B(5, std::vector<double>(5, 0.0));
      const int ia = source.unstable_side ? 0 : 1;  // sharpened column
      const int ib = 1 - ia;
      B[0][0] = P[0][ia];
      B[1][0] = P[1][ia];
      B[0][1] = P[0][ib];
      B[1][1] = P[1][ib];
      B[0][2] = src.mode == ChartMode::predictor_corrector ? su : 0.0;
      B[2][2] = 1.0;
      B[3][3] = 1.0;
      B[4][4] = 1.0;
      const Interval wt_c = cell.w - Interval(src.wbar);
      std::vector<double> c0{0.0, 0.0, 0.0, c_slice.mid(), eps_range.mid()};
      {
        const Box xc = source.unstable_side
                           ? src.to_physical(Interval(source.face_a),
                                             Interval(cell.b.mid()),
                                             Interval(wt_c.mid()))
                           : src.to_physical(Interval(cell.b.mid()),
                                             Interval(source.face_a),
                                             Interval(wt_c.mid()));
        c0[0] = xc[0].mid();
        c0[1] = xc[1].mid();
        c0[2] = xc[2].mid();
      }
      std::vector<Interval> r{
          Interval(0.0), cell.b - Interval(cell.b.mid()),
          wt_c - Interval(wt_c.mid()), c_slice - Interval(c_slice.mid()),
          eps_range - Interval(eps_range.mid())};
      // residual between the exact face box and the affine model
      const Box x0 = face_box(cell.b, cell.w);
      std::vector<Interval> residual(5, Interval(0.0));
      {
        FlowEnclosure probe;
        probe.c = c0;
        probe.B = B;
        probe.r = r;
        const auto model = probe.hull();
        const std::vector<Interval> exact{x0[0], x0[1], x0[2], c_slice, eps_range};
        for (int i = 0; i < 5; ++i) {
          const size_t si = static_cast<size_t>(i);
          const double lo = std::min(0.0, rnd::down(exact[si].lo() - model[si].lo()));
          const double hi = std::max(0.0, rnd::up(exact[si].hi() - model[si].hi()));
          residual[si] = Interval(lo, hi);
        }
      }
      const FlowEnclosure init = FlowEnclosure::from_affine(c0, B, r, residual);
      const FlowEnclosure fe = flow_to_time_from(field, init, spec.T, cfg);
      auto hull = fe.hull();
      if (cfg.keep_trace && trace)
        for (const auto& row : fe.trace)
          trace->push_back({row.first,
                            {row.second[0], row.second[1], row.second[2]}});
      hull.resize(3);
      Interval z1, z2, wt;
      target.head.chart.to_chart(Box::plain(hull), z1, z2, wt);
      img.z1 = z1;
      img.z2 = z2;
      img.y = wt + Interval(target.head.chart.wbar);
    } catch (const Error& e) {
      img.failed_integration = true;
      img.err = e.what();
    }
    return img;
  };

  bool lo_left = false, lo_right = false, hi_left = false, hi_right = false;
  out.margin_edge_lo = std::numeric_limits<double>::infinity();
  out.margin_edge_hi = std::numeric_limits<double>::infinity();
  out.margin_window = std::numeric_limits<double>::infinity();
  out.margin_mid = std::numeric_limits<double>::infinity();
  out.margin_y_lo = std::numeric_limits<double>::infinity();
  out.margin_y_hi = std::numeric_limits<double>::infinity();
  Interval landed_y = Interval::empty_set();

  const int n_c = std::max(1, spec.c_cells);
  for (int ci = 0; ci < n_c; ++ci) {
  c_slice = Interval(sys.p.c.lo() + sys.p.c.width() * ci / n_c,
                     ci + 1 == n_c
                         ? sys.p.c.hi()
                         : sys.p.c.lo() + sys.p.c.width() * (ci + 1) / n_c);
  // initial cell grid: face cells, edge strips, mid segment
  std::deque<Cell> queue;
  const double b_lo = source.face_b.lo(), b_hi = source.face_b.hi();
  for (int wi = 0; wi < spec.w_cells; ++wi) {
    const Interval wcell(face_w.lo() + face_w.width() * wi / spec.w_cells,
                         face_w.lo() + face_w.width() * (wi + 1) / spec.w_cells);
    for (int bi = 0; bi < spec.b_cells; ++bi) {
      const Interval bcell(b_lo + (b_hi - b_lo) * bi / spec.b_cells,
                           b_lo + (b_hi - b_lo) * (bi + 1) / spec.b_cells);
      queue.push_back({CellKind::face, wcell, bcell, 0});
    }
    queue.push_back({CellKind::mid, wcell, Interval(source.face_b.mid()), 0});
  }
  for (int bi = 0; bi < spec.b_cells; ++bi) {
    const Interval bcell(b_lo + (b_hi - b_lo) * bi / spec.b_cells,
                         b_lo + (b_hi - b_lo) * (bi + 1) / spec.b_cells);
    queue.push_back({CellKind::edge_lo, Interval(face_w.lo()), bcell, 0});
    queue.push_back({CellKind::edge_hi, Interval(face_w.hi()), bcell, 0});
  }

  const bool verbose = std::getenv("FSV_DROP_LOG") != nullptr;
  while (!queue.empty()) {
    const Cell cell = queue.front();
    queue.pop_front();
    ++out.cells_run;
    out.max_depth = std::max(out.max_depth, cell.depth);
    const CellImage img = integrate_cell(cell);
    if (verbose) {
      std::fprintf(stderr,
                   "[drop] k=%d d=%d w=[%.6g,%.6g] b=[%.4g,%.4g] %s z1=[%.3g,%.3g] z2=[%.3g,%.3g]\n",
                   static_cast<int>(cell.kind), cell.depth, cell.w.lo(), cell.w.hi(),
                   cell.b.lo(), cell.b.hi(),
                   img.failed_integration ? img.err.c_str() : "ok",
                   img.failed_integration ? 0.0 : img.z1.lo(),
                   img.failed_integration ? 0.0 : img.z1.hi(),
                   img.failed_integration ? 0.0 : img.z2.lo(),
                   img.failed_integration ? 0.0 : img.z2.hi());
      std::fflush(stderr);
    }
    CellVerdict v;
    bool ok = false;
    if (!img.failed_integration) {
      v = classify(img, geom);
      switch (cell.kind) {
        case CellKind::edge_lo:
          ok = v.clear_left || v.clear_right;
          break;
        case CellKind::edge_hi:
          ok = v.clear_left || v.clear_right;
          break;
        default:
          ok = v.pass;
          break;
      }
    }
    if (!ok) {
      if (cell.depth >= spec.max_refine) {
        out.ok = false;
        out.fail_cond =
            img.failed_integration
                ? ("integration: " + img.err)
                : "cell unresolved at max depth (w in " + cell.w.str() + ")";
        out.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
        return out;
      }
      // split the dominating direction: w for face/mid cells, b for edges
      Cell a = cell, b = cell;
      a.depth = b.depth = cell.depth + 1;
      if (cell.kind == CellKind::edge_lo || cell.kind == CellKind::edge_hi ||
          (cell.kind == CellKind::face && cell.b.width() > 4.0 * cell.w.width())) {
        a.b = Interval(cell.b.lo(), cell.b.mid());
        b.b = Interval(cell.b.mid(), cell.b.hi());
      } else {
        a.w = Interval(cell.w.lo(), cell.w.mid());
        b.w = Interval(cell.w.mid(), cell.w.hi());
      }
      queue.push_back(a);
      queue.push_back(b);
      continue;
    }
    // aggregate margins
    switch (cell.kind) {
      case CellKind::edge_lo:
        lo_left = lo_left || v.clear_left;
        lo_right = lo_right || v.clear_right;
        out.margin_edge_lo = std::min(out.margin_edge_lo, v.clear_margin);
        break;
      case CellKind::edge_hi:
        hi_left = hi_left || v.clear_left;
        hi_right = hi_right || v.clear_right;
        out.margin_edge_hi = std::min(out.margin_edge_hi, v.clear_margin);
        break;
      case CellKind::mid:
        if (!(v.clear_left || v.clear_right))
          out.margin_mid = std::min(
              out.margin_mid, std::min(v.window_margin,
                                       std::min(v.y_lo_margin, v.y_hi_margin)));
        break;
      case CellKind::face:
        if (!(v.clear_left || v.clear_right)) {
          out.margin_window = std::min(out.margin_window, v.window_margin);
          out.margin_y_lo = std::min(out.margin_y_lo, v.y_lo_margin);
          out.margin_y_hi = std::min(out.margin_y_hi, v.y_hi_margin);
          landed_y = hull(landed_y, img.y);
        }
        break;
    }
  }

  }  // c-slices

  // edge strips must be expelled uniformly on opposite sides
  const bool direct = (lo_left && !lo_right && hi_right && !hi_left);
  const bool flipped = (lo_right && !lo_left && hi_left && !hi_right);
  out.flipped = flipped;
  if (!(direct || flipped)) {
    out.ok = false;
    out.fail_cond = "edge strips not expelled on opposite sides";
  } else {
    out.ok = true;
  }
  out.landed_y = landed_y;
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace fsv
