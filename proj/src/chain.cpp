#include "fsv/chain.hpp"

#include <chrono>
#include <cmath>

namespace fsv {

SlowSpeed slow_speed_bounds(const FastSaddleBlock& blk, double eps0, int q) {
  const Box phys = blk.physical_hull();
  const Interval g = blk.chart.sys.g(phys[0], phys[2]);
  SlowSpeed s;
  s.g_range = g;
  // strict sign of g (not eps*g) is the monotonicity requirement
  const bool sign_ok = (q > 0) ? (g.lo() > 0.0) : (g.hi() < 0.0);
  if (!sign_ok)
    throw Error(ErrorCode::SlowDirectionViolated,
                "slow_speed_bounds: q*g not strictly positive over the block");
  const Interval eg = hull(Interval(0.0), Interval(eps0) * g);
  s.eps_low = eg.lo();
  s.eps_up = eg.hi();
  s.eps_bar = eg.mag();
  return s;
}

double chain_ratio(double H, double h_bar, double delta_w) {
  if (!(delta_w > H + 2.0 * h_bar))
    throw Error(ErrorCode::ChainTooShort, "chain_ratio: delta_w <= H + 2 h_bar");
  return 1.0 - (H / h_bar) / ((delta_w - H - 2.0 * h_bar) / h_bar);
}

namespace {

double shadow_lhs(double rate, double ext_diam, double r_space, double d_frac) {
  // rounded-up (1/rate) log((diam - r)/(d r))
  if (!(rate > 0.0))
    throw Error(ErrorCode::ConeConditionFailed, "shadow_lhs: nonpositive rate");
  const Interval arg =
      (Interval(ext_diam) - Interval(r_space)) / (Interval(d_frac) * Interval(r_space));
  if (arg.lo() <= 1.0) return 0.0;  // nothing to expand through
  return (log(arg) / Interval(rate)).hi();
}

}  // namespace

ShadowVerdict check_slow_shadowing(const ChainBlockEntry& b1,
                                   const ChainBlockEntry& b2, double chi,
                                   double h_bar, double d_a, double d_b) {
  const double r_a = std::min(b1.block.r_a, b2.block.r_a);
  const double r_b = std::min(b1.block.r_b, b2.block.r_b);
  ShadowVerdict v;
  const ChainBlockEntry* e[2] = {&b1, &b2};
  v.ok = true;
  for (int k = 0; k < 2; ++k) {
    const ChainBlockEntry& blk = *e[k];
    v.lhs_a[k] = shadow_lhs(blk.cones.lambda_min, blk.block.a_ext.width(), r_a, d_a);
    v.lhs_b[k] = shadow_lhs(-blk.cones.mu_min, blk.block.b_ext.width(), r_b, d_b);
    if (blk.speed.eps_bar == 0.0) {
      v.rhs[k] = std::numeric_limits<double>::infinity();
    } else {
      v.rhs[k] =
          (Interval(chi) * Interval(h_bar) / Interval(blk.speed.eps_bar)).lo();
    }
    const double lhs = std::max(v.lhs_a[k], v.lhs_b[k]);
    if (!(lhs < v.rhs[k])) {
      v.ok = false;
      if (v.fail_k < 0) {
        v.fail_k = k;
        v.fail_side = v.lhs_a[k] >= v.lhs_b[k] ? 'a' : 'b';
      }
    }
  }
  return v;
}

SS5Report check_ss5(const Fhn& sys, const ChainBlockEntry& b1,
                    const ChainBlockEntry& b2, const ChainParams& p, double eps0,
                    double scale) {
  SS5Report rep;
  const double r_a = std::min(b1.block.r_a, b2.block.r_a);
  const double r_b = std::min(b1.block.r_b, b2.block.r_b);

  // transition between the two block charts
  const IMatrix P12 =
      b2.block.chart.Pinv.enclosure * IMatrix::from_point(b1.block.chart.P);

  const Interval rect1_a(-r_a, r_a);
  const Interval rect1_b = widened(Interval(-p.d_b * r_b, p.d_b * r_b), r_a / p.m_u);
  const double tgt_a = rnd::up(p.d_a * r_a + r_b / p.m_s);

  const Interval img_left = P12(0, 0) * Interval(-r_a) + P12(0, 1) * rect1_b;
  const Interval img_right = P12(0, 0) * Interval(r_a) + P12(0, 1) * rect1_b;
  const Interval img_b = P12(1, 0) * rect1_a + P12(1, 1) * rect1_b;

  const double direct_l = rnd::down(-tgt_a - img_left.hi());
  const double direct_r = rnd::down(img_right.lo() - tgt_a);
  const double flip_l = rnd::down(img_left.lo() - tgt_a);
  const double flip_r = rnd::down(-tgt_a - img_right.hi());
  if (std::min(direct_l, direct_r) >= std::min(flip_l, flip_r)) {
    rep.cov_left = direct_l;
    rep.cov_right = direct_r;
  } else {
    rep.flipped = true;
    rep.cov_left = flip_l;
    rep.cov_right = flip_r;
  }
  rep.cov_b = rnd::down(r_b - img_b.mag());

  // sharpness-transfer inequality for the cone images under P12
  const double pbar1 = abs(P12(0, 0)).mag();
  const double pbar2 = abs(P12(1, 1)).mag();
  const double punder2 = abs(P12(1, 1)).mig();
  const double s12 = abs(P12(0, 1)).mag();
  const double s21 = abs(P12(1, 0)).mag();
  const Interval inner = Interval(punder2) * Interval(punder2) -
                         Interval(s21) * Interval(pbar2) -
                         2.0 * Interval(s12) * Interval(s12) /
                             (Interval(p.m_u) * Interval(p.m_u));
  const Interval denom = 2.0 * Interval(pbar1) * Interval(pbar1) +
                         Interval(p.m_u) * Interval(p.m_u) * Interval(s21) *
                             Interval(pbar2);
  rep.ineq_lhs = (Interval(1.0) / (Interval(p.m_s) * Interval(p.m_s))).hi();
  if (inner.lo() <= 0.0) {
    rep.ineq_rhs = 0.0;
  } else {
    const Interval num = Interval(p.m_u) * Interval(p.m_u) *
                         min(Interval(1.0), inner);
    rep.ineq_rhs = (num / denom).lo();
  }

  // m-cone conditions on the shared-section carrier slab
  double slab = p.ss5_slab;
  if (slab <= 0.0) {
    slab = 2.0 * b1.block.chart.y_metric *
           ((r_a * (1.0 + p.d_b) + r_b) / p.m_u +
            (r_b * (1.0 + p.d_a) + r_a) / p.m_s);
    slab = std::max(slab, 0.05 * p.h_bar);
  }
  const double y_sec = 0.5 * (b1.w_center + b2.w_center);
  const LocalChart sec_chart = build_chart(sys, b1.block.chart.ubar, y_sec,
                                           b1.block.chart.mode, scale);
  const FastSaddleBlock sec_blk = construct_block(
      sec_chart, Interval(y_sec - slab, y_sec + slab), eps0, r_a, r_b);
  const MConeReport mu = verify_m_cone(sec_blk, p.m_u, 0.0, +1, true,
                                       sec_blk.y_range, 0.0, 0, p.refine_depth);
  const MConeReport ms = verify_m_cone(sec_blk, p.m_s, 0.0, +1, false,
                                       sec_blk.y_range, 0.0, 0, p.refine_depth);
  rep.mcone_margin_u = mu.margin_cone;
  rep.mcone_margin_s = ms.margin_cone;

  rep.ok = rep.cov_left > 0.0 && rep.cov_right > 0.0 && rep.cov_b > 0.0 &&
           rep.ineq_lhs < rep.ineq_rhs && mu.ok && ms.ok;
  return rep;
}

ShadowChain build_chain(const Fhn& sys, double eps0, double scale,
                        const ChainParams& p) {
  const auto t0 = std::chrono::steady_clock::now();
  if (p.q != +1 && p.q != -1)
    throw Error(ErrorCode::DomainError, "build_chain: q must be +-1");
  const double span = std::fabs(p.w_end - p.w_start);
  ShadowChain chain;
  chain.params = p;
  chain.eps0 = eps0;
  chain.scale = scale;

  // centers along the branch; the flow runs from w_start toward w_end, and
  // the last center is clamped so the final block covers the endpoint
  std::vector<double> centers;
  const double dir = (p.w_end > p.w_start) ? 1.0 : -1.0;
  for (double w = p.w_start;; w += dir * p.h_bar) {
    if ((p.w_end - w) * dir < -1e-15) break;
    centers.push_back(w);
    if (span < p.h_bar) break;
  }
  if (centers.empty()) centers.push_back(p.w_start);
  const double clamped = p.w_end - dir * 0.5 * p.H;
  if (centers.size() > 1 &&
      std::fabs(centers.back() - p.w_end) > 0.5 * p.H - 1e-15 &&
      (clamped - centers.back()) * dir > 0.0)
    centers.push_back(clamped);

  double u_seed = p.u_guess;
  for (double w : centers) {
    ChainBlockEntry e;
    e.w_center = w;
    LocalChart ch;
    try {
      ch = build_chart(sys, u_seed, w, ChartMode::predictor_corrector, scale);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::SingularJacobian ||
          err.code() == ErrorCode::ComplexPossible ||
          err.code() == ErrorCode::NotSaddle)
        throw Error(ErrorCode::FoldEncountered,
                    std::string("build_chain: ") + err.what());
      throw;
    }
    u_seed = ch.ubar;
    // normal hyperbolicity over the block's u-reach
    const Interval u_span =
        ch.u_range(Interval(-2.0 * p.r_a, 2.0 * p.r_a),
                   Interval(-2.0 * p.r_b, 2.0 * p.r_b),
                   Interval(-0.5 * p.H, 0.5 * p.H));
    if (sys.f_u(u_span).contains(0.0))
      throw Error(ErrorCode::FoldEncountered,
                  "build_chain: fold inside the block reach at w=" +
                      std::to_string(w));
    const auto folds = sys.fold_points();
    const bool near_fold =
        std::min(std::fabs(ch.ubar - folds.first),
                 std::fabs(ch.ubar - folds.second)) < 10.0 * u_span.rad();
    auto fail = [&](ErrorCode code, const std::string& what) -> Error {
      // verification loss inside the fold influence zone is the tangency
      if (near_fold) return Error(ErrorCode::FoldEncountered, what + " (near fold)");
      return Error(code, what);
    };
    try {
      e.block = construct_block(ch, Interval(w - 0.5 * p.H, w + 0.5 * p.H), eps0,
                                p.r_a, p.r_b);
    } catch (const Error& err) {
      throw fail(err.code(), err.what());
    }
    e.signs = verify_boundary_signs(e.block);
    if (!e.signs.ok)
      throw fail(ErrorCode::SignViolation, "build_chain: face sign failed");
    e.block.status.signs_ok = true;
    e.cones = verify_cone_conditions(e.block, p.refine_depth);
    if (!e.cones.ok)
      throw fail(ErrorCode::ConeConditionFailed,
                 "build_chain: cone conditions failed at w=" + std::to_string(w));
    try {
      e.speed = slow_speed_bounds(e.block, eps0, p.q);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::SlowDirectionViolated) throw;
      // a slow equilibrium inside the window: admissible only as the
      // terminal host of a connecting-orbit chain
      e.tail_exempt = true;
      const Box phys = e.block.physical_hull();
      const Interval g = sys.g(phys[0], phys[2]);
      e.speed.g_range = g;
      const Interval eg = hull(Interval(0.0), Interval(eps0) * g);
      e.speed.eps_low = eg.lo();
      e.speed.eps_up = eg.hi();
      e.speed.eps_bar = eg.mag();
    }
    chain.blocks.push_back(std::move(e));
  }

  // exempt blocks may only form a suffix of the chain
  bool seen_exempt = false;
  for (const auto& b : chain.blocks) {
    if (b.tail_exempt) seen_exempt = true;
    else if (seen_exempt)
      throw Error(ErrorCode::SlowDirectionViolated,
                  "build_chain: slow equilibrium away from the chain tail");
  }

  chain.ok = true;
  for (size_t i = 0; i + 1 < chain.blocks.size(); ++i) {
    const ChainBlockEntry& b1 = chain.blocks[i];
    const ChainBlockEntry& b2 = chain.blocks[i + 1];
    // overlap of consecutive windows
    if (intersect(b1.block.y_range, b2.block.y_range).is_empty())
      throw Error(ErrorCode::ShadowingFailed, "build_chain: blocks do not overlap");
    ChainPairEntry pair;
    pair.exempt = b1.tail_exempt || b2.tail_exempt;
    if (!pair.exempt) {
      pair.shadow = check_slow_shadowing(b1, b2, p.chi, p.h_bar, p.d_a, p.d_b);
      pair.ss5 = check_ss5(sys, b1, b2, p, eps0, scale);
      chain.ok = chain.ok && pair.shadow.ok && pair.ss5.ok;
    }
    chain.pairs.push_back(std::move(pair));
  }
  chain.build_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return chain;
}

double departure_arrival_time(const std::vector<double>& rate_cells,
                              const std::vector<double>& cell_tops,
                              double profile_start) {
  if (rate_cells.empty() || rate_cells.size() != cell_tops.size())
    throw Error(ErrorCode::NonpositiveRate, "departure_arrival_time: bad profile");
  double prev = profile_start;
  Interval total(0.0);
  for (size_t j = 0; j < rate_cells.size(); ++j) {
    if (!(rate_cells[j] > 0.0))
      throw Error(ErrorCode::NonpositiveRate,
                  "departure_arrival_time: nonpositive rate cell");
    total += log(Interval(cell_tops[j]) / Interval(prev)) / Interval(rate_cells[j]);
    prev = cell_tops[j];
  }
  double t = total.hi();
  return rnd::up(t + std::ldexp(std::fabs(t), -40) + 1e-300);
}

ConeExtension build_cone_extension(const Fhn& sys, const FastSaddleBlock& base,
                                   double m, double ell, int side,
                                   bool unstable_side, const Interval& face_y,
                                   double d_frac, int partitions,
                                   double slab_halfwidth, double scale,
                                   int refine_depth) {
  ConeExtension ce;
  ce.unstable_side = unstable_side;
  ce.side = side;
  ce.m = m;
  ce.ell = ell;
  ce.face_y = face_y;
  ce.base_chart = base.chart;
  if (!base.y_range.contains(face_y))
    throw Error(ErrorCode::MarginViolated,
                "build_cone_extension: face window outside block");

  const double r_sharp = unstable_side ? base.r_a : base.r_b;
  const double profile_start = d_frac * r_sharp;

  if (!(slab_halfwidth > 0.0))
    throw Error(ErrorCode::DomainError,
                "build_cone_extension: slab halfwidth must be positive");

  double drift_margin = 0.0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    ce.slabs.clear();
    // tile the face window plus cone overhang plus expected drift; the cone
    // y-extent is ell/m in metric units
    const Interval carrier =
        widened(face_y, base.chart.y_metric * ell / m + drift_margin);
    const int n_slabs = std::max(
        1, static_cast<int>(std::ceil(carrier.width() / (2.0 * slab_halfwidth))));
    ce.kappa = 0.0;
    ce.worst_margin_graph = std::numeric_limits<double>::infinity();
    ce.worst_margin_cone = std::numeric_limits<double>::infinity();
    ce.T_bound = 0.0;
    LocalChart prev_chart;
    bool have_prev = false;
    double u_seed = base.chart.ubar;
    for (int i = 0; i < n_slabs; ++i) {
      const double lo = carrier.lo() + carrier.width() * i / n_slabs;
      const double hi = carrier.lo() + carrier.width() * (i + 1) / n_slabs;
      const double mid_y = 0.5 * (lo + hi);
      LocalChart ch = build_chart(sys, u_seed, mid_y, base.chart.mode, scale);
      u_seed = ch.ubar;
      FastSaddleBlock blk =
          construct_block(ch, Interval(lo, hi), base.eps0, base.r_a, base.r_b);
      MConeReport rep = verify_m_cone(blk, m, ell, side, unstable_side,
                                      blk.y_range, profile_start,
                                      partitions, refine_depth);
      if (!rep.ok)
        throw Error(ErrorCode::MConeFailed,
                    "build_cone_extension: cone condition failed on slab at w=" +
                        std::to_string(mid_y));
      ce.worst_margin_graph = std::min(ce.worst_margin_graph, rep.margin_graph);
      ce.worst_margin_cone = std::min(ce.worst_margin_cone, rep.margin_cone);
      // each pair of trajectories stays inside one slab carrier, so the
      // traversal bound is the worst per-slab bound
      ce.T_bound = std::max(
          ce.T_bound,
          departure_arrival_time(rep.rate_cells, rep.cell_tops, profile_start));
      if (have_prev) {
        const IMatrix t = ch.Pinv.enclosure * IMatrix::from_point(prev_chart.P);
        ce.kappa = std::max(ce.kappa, (t - IMatrix::identity(2)).norm_inf_up());
      }
      prev_chart = ch;
      have_prev = true;
      ce.slabs.push_back(std::move(rep));
    }

    // the extension region in the base chart
    ce.V_z1 = base.a_ext;
    ce.V_z2 = base.b_ext;
    if (unstable_side) {
      ce.V_z1 = (side > 0)
                    ? Interval(ce.V_z1.lo(), rnd::up(ce.V_z1.hi() + ell))
                    : Interval(rnd::down(ce.V_z1.lo() - ell), ce.V_z1.hi());
      ce.V_z2 = widened(ce.V_z2, ell / m);
    } else {
      ce.V_z2 = (side > 0)
                    ? Interval(ce.V_z2.lo(), rnd::up(ce.V_z2.hi() + ell))
                    : Interval(rnd::down(ce.V_z2.lo() - ell), ce.V_z2.hi());
      ce.V_z1 = widened(ce.V_z1, ell / m);
    }
    ce.V_y = carrier;

    const Box phys = base.chart.to_physical(ce.V_z1, ce.V_z2,
                                            ce.V_y - Interval(base.chart.wbar));
    const Interval eg =
        hull(Interval(0.0), Interval(base.eps0) * sys.g(phys[0], phys[2]));
    ce.eps_low = eg.lo();
    ce.eps_up = eg.hi();

    const double need =
        std::max(std::fabs(ce.eps_low), std::fabs(ce.eps_up)) * ce.T_bound;
    if (need <= drift_margin || attempt == 2) break;
    drift_margin = rnd::up(need * 1.5 + 1e-12);
  }

  ce.face_a = unstable_side
                  ? (side > 0 ? ce.V_z1.hi() : ce.V_z1.lo())
                  : (side > 0 ? ce.V_z2.hi() : ce.V_z2.lo());
  ce.face_b = unstable_side ? ce.V_z2 : ce.V_z1;

  // margin condition: the window and its drifted copy stay in the block
  const Interval drifted =
      face_y + hull(Interval(ce.eps_low) * Interval(ce.T_bound),
                    Interval(ce.eps_up) * Interval(ce.T_bound));
  if (!base.y_range.contains(drifted))
    throw Error(ErrorCode::MarginViolated,
                "build_cone_extension: drifted window leaves the block");
  const double y_lo =
      (Interval(face_y.lo()) + Interval(ce.eps_up) * Interval(ce.T_bound)).hi();
  const double y_hi =
      (Interval(face_y.hi()) + Interval(ce.eps_low) * Interval(ce.T_bound)).lo();
  if (!(y_lo < y_hi))
    throw Error(ErrorCode::MarginViolated,
                "build_cone_extension: shifted face window is empty");
  ce.face_y_shifted = Interval(y_lo, y_hi);
  ce.ok = true;
  return ce;
}

std::vector<double> section_offsets(const ShadowChain& chain) {
  // Greedy section bookkeeping: each pair may use any ratio in [chi, 1], so
  // the section drops by at most (1 - chi) h_bar per step relative to the
  // advancing windows, and stops once it reaches the outflow side.
  std::vector<double> out;
  const double h = chain.params.h_bar;
  const double chi = chain.params.chi;
  const int q = chain.params.q;
  if (chain.blocks.empty()) return out;
  double rel = 0.5 * chain.params.H - h;  // offset from the window center
  for (size_t i = 0; i < chain.blocks.size(); ++i) {
    const double w_c = chain.blocks[i].w_center;
    out.push_back(q > 0 ? w_c + rel : w_c - rel);
    rel = std::max(rel - (1.0 - chi) * h, -0.5 * chain.params.H);
  }
  return out;
}

}  // namespace fsv
