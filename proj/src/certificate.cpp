#include "fsv/certificate.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace fsv {

using nlohmann::json;

namespace {

json pair_of(double lo, double hi) { return json::array({lo, hi}); }
json pair_of(const Interval& x) { return json::array({x.lo(), x.hi()}); }
json pair_of(double x) { return json::array({x, x}); }

const BranchSpec& branch_spec(const Scenario& sc, const std::string& name) {
  for (const auto& b : sc.branches)
    if (b.name == name) return b;
  throw Error(ErrorCode::IncompleteCertificate, "unknown branch: " + name);
}

ChainParams to_chain_params(const BranchSpec& b, int refine_depth) {
  ChainParams p;
  p.name = b.name;
  p.w_start = b.w_start;
  p.w_end = b.w_end;
  p.q = b.q;
  p.u_guess = b.u_guess;
  p.h_bar = b.h_bar;
  p.H = b.H;
  p.r_a = b.r_a;
  p.r_b = b.r_b;
  p.d_a = b.d_a;
  p.d_b = b.d_b;
  p.m_u = b.m_u;
  p.m_s = b.m_s;
  p.chi = b.chi;
  p.ss5_slab = b.ss5_slab;
  p.refine_depth = refine_depth;
  return p;
}

const FastSaddleBlock& cone_base_block(const PipelineResult& pr,
                                       const ConeSpec& cs) {
  const auto it = pr.chains.find(cs.branch);
  if (it == pr.chains.end())
    throw Error(ErrorCode::IncompleteCertificate,
                "cone " + cs.name + ": chain '" + cs.branch + "' not built");
  const ShadowChain& chain = it->second;
  return cs.end == "head" ? chain.blocks.front().block
                          : chain.blocks.back().block;
}

}  // namespace

void run_chains(PipelineResult& pr) {
  const Scenario& sc = pr.sc;
  const Fhn sys{sc.params};
  for (const auto& b : sc.branches) {
    pr.chains.emplace(b.name,
                      build_chain(sys, pr.eps_range.hi(), sc.chart_scale,
                                  to_chain_params(b, sc.refine_depth)));
    if (!pr.chains.at(b.name).ok) {
      pr.ok = false;
      if (pr.first_failure.empty())
        pr.first_failure = "chain '" + b.name + "' failed";
    }
  }
}

void run_cones(PipelineResult& pr) {
  const Scenario& sc = pr.sc;
  const Fhn sys{sc.params};
  for (const auto& cs : sc.cones) {
    const FastSaddleBlock& base = cone_base_block(pr, cs);
    const BranchSpec& br = branch_spec(sc, cs.branch);
    Interval face_y = cs.face_y;
    if (!cs.face_y_given) {
      const Interval y = base.y_range;
      face_y = (br.q > 0) ? Interval(y.lo() + br.h_bar, y.hi() - 0.1 * br.h_bar)
                          : Interval(y.lo() + 0.1 * br.h_bar, y.hi() - br.h_bar);
    }
    const double d_frac = cs.unstable ? br.d_a : br.d_b;
    const double slab = cs.slab > 0.0 ? cs.slab : br.h_bar;
    pr.cones.emplace(cs.name,
                     build_cone_extension(sys, base, cs.m, cs.ell, cs.side,
                                          cs.unstable, face_y, d_frac,
                                          cs.partitions, slab, sc.chart_scale,
                                          sc.refine_depth));
  }
}

double derive_drop_time(const Fhn& sys, double eps_probe,
                        const std::vector<double>& x0,
                        const FastSaddleBlock& head, double dt, double T_cap) {
  Fhn mid = sys;
  mid.p.a = Interval(sys.p.a.mid());
  mid.p.c = Interval(sys.p.c.mid());
  mid.p.gamma = Interval(sys.p.gamma.mid());
  mid.p.delta = Interval(sys.p.delta.mid());
  const double cm = mid.p.c.mid(), gm = mid.p.gamma.mid(), dm = mid.p.delta.mid(),
               am = mid.p.a.mid();
  auto fp = [am](double u) { return ((-u + (1.0 + am)) * u - am) * u; };
  auto rhs = [&](const std::array<double, 3>& x, std::array<double, 3>& dx) {
    dx[0] = x[1];
    dx[1] = (cm * x[1] - fp(x[0]) + x[2]) / dm;
    dx[2] = eps_probe * (x[0] - gm * x[2]) / cm;
  };
  std::array<double, 3> x{x0[0], x0[1], x0[2]};
  const double h = dt;
  double t = 0.0;
  const double b_goal = std::max(0.25 * head.r_b, head.b_core.mag() * 2.0 + 1e-9);
  while (t < T_cap) {
    std::array<double, 3> k1, k2, k3, k4, tmp;
    rhs(x, k1);
    for (int i = 0; i < 3; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (int i = 0; i < 3; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (int i = 0; i < 3; ++i) tmp[i] = x[i] + h * k3[i];
    rhs(tmp, k4);
    for (int i = 0; i < 3; ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    Interval z1, z2, wt;
    head.chart.to_chart(Box::plain({Interval(x[0]), Interval(x[1]), Interval(x[2])}),
                        z1, z2, wt);
    if (head.a_ext.contains(z1.mid()) && std::fabs(z2.mid()) < b_goal) return t;
  }
  throw Error(ErrorCode::DropFailed,
              "derive_drop_time: probe did not reach the target block");
}

void run_drops(PipelineResult& pr,
               std::vector<std::pair<double, std::vector<Interval>>>* trace,
               const std::string& only_drop) {
  const Scenario& sc = pr.sc;
  const Fhn sys{sc.params};
  for (const auto& d : sc.drops) {
    if (!only_drop.empty() && d.name != only_drop) continue;
    const auto src_it = pr.cones.find(d.source_cone);
    if (src_it == pr.cones.end())
      throw Error(ErrorCode::IncompleteCertificate,
                  "drop " + d.name + ": cone '" + d.source_cone + "' not built");
    const ConeExtension& src = src_it->second;
    const auto tgt_chain = pr.chains.find(d.target_branch);
    if (tgt_chain == pr.chains.end())
      throw Error(ErrorCode::IncompleteCertificate,
                  "drop " + d.name + ": chain '" + d.target_branch + "' not built");
    DropTarget tgt;
    tgt.head = tgt_chain->second.blocks.front().block;
    const ConeExtension* stable = nullptr;
    if (!d.target_cone.empty()) {
      const auto ce = pr.cones.find(d.target_cone);
      if (ce == pr.cones.end())
        throw Error(ErrorCode::IncompleteCertificate,
                    "drop " + d.name + ": cone '" + d.target_cone + "' not built");
      stable = &ce->second;
    }
    tgt.stable = stable;
    tgt.ent_side = d.ent_side;
    const int q = tgt_chain->second.params.q;
    if (d.y_window_given) {
      tgt.y_window = d.y_window;
    } else {
      const Interval y = tgt.head.y_range;
      const double hb = tgt_chain->second.params.h_bar;
      tgt.y_window = (q > 0) ? Interval(y.lo(), y.hi() - hb)
                             : Interval(y.lo() + hb, y.hi());
    }

    DropSpec spec;
    spec.cfg.order = d.order;
    spec.cfg.dt = d.dt;
    spec.w_cells = d.w_cells;
    spec.b_cells = d.b_cells;
    spec.c_cells = d.c_cells;
    spec.max_refine = d.max_refine;
    spec.face_w = d.face_w;
    spec.face_w_given = d.face_w_given;
    spec.T = d.T;
    if (spec.T <= 0.0) {
      const LocalChart& ch = src.base_chart;
      const Interval wtm = Interval(src.face_y_shifted.mid()) - Interval(ch.wbar);
      const Box center =
          src.unstable_side
              ? ch.to_physical(Interval(src.face_a), Interval(src.face_b.mid()), wtm)
              : ch.to_physical(Interval(src.face_b.mid()), Interval(src.face_a), wtm);
      const double eps_probe = 0.5 * (pr.eps_range.lo() + pr.eps_range.hi());
      const double t_probe = derive_drop_time(
          sys, eps_probe,
          {center[0].mid(), center[1].mid(), center[2].mid()}, tgt.head, d.dt);
      spec.T = std::ceil(t_probe / d.dt) * d.dt;
      pr.derived_T[d.name] = spec.T;
    }
    pr.drops.emplace(d.name,
                     verify_drop(sys, src, tgt, pr.eps_range, spec, trace));
    if (!pr.drops.at(d.name).ok) {
      pr.ok = false;
      if (pr.first_failure.empty())
        pr.first_failure =
            "drop '" + d.name + "' failed: " + pr.drops.at(d.name).fail_cond;
    }
  }
}

void run_slow_blocks(PipelineResult& pr) {
  const Scenario& sc = pr.sc;
  const Fhn sys{sc.params};
  for (const auto& s : sc.slow_blocks) {
    SlowBlockResult res;
    res.spec = s;
    const BranchSpec& br = branch_spec(sc, s.branch);
    LocalChart ch = build_chart(sys, s.u_ref != 0.0 ? s.u_ref : br.u_guess,
                                s.host_w, ChartMode::predictor_corrector,
                                sc.chart_scale);
    res.host = construct_block(
        ch, Interval(s.host_w - 0.5 * s.host_H, s.host_w + 0.5 * s.host_H),
        pr.eps_range.hi(), br.r_a, br.r_b);
    res.signs = verify_boundary_signs(res.host);
    res.cones = verify_cone_conditions(res.host, sc.refine_depth);
    res.iso = find_slow_isolating_block(res.host, s.y0, s.delta,
                                        pr.eps_range.hi(), s.u_ref, s.w_ref);

    // fiber-cone family: per-section slabs tiling the isolating window
    const double slab = br.h_bar;
    const Interval span = widened(res.iso.y_interval, 2.0 * slab);
    const int n = std::max(1, static_cast<int>(std::ceil(span.width() / (2.0 * slab))));
    res.fiber_cone_margin = std::numeric_limits<double>::infinity();
    res.fiber_cone_ok = true;
    LocalChart prev;
    bool have_prev = false;
    double u_seed = ch.ubar;
    for (int i = 0; i < n; ++i) {
      const double lo = span.lo() + span.width() * i / n;
      const double hi = span.lo() + span.width() * (i + 1) / n;
      LocalChart sch = build_chart(sys, u_seed, 0.5 * (lo + hi),
                                   ChartMode::predictor_corrector, sc.chart_scale);
      u_seed = sch.ubar;
      FastSaddleBlock sblk = construct_block(sch, Interval(lo, hi),
                                             pr.eps_range.hi(), br.r_a, br.r_b);
      MConeReport rep = verify_m_cone(sblk, s.m_u, 0.0, +1, true, sblk.y_range,
                                      0.0, 0, sc.refine_depth);
      res.fiber_cone_ok = res.fiber_cone_ok && rep.ok;
      res.fiber_cone_margin = std::min(res.fiber_cone_margin, rep.margin_cone);
      if (have_prev) {
        const IMatrix t = sch.Pinv.enclosure * IMatrix::from_point(prev.P);
        res.fiber_cone_kappa =
            std::max(res.fiber_cone_kappa, (t - IMatrix::identity(2)).norm_inf_up());
      }
      prev = sch;
      have_prev = true;
    }

    Interval exit_face_y;
    if (!s.exit_cone.empty()) {
      const auto it = pr.cones.find(s.exit_cone);
      if (it == pr.cones.end())
        throw Error(ErrorCode::IncompleteCertificate,
                    "slowblock " + s.name + ": cone '" + s.exit_cone +
                        "' not built");
      exit_face_y = it->second.face_y;
    } else {
      const double sh = 2.5 * (res.host.a_ext.width() - br.r_a) / s.m_u;
      exit_face_y = Interval(res.host.y_range.lo() + sh,
                             res.host.y_range.hi() - sh);
    }
    res.fiber = check_fiber_exit(res.host, res.iso, s.m_u, exit_face_y);
    res.ok = res.signs.ok && res.cones.ok && res.fiber.ok;
    if (!res.ok && pr.first_failure.empty())
      pr.first_failure = "slow block '" + s.name + "' failed";
    pr.ok = pr.ok && res.ok;
    pr.slow_blocks.emplace(s.name, std::move(res));
  }
}

PipelineResult run_pipeline(const Scenario& sc, const Interval& eps_range,
                            bool with_drops) {
  PipelineResult pr;
  pr.sc = sc;
  pr.eps_range = eps_range;
  pr.ok = true;
  run_chains(pr);
  run_cones(pr);
  run_slow_blocks(pr);
  if (with_drops) run_drops(pr);
  return pr;
}

namespace {

json chain_json(const ShadowChain& c) {
  json j;
  j["name"] = c.params.name;
  j["q"] = c.params.q;
  j["chi"] = pair_of(c.params.chi);
  j["h_bar"] = pair_of(c.params.h_bar);
  j["H"] = pair_of(c.params.H);
  j["blocks"] = json::array();
  for (const auto& b : c.blocks) {
    json jb;
    jb["w_center"] = pair_of(b.w_center);
    jb["a_ext"] = pair_of(b.block.a_ext);
    jb["b_ext"] = pair_of(b.block.b_ext);
    jb["lambda_min"] = pair_of(b.cones.lambda_min);
    jb["mu_min"] = pair_of(b.cones.mu_min);
    jb["sign_margins"] = json::array({pair_of(b.signs.a_plus), pair_of(b.signs.a_minus),
                                      pair_of(b.signs.b_plus), pair_of(b.signs.b_minus)});
    jb["cone_margins"] =
        json::array({pair_of(b.cones.margin_graph_u), pair_of(b.cones.margin_cone_u),
                     pair_of(b.cones.margin_graph_s), pair_of(b.cones.margin_cone_s)});
    jb["lyapunov_margins"] =
        json::array({pair_of(b.cones.margin_lyap_a), pair_of(b.cones.margin_lyap_b)});
    jb["eps_bounds"] = json::array(
        {pair_of(b.speed.eps_low), pair_of(b.speed.eps_up), pair_of(b.speed.eps_bar)});
    jb["tail_exempt"] = b.tail_exempt;
    j["blocks"].push_back(jb);
  }
  j["pairs"] = json::array();
  for (const auto& p : c.pairs) {
    json jp;
    jp["shadow_lhs_a"] = json::array({pair_of(p.shadow.lhs_a[0]), pair_of(p.shadow.lhs_a[1])});
    jp["shadow_lhs_b"] = json::array({pair_of(p.shadow.lhs_b[0]), pair_of(p.shadow.lhs_b[1])});
    jp["shadow_rhs"] = json::array({pair_of(p.shadow.rhs[0]), pair_of(p.shadow.rhs[1])});
    jp["shadow_ok"] = p.shadow.ok;
    jp["ss5_cov"] = json::array(
        {pair_of(p.ss5.cov_left), pair_of(p.ss5.cov_right), pair_of(p.ss5.cov_b)});
    jp["ss5_ineq"] = json::array({pair_of(p.ss5.ineq_lhs), pair_of(p.ss5.ineq_rhs)});
    jp["ss5_mcone_margins"] =
        json::array({pair_of(p.ss5.mcone_margin_u), pair_of(p.ss5.mcone_margin_s)});
    jp["ss5_ok"] = p.ss5.ok;
    jp["exempt"] = p.exempt;
    j["pairs"].push_back(jp);
  }
  j["ok"] = c.ok;
  return j;
}

json cone_json(const std::string& name, const ConeExtension& c) {
  json j;
  j["name"] = name;
  j["type"] = c.unstable_side ? "unstable" : "stable";
  j["m"] = pair_of(c.m);
  j["ell"] = pair_of(c.ell);
  j["face_y"] = pair_of(c.face_y);
  j["face_y_shifted"] = pair_of(c.face_y_shifted);
  j["T_bound"] = pair_of(c.T_bound);
  j["eps_bounds"] = json::array({pair_of(c.eps_low), pair_of(c.eps_up)});
  j["kappa"] = pair_of(c.kappa);
  j["margins"] =
      json::array({pair_of(c.worst_margin_graph), pair_of(c.worst_margin_cone)});
  j["slabs"] = static_cast<int>(c.slabs.size());
  j["anchoring"] = "per-section slabs";
  j["ok"] = c.ok;
  return j;
}

json drop_json(const std::string& name, const DropVerdict& d, double T, double dt,
               int cells) {
  json j;
  j["name"] = name;
  j["T"] = pair_of(T);
  j["dt"] = pair_of(dt);
  j["initial_w_cells"] = cells;
  j["cells_run"] = d.cells_run;
  j["max_depth"] = d.max_depth;
  j["c_range"] = pair_of(d.c_used);
  j["eps_range"] = pair_of(d.eps_used);
  j["face_w"] = pair_of(d.face_w_used);
  j["edge_margins"] = json::array({pair_of(d.margin_edge_lo), pair_of(d.margin_edge_hi)});
  j["window_margin"] = pair_of(d.margin_window);
  j["arrival_margins"] = json::array({pair_of(d.margin_y_lo), pair_of(d.margin_y_hi)});
  j["mid_margin"] = pair_of(d.margin_mid);
  j["landed_y"] = d.landed_y.is_empty() ? json::array({0.0, 0.0}) : pair_of(d.landed_y);
  j["orientation_flipped"] = d.flipped;
  j["ok"] = d.ok;
  if (!d.ok) j["failure"] = d.fail_cond;
  return j;
}

json slowblock_json(const SlowBlockResult& s) {
  json j;
  j["name"] = s.spec.name;
  j["y_interval"] = pair_of(s.iso.y_interval);
  j["stability"] =
      s.iso.stability == SlowStability::attracting ? "attracting" : "repelling";
  j["sign_margins"] = json::array({pair_of(s.iso.margin_lo), pair_of(s.iso.margin_hi)});
  j["m_u"] = pair_of(s.spec.m_u);
  j["fiber_margins"] = json::array({pair_of(s.fiber.stable_margin),
                                    pair_of(s.fiber.block_margin),
                                    pair_of(s.fiber.exit_margin)});
  j["fiber_width_quantity"] = pair_of(s.fiber.fiber_width_quantity);
  j["fiber_cone_margin"] = pair_of(s.fiber_cone_margin);
  j["fiber_cone_ok"] = s.fiber_cone_ok;
  j["ok"] = s.ok;
  return j;
}

void require(bool cond, const std::string& what) {
  if (!cond)
    throw Error(ErrorCode::IncompleteCertificate, "certificate: missing " + what);
}

}  // namespace

std::string assemble_certificate(const PipelineResult& pr) {
  const Scenario& sc = pr.sc;
  json j;
  j["schema"] = "fsv-certificate-1";
  j["kind"] = sc.kind;
  j["eps_range"] = pair_of(pr.eps_range);
  j["params"] = {{"a", pair_of(sc.params.a)},
                 {"c", pair_of(sc.params.c)},
                 {"gamma", pair_of(sc.params.gamma)},
                 {"delta", pair_of(sc.params.delta)},
                 {"chart_scale", pair_of(sc.chart_scale)}};

  // structural completeness against the composition template
  if (sc.kind == "periodic") {
    require(sc.branches.size() >= 2, "two chain branches");
    require(sc.drops.size() >= 2, "closing drops");
    j["theorem"] = "periodic loop of covering-exchange sequences with extended cones";
  } else if (sc.kind == "homoclinic") {
    require(!sc.slow_blocks.empty(), "source/target slow isolating block");
    require(sc.drops.size() >= 2, "two connecting drops");
    j["theorem"] =
        "heteroclinic composition with extended cones, source = target equilibrium";
  } else if (sc.kind == "heteroclinic") {
    require(!sc.slow_blocks.empty(), "slow isolating blocks");
    require(!sc.drops.empty(), "connecting drop");
    j["theorem"] = "heteroclinic composition with extended cones";
  } else if (sc.kind == "heteroclinic-cycle") {
    require(!sc.slow_blocks.empty(), "slow isolating block");
    j["theorem"] =
        "heteroclinic composition with extended cones plus cubic symmetry closure";
  } else if (sc.kind == "chains-only") {
    j["theorem"] = "slow shadowing sequences only (no global statement)";
  } else {
    throw Error(ErrorCode::IncompleteCertificate, "unknown kind " + sc.kind);
  }

  for (const auto& d : sc.drops)
    require(pr.drops.count(d.name) > 0, "drop '" + d.name + "'");
  for (const auto& b : sc.branches)
    require(pr.chains.count(b.name) > 0, "chain '" + b.name + "'");

  j["chains"] = json::array();
  for (const auto& [name, c] : pr.chains) j["chains"].push_back(chain_json(c));
  j["cones"] = json::array();
  for (const auto& [name, c] : pr.cones) j["cones"].push_back(cone_json(name, c));
  j["drops"] = json::array();
  for (const auto& [name, d] : pr.drops) {
    const DropSpecFile* spec = nullptr;
    for (const auto& ds : sc.drops)
      if (ds.name == name) spec = &ds;
    const double T =
        pr.derived_T.count(name) ? pr.derived_T.at(name) : (spec ? spec->T : 0.0);
    j["drops"].push_back(drop_json(name, d, T, spec ? spec->dt : 0.0,
                                   spec ? spec->w_cells : 0));
    if (spec && spec->face_w_given)
      j["drops"].back()["face_restriction"] = pair_of(spec->face_w);
  }
  j["slow_blocks"] = json::array();
  for (const auto& [name, s] : pr.slow_blocks)
    j["slow_blocks"].push_back(slowblock_json(s));

  bool complete = pr.ok;
  for (const auto& [n, c] : pr.chains) complete = complete && c.ok;
  for (const auto& [n, c] : pr.cones) complete = complete && c.ok;
  for (const auto& [n, d] : pr.drops) complete = complete && d.ok;
  for (const auto& [n, s] : pr.slow_blocks) complete = complete && s.ok;
  if (!complete)
    throw Error(ErrorCode::IncompleteCertificate,
                "certificate: a verification margin is failing (" +
                    (pr.first_failure.empty() ? std::string("unknown link")
                                              : pr.first_failure) +
                    ")");
  j["complete"] = true;
  return j.dump(1);
}

bool revalidate_certificate(const std::string& json_text, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    return fail(std::string("parse: ") + e.what());
  }
  if (j.value("schema", "") != "fsv-certificate-1") return fail("schema tag");
  if (!j.value("complete", false)) return fail("incomplete record");
  auto positive_pair = [](const json& p) {
    return p.is_array() && p.size() == 2 && p[0].get<double>() > 0.0;
  };
  for (const auto& c : j["chains"]) {
    if (!c.value("ok", false)) return fail("chain not ok");
    for (const auto& b : c["blocks"]) {
      for (const auto& m : b["sign_margins"])
        if (!positive_pair(m)) return fail("sign margin");
      for (const auto& m : b["cone_margins"])
        if (!positive_pair(m)) return fail("cone margin");
    }
    for (const auto& p : c["pairs"]) {
      if (p.value("exempt", false)) continue;
      if (!p.value("shadow_ok", false) || !p.value("ss5_ok", false))
        return fail("pair margin");
    }
  }
  for (const auto& c : j["cones"])
    if (!c.value("ok", false)) return fail("cone not ok");
  for (const auto& d : j["drops"])
    if (!d.value("ok", false)) return fail("drop not ok");
  for (const auto& s : j["slow_blocks"])
    if (!s.value("ok", false)) return fail("slow block not ok");
  return true;
}

ContinuationResult run_continuation(const Scenario& sc) {
  if (sc.eps_partition.size() < 2)
    throw Error(ErrorCode::ContinuationGap, "continuation: no eps partition");
  ContinuationResult out;
  for (size_t k = 1; k < sc.eps_partition.size(); ++k) {
    Scenario sub = scenario_with_overrides(sc, static_cast<int>(k));
    const Interval eps_range(sc.eps_partition[k - 1], sc.eps_partition[k]);
    bool passed = false;
    std::string cert;
    try {
      PipelineResult pr = run_pipeline(sub, eps_range, true);
      cert = assemble_certificate(pr);
      passed = pr.ok;
    } catch (const Error& e) {
      cert = std::string("{\"error\": \"") + e.what() + "\"}";
      passed = false;
    }
    out.certificates.push_back(cert);
    out.passed.push_back(passed);
    if (!passed && out.failed_subinterval < 0)
      out.failed_subinterval = static_cast<int>(k);
  }
  if (out.failed_subinterval < 0) {
    std::ostringstream ss;
    ss << "all " << (sc.eps_partition.size() - 1)
       << " subintervals verified; statement holds for eps in (0, "
       << sc.eps_partition.back() << "]";
    out.merged_statement = ss.str();
  }
  return out;
}

std::string chain_summary_csv(const PipelineResult& pr) {
  std::ostringstream ss;
  ss.precision(16);
  ss << "branch,q,chi,h_bar,H,d_a,d_b,r_a,r_b,m_u,m_s,blocks,pairs,ok,seconds\n";
  for (const auto& [name, c] : pr.chains) {
    const ChainParams& p = c.params;
    ss << name << ',' << p.q << ',' << p.chi << ',' << p.h_bar << ',' << p.H << ','
       << p.d_a << ',' << p.d_b << ',' << p.r_a << ',' << p.r_b << ',' << p.m_u
       << ',' << p.m_s << ',' << c.blocks.size() << ',' << c.pairs.size() << ','
       << (c.ok ? 1 : 0) << ',' << c.build_seconds << '\n';
  }
  return ss.str();
}

}  // namespace fsv
