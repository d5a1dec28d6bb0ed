#include "fsv/ivp.hpp"

#include <cmath>

namespace fsv {

std::vector<Interval> FlowEnclosure::hull() const {
  const int n = static_cast<int>(c.size());
  std::vector<Interval> h(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Interval acc(c[static_cast<size_t>(i)]);
    for (int j = 0; j < n; ++j)
      acc += Interval(B[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
             r[static_cast<size_t>(j)];
    h[static_cast<size_t>(i)] = acc;
  }
  return h;
}

FlowEnclosure FlowEnclosure::from_box(const std::vector<Interval>& box) {
  FlowEnclosure e;
  const int n = static_cast<int>(box.size());
  e.c.resize(static_cast<size_t>(n));
  e.r.resize(static_cast<size_t>(n));
  e.B.assign(static_cast<size_t>(n),
             std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    e.c[si] = box[si].mid();
    e.B[si][si] = 1.0;
    e.r[si] = box[si] - Interval(e.c[si]);
  }
  return e;
}

std::vector<Interval> FhnTaylorField::eval(const std::vector<Interval>& x) const {
  return sys_.field(x[0], x[1], x[2], eps_);
}

IMatrix FhnTaylorField::jac(const std::vector<Interval>& x) const {
  IMatrix j(3, 3);
  j(0, 1) = Interval(1.0);
  j(1, 0) = Interval(0.0) - sys_.f_u(x[0]) / sys_.p.delta;
  j(1, 1) = sys_.p.c / sys_.p.delta;
  j(1, 2) = Interval(1.0) / sys_.p.delta;
  j(2, 0) = eps_ / sys_.p.c;
  j(2, 2) = Interval(0.0) - eps_ * sys_.p.gamma / sys_.p.c;
  return j;
}

namespace {
Interval conv_at(const std::vector<Interval>& a, const std::vector<Interval>& b,
                 int k) {
  Interval s(0.0);
  for (int j = 0; j <= k; ++j)
    s += a[static_cast<size_t>(j)] * b[static_cast<size_t>(k - j)];
  return s;
}
}  // namespace

void FhnTaylorField::extend(std::vector<std::vector<Interval>>& x, int k) const {
  const auto& u = x[0];
  const auto& v = x[1];
  const auto& w = x[2];
  const Interval one_plus_a = Interval(1.0) + sys_.p.a;
  if (k == 0) s2_.clear();
  s2_.push_back(conv_at(u, u, k));
  const Interval s3k = conv_at(s2_, u, k);
  const Interval fk =
      Interval(0.0) - s3k + one_plus_a * s2_[static_cast<size_t>(k)] -
      sys_.p.a * u[static_cast<size_t>(k)];
  const Interval kk(1.0 / (k + 1.0));
  x[0].push_back(kk * v[static_cast<size_t>(k)]);
  x[1].push_back(kk * (sys_.p.c * v[static_cast<size_t>(k)] - fk +
                       w[static_cast<size_t>(k)]) /
                 sys_.p.delta);
  x[2].push_back(kk * eps_ *
                 (u[static_cast<size_t>(k)] -
                  sys_.p.gamma * w[static_cast<size_t>(k)]) /
                 sys_.p.c);
}

void FhnTaylorField::extend_var(const std::vector<std::vector<Interval>>& x,
                                std::vector<std::vector<std::vector<Interval>>>& V,
                                int k) const {
  const auto& u = x[0];
  const Interval one_plus_a = Interval(1.0) + sys_.p.a;
  if (k == 0) {
    s2v_.clear();
    fu_.clear();
  }
  s2v_.push_back(conv_at(u, u, k));
  Interval fuk = Interval(-3.0) * s2v_[static_cast<size_t>(k)] +
                 2.0 * one_plus_a * u[static_cast<size_t>(k)];
  if (k == 0) fuk -= sys_.p.a;
  fu_.push_back(fuk);

  const Interval kk(1.0 / (k + 1.0));
  for (int j = 0; j < 3; ++j) {
    const size_t sj = static_cast<size_t>(j);
    const size_t sk = static_cast<size_t>(k);
    const Interval r0 = V[1][sj][sk];
    Interval fuv(0.0);
    for (int l = 0; l <= k; ++l)
      fuv += fu_[static_cast<size_t>(l)] * V[0][sj][static_cast<size_t>(k - l)];
    const Interval r1 =
        (sys_.p.c * V[1][sj][sk] + V[2][sj][sk] - fuv) / sys_.p.delta;
    const Interval r2 =
        eps_ * (V[0][sj][sk] - sys_.p.gamma * V[2][sj][sk]) / sys_.p.c;
    V[0][sj].push_back(kk * r0);
    V[1][sj].push_back(kk * r1);
    V[2][sj].push_back(kk * r2);
  }
}

FlowEnclosure FlowEnclosure::from_affine(std::vector<double> c,
                                         std::vector<std::vector<double>> B,
                                         std::vector<Interval> r,
                                         const std::vector<Interval>& residual) {
  FlowEnclosure e;
  e.c = std::move(c);
  e.B = std::move(B);
  e.r = std::move(r);
  const VerifiedInverse binv = verified_inverse(e.B);
  const auto extra = binv.enclosure.mul(residual);
  for (size_t i = 0; i < e.r.size(); ++i) e.r[i] += extra[i];
  return e;
}

std::vector<Interval> FhnParamTaylorField::eval(const std::vector<Interval>& x) const {
  const Interval& u = x[0];
  const Interval& v = x[1];
  const Interval& w = x[2];
  const Interval& c = x[3];
  const Interval& eps = x[4];
  return {v, (c * v - sys_.f(u) + w) / sys_.p.delta,
          eps * (u - sys_.p.gamma * w) / c, Interval(0.0), Interval(0.0)};
}

IMatrix FhnParamTaylorField::jac(const std::vector<Interval>& x) const {
  const Interval& u = x[0];
  const Interval& v = x[1];
  const Interval& w = x[2];
  const Interval& c = x[3];
  const Interval& eps = x[4];
  IMatrix j(5, 5);
  j(0, 1) = Interval(1.0);
  j(1, 0) = Interval(0.0) - sys_.f_u(u) / sys_.p.delta;
  j(1, 1) = c / sys_.p.delta;
  j(1, 2) = Interval(1.0) / sys_.p.delta;
  j(1, 3) = v / sys_.p.delta;
  j(2, 0) = eps / c;
  j(2, 2) = Interval(0.0) - eps * sys_.p.gamma / c;
  j(2, 3) = Interval(0.0) - eps * (u - sys_.p.gamma * w) / sqr(c);
  j(2, 4) = (u - sys_.p.gamma * w) / c;
  return j;
}

void FhnParamTaylorField::extend(std::vector<std::vector<Interval>>& x, int k) const {
  const auto& u = x[0];
  const auto& v = x[1];
  const auto& w = x[2];
  const Interval c0 = x[3][0];
  const Interval e0 = x[4][0];
  const Interval one_plus_a = Interval(1.0) + sys_.p.a;
  if (k == 0) s2_.clear();
  s2_.push_back(conv_at(u, u, k));
  const Interval s3k = conv_at(s2_, u, k);
  const Interval fk =
      Interval(0.0) - s3k + one_plus_a * s2_[static_cast<size_t>(k)] -
      sys_.p.a * u[static_cast<size_t>(k)];
  const Interval kk(1.0 / (k + 1.0));
  x[0].push_back(kk * v[static_cast<size_t>(k)]);
  x[1].push_back(kk * (c0 * v[static_cast<size_t>(k)] - fk +
                       w[static_cast<size_t>(k)]) /
                 sys_.p.delta);
  x[2].push_back(kk * e0 *
                 (u[static_cast<size_t>(k)] -
                  sys_.p.gamma * w[static_cast<size_t>(k)]) /
                 c0);
  x[3].push_back(Interval(0.0));
  x[4].push_back(Interval(0.0));
}

void FhnParamTaylorField::extend_var(const std::vector<std::vector<Interval>>& x,
                                     std::vector<std::vector<std::vector<Interval>>>& V,
                                     int k) const {
  const auto& u = x[0];
  const auto& v = x[1];
  const auto& w = x[2];
  const Interval c0 = x[3][0];
  const Interval e0 = x[4][0];
  const Interval one_plus_a = Interval(1.0) + sys_.p.a;
  if (k == 0) {
    s2v_.clear();
    fu_.clear();
  }
  s2v_.push_back(conv_at(u, u, k));
  Interval fuk = Interval(-3.0) * s2v_[static_cast<size_t>(k)] +
                 2.0 * one_plus_a * u[static_cast<size_t>(k)];
  if (k == 0) fuk -= sys_.p.a;
  fu_.push_back(fuk);

  // coefficients of g = (u - gamma w)/c and of g/c, reused per column
  if (k == 0) ci_.clear();
  ci_.push_back((u[static_cast<size_t>(k)] -
                 sys_.p.gamma * w[static_cast<size_t>(k)]) /
                c0);
  const size_t sk = static_cast<size_t>(k);
  const Interval kk(1.0 / (k + 1.0));
  for (int j = 0; j < 5; ++j) {
    const size_t sj = static_cast<size_t>(j);
    Interval fuv(0.0), cv(0.0), es(0.0), cs(0.0);
    for (int l = 0; l <= k; ++l) {
      const size_t sl = static_cast<size_t>(l);
      const size_t skl = static_cast<size_t>(k - l);
      fuv += fu_[sl] * V[0][sj][skl];
      cv += v[sl] * V[3][sj][skl];
      es += ci_[sl] * V[4][sj][skl];
      cs += (e0 * ci_[sl] / c0) * V[3][sj][skl];
    }
    const Interval r0 = V[1][sj][sk];
    const Interval r1 = (c0 * V[1][sj][sk] + cv + V[2][sj][sk] - fuv) / sys_.p.delta;
    const Interval r2 =
        e0 * (V[0][sj][sk] - sys_.p.gamma * V[2][sj][sk]) / c0 + es - cs;
    V[0][sj].push_back(kk * r0);
    V[1][sj].push_back(kk * r1);
    V[2][sj].push_back(kk * r2);
    V[3][sj].push_back(Interval(0.0));
    V[4][sj].push_back(Interval(0.0));
  }
}

void LinearTaylorField::extend(std::vector<std::vector<Interval>>& x, int k) const {
  const int n = dim();
  const Interval kk(1.0 / (k + 1.0));
  std::vector<Interval> cur(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    cur[static_cast<size_t>(i)] = x[static_cast<size_t>(i)][static_cast<size_t>(k)];
  const auto nx = A_.mul(cur);
  for (int i = 0; i < n; ++i)
    x[static_cast<size_t>(i)].push_back(kk * nx[static_cast<size_t>(i)]);
}

void LinearTaylorField::extend_var(const std::vector<std::vector<Interval>>&,
                                   std::vector<std::vector<std::vector<Interval>>>& V,
                                   int k) const {
  const int n = dim();
  const Interval kk(1.0 / (k + 1.0));
  for (int j = 0; j < n; ++j) {
    std::vector<Interval> cur(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      cur[static_cast<size_t>(i)] =
          V[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
    const auto nx = A_.mul(cur);
    for (int i = 0; i < n; ++i)
      V[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(
          kk * nx[static_cast<size_t>(i)]);
  }
}

std::vector<Interval> rough_enclosure(const TaylorField& f,
                                      const std::vector<Interval>& x0, double dt,
                                      int max_tries) {
  const int n = f.dim();
  const Interval span(0.0, dt);
  auto finite = [n](const std::vector<Interval>& v) {
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(v[static_cast<size_t>(i)].lo()) ||
          !std::isfinite(v[static_cast<size_t>(i)].hi()))
        return false;
    return true;
  };
  // Picard iteration: Y must absorb x0 + [0,dt] f(Y).  The candidate is
  // re-derived from x0 each round instead of hull-accumulated, so the loop
  // contracts whenever dt times the local Lipschitz constant is below one.
  std::vector<Interval> Y(static_cast<size_t>(n));
  {
    const auto fx = f.eval(x0);
    for (int i = 0; i < n; ++i) {
      const size_t si = static_cast<size_t>(i);
      Y[si] = widened(hull(x0[si], x0[si] + span * fx[si]),
                      1e-14 + 0.2 * (span * fx[si]).mag());
    }
  }
  for (int t = 0; t < max_tries; ++t) {
    if (!finite(Y))
      throw Error(ErrorCode::EnclosureNotFound, "rough_enclosure: unbounded");
    const auto fy = f.eval(Y);
    std::vector<Interval> cand(static_cast<size_t>(n));
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const size_t si = static_cast<size_t>(i);
      cand[si] = x0[si] + span * fy[si];
      if (!Y[si].contains(cand[si])) ok = false;
    }
    if (ok) return Y;
    if (!finite(cand))
      throw Error(ErrorCode::EnclosureNotFound, "rough_enclosure: unbounded");
    for (int i = 0; i < n; ++i) {
      const size_t si = static_cast<size_t>(i);
      const Interval h = hull(x0[si], cand[si]);
      Y[si] = widened(h, 1e-14 + 0.2 * h.rad());
    }
  }
  throw Error(ErrorCode::EnclosureNotFound,
              "rough_enclosure: inflation budget exhausted");
}

namespace {

// buffers reused across steps; inner capacity persists between calls
struct StepWorkspace {
  std::vector<std::vector<Interval>> cs, ys;
  std::vector<std::vector<std::vector<Interval>>> Vs;
};

thread_local StepWorkspace tl_ws;

void solution_series(const TaylorField& f, const std::vector<Interval>& x0,
                     int ord, std::vector<std::vector<Interval>>& x) {
  const int n = f.dim();
  x.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<size_t>(i)].clear();
    x[static_cast<size_t>(i)].push_back(x0[static_cast<size_t>(i)]);
  }
  for (int k = 0; k < ord; ++k) f.extend(x, k);
}

void variational_series(const TaylorField& f,
                        const std::vector<std::vector<Interval>>& x, int ord,
                        std::vector<std::vector<std::vector<Interval>>>& V) {
  const int n = f.dim();
  V.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    V[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      V[static_cast<size_t>(i)][static_cast<size_t>(j)].clear();
      V[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(
          Interval(i == j ? 1.0 : 0.0));
    }
  }
  for (int k = 0; k < ord; ++k) f.extend_var(x, V, k);
}

Interval horner_dt(const std::vector<Interval>& coeffs, int up_to, double dt) {
  Interval acc(0.0);
  const Interval h(dt);
  for (int k = up_to; k >= 0; --k) acc = acc * h + coeffs[static_cast<size_t>(k)];
  return acc;
}

std::vector<std::vector<double>> qr_orthonormal(
    const std::vector<std::vector<double>>& A) {
  const int n = static_cast<int>(A.size());
  std::vector<std::vector<double>> Q(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int j = 0; j < n; ++j) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<size_t>(i)] = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int prev = 0; prev < j; ++prev) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i)
        dot += v[static_cast<size_t>(i)] * Q[static_cast<size_t>(i)][static_cast<size_t>(prev)];
      for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] -= dot * Q[static_cast<size_t>(i)][static_cast<size_t>(prev)];
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
      norm += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    norm = std::sqrt(norm);
    if (norm < 1e-300) {
      for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = (i == j) ? 1.0 : 0.0;
      norm = 1.0;
    }
    for (int i = 0; i < n; ++i)
      Q[static_cast<size_t>(i)][static_cast<size_t>(j)] = v[static_cast<size_t>(i)] / norm;
  }
  return Q;
}

}  // namespace

FlowEnclosure taylor_step(const TaylorField& f, const FlowEnclosure& state,
                          double dt, int order, bool reorthonormalize) {
  const int n = f.dim();
  const std::vector<Interval> X = state.hull();
  const std::vector<Interval> Y = rough_enclosure(f, X, dt);

  std::vector<Interval> c0(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    c0[static_cast<size_t>(i)] = Interval(state.c[static_cast<size_t>(i)]);
  auto& cs = tl_ws.cs;
  auto& ys = tl_ws.ys;
  auto& Vs = tl_ws.Vs;
  solution_series(f, c0, order, cs);
  solution_series(f, Y, order + 1, ys);
  variational_series(f, ys, order + 1, Vs);

  // variational rough bound ||V(t) - I|| <= e^{b t} - 1 over the step
  const double b = f.jac(Y).norm_inf_up();
  const double grow = rnd::up(std::exp(rnd::up(b * dt)) - 1.0);
  IMatrix Vrough(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Vrough(i, j) = widened(Interval(i == j ? 1.0 : 0.0), grow);

  const Interval dtp1 = pow_int(Interval(dt), order + 1);
  std::vector<Interval> phi_c(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    const Interval zrem = ys[si][static_cast<size_t>(order + 1)] * dtp1;
    phi_c[si] = horner_dt(cs[si], order, dt) + zrem;
  }

  IMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Interval rem(0.0);
      for (int l = 0; l < n; ++l)
        rem += Vs[static_cast<size_t>(i)][static_cast<size_t>(l)]
                 [static_cast<size_t>(order + 1)] *
               Vrough(l, j);
      M(i, j) =
          horner_dt(Vs[static_cast<size_t>(i)][static_cast<size_t>(j)], order, dt) +
          rem * dtp1;
    }

  const IMatrix Bm = IMatrix::from_point(state.B);
  const IMatrix A = M * Bm;

  FlowEnclosure out;
  out.c.resize(static_cast<size_t>(n));
  out.r.resize(static_cast<size_t>(n));
  std::vector<Interval> d(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    out.c[si] = phi_c[si].mid();
    d[si] = phi_c[si] - Interval(out.c[si]);
  }

  std::vector<std::vector<double>> Bnew(static_cast<size_t>(n),
                                        std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Bnew[static_cast<size_t>(i)][static_cast<size_t>(j)] = A(i, j).mid();
  if (reorthonormalize) Bnew = qr_orthonormal(Bnew);
  VerifiedInverse Binv;
  bool inv_ok = false;
  try {
    Binv = verified_inverse(Bnew);
    inv_ok = Binv.residual_norm < 0.1;
  } catch (const Error&) {
  }
  if (!inv_ok) {
    // parallelepiped degenerated: re-orthonormalize as an emergency frame
    Bnew = qr_orthonormal(Bnew);
    Binv = verified_inverse(Bnew);
  }

  const IMatrix T = Binv.enclosure * A;
  auto rn = T.mul(state.r);
  const auto dd = Binv.enclosure.mul(d);
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    out.r[si] = rn[si] + dd[si];
  }
  out.B = Bnew;
  out.time = state.time + Interval(dt);
  return out;
}

FlowEnclosure flow_to_time(const TaylorField& f, const std::vector<Interval>& x0,
                           double T, const IntegratorConfig& cfg) {
  return flow_to_time_from(f, FlowEnclosure::from_box(x0), T, cfg);
}

FlowEnclosure flow_to_time_from(const TaylorField& f, FlowEnclosure st, double T,
                                const IntegratorConfig& cfg) {
  if (T < 0.0) throw Error(ErrorCode::DomainError, "flow_to_time: negative T");
  double t = 0.0;
  long steps = 0;
  double next_trace = 0.0;
  if (cfg.keep_trace) st.trace.push_back({0.0, st.hull()});
  while (t < T) {
    if (++steps > cfg.max_steps)
      throw Error(ErrorCode::EnclosureNotFound, "flow_to_time: step budget exceeded");
    const double dt = std::min(cfg.dt, T - t);
    const bool reorth = cfg.qr_every > 0 && (steps % cfg.qr_every == 0);
    auto trace = std::move(st.trace);
    st = taylor_step(f, st, dt, cfg.order, reorth);
    st.trace = std::move(trace);
    t += dt;
    if (cfg.keep_trace && (t >= next_trace || t >= T)) {
      st.trace.push_back({t, st.hull()});
      next_trace = t + cfg.trace_stride;
    }
  }
  return st;
}

}  // namespace fsv
