#include "fsv/fhn.hpp"

#include <cmath>

namespace fsv {

double Fhn::newton_u(double w, double guess, int max_iter, double tol) const {
  const double am = p.a.mid();
  double u = guess;
  for (int i = 0; i < max_iter; ++i) {
    const double fu = ((-u + (1.0 + am)) * u - am) * u - w;
    const double dfu = (-3.0 * u + 2.0 * (1.0 + am)) * u - am;
    if (dfu == 0.0)
      throw Error(ErrorCode::SingularJacobian, "newton_u: flat tangent");
    const double step = fu / dfu;
    u -= step;
    if (std::fabs(step) < tol && std::fabs(fu) < 1e-13) return u;
  }
  const double fu = ((-u + (1.0 + am)) * u - am) * u - w;
  if (std::fabs(fu) < 1e-10) return u;
  throw Error(ErrorCode::SingularJacobian, "newton_u: no convergence");
}

Interval Fhn::enclose_u(const Interval& w, double approx) const {
  // interval Newton contraction around the numerical zero
  Interval u(approx);
  for (int i = 0; i < 3; ++i) {
    const Interval r = Interval(1e-9 * (i + 1) + u.rad() * 4.0);
    const Interval cand = widened(u, r.hi());
    const Interval df = f_u(cand);
    if (df.contains(0.0))
      throw Error(ErrorCode::SingularJacobian, "enclose_u: fold in enclosure");
    const Interval mid(u.mid());
    const Interval nstep = mid - (f(mid) - w) / df;
    const Interval next = intersect(nstep, cand);
    if (next.is_empty())
      throw Error(ErrorCode::SingularJacobian, "enclose_u: empty Newton step");
    if (nstep.subset_of(cand)) return next;  // contraction certified
    u = next;
  }
  throw Error(ErrorCode::SingularJacobian, "enclose_u: Newton did not contract");
}

std::pair<double, double> Fhn::fold_points() const {
  const double am = p.a.mid();
  const double s = std::sqrt(am * am - am + 1.0);
  return {(1.0 + am - s) / 3.0, (1.0 + am + s) / 3.0};
}

std::vector<Interval> fhn_field(const Fhn& sys, const Box& state, const Interval& eps) {
  if (state.dim() != 3)
    throw Error(ErrorCode::DimensionMismatch, "fhn_field: expects (u,v,w)");
  return sys.field(state[0], state[1], state[2], eps);
}

FastSlowSystem make_fhn_system(const FHNParams& params, double eps0) {
  params.validate();
  FastSlowSystem s;
  s.dims = DimTags{1, 1, 1};
  s.eps0 = eps0;
  Fhn sys{params};
  s.field = [sys](const std::vector<Interval>& x, const Interval& eps) {
    return sys.field(x[0], x[1], x[2], eps);
  };
  s.jacobian = [sys](const std::vector<Interval>& x, const Interval& eps) {
    IMatrix j(3, 3);
    j(0, 1) = Interval(1.0);
    j(1, 0) = Interval(0.0) - sys.f_u(x[0]) / sys.p.delta;
    j(1, 1) = sys.p.c / sys.p.delta;
    j(1, 2) = Interval(1.0) / sys.p.delta;
    j(2, 0) = eps / sys.p.c;
    j(2, 2) = Interval(0.0) - eps * sys.p.gamma / sys.p.c;
    return j;
  };
  return s;
}

}  // namespace fsv
