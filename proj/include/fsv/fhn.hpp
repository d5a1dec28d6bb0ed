#pragma once

#include <functional>
#include <vector>

#include "fsv/box.hpp"
#include "fsv/imatrix.hpp"

namespace fsv {

// Parameters of u' = v, v' = (c v - f(u) + w)/delta, w' = eps (u - gamma w)/c
// with f(u) = u (u - a)(1 - u).
struct FHNParams {
  Interval a{0.3};
  Interval c{0.8};
  Interval gamma{10.0};
  Interval delta{9.0};

  void validate() const {
    if (!(a.lo() > 0.0 && a.hi() < 0.5))
      throw Error(ErrorCode::DomainError, "FHNParams: a outside (0, 1/2)");
    if (!(c.lo() > 0.0) || !(delta.lo() > 0.0) || gamma.lo() < 0.0)
      throw Error(ErrorCode::DomainError, "FHNParams: nonpositive c/delta or negative gamma");
  }
};

// Generic fast-slow system wrapper: dimensions, field over interval vectors,
// full-state Jacobian, eps ceiling.  The FHN instance is the one exercised.
struct FastSlowSystem {
  DimTags dims;
  double eps0 = 0.0;
  std::function<std::vector<Interval>(const std::vector<Interval>&, const Interval&)> field;
  std::function<IMatrix(const std::vector<Interval>&, const Interval&)> jacobian;
};

struct Fhn {
  FHNParams p;

  Interval f(const Interval& u) const {
    // -u^3 + (1+a) u^2 - a u, Horner with outward rounding
    return ((Interval(-1.0) * u + (Interval(1.0) + p.a)) * u - p.a) * u;
  }
  Interval f_u(const Interval& u) const {
    return (Interval(-3.0) * u + 2.0 * (Interval(1.0) + p.a)) * u - p.a;
  }
  Interval f_uu(const Interval& u) const {
    return Interval(-6.0) * u + 2.0 * (Interval(1.0) + p.a);
  }

  std::vector<Interval> field(const Interval& u, const Interval& v,
                              const Interval& w, const Interval& eps) const {
    return {v, (p.c * v - f(u) + w) / p.delta, eps * (u - p.gamma * w) / p.c};
  }

  // reduced slow field value g = (u - gamma w)/c
  Interval g(const Interval& u, const Interval& w) const {
    return (u - p.gamma * w) / p.c;
  }

  IMatrix fast_jacobian(const Interval& u) const {
    IMatrix j(2, 2);
    j(0, 0) = Interval(0.0);
    j(0, 1) = Interval(1.0);
    j(1, 0) = Interval(0.0) - f_u(u) / p.delta;
    j(1, 1) = p.c / p.delta;
    return j;
  }

  // Newton iteration for f(u) = w at fixed w; rigor enters downstream, this
  // is a numerical zero only.
  double newton_u(double w, double guess, int max_iter = 60,
                  double tol = 1e-13) const;

  // verified enclosure of the nullcline point f(u)=w near a numerical zero
  Interval enclose_u(const Interval& w, double approx) const;

  // fold points of the cubic: roots of f_u
  std::pair<double, double> fold_points() const;
};

std::vector<Interval> fhn_field(const Fhn& sys, const Box& state, const Interval& eps);

FastSlowSystem make_fhn_system(const FHNParams& params, double eps0);

}  // namespace fsv
