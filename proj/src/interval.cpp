#include "fsv/interval.hpp"

#include <cstdio>

namespace fsv {

static Interval make_raw(double lo, double hi) {
  return Interval(lo, hi);
}

std::string Interval::str() const {
  if (empty_) return "[empty]";
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo_, hi_);
  return buf;
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  if (a.is_point() && a.lo() == 0.0) return b;
  if (b.is_point() && b.lo() == 0.0) return a;
  return make_raw(rnd::down(a.lo() + b.lo()), rnd::up(a.hi() + b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  if (b.is_point() && b.lo() == 0.0) return a;
  return make_raw(rnd::down(a.lo() - b.hi()), rnd::up(a.hi() - b.lo()));
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  if ((a.is_point() && a.lo() == 0.0) || (b.is_point() && b.lo() == 0.0))
    return Interval(0.0);
  if (a.is_point() && a.lo() == 1.0) return b;
  if (b.is_point() && b.lo() == 1.0) return a;
  const double p1 = a.lo() * b.lo(), p2 = a.lo() * b.hi();
  const double p3 = a.hi() * b.lo(), p4 = a.hi() * b.hi();
  const double lo = std::min(std::min(p1, p2), std::min(p3, p4));
  const double hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return make_raw(rnd::down(lo), rnd::up(hi));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  if (b.lo() <= 0.0 && 0.0 <= b.hi())
    throw Error(ErrorCode::DivisionByZeroContaining,
                "interval division: denominator contains zero");
  const double q1 = a.lo() / b.lo(), q2 = a.lo() / b.hi();
  const double q3 = a.hi() / b.lo(), q4 = a.hi() / b.hi();
  const double lo = std::min(std::min(q1, q2), std::min(q3, q4));
  const double hi = std::max(std::max(q1, q2), std::max(q3, q4));
  return make_raw(rnd::down(lo), rnd::up(hi));
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return make_raw(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return Interval::empty_set();
  return make_raw(lo, hi);
}

Interval sqr(const Interval& x) {
  if (x.is_empty()) return x;
  const double m = x.mag(), n = x.mig();
  return make_raw(rnd::down(n * n), rnd::up(m * m));
}

// Platform libm values widened by a fixed 4-ulp slop.
static Interval elem_widen(double flo, double fhi) {
  return make_raw(rnd::down_n(flo, 4), rnd::up_n(fhi, 4));
}

Interval sqrt(const Interval& x) {
  if (x.is_empty()) return x;
  if (x.lo() < 0.0) throw Error(ErrorCode::DomainError, "sqrt of negative interval");
  return elem_widen(std::sqrt(x.lo()), std::sqrt(x.hi()));
}

Interval exp(const Interval& x) {
  if (x.is_empty()) return x;
  Interval r = elem_widen(std::exp(x.lo()), std::exp(x.hi()));
  if (r.lo() < 0.0) r = Interval(0.0, r.hi());
  return r;
}

Interval log(const Interval& x) {
  if (x.is_empty()) return x;
  if (x.lo() <= 0.0) throw Error(ErrorCode::DomainError, "log of nonpositive interval");
  return elem_widen(std::log(x.lo()), std::log(x.hi()));
}

Interval abs(const Interval& x) {
  if (x.is_empty()) return x;
  return make_raw(x.mig(), x.mag());
}

Interval min(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  return make_raw(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty_set();
  return make_raw(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval pow_int(const Interval& x, int n) {
  if (n < 0) return Interval(1.0) / pow_int(x, -n);
  if (n == 0) return Interval(1.0);
  if (n == 1) return x;
  if (n == 2) return sqr(x);
  Interval r = (n % 2 == 0) ? sqr(pow_int(x, n / 2))
                            : x * sqr(pow_int(x, n / 2));
  return r;
}

Interval poly_eval(const Interval* coeffs, int n, const Interval& x) {
  if (n <= 0) throw Error(ErrorCode::DomainError, "poly_eval: empty coefficients");
  Interval acc = coeffs[n - 1];
  for (int i = n - 2; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace fsv
