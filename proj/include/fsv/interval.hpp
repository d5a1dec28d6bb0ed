#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>

#include "fsv/errors.hpp"

namespace fsv {

// Closed interval [lo, hi] with outward-rounded arithmetic.  Rounding is done
// by nudging computed endpoints to the next representable double instead of
// switching the FPU rounding mode, so intervals can be used from any thread.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0), empty_(false) {}
  explicit Interval(double x) : lo_(x), hi_(x), empty_(false) {
    if (std::isnan(x)) throw Error(ErrorCode::DomainError, "Interval(NaN)");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw Error(ErrorCode::DomainError, "Interval: bad bounds");
  }

  static Interval empty_set() {
    Interval r;
    r.empty_ = true;
    r.lo_ = std::numeric_limits<double>::quiet_NaN();
    r.hi_ = std::numeric_limits<double>::quiet_NaN();
    return r;
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_empty() const { return empty_; }
  bool is_point() const { return !empty_ && lo_ == hi_; }

  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }
  double rad() const { return 0.5 * (hi_ - lo_); }
  // sup |x| over the interval
  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  // inf |x| over the interval
  double mig() const {
    if (lo_ <= 0.0 && 0.0 <= hi_) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
  }

  bool contains(double x) const { return !empty_ && lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const {
    if (o.empty_) return true;
    return !empty_ && lo_ <= o.lo_ && o.hi_ <= hi_;
  }
  bool strictly_contains(const Interval& o) const {
    if (o.empty_) return true;
    return !empty_ && lo_ < o.lo_ && o.hi_ < hi_;
  }
  bool subset_of(const Interval& o) const { return o.contains(*this); }
  bool disjoint(const Interval& o) const {
    if (empty_ || o.empty_) return true;
    return hi_ < o.lo_ || o.hi_ < lo_;
  }

  Interval operator-() const {
    if (empty_) return *this;
    Interval r;
    r.lo_ = -hi_;
    r.hi_ = -lo_;
    return r;
  }

  std::string str() const;

 private:
  double lo_, hi_;
  bool empty_;
};

namespace rnd {
// branch-light nextafter on the IEEE-754 lattice
inline double up(double x) {
  if (x != x || x == std::numeric_limits<double>::infinity()) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  std::uint64_t b;
  std::memcpy(&b, &x, 8);
  b += (b >> 63) ? -1ull : 1ull;
  std::memcpy(&x, &b, 8);
  return x;
}
inline double down(double x) {
  if (x != x || x == -std::numeric_limits<double>::infinity()) return x;
  if (x == 0.0) return -std::numeric_limits<double>::denorm_min();
  std::uint64_t b;
  std::memcpy(&b, &x, 8);
  b += (b >> 63) ? 1ull : -1ull;
  std::memcpy(&x, &b, 8);
  return x;
}
inline double down_n(double x, int n) {
  for (int i = 0; i < n; ++i) x = down(x);
  return x;
}
inline double up_n(double x, int n) {
  for (int i = 0; i < n; ++i) x = up(x);
  return x;
}
}  // namespace rnd

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);  // empty marker on miss

Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval abs(const Interval& x);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval pow_int(const Interval& x, int n);

// Horner evaluation with outward rounding; coeffs[0] is the constant term.
Interval poly_eval(const Interval* coeffs, int n, const Interval& x);

inline Interval widened(const Interval& x, double r) {
  return Interval(rnd::down(x.lo() - r), rnd::up(x.hi() + r));
}

}  // namespace fsv
