#pragma once

#include <memory>
#include <vector>

#include "fsv/fhn.hpp"
#include "fsv/linalg.hpp"

namespace fsv {

struct IntegratorConfig {
  int order = 6;
  double dt = 1e-4;
  long max_steps = 5'000'000;
  int qr_every = 0;  // periodic re-orthonormalization; 0 = only on degeneracy
  bool keep_trace = false;
  double trace_stride = 0.0;  // seconds between trace rows; 0 = every step
};

// Lohner-style set representation: center + parallelepiped + interval part.
struct FlowEnclosure {
  std::vector<double> c;
  std::vector<std::vector<double>> B;
  std::vector<Interval> r;
  Interval time{0.0};
  std::vector<std::pair<double, std::vector<Interval>>> trace;

  std::vector<Interval> hull() const;
  static FlowEnclosure from_box(const std::vector<Interval>& box);
  // affine set c + B r with a residual box absorbed through B^{-1}
  static FlowEnclosure from_affine(std::vector<double> c,
                                   std::vector<std::vector<double>> B,
                                   std::vector<Interval> r,
                                   const std::vector<Interval>& residual);
};

// Taylor-coefficient generator for a polynomial vector field; solution and
// first-variation recurrences are supplied per field.
class TaylorField {
 public:
  virtual ~TaylorField() = default;
  virtual int dim() const = 0;
  virtual std::vector<Interval> eval(const std::vector<Interval>& x) const = 0;
  virtual IMatrix jac(const std::vector<Interval>& x) const = 0;
  // x[v] holds coefficients 0..k for variable v; push coefficient k+1
  virtual void extend(std::vector<std::vector<Interval>>& x, int k) const = 0;
  // V[i][j] holds coefficients 0..k; push coefficient k+1 of the variational
  // solution with the same x-series
  virtual void extend_var(const std::vector<std::vector<Interval>>& x,
                          std::vector<std::vector<std::vector<Interval>>>& V,
                          int k) const = 0;
};

class FhnTaylorField : public TaylorField {
 public:
  FhnTaylorField(const Fhn& sys, const Interval& eps) : sys_(sys), eps_(eps) {}
  int dim() const override { return 3; }
  std::vector<Interval> eval(const std::vector<Interval>& x) const override;
  IMatrix jac(const std::vector<Interval>& x) const override;
  void extend(std::vector<std::vector<Interval>>& x, int k) const override;
  void extend_var(const std::vector<std::vector<Interval>>& x,
                  std::vector<std::vector<std::vector<Interval>>>& V,
                  int k) const override;

 private:
  Fhn sys_;
  Interval eps_;
  // per-step coefficient caches; instances are not shared across threads
  mutable std::vector<Interval> s2_, s2v_, fu_;
};

// FHN with the parameters c and eps appended as constant state coordinates:
// state (u, v, w, c, eps).  Keeps long-flight parameter correlation inside
// the parallelepiped representation.
class FhnParamTaylorField : public TaylorField {
 public:
  explicit FhnParamTaylorField(const Fhn& sys) : sys_(sys) {}
  int dim() const override { return 5; }
  std::vector<Interval> eval(const std::vector<Interval>& x) const override;
  IMatrix jac(const std::vector<Interval>& x) const override;
  void extend(std::vector<std::vector<Interval>>& x, int k) const override;
  void extend_var(const std::vector<std::vector<Interval>>& x,
                  std::vector<std::vector<std::vector<Interval>>>& V,
                  int k) const override;

 private:
  Fhn sys_;  // a, gamma, delta are taken from here; c and eps from the state
  mutable std::vector<Interval> s2_, s2v_, fu_, ci_;
};

// x' = A x, for soundness tests and synthetic coverings
class LinearTaylorField : public TaylorField {
 public:
  explicit LinearTaylorField(IMatrix A) : A_(std::move(A)) {}
  int dim() const override { return A_.rows(); }
  std::vector<Interval> eval(const std::vector<Interval>& x) const override {
    return A_.mul(x);
  }
  IMatrix jac(const std::vector<Interval>&) const override { return A_; }
  void extend(std::vector<std::vector<Interval>>& x, int k) const override;
  void extend_var(const std::vector<std::vector<Interval>>& x,
                  std::vector<std::vector<std::vector<Interval>>>& V,
                  int k) const override;

 private:
  IMatrix A_;
};

// a-priori bound Y with x0 + [0,dt] f(Y) inside Y, by bounded inflation
std::vector<Interval> rough_enclosure(const TaylorField& f,
                                      const std::vector<Interval>& x0, double dt,
                                      int max_tries = 24);

FlowEnclosure taylor_step(const TaylorField& f, const FlowEnclosure& state,
                          double dt, int order, bool reorthonormalize);

FlowEnclosure flow_to_time(const TaylorField& f, const std::vector<Interval>& x0,
                           double T, const IntegratorConfig& cfg);

FlowEnclosure flow_to_time_from(const TaylorField& f, FlowEnclosure state,
                                double T, const IntegratorConfig& cfg);

}  // namespace fsv
