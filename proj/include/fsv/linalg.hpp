#pragma once

#include <vector>

#include "fsv/imatrix.hpp"

namespace fsv {

// Eigenvalue data for a real-hyperbolic 2x2 fast Jacobian.  lambda_A and mu_B
// are representable witnesses for the strict spectral bounds used by the cone
// inequalities.
struct EigenPairBound {
  Interval lambda_unstable;  // positive real part
  Interval mu_stable;        // negative real part
  double lambda_A = 0.0;     // 0 < lambda_A < lambda_unstable.lo
  double mu_B = 0.0;         // mu_stable.hi < mu_B < 0
};

struct VerifiedInverse {
  std::vector<std::vector<double>> approx;  // point approximation
  IMatrix enclosure;                        // contains the exact inverse
  double residual_norm = 0.0;               // bound on ||I - A*approx||_inf
};

// Upper bound on the maximal singular value of every point matrix inside A,
// via sqrt(|A|_1 * |A|_inf) on the magnitude matrix.
double sigma_max_bound(const IMatrix& A);

EigenPairBound eig2_enclose(const IMatrix& J);

VerifiedInverse verified_inverse(const std::vector<std::vector<double>>& P);

struct GershgorinDisc {
  Interval center;
  double radius;
};
std::vector<GershgorinDisc> gershgorin_residual(const IMatrix& D);

}  // namespace fsv
