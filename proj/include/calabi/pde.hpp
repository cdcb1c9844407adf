#ifndef CALABI_PDE_HPP
#define CALABI_PDE_HPP

#include <span>

#include "calabi/calabi_core.hpp"
#include "calabi/expr.hpp"

namespace calabi {

// Evaluation of the fourth-order operators
//   residual_12 = sum_ij f^{ij} w_ij        (inverse-Hessian form)
//   residual_11 = sum_ij F^{ij} w_ij        (cofactor form, = D * residual_12)
// with w = D^a and D = det(f_ij). implied_Lsharp = -residual_11 is the
// right-hand side that would make the cofactor equation hold.
struct PdeReport {
  double a = 0.0;
  double w = 0.0;
  Vec gradD;
  Mat hessD;
  double residual_12 = 0.0;
  double residual_11 = 0.0;
  double implied_Lsharp = 0.0;
  // residual_12 / (sum_ij |f^{ij}| * max_ij |w_ij|): dimensionless, so
  // tolerance thresholds do not depend on the scale of f.
  double normalized_residual_12 = 0.0;
};

struct DetDerivatives {
  double D = 0.0;
  Vec gradD;
  Mat hessD;
};

// Derivatives of D = det(f_ij) from the jet:
//   D_i  = D f^{kl} f_kli
//   D_ij = D [ (f^{kl} f_kli)(f^{pq} f_pqj) - f^{kp} f^{lq} f_pqj f_kli + f^{kl} f_klij ]
DetDerivatives det_derivatives(const Jet4& jet, const MetricData& m);

PdeReport pde_report(const ConvexFunction& f, std::span<const double> point, double a);

// Closed-form identity for the eq-1.4 family:
//   sum f^{ij} (D^a)_ij = 4 (n+1) [ (n+1) a^2 + n a ] D^a
// lhs is computed numerically through pde_report, rhs from the closed
// forms D = 4^{-n} g^{-(n+1)}, g = x1 - sum_{k>=2} x_k^2 / 2.
struct Identity54 {
  double lhs = 0.0;
  double rhs = 0.0;
};
Identity54 verify_identity_54(int n, double a, std::span<const double> point);

// coefficient 4 (n+1) [ (n+1) a^2 + n a ]
double identity54_coefficient(int n, double a);

// Completeness window of the quadratic-rigidity theorem:
// [-1/2 - (n-1)/(4 sqrt n), -1/2 + (n-1)/(4 sqrt n)], endpoints included.
struct ExponentWindow {
  double lo = 0.0;
  double hi = 0.0;
};
ExponentWindow exponent_window(int n);
bool in_window(double a, int n);

}  // namespace calabi

#endif
