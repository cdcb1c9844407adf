#ifndef CALABI_WARPED_HPP
#define CALABI_WARPED_HPP

#include <random>
#include <string>

#include "calabi/catalog.hpp"
#include "calabi/legendre.hpp"

namespace calabi {

// One RK4 sample of the frame flow: eta' = 1 - eta^2 integrated jointly
// with rho' = eta rho, rho(0) = 1. cbar = rho^2 (eta^2 - 1) is conserved.
struct EtaSample {
  double t = 0.0;
  double eta = 0.0;
  double rho = 0.0;
  double cbar = 0.0;
};

struct EtaTrajectory {
  std::vector<EtaSample> samples;
  double step = 0.0;
  std::string method = "rk4";
};

// Classical fourth-order Runge-Kutta; throws BlowUp when |eta| passes 1e6
// (the coth branch crossing its pole). step must lie in (0, 0.01].
EtaTrajectory integrate_eta(double eta0, double t_end, double step);

// tanh / constant / coth branch of the separable equation, for oracles.
double eta_closed_form(double eta0, double t);

enum class WarpedCase { Sphere, FlatMinus, FlatPlus, Hyperbolic };

WarpedCase warped_case_from_name(const std::string& name);
std::string warped_case_name(WarpedCase c);

// A classification parametrization: the immersion (t, u2..un) -> R^{n+1},
// the catalog graph it lands on, and the normalizing transform mapping the
// immersion image onto that graph exactly.
struct ParamCase {
  WarpedCase id = WarpedCase::Sphere;
  std::string equation;  // e.g. "eq-4.30"
  int n = 0;
  std::vector<Expression> immersion;  // n+1 components in variables (t, u2..un)
  CatalogEntry target;
  AffineTransform normalizer;
  Domain param_domain;
};

ParamCase param_case(WarpedCase id, int n);

// Random parameters inside the case's chart, away from coordinate
// degeneracies of the angular variables.
Vec sample_params(const ParamCase& pc, std::mt19937_64& rng);

// Evaluate the parametrization at (t, u2..un).
Vec immersion_point(const ParamCase& pc, std::span<const double> params);

// |x~_{n+1} - f_target(x~_1..x~_n)| after applying the normalizer.
double graph_residual(const ParamCase& pc, std::span<const double> params);

// J^T Hess(f_target) J with J the parameter Jacobian of the normalized
// base coordinates; equals the closed-form warped metric.
Mat pullback_metric(const ParamCase& pc, std::span<const double> params);

// Closed-form warped metric dt^2 + rho(t)^2 G_1 in the chart coordinates.
Mat warped_metric(const ParamCase& pc, std::span<const double> params);

// Levi-Civita symbols of the closed-form warped metric: exact expressions
// and a finite-difference evaluation (central differences of the metric).
// Layout matches ConnectionData: [k][i][j].
std::vector<double> warped_christoffels_closed(const ParamCase& pc, std::span<const double> params);
std::vector<double> warped_christoffels_fd(const ParamCase& pc, std::span<const double> params, double h);

// Fubini-Pick form of the target graph transported to the chart:
// expected pattern A(t,t,t) = 2, A(t,u_j,u_k) = G(u_j,u_k), all else 0.
Sym3 fubini_pick_pullback(const ParamCase& pc, std::span<const double> params);

}  // namespace calabi

#endif
