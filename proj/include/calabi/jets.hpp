#ifndef CALABI_JETS_HPP
#define CALABI_JETS_HPP

#include <span>

#include "calabi/expr.hpp"
#include "calabi/linalg.hpp"

namespace calabi {

// Value and all partial derivatives of orders 1..4 at a point.
// d3 and d4 use packed symmetric storage, so permutation symmetry holds
// exactly (all index orders read the same cell).
struct Jet4 {
  int n = 0;
  double value = 0.0;
  Vec d1;   // gradient
  Mat d2;   // Hessian, symmetric
  Sym3 d3;  // third derivatives
  Sym4 d4;  // fourth derivatives
};

// Largest dimension supported by the truncated-polynomial scheme. The
// coefficient count C(n+4,4) and the product table stay tiny up to here.
inline constexpr int kMaxJetDim = 12;

// Forward evaluation of the full degree-4 jet via truncated multivariate
// polynomial arithmetic: one pass yields every mixed partial.
Jet4 jet4(const Expression& expr, std::span<const double> point);

// Checks the point against the function's domain first.
Jet4 jet4(const ConvexFunction& f, std::span<const double> point);

// Independent oracle: composed central differences of order h^2 for each
// derivative, evaluated in extended precision. The stencil reaches 4h from
// the point along each axis.
Jet4 finite_difference_jet(const Expression& expr, std::span<const double> point, double h);

// max over all jet entries of |a - b| / (1 + |a|).
double jet_deviation(const Jet4& a, const Jet4& b);

}  // namespace calabi

#endif
