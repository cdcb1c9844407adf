#ifndef CALABI_LEGENDRE_HPP
#define CALABI_LEGENDRE_HPP

#include <span>

#include "calabi/expr.hpp"
#include "calabi/linalg.hpp"

namespace calabi {

// Affine map X -> M X + b on R^{n+1}. The graph-preserving subgroup keeps
// the vertical direction fixed: last column of M equal to (0,...,0,1)^t.
struct AffineTransform {
  Mat matrix;      // (n+1) x (n+1)
  Vec translation; // n+1

  int ambient_dim() const { return matrix.rows(); }
};

AffineTransform identity_transform(int ambient_dim);

Vec apply_affine(const AffineTransform& tr, std::span<const double> p);
bool is_calabi(const AffineTransform& tr);

AffineTransform compose(const AffineTransform& outer, const AffineTransform& inner);
AffineTransform inverse(const AffineTransform& tr);

// Pointwise Legendre data at y: the gradient image x_i = df/dy_i and the
// conjugate value u = <y, x> - f(y).
struct LegendrePair {
  Vec y;
  Vec x;
  double u_value = 0.0;
};

LegendrePair legendre_point(const ConvexFunction& f, std::span<const double> y);

// max-norm of Hess f(y) * Hess conjugate(x) - I, plus the value mismatch
// |u - conjugate(x)|. Near zero certifies the pair; returns +infinity when
// the gradient image leaves the conjugate's domain (the functions are not
// dual on this point).
double duality_defect(const ConvexFunction& f, const ConvexFunction& conjugate, std::span<const double> y);

}  // namespace calabi

#endif
