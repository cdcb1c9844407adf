#ifndef CALABI_GEODESICS_HPP
#define CALABI_GEODESICS_HPP

#include <span>

#include "calabi/expr.hpp"
#include "calabi/linalg.hpp"

namespace calabi {

struct GeodesicSample {
  double s = 0.0;
  Vec position;
  Vec velocity;
  double speed = 0.0;  // sqrt(G_ij v^i v^j)
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double arc_length = 0.0;
  double speed_drift = 0.0;   // max |speed - speed(0)| along the path
  bool left_domain = false;   // stopped early at the last valid sample
};

// RK4 on xdot = v, vdot^k = -Gamma^k_ij v^i v^j. step must lie in
// (0, 0.01]. If the path exits the domain (or convexity fails) the result
// carries the samples up to the last valid point with left_domain set.
GeodesicPath geodesic(const ConvexFunction& f, std::span<const double> start,
                      std::span<const double> velocity, double s_end, double step);

struct BoundaryLength {
  double length = 0.0;
  bool truncated = false;  // false when the ray never reached margin <= eps
  double stop_parameter = 0.0;
};

// Calabi arc length of the straight segment start + tau * direction,
// stopped where the smallest domain inequality value reaches eps
// (adaptive trapezoid quadrature with Richardson acceptance). max_span
// caps the Euclidean length when the boundary is never reached.
BoundaryLength length_to_boundary(const ConvexFunction& f, std::span<const double> start,
                                  std::span<const double> direction, double eps,
                                  double max_span = 64.0);

}  // namespace calabi

#endif
