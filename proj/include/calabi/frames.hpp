#ifndef CALABI_FRAMES_HPP
#define CALABI_FRAMES_HPP

#include <cstdint>
#include <span>

#include "calabi/calabi_core.hpp"
#include "calabi/expr.hpp"

namespace calabi {

// theta = max of the cubic form A(u,u,u) over the metric unit sphere,
// together with the eigen-split of the endomorphism u -> Ginv A(E1, u, .)
// taken at E1 = T/|T|.
struct EjiriData {
  double theta = 0.0;
  Vec maximizer;                 // G-unit direction attaining theta
  double lambda1 = 0.0;          // largest eigenvalue of the split
  std::vector<double> spectrum;  // all eigenvalues, descending
};

// Multistart projected ascent: Cholesky change of variables onto the
// Euclidean sphere, fixed-point iteration v <- normalize(B[v,v,.]), random
// restarts plus a deterministic start along the Tchebychev direction.
// Throws VanishingPick when the cubic form (or T) is numerically zero.
EjiriData theta_max(const ConvexFunction& f, std::span<const double> point, int restarts,
                    std::uint64_t seed = 42);

// Exhaustive angular grid oracle, n in {2,3}. For n = 2 `resolution` is the
// number of circle samples; for n = 3 the grid is floor(sqrt(resolution))
// points per angular axis.
double theta_bruteforce(const ConvexFunction& f, std::span<const double> point, long resolution);

}  // namespace calabi

#endif
