#ifndef CALABI_CATALOG_HPP
#define CALABI_CATALOG_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "calabi/expr.hpp"
#include "calabi/linalg.hpp"

namespace calabi {

// One expected numeric constant, labeled with the identity it comes from
// and whether the value is a stated closed form or was derived from one.
struct ExpectedValue {
  double value = 0.0;
  std::string equation;  // label used in reports, e.g. "eq-5.6"
  std::string origin;    // "closed-form" or "derived"
};

struct CatalogExpectations {
  std::optional<ExpectedValue> theta;
  std::optional<ExpectedValue> tnorm2;
  std::optional<ExpectedValue> pick_invariant;
  std::optional<ExpectedValue> sectional;
  std::optional<ExpectedValue> solving_exponent;    // a with vanishing residual
  std::optional<ExpectedValue> lsharp_at_minus_one; // L# of the a = -1 equation
  bool solves_no_exponent = false;                  // no a works anywhere
};

class CatalogEntry {
 public:
  enum class Kind { Quadratic, Thm13a, Thm13b, SphereCase, HyperbolicCase, Dual59 };

  std::string name;
  std::string equation;  // primary label, e.g. "eq-1.4"
  Kind kind = Kind::Quadratic;
  int n = 0;
  ConvexFunction f;
  CatalogExpectations expected;
  // warped-product parametrization landing on this graph, when one exists
  // (see warped.hpp: sphere, flat_minus, flat_plus, hyperbolic)
  std::string param_case;

  // Seeded rejection sampling inside the domain; the boxes are chosen so
  // derivative magnitudes stay moderate (finite-difference friendly) and
  // the margin to the boundary is comfortably positive.
  Vec sample_interior(std::mt19937_64& rng) const;
};

// name in {quadratic, thm13a, thm13b, sphere_case, hyperbolic_case, dual59}
CatalogEntry get(const std::string& name, int n);

std::vector<std::string> catalog_names();

}  // namespace calabi

#endif
