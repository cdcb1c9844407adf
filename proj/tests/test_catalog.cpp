#include <doctest.h>

#include <cmath>
#include <random>

#include "calabi/calabi_core.hpp"
#include "calabi/catalog.hpp"
#include "calabi/frames.hpp"
#include "calabi/pde.hpp"
#include "calabi/warped.hpp"

using namespace calabi;

TEST_SUITE_BEGIN("catalog");

TEST_CASE("entry lookup and validation") {
  CHECK(catalog_names().size() == 6);
  CHECK_THROWS_AS(get("unknown", 2), InvalidArgument);
  CHECK_THROWS_AS(get("thm13a", 1), BadDimension);
  CHECK_NOTHROW(get("quadratic", 1));
  CHECK_THROWS_AS(get("thm13a", 40), UnsupportedDimension);
}

TEST_CASE("expected records carry labels and origins") {
  const CatalogEntry e = get("thm13a", 2);
  REQUIRE(e.expected.solving_exponent.has_value());
  CHECK(e.expected.solving_exponent->value == doctest::Approx(-2.0 / 3.0));
  CHECK(e.expected.solving_exponent->equation == "eq-1.2");
  REQUIRE(e.expected.lsharp_at_minus_one.has_value());
  CHECK(e.expected.lsharp_at_minus_one->value == doctest::Approx(-12.0));
  REQUIRE(e.expected.theta.has_value());
  CHECK(e.expected.theta->value == 2.0);
  REQUIRE(e.expected.tnorm2.has_value());
  CHECK(e.expected.tnorm2->value == doctest::Approx(2.25));
  REQUIRE(e.expected.pick_invariant.has_value());
  CHECK(e.expected.pick_invariant->value == doctest::Approx(3.5));
  CHECK(!e.expected.solves_no_exponent);
  CHECK(get("hyperbolic_case", 2).expected.solves_no_exponent);
  for (const std::string& name : catalog_names()) {
    const CatalogEntry entry = get(name, 2);
    auto tagged = [](const std::optional<ExpectedValue>& v) {
      return !v || (!v->equation.empty() && (v->origin == "closed-form" || v->origin == "derived"));
    };
    CHECK(tagged(entry.expected.theta));
    CHECK(tagged(entry.expected.tnorm2));
    CHECK(tagged(entry.expected.pick_invariant));
    CHECK(tagged(entry.expected.sectional));
    CHECK(tagged(entry.expected.solving_exponent));
    CHECK(tagged(entry.expected.lsharp_at_minus_one));
  }
}

TEST_CASE("samplers stay interior with a comfortable margin") {
  std::mt19937_64 rng(101);
  for (const std::string& name : catalog_names())
    for (int n : {2, 3, 4}) {
      const CatalogEntry entry = get(name, n);
      for (int i = 0; i < 100; ++i) {
        const Vec p = entry.sample_interior(rng);
        CAPTURE(name);
        CHECK(entry.f.domain.margin(p) >= 1e-3);
      }
    }
}

TEST_CASE("Hessians are positive definite at sampled points") {
  std::mt19937_64 rng(103);
  for (const std::string& name : catalog_names())
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      for (int i = 0; i < 20; ++i) {
        const Vec p = entry.sample_interior(rng);
        CHECK_NOTHROW(metric_data(jet4(entry.f, p)));
      }
    }
}

TEST_CASE("expected records are reproduced by the modules") {
  std::mt19937_64 rng(107);
  for (const std::string& name : catalog_names()) {
    const int n = 2;
    const CatalogEntry entry = get(name, n);
    for (int i = 0; i < 3; ++i) {
      const Vec p = entry.sample_interior(rng);
      const Jet4 jet = jet4(entry.f, p);
      const MetricData m = metric_data(jet);
      const ConnectionData c = connection_and_pick(jet, m);
      CAPTURE(name);
      if (entry.expected.tnorm2) {
        const double e = entry.expected.tnorm2->value;
        CHECK(std::abs(c.Tnorm2 - e) <= 1e-9 * (1.0 + e));
      }
      if (entry.expected.pick_invariant) {
        const double e = entry.expected.pick_invariant->value;
        CHECK(std::abs(c.pickJ - e) <= 1e-9 * (1.0 + e));
      }
      if (entry.expected.sectional) {
        const CurvatureData cd = curvature(jet, m, c);
        const Vec u{1.0, 0.0}, v{0.0, 1.0};
        CHECK(std::abs(sectional_curvature(cd, m, u, v) - entry.expected.sectional->value) <= 1e-6);
      }
      if (entry.expected.theta) {
        const EjiriData ej = theta_max(entry.f, p, 16, rng());
        CHECK(std::abs(ej.theta - entry.expected.theta->value) <= 1e-6);
      }
      if (entry.expected.solving_exponent) {
        const PdeReport r = pde_report(entry.f, p, entry.expected.solving_exponent->value);
        CHECK(std::abs(r.normalized_residual_12) <= 1e-8);
      }
      if (entry.expected.lsharp_at_minus_one) {
        const PdeReport r = pde_report(entry.f, p, -1.0);
        const double e = entry.expected.lsharp_at_minus_one->value;
        CHECK(std::abs(r.implied_Lsharp - e) <= 1e-8 * std::abs(e));
      }
    }
  }
}

TEST_CASE("parametrization links round-trip through the warped module") {
  int linked = 0;
  for (const std::string& name : catalog_names()) {
    const CatalogEntry entry = get(name, 2);
    if (entry.param_case.empty()) continue;
    ++linked;
    const ParamCase pc = param_case(warped_case_from_name(entry.param_case), 2);
    CHECK(pc.target.name == name);
  }
  CHECK(linked == 4);
}

TEST_CASE("domain inequalities match the stated regions") {
  const CatalogEntry h = get("hyperbolic_case", 2);
  const Vec inside{2.0, 0.5};   // x1^2 - x2^2 = 3.75 > 1
  const Vec outside{1.0, 0.3};  // 0.91 < 1
  CHECK(h.f.domain.contains(inside));
  CHECK(!h.f.domain.contains(outside));

  const CatalogEntry d = get("dual59", 2);
  const Vec din{-1.0, 0.0};
  const Vec dout{0.5, 0.0};
  CHECK(d.f.domain.contains(din));
  CHECK(!d.f.domain.contains(dout));

  const CatalogEntry s = get("sphere_case", 2);
  const Vec sin_{0.5, 0.5};
  const Vec sout{0.0, 0.0};
  CHECK(s.f.domain.contains(sin_));
  CHECK(!s.f.domain.contains(sout));
}

TEST_SUITE_END();
