#include <doctest.h>

#include <cmath>
#include <random>

#include "calabi/catalog.hpp"
#include "calabi/jets.hpp"
#include "calabi/pde.hpp"

using namespace calabi;

TEST_SUITE_BEGIN("pde");

TEST_CASE("determinant derivatives at the base point") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const Jet4 jet = jet4(entry.f, p);
  const MetricData m = metric_data(jet);
  const DetDerivatives d = det_derivatives(jet, m);
  CHECK(d.D == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
  CHECK(d.gradD[0] == doctest::Approx(-3.0 / 16.0).epsilon(1e-12));
  CHECK(std::abs(d.gradD[1]) <= 1e-13);
  CHECK(d.hessD(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("determinant derivatives vanish for the quadratic") {
  const CatalogEntry entry = get("quadratic", 2);
  const Vec p{0.7, -0.4};
  const Jet4 jet = jet4(entry.f, p);
  const MetricData m = metric_data(jet);
  const DetDerivatives d = det_derivatives(jet, m);
  for (double g : d.gradD) CHECK(g == 0.0);
  CHECK(max_abs(d.hessD) == 0.0);
}

TEST_CASE("determinant derivatives match differentiation of the closed form") {
  // D = 4^{-n} g^{-(n+1)} for the eq-1.4 family
  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    const CatalogEntry entry = get("thm13a", n);
    std::string g = "x1 - (";
    for (int k = 2; k <= n; ++k) {
      if (k > 2) g += " + ";
      g += "x" + std::to_string(k) + "^2/2";
    }
    g += ")";
    const double scale = std::pow(4.0, -n);
    const std::string d_source = std::to_string(scale) + "*(" + g + ")^-" + std::to_string(n + 1);
    const Expression d_closed = parse(d_source, n);
    for (int i = 0; i < 10; ++i) {
      const Vec p = entry.sample_interior(rng);
      const Jet4 jet = jet4(entry.f, p);
      const MetricData m = metric_data(jet);
      const DetDerivatives d = det_derivatives(jet, m);
      const Jet4 ref = jet4(d_closed, p);
      CHECK(std::abs(d.D - ref.value) <= 1e-9 * std::abs(ref.value));
      for (int a = 0; a < n; ++a)
        CHECK(std::abs(d.gradD[static_cast<std::size_t>(a)] - ref.d1[static_cast<std::size_t>(a)]) <=
              1e-9 * (1.0 + std::abs(ref.d1[static_cast<std::size_t>(a)])));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          CHECK(std::abs(d.hessD(a, b) - ref.d2(a, b)) <= 1e-9 * (1.0 + std::abs(ref.d2(a, b))));
    }
  }
}

TEST_CASE("solution exponents make the residual vanish") {
  const CatalogEntry a = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  CHECK(std::abs(pde_report(a.f, p, -2.0 / 3.0).residual_12) <= 1e-9);

  const CatalogEntry b = get("thm13b", 2);
  const Vec q{1.0, 0.2};
  CHECK(std::abs(pde_report(b.f, q, -1.0 / 3.0).residual_12) <= 1e-9);
}

TEST_CASE("cofactor-form residual at a = -1") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const PdeReport r = pde_report(entry.f, p, -1.0);
  CHECK(r.residual_11 == doctest::Approx(12.0).epsilon(1e-10));
  CHECK(r.implied_Lsharp == doctest::Approx(-12.0).epsilon(1e-10));
}

TEST_CASE("quadratic solves for every exponent") {
  const CatalogEntry entry = get("quadratic", 3);
  std::mt19937_64 rng(3);
  for (double a : {-1.0, -0.5, 0.7, 2.0}) {
    const Vec p = entry.sample_interior(rng);
    const PdeReport r = pde_report(entry.f, p, a);
    CHECK(r.residual_12 == 0.0);
    CHECK(r.normalized_residual_12 == 0.0);
  }
}

TEST_CASE("zero exponent is rejected") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  CHECK_THROWS_AS(pde_report(entry.f, p, 0.0), ZeroExponent);
}

TEST_CASE("cofactor and inverse routes differ by the determinant factor") {
  std::mt19937_64 rng(17);
  for (const std::string& name : catalog_names())
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      if (name == "quadratic") continue;  // both routes identically zero
      for (double a : {0.3, -1.2}) {
        const Vec p = entry.sample_interior(rng);
        const PdeReport r = pde_report(entry.f, p, a);
        const MetricData m = metric_data(jet4(entry.f, p));
        CHECK(std::abs(r.residual_11 - m.detD * r.residual_12) <=
              1e-12 * (std::abs(r.residual_11) + m.detD * std::abs(r.residual_12)));
      }
    }
}

TEST_CASE("closed-form identity examples") {
  const Vec p3{2.0, 1.0, 1.0};
  const Identity54 id = verify_identity_54(3, 0.5, p3);
  CHECK(id.rhs == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(id.lhs == doctest::Approx(5.0).epsilon(1e-9));

  const Vec p2{1.0, 0.0};
  const Identity54 id2 = verify_identity_54(2, -1.0, p2);
  CHECK(id2.rhs == doctest::Approx(192.0).epsilon(1e-12));
  CHECK(id2.lhs == doctest::Approx(192.0).epsilon(1e-9));

  // coefficient root at a = -n/(n+1)
  CHECK(std::abs(identity54_coefficient(2, -2.0 / 3.0)) <= 1e-13);
}

TEST_CASE("closed-form identity at random exponents") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ua(-1.5, 1.5);
  for (int n : {2, 3, 4}) {
    const CatalogEntry entry = get("thm13a", n);
    int done = 0;
    while (done < 50) {
      const double a = ua(rng);
      if (std::abs(identity54_coefficient(n, a)) < 0.5) continue;
      const Vec p = entry.sample_interior(rng);
      const Identity54 id = verify_identity_54(n, a, p);
      CHECK(std::abs(id.lhs / id.rhs - 1.0) <= 1e-8);
      ++done;
    }
  }
}

TEST_CASE("exponent window") {
  const ExponentWindow w = exponent_window(2);
  CHECK(w.lo == doctest::Approx(-0.6767766952966369).epsilon(1e-15));
  CHECK(w.hi == doctest::Approx(-0.3232233047033631).epsilon(1e-15));
  CHECK(in_window(-2.0 / 3.0, 2));
  CHECK(!in_window(-0.9, 2));
  for (int n = 2; n <= 50; ++n) {
    const double nn = n;
    CHECK(in_window(-nn / (nn + 1.0), n));
    CHECK(in_window(-1.0 / (nn + 1.0), n));
  }
  CHECK_THROWS_AS(exponent_window(1), BadDimension);
}

TEST_CASE("no single exponent fits the hyperbolic graph at two points") {
  const CatalogEntry entry = get("hyperbolic_case", 2);
  const Vec p1{2.0, 0.5};
  const Vec p2{3.0, -0.8};
  double best = 1e300;
  for (int i = -200; i <= 100; ++i) {
    if (i == 0) continue;
    const double a = i / 100.0;
    const double r1 = std::abs(pde_report(entry.f, p1, a).residual_12);
    const double r2 = std::abs(pde_report(entry.f, p2, a).residual_12);
    best = std::min(best, std::max(r1, r2));
  }
  CHECK(best > 1e-6);
}

TEST_SUITE_END();
