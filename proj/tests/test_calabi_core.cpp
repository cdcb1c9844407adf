#include <doctest.h>

#include <cmath>
#include <random>

#include "calabi/calabi_core.hpp"
#include "calabi/catalog.hpp"

using namespace calabi;

TEST_SUITE_BEGIN("calabi_core");

namespace {

struct Invariants {
  Jet4 jet;
  MetricData m;
  ConnectionData c;
  CurvatureData cd;
};

Invariants invariants_at(const ConvexFunction& f, const Vec& p) {
  Invariants r;
  r.jet = jet4(f, p);
  r.m = metric_data(r.jet);
  r.c = connection_and_pick(r.jet, r.m);
  r.cd = curvature(r.jet, r.m, r.c);
  return r;
}

}  // namespace

TEST_CASE("metric data at the base point") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const Jet4 jet = jet4(entry.f, p);
  const MetricData m = metric_data(jet);
  CHECK(m.detD == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
  CHECK(m.Ginv(0, 0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(m.Ginv(1, 1) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(std::abs(m.Ginv(0, 1)) <= 1e-13);
  // G Ginv = I and cofactor = detD Ginv
  const Mat prod = m.G * m.Ginv;
  CHECK(max_abs_diff(prod, Mat::identity(2)) <= 1e-12);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m.cofactor(i, j) == doctest::Approx(m.detD * m.Ginv(i, j)));
}

TEST_CASE("quadratic metric is the identity") {
  const CatalogEntry entry = get("quadratic", 3);
  const Vec p{0.3, -0.2, 1.1};
  const Jet4 jet = jet4(entry.f, p);
  const MetricData m = metric_data(jet);
  CHECK(m.detD == doctest::Approx(1.0));
  CHECK(max_abs_diff(m.G, Mat::identity(3)) == 0.0);
  CHECK(max_abs_diff(m.cofactor, Mat::identity(3)) <= 1e-15);
}

TEST_CASE("determinant closed form at n=3") {
  const CatalogEntry entry = get("thm13a", 3);
  const Vec p{2.0, 1.0, 1.0};  // g = 1
  const MetricData m = metric_data(jet4(entry.f, p));
  CHECK(m.detD == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("non-convex point is rejected") {
  const Expression e = parse("x1^3", 1);
  const Vec p{-1.0};
  const Jet4 jet = jet4(e, p);
  CHECK_THROWS_AS(metric_data(jet), NotConvexAtPoint);
}

TEST_CASE("Tchebychev field and Pick invariant at the base point") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const Invariants inv = invariants_at(entry.f, p);
  CHECK(inv.c.Tcheb[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(inv.c.Tcheb[1]) <= 1e-12);
  CHECK(inv.c.Tnorm2 == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(inv.c.pickJ == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("quadratic cubic-form quantities vanish") {
  const CatalogEntry entry = get("quadratic", 2);
  const Vec p{0.5, 0.5};
  const Invariants inv = invariants_at(entry.f, p);
  CHECK(inv.c.A.max_abs() == 0.0);
  CHECK(inv.c.Tnorm2 == 0.0);
  CHECK(inv.c.pickJ == 0.0);
  for (double r : inv.cd.Riem) CHECK(r == 0.0);
  CHECK(inv.cd.scalar_contracted == 0.0);
}

TEST_CASE("curvature of the base example") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const Invariants inv = invariants_at(entry.f, p);
  CHECK(inv.cd.scalar_JT == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(inv.cd.scalar_contracted == doctest::Approx(-2.0).epsilon(1e-12));
  // constant curvature: Ric = (n-1) C G with C = -1
  CHECK(inv.cd.Ricci(0, 0) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(inv.cd.Ricci(1, 1) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(std::abs(inv.cd.Ricci(0, 1)) <= 1e-13);
  const Vec u{1.0, 0.0}, v{0.0, 1.0};
  CHECK(sectional_curvature(inv.cd, inv.m, u, v) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("curvature symmetries and first Bianchi identity") {
  std::mt19937_64 rng(31);
  for (const std::string& name : catalog_names())
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      for (int s = 0; s < 20; ++s) {
        const Vec p = entry.sample_interior(rng);
        const Invariants inv = invariants_at(entry.f, p);
        double scale = 0.0;
        for (double r : inv.cd.Riem) scale = std::max(scale, std::abs(r));
        const double tol = 1e-10 * std::max(scale, 1.0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                const double r = inv.cd.riem(i, j, k, l);
                CHECK(std::abs(r + inv.cd.riem(j, i, k, l)) <= tol);
                CHECK(std::abs(r + inv.cd.riem(i, j, l, k)) <= tol);
                CHECK(std::abs(r - inv.cd.riem(k, l, i, j)) <= tol);
                CHECK(std::abs(r + inv.cd.riem(i, k, l, j) + inv.cd.riem(i, l, j, k)) <= tol);
              }
      }
    }
}

TEST_CASE("two scalar curvature routes agree everywhere") {
  std::mt19937_64 rng(47);
  for (const std::string& name : catalog_names())
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      for (int s = 0; s < 20; ++s) {
        const Vec p = entry.sample_interior(rng);
        const Invariants inv = invariants_at(entry.f, p);
        CHECK(std::abs(inv.cd.scalar_contracted - inv.cd.scalar_JT) <=
              1e-9 * (1.0 + std::abs(inv.cd.scalar_JT)));
      }
    }
}

TEST_CASE("invariant constants across dimensions") {
  std::mt19937_64 rng(53);
  for (const std::string& name : {std::string("thm13a"), std::string("thm13b")})
    for (int n = 2; n <= 5; ++n) {
      const CatalogEntry entry = get(name, n);
      const double nn = n;
      const double expected_t = (nn + 1.0) * (nn + 1.0) / (nn * nn);
      const double expected_j = (3.0 * nn + 1.0) / (nn * (nn - 1.0));
      for (int s = 0; s < 5; ++s) {
        const Vec p = entry.sample_interior(rng);
        const Invariants inv = invariants_at(entry.f, p);
        CHECK(std::abs(inv.c.Tnorm2 - expected_t) <= 1e-9 * expected_t);
        CHECK(std::abs(inv.c.pickJ - expected_j) <= 1e-9 * expected_j);
      }
    }
}

TEST_CASE("sectional curvature of the representatives is -1") {
  std::mt19937_64 rng(61);
  for (const std::string& name :
       {std::string("sphere_case"), std::string("thm13a"), std::string("thm13b"), std::string("hyperbolic_case")})
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int s = 0; s < 5; ++s) {
        const Vec p = entry.sample_interior(rng);
        const Invariants inv = invariants_at(entry.f, p);
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            Vec u(static_cast<std::size_t>(n), 0.0), v(static_cast<std::size_t>(n), 0.0);
            u[static_cast<std::size_t>(i)] = 1.0;
            v[static_cast<std::size_t>(j)] = 1.0;
            CAPTURE(name);
            CHECK(std::abs(sectional_curvature(inv.cd, inv.m, u, v) + 1.0) <= 1e-6);
          }
        // random planes, not just coordinate ones
        for (int t = 0; t < 2; ++t) {
          Vec u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
          for (double& x : u) x = gauss(rng);
          for (double& x : v) x = gauss(rng);
          CHECK(std::abs(sectional_curvature(inv.cd, inv.m, u, v) + 1.0) <= 1e-6);
        }
      }
    }
}

TEST_CASE("scalar identity degenerates gracefully on curves") {
  // n = 1: no curvature, and |A|^2 cancels the Tchebychev term exactly
  ConvexFunction f;
  f.dim = 1;
  f.body = parse("-0.25*ln(x1)", 1);
  f.domain = Domain({parse("x1", 1)});
  const Vec p{0.7};
  const Jet4 jet = jet4(f, p);
  const MetricData m = metric_data(jet);
  const ConnectionData c = connection_and_pick(jet, m);
  const CurvatureData cd = curvature(jet, m, c);
  CHECK(c.pickJ == 0.0);
  CHECK(c.Anorm2 > 0.0);
  CHECK(cd.scalar_contracted == 0.0);
  CHECK(std::abs(cd.scalar_JT) <= 1e-12 * c.Anorm2);
}

TEST_CASE("degenerate planes are rejected") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const Invariants inv = invariants_at(entry.f, p);
  const Vec u{1.0, 1.0};
  const Vec v{2.0, 2.0};
  CHECK_THROWS_AS(sectional_curvature(inv.cd, inv.m, u, v), DegeneratePlane);
}

TEST_SUITE_END();
