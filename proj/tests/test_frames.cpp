#include <doctest.h>

#include <cmath>
#include <random>

#include "calabi/calabi_core.hpp"
#include "calabi/catalog.hpp"
#include "calabi/frames.hpp"
#include "calabi/jets.hpp"

using namespace calabi;

TEST_SUITE_BEGIN("frames");

TEST_CASE("theta of the logarithmic graph at the base point") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  const EjiriData ej = theta_max(entry.f, p, 16);
  CHECK(ej.theta == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ej.maximizer[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(ej.maximizer[1]) <= 1e-8);
  REQUIRE(ej.spectrum.size() == 2);
  CHECK(ej.spectrum[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ej.spectrum[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ej.lambda1 == doctest::Approx(2.0).epsilon(1e-10));

  // maximizer is G-unit and attains the cubic form value
  const Jet4 jet = jet4(entry.f, p);
  const MetricData m = metric_data(jet);
  const ConnectionData c = connection_and_pick(jet, m);
  double gnorm = 0.0, cubic = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      gnorm += m.G(i, j) * ej.maximizer[static_cast<std::size_t>(i)] * ej.maximizer[static_cast<std::size_t>(j)];
      for (int k = 0; k < 2; ++k)
        cubic += c.A.at(i, j, k) * ej.maximizer[static_cast<std::size_t>(i)] *
                 ej.maximizer[static_cast<std::size_t>(j)] * ej.maximizer[static_cast<std::size_t>(k)];
    }
  CHECK(gnorm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cubic == doctest::Approx(ej.theta).epsilon(1e-10));
}

TEST_CASE("spectrum in three dimensions") {
  const CatalogEntry entry = get("thm13a", 3);
  const Vec p{1.0, 0.0, 0.0};
  const EjiriData ej = theta_max(entry.f, p, 16);
  REQUIRE(ej.spectrum.size() == 3);
  CHECK(ej.spectrum[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ej.spectrum[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ej.spectrum[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quadratic points have no theta") {
  const CatalogEntry entry = get("quadratic", 2);
  const Vec p{0.4, 0.4};
  CHECK_THROWS_AS(theta_max(entry.f, p, 16), VanishingPick);
}

TEST_CASE("restart validation") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  CHECK_THROWS_AS(theta_max(entry.f, p, 0), InvalidArgument);
}

TEST_CASE("brute force grid oracle") {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec p{1.0, 0.0};
  CHECK(std::abs(theta_bruteforce(entry.f, p, 10000) - 2.0) <= 1e-6);

  const CatalogEntry e3 = get("thm13a", 3);
  const Vec p3{1.0, 0.0, 0.0};
  CHECK(std::abs(theta_bruteforce(e3.f, p3, 720 * 720) - 2.0) <= 1e-4);

  CHECK_THROWS_AS(theta_bruteforce(entry.f, p, 100), InvalidArgument);
  const CatalogEntry e4 = get("thm13a", 4);
  const Vec p4{1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(theta_bruteforce(e4.f, p4, 10000), UnsupportedDimension);
}

TEST_CASE("ascent agrees with the grid oracle on every non-quadratic entry") {
  std::mt19937_64 rng(5);
  for (const std::string& name : catalog_names()) {
    if (name == "quadratic") continue;
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      for (int i = 0; i < 10; ++i) {
        const Vec p = entry.sample_interior(rng);
        const EjiriData ej = theta_max(entry.f, p, 16, rng());
        const double brute = theta_bruteforce(entry.f, p, n == 2 ? 20000 : 160000);
        CAPTURE(name);
        CAPTURE(n);
        CHECK(std::abs(ej.theta - brute) <= 1e-4);
      }
    }
  }
}

TEST_CASE("classification points satisfy the eigenvalue relations") {
  std::mt19937_64 rng(13);
  for (const std::string& name :
       {std::string("sphere_case"), std::string("thm13a"), std::string("thm13b"), std::string("hyperbolic_case")})
    for (int n : {2, 3}) {
      const CatalogEntry entry = get(name, n);
      for (int i = 0; i < 5; ++i) {
        const Vec p = entry.sample_interior(rng);
        const EjiriData ej = theta_max(entry.f, p, 16, rng());
        CAPTURE(name);
        CAPTURE(n);
        CHECK(std::abs(ej.theta - 2.0) <= 1e-6);
        // lambda1 = 2 mu with mu the common fiber eigenvalue
        CHECK(std::abs(ej.lambda1 - 2.0 * ej.spectrum.at(1)) <= 1e-6);
        // ordering of the maximizer frame: lambda1 >= 2 lambda_i
        for (std::size_t s = 1; s < ej.spectrum.size(); ++s)
          CHECK(ej.lambda1 - 2.0 * ej.spectrum[s] >= -1e-6);
        // |T| = (n+1)/n mu
        const Jet4 jet = jet4(entry.f, p);
        const MetricData m = metric_data(jet);
        const ConnectionData c = connection_and_pick(jet, m);
        const double mu = 0.5 * ej.lambda1;
        CHECK(std::abs(std::sqrt(c.Tnorm2) - (n + 1.0) / n * mu) <= 1e-8);
      }
    }
}

TEST_SUITE_END();
