#include <doctest.h>

#include <cmath>
#include <random>

#include "calabi/warped.hpp"

using namespace calabi;

TEST_SUITE_BEGIN("warped");

TEST_CASE("tanh branch of the frame flow") {
  const EtaTrajectory traj = integrate_eta(0.0, 1.0, 1e-3);
  CHECK(std::abs(traj.samples.back().eta - std::tanh(1.0)) <= 1e-8);
  for (const EtaSample& s : traj.samples) CHECK(std::abs(s.cbar + 1.0) <= 1e-8);
}

TEST_CASE("eta = 1 is a fixed point with cbar = 0") {
  const EtaTrajectory traj = integrate_eta(1.0, 2.0, 1e-2);
  for (const EtaSample& s : traj.samples) {
    CHECK(s.eta == 1.0);
    CHECK(s.cbar == 0.0);
  }
}

TEST_CASE("coth branch conserves cbar = 3") {
  const EtaTrajectory traj = integrate_eta(2.0, 0.5, 1e-3);
  const double expected = 1.0 / std::tanh(0.5 + 0.5 * std::log(3.0));
  CHECK(std::abs(traj.samples.back().eta - expected) <= 1e-6);
  for (const EtaSample& s : traj.samples) {
    CHECK(std::abs(s.cbar - 3.0) <= 1e-8);
    CHECK(s.rho > 0.0);
  }
}

TEST_CASE("closed-form branches match the integrator") {
  for (double eta0 : {-0.5, 0.0, 0.5, 2.0}) {
    const EtaTrajectory traj = integrate_eta(eta0, 2.0, 1e-3);
    for (std::size_t i = 0; i < traj.samples.size(); i += 500) {
      const EtaSample& s = traj.samples[i];
      CHECK(std::abs(s.eta - eta_closed_form(eta0, s.t)) <= 1e-8);
    }
  }
}

TEST_CASE("conserved quantity drift stays tiny over long horizons") {
  for (double eta0 : {-0.5, 0.0, 0.5, 2.0}) {
    const EtaTrajectory traj = integrate_eta(eta0, 5.0, 1e-3);
    const double c0 = traj.samples.front().cbar;
    for (const EtaSample& s : traj.samples) CHECK(std::abs(s.cbar - c0) <= 1e-8);
  }
}

TEST_CASE("step halving reduces the error by the fourth-order factor") {
  const double exact = std::tanh(1.0);
  const double e1 = std::abs(integrate_eta(0.0, 1.0, 0.01).samples.back().eta - exact);
  const double e2 = std::abs(integrate_eta(0.0, 1.0, 0.005).samples.back().eta - exact);
  const double ratio = e1 / e2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("pole crossing raises BlowUp") {
  CHECK_THROWS_AS(integrate_eta(-2.0, 1.0, 0.005), BlowUp);
}

TEST_CASE("step validation") {
  CHECK_THROWS_AS(integrate_eta(0.0, 1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(integrate_eta(0.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("immersion points of the flat cases") {
  const ParamCase plus = param_case(WarpedCase::FlatPlus, 2);
  const Vec p{0.3, 0.5};
  const Vec x = immersion_point(plus, p);
  CHECK(x[0] == doctest::Approx(std::exp(0.6)).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.5 * std::exp(0.6)).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(0.5 * std::exp(0.6) * 0.25 - 0.15).epsilon(1e-13));

  const ParamCase minus = param_case(WarpedCase::FlatMinus, 2);
  const Vec q{0.5, 0.3};
  const Vec y = immersion_point(minus, q);
  CHECK(y[0] == doctest::Approx(0.18 + std::exp(1.0)).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(0.3));
  CHECK(y[2] == doctest::Approx(-0.25));
}

TEST_CASE("sphere slice at zero azimuth") {
  const ParamCase pc = param_case(WarpedCase::Sphere, 2);
  const Vec p{0.7, 0.0};
  const Vec x = immersion_point(pc, p);
  CHECK(std::abs(x[1]) <= 1e-15);  // sin(0) factor
}

TEST_CASE("sphere chart requires positive t") {
  const ParamCase pc = param_case(WarpedCase::Sphere, 2);
  const Vec bad{-0.1, 0.5};
  CHECK_THROWS_AS(immersion_point(pc, bad), EvalError);
}

TEST_CASE("graph residuals vanish for specific parameters") {
  const ParamCase minus = param_case(WarpedCase::FlatMinus, 2);
  const Vec q{0.5, 0.3};
  CHECK(graph_residual(minus, q) <= 1e-12);

  const ParamCase plus = param_case(WarpedCase::FlatPlus, 2);
  const Vec p{0.3, 0.5};
  CHECK(graph_residual(plus, p) <= 1e-12);

  const ParamCase sphere = param_case(WarpedCase::Sphere, 2);
  const Vec s{0.4, 1.0};
  CHECK(graph_residual(sphere, s) <= 1e-12);
}

TEST_CASE("graph residuals vanish at random parameters for every case") {
  std::mt19937_64 rng(71);
  for (WarpedCase id : {WarpedCase::Sphere, WarpedCase::FlatMinus, WarpedCase::FlatPlus, WarpedCase::Hyperbolic})
    for (int n : {2, 3}) {
      const ParamCase pc = param_case(id, n);
      for (int i = 0; i < 25; ++i) {
        const Vec p = sample_params(pc, rng);
        CAPTURE(warped_case_name(id));
        CAPTURE(n);
        CHECK(graph_residual(pc, p) <= 1e-10);
      }
    }
}

TEST_CASE("pullback metrics match the closed warped forms") {
  const Vec p{0.6, 0.4};

  const ParamCase minus = param_case(WarpedCase::FlatMinus, 2);
  const Mat gm = pullback_metric(minus, p);
  CHECK(std::abs(gm(0, 0) - 1.0) <= 1e-8);
  CHECK(std::abs(gm(1, 1) - std::exp(-1.2)) <= 1e-8);
  CHECK(std::abs(gm(0, 1)) <= 1e-10);

  const ParamCase sphere = param_case(WarpedCase::Sphere, 2);
  const Mat gs = pullback_metric(sphere, p);
  CHECK(std::abs(gs(0, 0) - 1.0) <= 1e-8);
  CHECK(std::abs(gs(1, 1) - std::sinh(0.6) * std::sinh(0.6)) <= 1e-8);

  const ParamCase hyper = param_case(WarpedCase::Hyperbolic, 2);
  const Mat gh = pullback_metric(hyper, p);
  CHECK(std::abs(gh(0, 0) - 1.0) <= 1e-8);
  CHECK(std::abs(gh(1, 1) - std::cosh(0.6) * std::cosh(0.6)) <= 1e-8);
}

TEST_CASE("pullback metrics at random parameters for every case") {
  std::mt19937_64 rng(73);
  for (WarpedCase id : {WarpedCase::Sphere, WarpedCase::FlatMinus, WarpedCase::FlatPlus, WarpedCase::Hyperbolic})
    for (int n : {2, 3}) {
      const ParamCase pc = param_case(id, n);
      for (int i = 0; i < 25; ++i) {
        const Vec p = sample_params(pc, rng);
        const Mat computed = pullback_metric(pc, p);
        const Mat closed = warped_metric(pc, p);
        CAPTURE(warped_case_name(id));
        CAPTURE(n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            CHECK(std::abs(computed(a, b) - closed(a, b)) <= 1e-8);
            if (a != b) CHECK(std::abs(computed(a, b)) <= 1e-10);
          }
      }
    }
}

TEST_CASE("finite-difference Christoffels reproduce the closed forms") {
  std::mt19937_64 rng(79);
  for (WarpedCase id : {WarpedCase::Sphere, WarpedCase::FlatMinus, WarpedCase::FlatPlus, WarpedCase::Hyperbolic})
    for (int n : {2, 3}) {
      const ParamCase pc = param_case(id, n);
      for (int i = 0; i < 10; ++i) {
        const Vec p = sample_params(pc, rng);
        const std::vector<double> fd = warped_christoffels_fd(pc, p, 1e-5);
        const std::vector<double> closed = warped_christoffels_closed(pc, p);
        for (std::size_t k = 0; k < fd.size(); ++k) CHECK(std::abs(fd[k] - closed[k]) <= 1e-6);
      }
    }
}

TEST_CASE("named connection entries") {
  const ParamCase sphere = param_case(WarpedCase::Sphere, 2);
  const Vec p{0.8, 0.3};
  const std::vector<double> g = warped_christoffels_closed(sphere, p);
  const int n = 2;
  auto at = [&](int k, int i, int j) { return g[(static_cast<std::size_t>(k) * n + i) * n + j]; };
  CHECK(at(0, 1, 1) == doctest::Approx(-std::sinh(0.8) * std::cosh(0.8)));
  CHECK(at(1, 0, 1) == doctest::Approx(std::cosh(0.8) / std::sinh(0.8)));
  CHECK(at(0, 0, 0) == 0.0);
}

TEST_CASE("transported cubic form has the warped-product pattern") {
  std::mt19937_64 rng(83);
  for (WarpedCase id : {WarpedCase::Sphere, WarpedCase::FlatMinus, WarpedCase::FlatPlus, WarpedCase::Hyperbolic})
    for (int n : {2, 3}) {
      const ParamCase pc = param_case(id, n);
      for (int i = 0; i < 10; ++i) {
        const Vec p = sample_params(pc, rng);
        const Sym3 a = fubini_pick_pullback(pc, p);
        const Mat g = warped_metric(pc, p);
        CAPTURE(warped_case_name(id));
        CHECK(std::abs(a.at(0, 0, 0) - 2.0) <= 1e-6);
        for (int x = 1; x < n; ++x) {
          CHECK(std::abs(a.at(0, 0, x)) <= 1e-6);
          for (int y = x; y < n; ++y) {
            CHECK(std::abs(a.at(0, x, y) - g(x, y)) <= 1e-6);
            for (int z = y; z < n; ++z) CHECK(std::abs(a.at(x, y, z)) <= 1e-6);
          }
        }
      }
    }
}

TEST_CASE("case lookup by name") {
  CHECK(warped_case_from_name("sphere") == WarpedCase::Sphere);
  CHECK(warped_case_from_name("flat_minus") == WarpedCase::FlatMinus);
  CHECK_THROWS_AS(warped_case_from_name("torus"), InvalidArgument);
  CHECK_THROWS_AS(param_case(WarpedCase::Sphere, 1), BadDimension);
}

TEST_SUITE_END();
