#include "calabi/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <thread>

#include "calabi/calabi_core.hpp"
#include "calabi/catalog.hpp"
#include "calabi/frames.hpp"
#include "calabi/geodesics.hpp"
#include "calabi/jets.hpp"
#include "calabi/legendre.hpp"
#include "calabi/pde.hpp"
#include "calabi/warped.hpp"

namespace calabi {

namespace {

std::mt19937_64 rng_for(std::uint64_t seed, const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a, stable across platforms
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL ^ h);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Check {
  int criterion;
  std::string key;
  std::function<CheckResult(std::mt19937_64&)> body;
};

CheckResult bounded(int criterion, const std::string& key, double measured, double bound,
                    std::string note = {}) {
  return {criterion, key, measured <= bound, measured, bound, std::move(note)};
}

// ---- criterion 1: solutions of the fourth-order equation -------------------

CheckResult check_solution_residual(std::mt19937_64& rng, int criterion, const std::string& key,
                                    const std::string& name, int n, double a, int points, double bound) {
  const CatalogEntry entry = get(name, n);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const Vec p = entry.sample_interior(rng);
    const PdeReport r = pde_report(entry.f, p, a);
    worst = std::max(worst, std::abs(r.normalized_residual_12));
  }
  return bounded(criterion, key, worst, bound);
}

// ---- criterion 2: L-sharp values at a = -1 ----------------------------------

CheckResult check_abreu_value(std::mt19937_64& rng, const std::string& key, const std::string& name,
                              int n, double expected, int points) {
  const CatalogEntry entry = get(name, n);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const Vec p = entry.sample_interior(rng);
    const PdeReport r = pde_report(entry.f, p, -1.0);
    worst = std::max(worst, std::abs(r.residual_11 - expected) / std::abs(expected));
  }
  return bounded(2, key, worst, 1e-8, "residual_11 vs " + fmt(expected));
}

// ---- criterion 3: closed-form identity --------------------------------------

CheckResult check_identity54(std::mt19937_64& rng, const std::string& key, int n) {
  const CatalogEntry entry = get("thm13a", n);
  std::uniform_real_distribution<double> ua(-1.5, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double a = 0.0;
    do {
      a = ua(rng);
    } while (std::abs(identity54_coefficient(n, a)) < 0.5);
    const Vec p = entry.sample_interior(rng);
    const Identity54 id = verify_identity_54(n, a, p);
    worst = std::max(worst, std::abs(id.lhs / id.rhs - 1.0));
  }
  return bounded(3, key, worst, 1e-8);
}

CheckResult check_identity54_roots(const std::string& key) {
  // coefficient numerator over the denominator q^2, evaluated in integer
  // arithmetic at a = p/q: 4 (n+1) ((n+1) p^2 + n p q)
  long long worst = 0;
  bool pass = true;
  for (long long n = 2; n <= 6; ++n) {
    auto num = [n](long long p, long long q) { return 4 * (n + 1) * ((n + 1) * p * p + n * p * q); };
    if (num(0, 1) != 0) pass = false;
    if (num(-n, n + 1) != 0) pass = false;  // a = -n/(n+1) is an exact root
    worst = std::max(worst, std::abs(num(-n, n + 1)));
    if (num(-1, n + 1) == 0) pass = false;  // a = -1/(n+1) is not a root
  }
  CheckResult r = bounded(3, key, static_cast<double>(worst), 0.0, "rational-arithmetic roots {0, -n/(n+1)}");
  r.pass = pass && r.pass;
  return r;
}

// ---- criterion 4: constants of the classification representatives -----------

const char* kRepresentatives[] = {"sphere_case", "thm13a", "thm13b", "hyperbolic_case"};

CheckResult check_rep_constant(std::mt19937_64& rng, const std::string& key, const std::string& name,
                               int n, const std::string& what, double bound) {
  const CatalogEntry entry = get(name, n);
  const double nn = n;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Vec p = entry.sample_interior(rng);
    const Jet4 jet = jet4(entry.f, p);
    const MetricData m = metric_data(jet);
    const ConnectionData c = connection_and_pick(jet, m);
    if (what == "tnorm2") {
      const double expected = (nn + 1.0) * (nn + 1.0) / (nn * nn);
      worst = std::max(worst, std::abs(c.Tnorm2 - expected) / expected);
    } else if (what == "pick") {
      const double expected = (3.0 * nn + 1.0) / (nn * (nn - 1.0));
      worst = std::max(worst, std::abs(c.pickJ - expected) / expected);
    } else if (what == "sectional") {
      const CurvatureData cd = curvature(jet, m, c);
      for (int ii = 0; ii < n; ++ii)
        for (int jj = ii + 1; jj < n; ++jj) {
          Vec u(static_cast<std::size_t>(n), 0.0), v(static_cast<std::size_t>(n), 0.0);
          u[static_cast<std::size_t>(ii)] = 1.0;
          v[static_cast<std::size_t>(jj)] = 1.0;
          worst = std::max(worst, std::abs(sectional_curvature(cd, m, u, v) + 1.0));
        }
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int t = 0; t < 2; ++t) {
        Vec u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
        for (double& x : u) x = gauss(rng);
        for (double& x : v) x = gauss(rng);
        worst = std::max(worst, std::abs(sectional_curvature(cd, m, u, v) + 1.0));
      }
    } else if (what == "theta") {
      const EjiriData ej = theta_max(entry.f, p, 16, rng());
      worst = std::max(worst, std::abs(ej.theta - 2.0));
    } else if (what == "spectrum") {
      const EjiriData ej = theta_max(entry.f, p, 16, rng());
      worst = std::max(worst, std::abs(ej.spectrum.at(0) - 2.0));
      for (std::size_t s = 1; s < ej.spectrum.size(); ++s)
        worst = std::max(worst, std::abs(ej.spectrum[s] - 1.0));
    }
  }
  return bounded(4, key, worst, bound);
}

// ---- criterion 5: two-way scalar curvature ----------------------------------

CheckResult check_scalar_two_way(std::mt19937_64& rng, const std::string& key, const std::string& name,
                                 int n) {
  const CatalogEntry entry = get(name, n);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec p = entry.sample_interior(rng);
    const Jet4 jet = jet4(entry.f, p);
    const MetricData m = metric_data(jet);
    const ConnectionData c = connection_and_pick(jet, m);
    const CurvatureData cd = curvature(jet, m, c);
    worst = std::max(worst, std::abs(cd.scalar_contracted - cd.scalar_JT) / (1.0 + std::abs(cd.scalar_JT)));
  }
  return bounded(5, key, worst, 1e-9);
}

// ---- criterion 6: AD vs finite differences ----------------------------------

CheckResult check_fd_oracle(std::mt19937_64& rng, const std::string& key, const std::string& name, int n) {
  const CatalogEntry entry = get(name, n);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec p = entry.sample_interior(rng);
    const Jet4 ad = jet4(entry.f.body, p);
    const Jet4 fd = finite_difference_jet(entry.f.body, p, 1e-3);
    worst = std::max(worst, jet_deviation(ad, fd));
  }
  return bounded(6, key, worst, 1e-5);
}

// ---- criterion 7: theta oracle agreement ------------------------------------

CheckResult check_theta_oracle(std::mt19937_64& rng, const std::string& key, const std::string& name,
                               int n) {
  const CatalogEntry entry = get(name, n);
  const long resolution = n == 2 ? 20000 : 160000;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Vec p = entry.sample_interior(rng);
    const EjiriData ej = theta_max(entry.f, p, 16, rng());
    const double brute = theta_bruteforce(entry.f, p, resolution);
    worst = std::max(worst, std::abs(ej.theta - brute));
  }
  return bounded(7, key, worst, 1e-4);
}

// ---- criterion 8: frame flow ODE --------------------------------------------

CheckResult check_ode_tanh(const std::string& key) {
  const EtaTrajectory traj = integrate_eta(0.0, 1.0, 1e-3);
  const double err = std::abs(traj.samples.back().eta - std::tanh(1.0));
  return bounded(8, key, err, 1e-8);
}

CheckResult check_ode_cbar(const std::string& key, double eta0) {
  const EtaTrajectory traj = integrate_eta(eta0, 5.0, 1e-3);
  const double c0 = traj.samples.front().cbar;
  double drift = 0.0;
  for (const EtaSample& s : traj.samples) drift = std::max(drift, std::abs(s.cbar - c0));
  return bounded(8, key, drift, 1e-8);
}

CheckResult check_ode_order(const std::string& key) {
  const double exact = std::tanh(1.0);
  const double e1 = std::abs(integrate_eta(0.0, 1.0, 0.01).samples.back().eta - exact);
  const double e2 = std::abs(integrate_eta(0.0, 1.0, 0.005).samples.back().eta - exact);
  const double ratio = e1 / e2;
  CheckResult r{8, key, ratio >= 12.0 && ratio <= 20.0, ratio, 20.0, "step-halving ratio, expected in [12,20]"};
  return r;
}

// ---- criterion 9: classification parametrizations ---------------------------

CheckResult check_param_graph(std::mt19937_64& rng, const std::string& key, WarpedCase id, int n) {
  const ParamCase pc = param_case(id, n);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) worst = std::max(worst, graph_residual(pc, sample_params(pc, rng)));
  return bounded(9, key, worst, 1e-10);
}

CheckResult check_param_metric(std::mt19937_64& rng, const std::string& key, WarpedCase id, int n) {
  const ParamCase pc = param_case(id, n);
  double worst = 0.0, worst_offdiag = 0.0;
  for (int i = 0; i < 25; ++i) {
    const Vec p = sample_params(pc, rng);
    const Mat computed = pullback_metric(pc, p);
    const Mat closed = warped_metric(pc, p);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const double d = std::abs(computed(a, b) - closed(a, b));
        worst = std::max(worst, d);
        if (a != b) worst_offdiag = std::max(worst_offdiag, d);
      }
  }
  CheckResult r = bounded(9, key, worst, 1e-8, "off-diagonal " + fmt(worst_offdiag));
  r.pass = r.pass && worst_offdiag <= 1e-10;
  return r;
}

CheckResult check_param_christoffel(std::mt19937_64& rng, const std::string& key, WarpedCase id, int n) {
  const ParamCase pc = param_case(id, n);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const Vec p = sample_params(pc, rng);
    const std::vector<double> fd = warped_christoffels_fd(pc, p, 1e-5);
    const std::vector<double> closed = warped_christoffels_closed(pc, p);
    for (std::size_t k = 0; k < fd.size(); ++k) worst = std::max(worst, std::abs(fd[k] - closed[k]));
  }
  return bounded(9, key, worst, 1e-6);
}

CheckResult check_param_fubini_pick(std::mt19937_64& rng, const std::string& key, WarpedCase id, int n) {
  const ParamCase pc = param_case(id, n);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const Vec p = sample_params(pc, rng);
    const Sym3 a = fubini_pick_pullback(pc, p);
    const Mat g = warped_metric(pc, p);
    for (int x = 0; x < n; ++x)
      for (int y = x; y < n; ++y)
        for (int z = y; z < n; ++z) {
          double expected = 0.0;
          if (x == 0 && y == 0 && z == 0)
            expected = 2.0;  // A(t,t,t)
          else if (x == 0 && y > 0)
            expected = g(y, z);  // A(t, u_j, u_k) = fiber metric
          worst = std::max(worst, std::abs(a.at(x, y, z) - expected));
        }
  }
  return bounded(9, key, worst, 1e-6);
}

// ---- criterion 10: Legendre duality -----------------------------------------

CheckResult check_duality(std::mt19937_64& rng, const std::string& key, int n) {
  const CatalogEntry primal = get("thm13b", n);
  const CatalogEntry dual = get("dual59", n);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec y = primal.sample_interior(rng);
    worst = std::max(worst, duality_defect(primal.f, dual.f, y));
  }
  return bounded(10, key, worst, 1e-10);
}

CheckResult check_duality_roundtrip(std::mt19937_64& rng, const std::string& key, int n) {
  const CatalogEntry primal = get("thm13b", n);
  const CatalogEntry dual = get("dual59", n);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec y = primal.sample_interior(rng);
    const LegendrePair first = legendre_point(primal.f, y);
    const LegendrePair second = legendre_point(dual.f, first.x);
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(second.x[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(k)]));
  }
  return bounded(10, key, worst, 1e-9);
}

// ---- criterion 11: completeness probes --------------------------------------

CheckResult check_length_divergence(const std::string& key) {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec start{1.0, 0.0};
  const Vec dir{-1.0, 0.0};
  const double l1 = length_to_boundary(entry.f, start, dir, 1e-6).length;
  const double l2 = length_to_boundary(entry.f, start, dir, 1e-7).length;
  const double err = std::abs((l2 - l1) - 0.5 * std::log(10.0));
  return bounded(11, key, err, 1e-3, "length(eps/10)-length(eps) vs ln(10)/2");
}

CheckResult check_geodesic_closed_form(const std::string& key) {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec start{1.0, 0.0};
  const Vec vel{2.0, 0.0};
  const GeodesicPath path = geodesic(entry.f, start, vel, 1.0, 1e-3);
  const double err = std::abs(path.samples.back().position[0] - std::exp(2.0));
  return bounded(11, key, err, 1e-6, "x1(1) vs e^2");
}

CheckResult check_geodesic_speed(const std::string& key) {
  const CatalogEntry entry = get("thm13a", 2);
  const Vec start{1.0, 0.0};
  const Vec vel{2.0, 0.0};
  const GeodesicPath path = geodesic(entry.f, start, vel, 1.0, 1e-3);
  return bounded(11, key, path.speed_drift, 1e-8);
}

// ---- criterion 12: exponent window ------------------------------------------

CheckResult check_window(const std::string& key) {
  bool pass = true;
  for (int n = 2; n <= 50; ++n) {
    const double nn = n;
    if (!in_window(-nn / (nn + 1.0), n)) pass = false;
    if (!in_window(-1.0 / (nn + 1.0), n)) pass = false;
  }
  CheckResult r{12, key, pass, pass ? 0.0 : 1.0, 0.0, "both exponents inside for n=2..50"};
  return r;
}

// ---- criterion 13: the hyperbolic graph solves for no exponent ---------------

CheckResult check_no_exponent(const std::string& key) {
  const CatalogEntry entry = get("hyperbolic_case", 2);
  const Vec p1{2.0, 0.5};
  const Vec p2{3.0, -0.8};
  double best_joint = std::numeric_limits<double>::infinity();
  for (int i = -200; i <= 100; ++i) {
    if (i == 0) continue;
    const double a = i / 100.0;
    const double r1 = std::abs(pde_report(entry.f, p1, a).residual_12);
    const double r2 = std::abs(pde_report(entry.f, p2, a).residual_12);
    best_joint = std::min(best_joint, std::max(r1, r2));
  }
  CheckResult r{13, key, best_joint > 1e-6, best_joint, 1e-6, "min over grid of max residual at two points; must exceed bound"};
  return r;
}

std::string eq_metric(WarpedCase id) {
  switch (id) {
    case WarpedCase::Sphere: return "eq-4.5";
    case WarpedCase::FlatMinus:
    case WarpedCase::FlatPlus: return "eq-4.31";
    case WarpedCase::Hyperbolic: return "eq-4.46";
  }
  return {};
}

std::string eq_christoffel(WarpedCase id) {
  switch (id) {
    case WarpedCase::Sphere: return "eq-4.6";
    case WarpedCase::FlatMinus:
    case WarpedCase::FlatPlus: return "eq-4.32";
    case WarpedCase::Hyperbolic: return "eq-4.47";
  }
  return {};
}

std::string eq_fubini(WarpedCase id) {
  switch (id) {
    case WarpedCase::Sphere: return "eq-4.7";
    case WarpedCase::FlatMinus:
    case WarpedCase::FlatPlus: return "eq-4.33";
    case WarpedCase::Hyperbolic: return "eq-4.48";
  }
  return {};
}

std::string eq_graph(WarpedCase id) {
  switch (id) {
    case WarpedCase::Sphere: return "eq-4.30";
    case WarpedCase::FlatMinus: return "eq-4.39";
    case WarpedCase::FlatPlus: return "eq-4.45";
    case WarpedCase::Hyperbolic: return "eq-4.57";
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_paper_suite(std::uint64_t seed, int threads) {
  std::vector<Check> checks;
  auto add = [&checks](int criterion, std::string key, std::function<CheckResult(std::mt19937_64&)> body) {
    checks.push_back({criterion, std::move(key), std::move(body)});
  };

  // 1. solutions of the affine maximal type equation
  for (int n = 2; n <= 5; ++n) {
    const double nn = n;
    add(1, "eq-1.2 thm13a n=" + std::to_string(n), [n, nn](std::mt19937_64& rng) {
      return check_solution_residual(rng, 1, "eq-1.2 thm13a n=" + std::to_string(n), "thm13a", n,
                                     -nn / (nn + 1.0), 100, 1e-8);
    });
    add(1, "eq-1.2 thm13b n=" + std::to_string(n), [n, nn](std::mt19937_64& rng) {
      return check_solution_residual(rng, 1, "eq-1.2 thm13b n=" + std::to_string(n), "thm13b", n,
                                     -1.0 / (nn + 1.0), 100, 1e-8);
    });
  }

  // 2. L-sharp of the a = -1 equation
  for (int n = 2; n <= 4; ++n) {
    const double nn = n;
    add(2, "eq-1.1 thm13a n=" + std::to_string(n), [n, nn](std::mt19937_64& rng) {
      return check_abreu_value(rng, "eq-1.1 thm13a n=" + std::to_string(n), "thm13a", n, 4.0 * (nn + 1.0), 20);
    });
    add(2, "eq-1.1 thm13b n=" + std::to_string(n), [n, nn](std::mt19937_64& rng) {
      return check_abreu_value(rng, "eq-1.1 thm13b n=" + std::to_string(n), "thm13b", n,
                               4.0 * nn * (nn + 1.0), 20);
    });
  }

  // 3. closed-form identity and its exact roots
  for (int n = 2; n <= 4; ++n)
    add(3, "eq-5.4 identity n=" + std::to_string(n), [n](std::mt19937_64& rng) {
      return check_identity54(rng, "eq-5.4 identity n=" + std::to_string(n), n);
    });
  add(3, "eq-5.4 roots", [](std::mt19937_64&) { return check_identity54_roots("eq-5.4 roots"); });

  // 4. invariant constants of the four representatives
  for (const char* rep : kRepresentatives)
    for (int n = 2; n <= 3; ++n) {
      const std::string suffix = std::string(" ") + rep + " n=" + std::to_string(n);
      add(4, "eq-5.5 tnorm2" + suffix, [rep, n, suffix](std::mt19937_64& rng) {
        return check_rep_constant(rng, "eq-5.5 tnorm2" + suffix, rep, n, "tnorm2", 1e-9);
      });
      add(4, "eq-5.6 pick" + suffix, [rep, n, suffix](std::mt19937_64& rng) {
        return check_rep_constant(rng, "eq-5.6 pick" + suffix, rep, n, "pick", 1e-9);
      });
      add(4, "eq-3.2 theta" + suffix, [rep, n, suffix](std::mt19937_64& rng) {
        return check_rep_constant(rng, "eq-3.2 theta" + suffix, rep, n, "theta", 1e-6);
      });
      add(4, "thm-4.1 sectional" + suffix, [rep, n, suffix](std::mt19937_64& rng) {
        return check_rep_constant(rng, "thm-4.1 sectional" + suffix, rep, n, "sectional", 1e-6);
      });
      add(4, "eq-3.8 spectrum" + suffix, [rep, n, suffix](std::mt19937_64& rng) {
        return check_rep_constant(rng, "eq-3.8 spectrum" + suffix, rep, n, "spectrum", 1e-6);
      });
    }

  // 5. & 6. every catalog entry
  for (const std::string& name : catalog_names())
    for (int n = 2; n <= 3; ++n) {
      add(5, "eq-2.10 scalar " + name + " n=" + std::to_string(n), [name, n](std::mt19937_64& rng) {
        return check_scalar_two_way(rng, "eq-2.10 scalar " + name + " n=" + std::to_string(n), name, n);
      });
      add(6, "jets fd-oracle " + name + " n=" + std::to_string(n), [name, n](std::mt19937_64& rng) {
        return check_fd_oracle(rng, "jets fd-oracle " + name + " n=" + std::to_string(n), name, n);
      });
    }

  // 7. theta oracle agreement on non-quadratic entries
  for (const std::string& name : catalog_names()) {
    if (name == "quadratic") continue;
    for (int n = 2; n <= 3; ++n)
      add(7, "eq-3.2 oracle " + name + " n=" + std::to_string(n), [name, n](std::mt19937_64& rng) {
        return check_theta_oracle(rng, "eq-3.2 oracle " + name + " n=" + std::to_string(n), name, n);
      });
  }

  // 8. frame flow ODE
  add(8, "eq-3.13 tanh", [](std::mt19937_64&) { return check_ode_tanh("eq-3.13 tanh"); });
  for (double eta0 : {-0.5, 0.0, 0.5, 2.0}) {
    const std::string key = "lemma-3.4 cbar eta0=" + fmt(eta0);
    add(8, key, [key, eta0](std::mt19937_64&) { return check_ode_cbar(key, eta0); });
  }
  add(8, "eq-3.13 rk4-order", [](std::mt19937_64&) { return check_ode_order("eq-3.13 rk4-order"); });

  // 9. classification parametrizations
  for (WarpedCase id : {WarpedCase::Sphere, WarpedCase::FlatMinus, WarpedCase::FlatPlus, WarpedCase::Hyperbolic})
    for (int n = 2; n <= 3; ++n) {
      const std::string suffix = " " + warped_case_name(id) + " n=" + std::to_string(n);
      const std::string kg = eq_graph(id) + " graph" + suffix;
      add(9, kg, [kg, id, n](std::mt19937_64& rng) { return check_param_graph(rng, kg, id, n); });
      const std::string km = eq_metric(id) + " metric" + suffix;
      add(9, km, [km, id, n](std::mt19937_64& rng) { return check_param_metric(rng, km, id, n); });
      const std::string kc = eq_christoffel(id) + " christoffel" + suffix;
      add(9, kc, [kc, id, n](std::mt19937_64& rng) { return check_param_christoffel(rng, kc, id, n); });
      const std::string kf = eq_fubini(id) + " fubini-pick" + suffix;
      add(9, kf, [kf, id, n](std::mt19937_64& rng) { return check_param_fubini_pick(rng, kf, id, n); });
    }

  // 10. Legendre duality
  for (int n = 2; n <= 3; ++n) {
    add(10, "eq-5.8 duality n=" + std::to_string(n), [n](std::mt19937_64& rng) {
      return check_duality(rng, "eq-5.8 duality n=" + std::to_string(n), n);
    });
    add(10, "eq-5.8 roundtrip n=" + std::to_string(n), [n](std::mt19937_64& rng) {
      return check_duality_roundtrip(rng, "eq-5.8 roundtrip n=" + std::to_string(n), n);
    });
  }

  // 11. completeness probes
  add(11, "eq-5.1 completeness-probe", [](std::mt19937_64&) { return check_length_divergence("eq-5.1 completeness-probe"); });
  add(11, "geodesic closed-form", [](std::mt19937_64&) { return check_geodesic_closed_form("geodesic closed-form"); });
  add(11, "geodesic speed-drift", [](std::mt19937_64&) { return check_geodesic_speed("geodesic speed-drift"); });

  // 12. exponent window
  add(12, "eq-1.3 window", [](std::mt19937_64&) { return check_window("eq-1.3 window"); });

  // 13. no exponent fits the hyperbolic graph
  add(13, "rmk-5.1 no-exponent eq-4.4", [](std::mt19937_64&) { return check_no_exponent("rmk-5.1 no-exponent eq-4.4"); });

  std::vector<CheckResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= checks.size()) return;
      std::mt19937_64 rng = rng_for(seed, checks[i].key);
      try {
        results[i] = checks[i].body(rng);
      } catch (const std::exception& e) {
        results[i] = {checks[i].criterion, checks[i].key, false, std::nan(""), 0.0,
                      std::string("exception: ") + e.what()};
      }
    }
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return results;
}

}  // namespace calabi
