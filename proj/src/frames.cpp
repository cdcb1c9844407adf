#include "calabi/frames.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "calabi/jets.hpp"

namespace calabi {

namespace {

constexpr double kPickThreshold = 1e-12;
constexpr int kMaxIterations = 500;
constexpr double kIterTol = 1e-12;

struct CubicChart {
  int n = 0;
  Mat lower;     // G = L L^T
  Sym3 B;        // cubic form in the Euclidean chart v, u = L^{-T} v
  Sym3 A;        // original Fubini-Pick form
  Mat ginv;
  Vec tcheb;
  double tnorm = 0.0;
};

// B_abc = A_ijk M_ia M_jb M_kc with M = L^{-T}; then |v| = 1 corresponds
// to G(u,u) = 1.
CubicChart build_chart(const ConvexFunction& f, std::span<const double> point) {
  const Jet4 jet = jet4(f, point);
  const MetricData m = metric_data(jet);
  const ConnectionData c = connection_and_pick(jet, m);

  CubicChart chart;
  chart.n = jet.n;
  chart.A = c.A;
  chart.ginv = m.Ginv;
  chart.tcheb = c.Tcheb;
  chart.tnorm = std::sqrt(std::max(0.0, c.Tnorm2));
  if (c.A.frobenius_norm() <= kPickThreshold)
    throw VanishingPick("Fubini-Pick form vanishes at this point (quadratic graph, T = 0)");
  if (chart.tnorm <= kPickThreshold)
    throw VanishingPick("Tchebychev field vanishes at this point");

  if (!try_cholesky(m.G, chart.lower)) throw NotConvexAtPoint("metric not positive definite");

  const int n = chart.n;
  // columns of M = L^{-T}: M e_a solves L^T x = e_a
  Mat M(n, n);
  for (int a = 0; a < n; ++a) {
    Vec e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(a)] = 1.0;
    const Vec col = solve_upper_transposed(chart.lower, e);
    for (int i = 0; i < n; ++i) M(i, a) = col[static_cast<std::size_t>(i)];
  }
  chart.B = Sym3(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int cidx = b; cidx < n; ++cidx) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s += chart.A.at(i, j, k) * M(i, a) * M(j, b) * M(k, cidx);
        chart.B.at(a, b, cidx) = s;
      }
  return chart;
}

double cubic_value(const Sym3& B, const Vec& v) {
  const int n = B.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        s += B.at(i, j, k) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] *
             v[static_cast<std::size_t>(k)];
  return s;
}

Vec cubic_gradient_direction(const Sym3& B, const Vec& v) {
  const int n = B.dim();
  Vec w(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        s += B.at(a, b, c) * v[static_cast<std::size_t>(b)] * v[static_cast<std::size_t>(c)];
    w[static_cast<std::size_t>(a)] = s;
  }
  return w;
}

void normalize(Vec& v) {
  double norm = std::sqrt(dot(v, v));
  for (double& x : v) x /= norm;
}

// One restart of the fixed-point ascent; tracks the best iterate visited.
// The form is odd, so each iterate is folded onto its positive side
// (C(-v) = -C(v)); ties between +-v therefore resolve to C > 0.
void ascend(const Sym3& B, Vec v, double& best_value, Vec& best_v) {
  normalize(v);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double val = cubic_value(B, v);
    if (val < 0.0) {
      for (double& x : v) x = -x;
      val = -val;
    }
    if (val > best_value) {
      best_value = val;
      best_v = v;
    }
    Vec w = cubic_gradient_direction(B, v);  // invariant under v -> -v
    const double wnorm = std::sqrt(dot(w, w));
    if (wnorm < 1e-300) break;
    double delta = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double next = w[i] / wnorm;
      delta = std::max(delta, std::abs(next - v[i]));
      v[i] = next;
    }
    if (delta <= kIterTol) {
      const double final_val = cubic_value(B, v);
      if (final_val > best_value) {
        best_value = final_val;
        best_v = v;
      }
      break;
    }
  }
}

}  // namespace

EjiriData theta_max(const ConvexFunction& f, std::span<const double> point, int restarts,
                    std::uint64_t seed) {
  if (restarts < 1) throw InvalidArgument("restarts must be positive");
  const CubicChart chart = build_chart(f, point);
  const int n = chart.n;

  double best_value = -std::numeric_limits<double>::infinity();
  Vec best_v;

  // deterministic warm start: the Tchebychev direction in the chart,
  // v = L^T T / |L^T T|
  {
    Vec v(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int i = a; i < n; ++i) s += chart.lower(i, a) * chart.tcheb[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(a)] = s;
    }
    ascend(chart.B, std::move(v), best_value, best_v);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < restarts; ++r) {
    Vec v(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& x : v) {
        x = gauss(rng);
        norm2 += x * x;
      }
    } while (norm2 < 1e-12);
    ascend(chart.B, std::move(v), best_value, best_v);
  }

  EjiriData out;
  out.theta = best_value;
  out.maximizer = solve_upper_transposed(chart.lower, best_v);

  // spectrum of u -> Ginv A(E1, u, .) at E1 = T/|T|; conjugating by L gives
  // the symmetric matrix W = L^{-1} S L^{-T}, S_kj = A_kjl E1^l
  Vec e1 = chart.tcheb;
  for (double& x : e1) x /= chart.tnorm;
  Mat S(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += chart.A.at(k, j, l) * e1[static_cast<std::size_t>(l)];
      S(k, j) = s;
    }
  Mat W(n, n);
  for (int col = 0; col < n; ++col) {
    Vec e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(col)] = 1.0;
    const Vec minv_col = solve_upper_transposed(chart.lower, e);  // L^{-T} e_col
    const Vec s_col = S * minv_col;
    const Vec w_col = solve_lower(chart.lower, s_col);
    for (int i = 0; i < n; ++i) W(i, col) = w_col[static_cast<std::size_t>(i)];
  }
  // harden symmetry before the Jacobi sweep
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (W(i, j) + W(j, i));
      W(i, j) = W(j, i) = v;
    }
  out.spectrum = sym_eigenvalues(W);
  out.lambda1 = out.spectrum.empty() ? 0.0 : out.spectrum.front();
  return out;
}

double theta_bruteforce(const ConvexFunction& f, std::span<const double> point, long resolution) {
  if (resolution < 360) throw InvalidArgument("resolution must be at least 360");
  const CubicChart chart = build_chart(f, point);
  const int n = chart.n;
  if (n != 2 && n != 3)
    throw UnsupportedDimension("theta_bruteforce supports n in {2,3}");

  double best = -std::numeric_limits<double>::infinity();
  if (n == 2) {
    Vec v(2);
    for (long i = 0; i < resolution; ++i) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(resolution);
      v[0] = std::cos(phi);
      v[1] = std::sin(phi);
      best = std::max(best, cubic_value(chart.B, v));
    }
  } else {
    const long per_axis = static_cast<long>(std::floor(std::sqrt(static_cast<double>(resolution))));
    Vec v(3);
    for (long i = 0; i < per_axis; ++i) {
      // polar angle includes both poles
      const double th = std::numbers::pi * static_cast<double>(i) / static_cast<double>(per_axis - 1);
      const double ct = std::cos(th), st = std::sin(th);
      for (long j = 0; j < per_axis; ++j) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(per_axis);
        v[0] = ct;
        v[1] = st * std::cos(ph);
        v[2] = st * std::sin(ph);
        best = std::max(best, cubic_value(chart.B, v));
      }
    }
  }
  return best;
}

}  // namespace calabi
