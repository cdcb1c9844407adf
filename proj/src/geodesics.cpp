#include "calabi/geodesics.hpp"

#include <cmath>
#include <functional>

#include "calabi/calabi_core.hpp"
#include "calabi/jets.hpp"

namespace calabi {

namespace {

struct PhaseState {
  Vec x;
  Vec v;
};

// acceleration a^k = -Gamma^k_ij v^i v^j
Vec acceleration(const ConvexFunction& f, const Vec& x, const Vec& v) {
  const Jet4 jet = jet4(f, x);
  const MetricData m = metric_data(jet);
  const int n = jet.n;
  Vec acc(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double gam = 0.0;
        for (int l = 0; l < n; ++l) gam += m.Ginv(k, l) * jet.d3.at(i, j, l);
        s += 0.5 * gam * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      }
    acc[static_cast<std::size_t>(k)] = -s;
  }
  return acc;
}

double g_speed(const ConvexFunction& f, const Vec& x, const Vec& v) {
  const Jet4 jet = jet4(f, x);
  double s = 0.0;
  for (int i = 0; i < jet.n; ++i)
    for (int j = 0; j < jet.n; ++j) s += jet.d2(i, j) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return std::sqrt(std::max(0.0, s));
}

}  // namespace

GeodesicPath geodesic(const ConvexFunction& f, std::span<const double> start,
                      std::span<const double> velocity, double s_end, double step) {
  const int n = f.dim;
  if (!(step > 0.0) || step > 0.01) throw InvalidArgument("step must lie in (0, 0.01]");
  if (!(s_end > 0.0)) throw InvalidArgument("s_end must be positive");
  if (static_cast<int>(start.size()) != n || static_cast<int>(velocity.size()) != n)
    throw InvalidArgument("start/velocity length must equal the dimension");
  double vnorm = 0.0;
  for (double c : velocity) vnorm += c * c;
  if (vnorm == 0.0) throw InvalidArgument("velocity must be nonzero");
  if (!f.domain.contains(start)) throw EvalError("start point outside the domain");

  GeodesicPath path;
  PhaseState st{Vec(start.begin(), start.end()), Vec(velocity.begin(), velocity.end())};
  double s = 0.0;
  path.samples.push_back({s, st.x, st.v, g_speed(f, st.x, st.v)});

  while (s < s_end - 1e-15) {
    const double h = std::min(step, s_end - s);
    PhaseState next = st;
    try {
      const Vec a1 = acceleration(f, st.x, st.v);
      Vec x2(st.x), v2(st.v);
      for (int i = 0; i < n; ++i) {
        x2[static_cast<std::size_t>(i)] += 0.5 * h * st.v[static_cast<std::size_t>(i)];
        v2[static_cast<std::size_t>(i)] += 0.5 * h * a1[static_cast<std::size_t>(i)];
      }
      const Vec a2 = acceleration(f, x2, v2);
      Vec x3(st.x), v3(st.v);
      for (int i = 0; i < n; ++i) {
        x3[static_cast<std::size_t>(i)] += 0.5 * h * v2[static_cast<std::size_t>(i)];
        v3[static_cast<std::size_t>(i)] += 0.5 * h * a2[static_cast<std::size_t>(i)];
      }
      const Vec a3 = acceleration(f, x3, v3);
      Vec x4(st.x), v4(st.v);
      for (int i = 0; i < n; ++i) {
        x4[static_cast<std::size_t>(i)] += h * v3[static_cast<std::size_t>(i)];
        v4[static_cast<std::size_t>(i)] += h * a3[static_cast<std::size_t>(i)];
      }
      const Vec a4 = acceleration(f, x4, v4);
      for (int i = 0; i < n; ++i) {
        next.x[static_cast<std::size_t>(i)] +=
            h / 6.0 * (st.v[static_cast<std::size_t>(i)] + 2.0 * (v2[static_cast<std::size_t>(i)] + v3[static_cast<std::size_t>(i)]) + v4[static_cast<std::size_t>(i)]);
        next.v[static_cast<std::size_t>(i)] +=
            h / 6.0 * (a1[static_cast<std::size_t>(i)] + 2.0 * (a2[static_cast<std::size_t>(i)] + a3[static_cast<std::size_t>(i)]) + a4[static_cast<std::size_t>(i)]);
      }
    } catch (const Error&) {
      path.left_domain = true;
      break;
    }
    if (!f.domain.contains(next.x)) {
      path.left_domain = true;
      break;
    }
    st = next;
    s += h;
    double speed;
    try {
      speed = g_speed(f, st.x, st.v);
    } catch (const Error&) {
      path.left_domain = true;
      break;
    }
    path.samples.push_back({s, st.x, st.v, speed});
  }

  const double speed0 = path.samples.front().speed;
  double drift = 0.0, length = 0.0;
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    drift = std::max(drift, std::abs(path.samples[i].speed - speed0));
    if (i > 0)
      length += 0.5 * (path.samples[i].speed + path.samples[i - 1].speed) *
                (path.samples[i].s - path.samples[i - 1].s);
  }
  path.speed_drift = drift;
  path.arc_length = length;
  return path;
}

namespace {

// doubling-refinement trapezoid with Richardson extrapolation (Romberg
// table) on one segment; stops when successive diagonal entries agree to
// rel_tol
double romberg_segment(const std::function<double(double)>& fn, double a, double b, double rel_tol) {
  constexpr int kMaxLevel = 20;
  double row[kMaxLevel + 1];
  double prev_row[kMaxLevel + 1];
  const double w = b - a;
  prev_row[0] = 0.5 * w * (fn(a) + fn(b));
  long intervals = 1;
  for (int k = 1; k <= kMaxLevel; ++k) {
    // trapezoid refinement: add the midpoints of the current intervals
    const double h = w / static_cast<double>(2 * intervals);
    double mids = 0.0;
    for (long i = 0; i < intervals; ++i)
      mids += fn(a + h * static_cast<double>(2 * i + 1));
    row[0] = 0.5 * prev_row[0] + h * mids;
    double factor = 4.0;
    for (int j = 1; j <= k; ++j) {
      row[j] = (factor * row[j - 1] - prev_row[j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    if (k >= 3 && std::abs(row[k] - prev_row[k - 1]) <= rel_tol * std::abs(row[k])) return row[k];
    for (int j = 0; j <= k; ++j) prev_row[j] = row[j];
    intervals *= 2;
  }
  return prev_row[kMaxLevel];
}

// The metric factor can steepen sharply toward the stopping point, so the
// segment grid is graded geometrically into both endpoints; each segment
// then sees a smooth integrand.
double adaptive_quadrature(const std::function<double(double)>& fn, double a, double b, double rel_tol) {
  const double w = b - a;
  if (w <= 0.0) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  constexpr int kGrading = 40;
  for (int j = kGrading; j >= 1; --j) cuts.push_back(a + w * std::ldexp(1.0, -j));
  for (int j = 2; j <= kGrading; ++j) cuts.push_back(b - w * std::ldexp(1.0, -j));
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += romberg_segment(fn, cuts[i], cuts[i + 1], rel_tol);
  return total;
}

}  // namespace

BoundaryLength length_to_boundary(const ConvexFunction& f, std::span<const double> start,
                                  std::span<const double> direction, double eps, double max_span) {
  const int n = f.dim;
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(max_span > 0.0)) throw InvalidArgument("max_span must be positive");
  if (static_cast<int>(start.size()) != n || static_cast<int>(direction.size()) != n)
    throw InvalidArgument("start/direction length must equal the dimension");
  double dir_norm = 0.0;
  for (double c : direction) dir_norm += c * c;
  dir_norm = std::sqrt(dir_norm);
  if (dir_norm == 0.0) throw InvalidArgument("direction must be nonzero");
  if (!f.domain.contains(start)) throw EvalError("start point outside the domain");

  auto at = [&](double tau) {
    Vec x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] = start[static_cast<std::size_t>(i)] + tau * direction[static_cast<std::size_t>(i)];
    return x;
  };
  auto margin_at = [&](double tau) { return f.domain.margin(at(tau)); };

  const double tau_cap = max_span / dir_norm;
  if (margin_at(0.0) <= eps) throw EvalError("start point is already within eps of the boundary");

  // locate the first grid point past the eps level, then bisect
  BoundaryLength out;
  double tau_stop = tau_cap;
  out.truncated = false;
  const int grid = 4096;
  double lo = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double tau = tau_cap * static_cast<double>(i) / grid;
    if (margin_at(tau) <= eps) {
      double hi = tau;
      for (int iter = 0; iter < 200 && (hi - lo) > 1e-18 * (1.0 + hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (margin_at(mid) <= eps)
          hi = mid;
        else
          lo = mid;
      }
      tau_stop = 0.5 * (lo + hi);
      out.truncated = true;
      break;
    }
    lo = tau;
  }
  out.stop_parameter = tau_stop;

  auto speed = [&](double tau) {
    const Jet4 jet = jet4(f.body, at(tau));
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += jet.d2(i, j) * direction[static_cast<std::size_t>(i)] * direction[static_cast<std::size_t>(j)];
    return std::sqrt(std::max(0.0, s));
  };
  out.length = adaptive_quadrature(speed, 0.0, tau_stop, 1e-8);
  return out;
}

}  // namespace calabi
