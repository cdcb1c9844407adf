#include "calabi/pde.hpp"

#include <cmath>

#include "calabi/catalog.hpp"
#include "calabi/jets.hpp"

namespace calabi {

DetDerivatives det_derivatives(const Jet4& jet, const MetricData& m) {
  const int n = jet.n;
  DetDerivatives d;
  d.D = m.detD;
  d.gradD.assign(n, 0.0);
  d.hessD = Mat(n, n);

  // t_i = f^{kl} f_kli  (gradient of log D)
  Vec t(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) s += m.Ginv(k, l) * jet.d3.at(k, l, i);
    t[static_cast<std::size_t>(i)] = s;
    d.gradD[static_cast<std::size_t>(i)] = m.detD * s;
  }

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double cross = 0.0;  // f^{kp} f^{lq} f_pqj f_kli
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double inner = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) inner += m.Ginv(k, p) * m.Ginv(l, q) * jet.d3.at(p, q, j);
          cross += inner * jet.d3.at(k, l, i);
        }
      double tr4 = 0.0;  // f^{kl} f_klij
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) tr4 += m.Ginv(k, l) * jet.d4.at(k, l, i, j);
      const double v = m.detD * (t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(j)] - cross + tr4);
      d.hessD(i, j) = v;
      d.hessD(j, i) = v;
    }
  return d;
}

PdeReport pde_report(const ConvexFunction& f, std::span<const double> point, double a) {
  if (a == 0.0) throw ZeroExponent("exponent must be nonzero");
  const Jet4 jet = jet4(f, point);
  const MetricData m = metric_data(jet);
  const DetDerivatives dd = det_derivatives(jet, m);
  const int n = jet.n;

  PdeReport r;
  r.a = a;
  r.gradD = dd.gradD;
  r.w = std::pow(dd.D, a);

  // w_ij = a(a-1) D^{a-2} D_i D_j + a D^{a-1} D_ij
  const double da2 = a * (a - 1.0) * std::pow(dd.D, a - 2.0);
  const double da1 = a * std::pow(dd.D, a - 1.0);
  Mat wij(n, n);
  double max_wbar = 0.0;  // largest pre-cancellation term magnitude
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double t1 = da2 * dd.gradD[static_cast<std::size_t>(i)] * dd.gradD[static_cast<std::size_t>(j)];
      const double t2 = da1 * dd.hessD(i, j);
      wij(i, j) = t1 + t2;
      max_wbar = std::max(max_wbar, std::abs(t1) + std::abs(t2));
    }
  r.hessD = dd.hessD;

  double r12 = 0.0, r11 = 0.0, abs_ginv = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      r12 += m.Ginv(i, j) * wij(i, j);
      r11 += m.cofactor(i, j) * wij(i, j);
      abs_ginv += std::abs(m.Ginv(i, j));
    }
  r.residual_12 = r12;
  r.residual_11 = r11;
  r.implied_Lsharp = -r11;
  // Scale by the magnitudes entering the contraction before any
  // cancellation; max |w_ij| itself can be pure roundoff on exact
  // solutions whose w is affine in the coordinates.
  const double denom = abs_ginv * max_wbar;
  r.normalized_residual_12 = denom > 0.0 ? r12 / denom : 0.0;
  return r;
}

double identity54_coefficient(int n, double a) {
  return 4.0 * (n + 1.0) * ((n + 1.0) * a * a + n * a);
}

Identity54 verify_identity_54(int n, double a, std::span<const double> point) {
  const CatalogEntry entry = get("thm13a", n);
  Identity54 id;
  id.lhs = pde_report(entry.f, point, a).residual_12;

  double g = point[0];
  for (int k = 1; k < n; ++k) g -= 0.5 * point[static_cast<std::size_t>(k)] * point[static_cast<std::size_t>(k)];
  const double D = std::pow(4.0, -n) * std::pow(g, -(n + 1.0));
  id.rhs = identity54_coefficient(n, a) * std::pow(D, a);
  return id;
}

ExponentWindow exponent_window(int n) {
  if (n < 2) throw BadDimension("exponent window requires n >= 2");
  const double half_width = (n - 1.0) / (4.0 * std::sqrt(static_cast<double>(n)));
  return {-0.5 - half_width, -0.5 + half_width};
}

bool in_window(double a, int n) {
  const ExponentWindow w = exponent_window(n);
  return w.lo <= a && a <= w.hi;
}

}  // namespace calabi
