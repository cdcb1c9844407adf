#include "calabi/calabi_core.hpp"

#include <cmath>

namespace calabi {

MetricData metric_data(const Jet4& jet) {
  MetricData m;
  m.n = jet.n;
  m.G = jet.d2;
  Mat lower;
  if (!try_cholesky(m.G, lower))
    throw NotConvexAtPoint("Hessian is not positive definite at this point");
  m.Ginv = spd_inverse_from_cholesky(lower);
  m.detD = det_from_cholesky(lower);
  m.cofactor = Mat(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m.cofactor(i, j) = m.detD * m.Ginv(i, j);
  return m;
}

ConnectionData connection_and_pick(const Jet4& jet, const MetricData& m) {
  const int n = jet.n;
  ConnectionData c;
  c.n = n;
  c.A = Sym3(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) c.A.at(i, j, k) = -0.5 * jet.d3.at(i, j, k);

  c.Gamma.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += m.Ginv(k, l) * jet.d3.at(i, j, l);
        s *= 0.5;
        c.Gamma[(static_cast<std::size_t>(k) * n + i) * n + j] = s;
        c.Gamma[(static_cast<std::size_t>(k) * n + j) * n + i] = s;
      }

  // trace(f^{ij} f_ijk) first, then raise the free index
  Vec trace(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += m.Ginv(i, j) * jet.d3.at(i, j, k);
    trace[static_cast<std::size_t>(k)] = s;
  }
  c.Tcheb.assign(n, 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += m.Ginv(k, l) * trace[static_cast<std::size_t>(k)];
    c.Tcheb[static_cast<std::size_t>(l)] = -s / (2.0 * n);
  }
  double tn = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tn += m.G(i, j) * c.Tcheb[static_cast<std::size_t>(i)] * c.Tcheb[static_cast<std::size_t>(j)];
  c.Tnorm2 = tn;

  // J = 1/(4n(n-1)) f^{il} f^{jp} f^{kq} f_ijk f_lpq, computed by first
  // raising all three indices of f_ijk once.
  std::vector<double> raised(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int l = 0; l < n; ++l)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              s += m.Ginv(i, l) * m.Ginv(j, p) * m.Ginv(k, q) * jet.d3.at(i, j, k);
        raised[(static_cast<std::size_t>(l) * n + p) * n + q] = s;
      }
  double sum = 0.0;
  for (int l = 0; l < n; ++l)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        sum += raised[(static_cast<std::size_t>(l) * n + p) * n + q] * jet.d3.at(l, p, q);
  c.Anorm2 = 0.25 * sum;  // A = -1/2 f''' lowers the factor 4
  c.pickJ = (n >= 2) ? c.Anorm2 / (n * (n - 1.0)) : 0.0;
  return c;
}

CurvatureData curvature(const Jet4& jet, const MetricData& m, const ConnectionData& c) {
  const int n = jet.n;
  CurvatureData cd;
  cd.n = n;
  cd.Riem.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);

  // B^h_{jk} = f^{mh} A_jkm, so that R_ijkl = B^h_{jk} A_hil - B^h_{ik} A_hjl
  std::vector<double> raisedA(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int h = 0; h < n; ++h)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int mi = 0; mi < n; ++mi) s += m.Ginv(mi, h) * c.A.at(j, k, mi);
        raisedA[(static_cast<std::size_t>(h) * n + j) * n + k] = s;
      }

  auto ra = [&](int h, int j, int k) { return raisedA[(static_cast<std::size_t>(h) * n + j) * n + k]; };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int h = 0; h < n; ++h) s += ra(h, j, k) * c.A.at(h, i, l) - ra(h, i, k) * c.A.at(h, j, l);
          cd.Riem[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = s;
        }

  cd.Ricci = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) s += m.Ginv(j, l) * cd.riem(i, j, k, l);
      cd.Ricci(i, k) = s;
    }

  double scal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) scal += m.Ginv(i, k) * cd.Ricci(i, k);
  cd.scalar_contracted = scal;
  // n(n-1) J = |A|^2, which also keeps the identity valid at n = 1
  cd.scalar_JT = c.Anorm2 - static_cast<double>(n) * n * c.Tnorm2;
  return cd;
}

double sectional_curvature(const CurvatureData& cd, const MetricData& m, const Vec& u, const Vec& v) {
  const int n = cd.n;
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    throw InvalidArgument("sectional curvature vectors must match the dimension");
  double guu = 0.0, gvv = 0.0, guv = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      guu += m.G(i, j) * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
      gvv += m.G(i, j) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      guv += m.G(i, j) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    }
  const double gram = guu * gvv - guv * guv;
  if (gram <= 1e-14) throw DegeneratePlane("plane spanned by u, v is metrically degenerate");
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r += cd.riem(i, j, k, l) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] *
               u[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(l)];
  return r / gram;
}

}  // namespace calabi
