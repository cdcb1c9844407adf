#ifndef CALABI_CALABI_CORE_HPP
#define CALABI_CALABI_CORE_HPP

#include "calabi/jets.hpp"
#include "calabi/linalg.hpp"

namespace calabi {

// Hessian metric of the graph hypersurface: G_ij = f_ij, together with
// its inverse f^{ij}, determinant D and cofactor matrix F^{ij} = D f^{ij}.
struct MetricData {
  int n = 0;
  Mat G;
  Mat Ginv;
  Mat cofactor;
  double detD = 0.0;
};

// Connection and cubic-form quantities:
//   Gamma^k_ij = 1/2 f^{kl} f_ijl        (Levi-Civita of G)
//   A_ijk      = -1/2 f_ijk              (Fubini-Pick form, fully symmetric)
//   T^l        = -1/(2n) f^{kl} f^{ij} f_ijk   (Tchebychev field)
//   |A|^2      = G^{il} G^{jp} G^{kq} A_ijk A_lpq
//   J          = |A|^2 / (n(n-1))
// The Weingarten form and the induced affine connection of this relative
// normalization vanish identically; they are not stored.
struct ConnectionData {
  int n = 0;
  std::vector<double> Gamma;  // [k][i][j], symmetric in (i,j)
  Sym3 A;
  Vec Tcheb;
  double Tnorm2 = 0.0;
  double Anorm2 = 0.0;
  double pickJ = 0.0;  // Pick normalization needs n >= 2; 0 for curves

  double gamma(int k, int i, int j) const {
    return Gamma[(static_cast<std::size_t>(k) * n + i) * n + j];
  }
};

// Curvature from the integrability conditions:
//   R_ijkl = f^{mh} (A_jkm A_hil - A_ikm A_hjl)
//   R_ik   = f^{jl} R_ijkl
// scalar_contracted traces the Ricci tensor with f^{ik}; scalar_JT is the
// independent route n(n-1) J - n^2 |T|^2.
struct CurvatureData {
  int n = 0;
  std::vector<double> Riem;  // [i][j][k][l]
  Mat Ricci;
  double scalar_contracted = 0.0;
  double scalar_JT = 0.0;

  double riem(int i, int j, int k, int l) const {
    return Riem[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
};

MetricData metric_data(const Jet4& jet);
ConnectionData connection_and_pick(const Jet4& jet, const MetricData& m);
CurvatureData curvature(const Jet4& jet, const MetricData& m, const ConnectionData& c);

// Plane curvature R(u,v,u,v) / (G(u,u) G(v,v) - G(u,v)^2). With the
// R_ijkl convention above this is -1 on the constant-curvature examples.
double sectional_curvature(const CurvatureData& cd, const MetricData& m, const Vec& u, const Vec& v);

}  // namespace calabi

#endif
