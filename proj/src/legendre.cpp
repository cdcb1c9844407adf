#include "calabi/legendre.hpp"

#include <cmath>
#include <limits>

#include "calabi/calabi_core.hpp"
#include "calabi/jets.hpp"

namespace calabi {

AffineTransform identity_transform(int ambient_dim) {
  return {Mat::identity(ambient_dim), Vec(static_cast<std::size_t>(ambient_dim), 0.0)};
}

Vec apply_affine(const AffineTransform& tr, std::span<const double> p) {
  const int m = tr.ambient_dim();
  if (static_cast<int>(p.size()) != m)
    throw InvalidArgument("affine transform dimension mismatch");
  Vec out(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double s = tr.translation[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) s += tr.matrix(i, j) * p[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

bool is_calabi(const AffineTransform& tr) {
  const int m = tr.ambient_dim();
  if (std::abs(lu_det(tr.matrix)) <= 1e-12) return false;
  for (int i = 0; i + 1 < m; ++i)
    if (tr.matrix(i, m - 1) != 0.0) return false;
  return tr.matrix(m - 1, m - 1) == 1.0;
}

AffineTransform compose(const AffineTransform& outer, const AffineTransform& inner) {
  if (outer.ambient_dim() != inner.ambient_dim())
    throw InvalidArgument("affine transform dimension mismatch");
  AffineTransform out;
  out.matrix = outer.matrix * inner.matrix;
  out.translation = outer.matrix * inner.translation;
  for (int i = 0; i < outer.ambient_dim(); ++i)
    out.translation[static_cast<std::size_t>(i)] += outer.translation[static_cast<std::size_t>(i)];
  return out;
}

AffineTransform inverse(const AffineTransform& tr) {
  const int m = tr.ambient_dim();
  AffineTransform out;
  if (is_calabi(tr)) {
    // blockwise inverse keeps the last column exactly (0,...,0,1)^t
    const int n = m - 1;
    Mat block(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) block(i, j) = tr.matrix(i, j);
    Mat block_inv;
    if (!try_lu_inverse(block, block_inv)) throw InvalidArgument("affine transform is singular");
    out.matrix = Mat(m, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.matrix(i, j) = block_inv(i, j);
    out.matrix(n, n) = 1.0;
    // last row: r' = -r A^{-1}
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s -= tr.matrix(n, k) * block_inv(k, j);
      out.matrix(n, j) = s;
    }
  } else {
    if (!try_lu_inverse(tr.matrix, out.matrix)) throw InvalidArgument("affine transform is singular");
  }
  const Vec mb = out.matrix * tr.translation;
  out.translation.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) out.translation[static_cast<std::size_t>(i)] = -mb[static_cast<std::size_t>(i)];
  return out;
}

LegendrePair legendre_point(const ConvexFunction& f, std::span<const double> y) {
  const Jet4 jet = jet4(f, y);
  LegendrePair pair;
  pair.y.assign(y.begin(), y.end());
  pair.x = jet.d1;
  pair.u_value = dot(pair.y, pair.x) - jet.value;
  return pair;
}

double duality_defect(const ConvexFunction& f, const ConvexFunction& conjugate, std::span<const double> y) {
  const Jet4 jet_f = jet4(f, y);
  const LegendrePair pair = legendre_point(f, y);
  if (!conjugate.domain.contains(pair.x))
    return std::numeric_limits<double>::infinity();
  Jet4 jet_c;
  try {
    jet_c = jet4(conjugate, pair.x);
  } catch (const EvalError&) {
    return std::numeric_limits<double>::infinity();
  }
  const Mat prod = jet_f.d2 * jet_c.d2;
  const Mat id = Mat::identity(jet_f.n);
  return max_abs_diff(prod, id) + std::abs(pair.u_value - jet_c.value);
}

}  // namespace calabi
