#include "calabi/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace calabi {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& rhs) const {
  Mat out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  return out;
}

Vec Mat::operator*(const Vec& v) const {
  Vec out(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Mat& m) {
  double v = 0.0;
  for (double x : m.data()) v = std::max(v, std::abs(x));
  return v;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  double v = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v = std::max(v, std::abs(a(i, j) - b(i, j)));
  return v;
}

bool try_cholesky(const Mat& g, Mat& lower) {
  const int n = g.rows();
  lower = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (!(d > 0.0)) return false;  // also rejects NaN
    lower(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / lower(j, j);
    }
  }
  return true;
}

Vec solve_lower(const Mat& lower, const Vec& b) {
  const int n = lower.rows();
  Vec x(b);
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= lower(i, k) * x[k];
    x[i] = s / lower(i, i);
  }
  return x;
}

Vec solve_upper_transposed(const Mat& lower, const Vec& b) {
  const int n = lower.rows();
  Vec x(b);
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= lower(k, i) * x[k];
    x[i] = s / lower(i, i);
  }
  return x;
}

Mat spd_inverse_from_cholesky(const Mat& lower) {
  const int n = lower.rows();
  Mat inv(n, n);
  Vec e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    Vec y = solve_lower(lower, e);
    Vec x = solve_upper_transposed(lower, y);
    for (int i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  // harden symmetry against factorization roundoff
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = v;
    }
  return inv;
}

double det_from_cholesky(const Mat& lower) {
  double d = 1.0;
  for (int i = 0; i < lower.rows(); ++i) d *= lower(i, i);
  return d * d;
}

namespace {

// LU with partial pivoting; returns false if singular. perm_sign gets +-1.
bool lu_factor(Mat& m, std::vector<int>& piv, int& perm_sign) {
  const int n = m.rows();
  piv.resize(n);
  perm_sign = 1;
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int col = 0; col < n; ++col) {
    int p = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(p, col))) p = r;
    if (m(p, col) == 0.0) return false;
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      std::swap(piv[p], piv[col]);
      perm_sign = -perm_sign;
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      m(r, col) = f;
      for (int j = col + 1; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return true;
}

}  // namespace

double lu_det(Mat m) {
  std::vector<int> piv;
  int sign = 0;
  if (!lu_factor(m, piv, sign)) return 0.0;
  double d = sign;
  for (int i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

bool try_lu_inverse(const Mat& m, Mat& inv) {
  const int n = m.rows();
  Mat lu = m;
  std::vector<int> piv;
  int sign = 0;
  if (!lu_factor(lu, piv, sign)) return false;
  inv = Mat(n, n);
  Vec x(n);
  for (int col = 0; col < n; ++col) {
    // forward/back substitution on the permuted unit vector
    for (int i = 0; i < n; ++i) x[i] = (piv[i] == col) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < i; ++k) x[i] -= lu(i, k) * x[k];
    for (int i = n - 1; i >= 0; --i) {
      for (int k = i + 1; k < n; ++k) x[i] -= lu(i, k) * x[k];
      x[i] /= lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return true;
}

std::vector<double> sym_eigenvalues(Mat s, Mat* vectors) {
  const int n = s.rows();
  Mat v = Mat::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(s(p, q)) < 1e-300) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return s(a, a) > s(b, b); });
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = s(order[i], order[i]);
  if (vectors != nullptr) {
    *vectors = Mat(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) (*vectors)(i, j) = v(i, order[j]);
  }
  return eig;
}

std::size_t sym3_size(int n) {
  return static_cast<std::size_t>(n) * (n + 1) * (n + 2) / 6;
}

std::size_t sym4_size(int n) {
  return static_cast<std::size_t>(n) * (n + 1) * (n + 2) * (n + 3) / 24;
}

Sym3::Sym3(int n) : n_(n), a_(sym3_size(n), 0.0) {}

std::size_t Sym3::index(int i, int j, int k) const {
  std::array<int, 3> s{i, j, k};
  std::sort(s.begin(), s.end());
  // rank of the non-decreasing triple (s0 <= s1 <= s2) in lexicographic order
  std::size_t off = 0;
  for (int a = 0; a < s[0]; ++a) off += static_cast<std::size_t>(n_ - a) * (n_ - a + 1) / 2;
  for (int b = s[0]; b < s[1]; ++b) off += static_cast<std::size_t>(n_ - b);
  return off + static_cast<std::size_t>(s[2] - s[1]);
}

double Sym3::max_abs() const {
  double v = 0.0;
  for (double x : a_) v = std::max(v, std::abs(x));
  return v;
}

double Sym3::frobenius_norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const double x = at(i, j, k);
        s += x * x;
      }
  return std::sqrt(s);
}

Sym4::Sym4(int n) : n_(n), a_(sym4_size(n), 0.0) {}

std::size_t Sym4::index(int i, int j, int k, int l) const {
  std::array<int, 4> s{i, j, k, l};
  std::sort(s.begin(), s.end());
  std::size_t off = 0;
  for (int a = 0; a < s[0]; ++a) off += sym3_size(n_ - a);
  // remaining triple lives in the sub-range [s0, n)
  const int m = n_ - s[0];
  const int j2 = s[1] - s[0], k2 = s[2] - s[0], l2 = s[3] - s[0];
  for (int b = 0; b < j2; ++b) off += static_cast<std::size_t>(m - b) * (m - b + 1) / 2;
  for (int c = j2; c < k2; ++c) off += static_cast<std::size_t>(m - c);
  return off + static_cast<std::size_t>(l2 - k2);
}

}  // namespace calabi
