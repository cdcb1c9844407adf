#ifndef CALABI_LINALG_HPP
#define CALABI_LINALG_HPP

#include <cstdint>
#include <vector>

namespace calabi {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything in this project is small (n <= 12),
// so no effort is spent on blocking or expression templates.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }

  Mat transposed() const;
  Mat operator*(const Mat& rhs) const;
  Vec operator*(const Vec& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

double dot(const Vec& a, const Vec& b);
double max_abs(const Mat& m);
double max_abs_diff(const Mat& a, const Mat& b);

// Cholesky factorization of a symmetric positive definite matrix,
// G = L L^T with L lower triangular. Returns false on a non-positive pivot.
bool try_cholesky(const Mat& g, Mat& lower);

// Inverse and determinant from a Cholesky factor.
Mat spd_inverse_from_cholesky(const Mat& lower);
double det_from_cholesky(const Mat& lower);

// Solve L^T x = b for upper-triangular L^T (L lower). Used for the
// change of variables u = L^{-T} v onto the metric unit sphere.
Vec solve_lower(const Mat& lower, const Vec& b);
Vec solve_upper_transposed(const Mat& lower, const Vec& b);

// General LU with partial pivoting (affine-transform matrices are not
// symmetric). det() returns 0 for structurally singular input.
double lu_det(Mat m);
bool try_lu_inverse(const Mat& m, Mat& inv);

// Cyclic Jacobi eigenvalue iteration for symmetric matrices.
// Returns eigenvalues sorted descending; eigenvectors (columns) optional.
std::vector<double> sym_eigenvalues(Mat s, Mat* vectors = nullptr);

// Packed storage for fully symmetric rank-3 / rank-4 tensors.
// The accessor sorts its indices, so all permutations share one cell.
class Sym3 {
 public:
  Sym3() = default;
  explicit Sym3(int n);

  int dim() const { return n_; }
  double& at(int i, int j, int k) { return a_[index(i, j, k)]; }
  double at(int i, int j, int k) const { return a_[index(i, j, k)]; }

  double max_abs() const;
  // Frobenius-type norm: sqrt of the sum of squares over all n^3 index
  // triples (each packed cell counted with its multiplicity).
  double frobenius_norm() const;

 private:
  std::size_t index(int i, int j, int k) const;
  int n_ = 0;
  std::vector<double> a_;
};

class Sym4 {
 public:
  Sym4() = default;
  explicit Sym4(int n);

  int dim() const { return n_; }
  double& at(int i, int j, int k, int l) { return a_[index(i, j, k, l)]; }
  double at(int i, int j, int k, int l) const { return a_[index(i, j, k, l)]; }

 private:
  std::size_t index(int i, int j, int k, int l) const;
  int n_ = 0;
  std::vector<double> a_;
};

// Number of packed entries: C(n+2,3) and C(n+3,4).
std::size_t sym3_size(int n);
std::size_t sym4_size(int n);

}  // namespace calabi

#endif
