#ifndef MDRC_MATLIN_HPP_
#define MDRC_MATLIN_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "mdrc/errors.hpp"

namespace mdrc {

/**
 * @brief Dense real matrix with dimensions between 1x1 and 4x4.
 *
 * Entries are stored row-major. Construction rejects NaN/Inf entries;
 * all values are immutable in spirit (operations return new matrices),
 * though operator()(i, j) allows in-place assembly of small blocks.
 */
class Mat {
 public:
  static constexpr std::size_t kMaxDim = 4;

  Mat() : rows_(1), cols_(1) { a_.fill(0.0); }
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

  static Mat identity(std::size_t n);
  static Mat zeros(std::size_t rows, std::size_t cols);
  /// Column vector helpers.
  static Mat col2(double a, double b) { return Mat(2, 1, {a, b}); }
  static Mat col3(double a, double b, double c) { return Mat(3, 1, {a, b, c}); }
  static Mat row2(double a, double b) { return Mat(1, 2, {a, b}); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(double s) const;
  friend Mat operator*(double s, const Mat& m) { return m * s; }

  Mat transpose() const;

  /// Largest entry magnitude.
  double max_abs() const;
  /// Frobenius norm; upper bounds the induced 2-norm.
  double frobenius() const;
  /// Euclidean norm of a column/row vector.
  double vec_norm() const;

  bool all_finite() const;

 private:
  std::size_t rows_, cols_;
  std::array<double, kMaxDim * kMaxDim> a_;
};

/// Largest entrywise |a - b|; shapes must match.
double max_abs_diff(const Mat& a, const Mat& b);

/// Determinant, square matrices up to 3x3.
double det(const Mat& m);

/**
 * @brief Inverse of a 2x2 or 3x3 matrix.
 *
 * Throws SingularMatrix when |det| <= tol * max_abs^n, a relative test
 * that survives the unit spread of motor-scale models (entries from
 * 1e-4 to 1e2). Callers use the throw to detect lost controllability.
 */
Mat mat_inverse(const Mat& m, double tol = 1e-12);

/// All eigenvalues with multiplicity (2x2 quadratic, 3x3 closed-form cubic).
std::vector<std::complex<double>> eigenvalues(const Mat& m);

/// max |lambda_i| over eigenvalues(m).
double spectral_radius(const Mat& m);

/// true iff spectral_radius(m) < 1 - margin.
bool is_schur(const Mat& m, double margin = 1e-9);

/// Matrix exponential by scaling-and-squaring with a Taylor series run
/// to entrywise machine convergence.
Mat mat_exp(const Mat& m);

/**
 * @brief Zero-order-hold discretization of xdot = A_c x + B_c u.
 *
 * Returns (A_d, B_d) with A_d = exp(A_c T) and B_d the integral of
 * exp(A_c s) B_c over one period, both read off the exponential of the
 * augmented block matrix [[A_c, B_c], [0, 0]] * T.
 */
std::pair<Mat, Mat> zoh_discretize(const Mat& A_c, const Mat& B_c, double T);

}  // namespace mdrc

#endif  // MDRC_MATLIN_HPP_
