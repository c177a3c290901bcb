#include "mdrc/matlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdrc {

namespace {

void check_dim(std::size_t rows, std::size_t cols) {
  if (rows < 1 || rows > Mat::kMaxDim || cols < 1 || cols > Mat::kMaxDim) {
    throw ShapeMismatch("matrix dimensions must be between 1x1 and 4x4");
  }
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dim(rows, cols);
  a_.fill(0.0);
}

Mat::Mat(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols) {
  check_dim(rows, cols);
  if (entries.size() != rows * cols) {
    throw ShapeMismatch("entry count does not match rows*cols");
  }
  a_.fill(0.0);
  std::size_t i = 0;
  for (double v : entries) a_[i++] = v;
  if (!all_finite()) throw NonFinite("matrix entries must be finite");
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("add: shape mismatch");
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("sub: shape mismatch");
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("mul: inner dimensions differ");
  Mat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  }
  return r;
}

Mat Mat::operator*(double s) const {
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] * s;
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_ * cols_; ++i) m = std::max(m, std::abs(a_[i]));
  return m;
}

double Mat::frobenius() const {
  double s = 0.0;
  for (std::size_t i = 0; i < rows_ * cols_; ++i) s += a_[i] * a_[i];
  return std::sqrt(s);
}

double Mat::vec_norm() const {
  if (rows_ != 1 && cols_ != 1) throw ShapeMismatch("vec_norm: not a vector");
  return frobenius();
}

bool Mat::all_finite() const {
  for (std::size_t i = 0; i < rows_ * cols_; ++i)
    if (!std::isfinite(a_[i])) return false;
  return true;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("max_abs_diff: shape mismatch");
  return (a - b).max_abs();
}

double det(const Mat& m) {
  if (!m.is_square()) throw ShapeMismatch("det: matrix not square");
  switch (m.rows()) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      throw ShapeMismatch("det: only 1x1..3x3 supported");
  }
}

Mat mat_inverse(const Mat& m, double tol) {
  if (!m.is_square() || m.rows() < 2 || m.rows() > 3)
    throw ShapeMismatch("mat_inverse: matrix must be 2x2 or 3x3");
  const double d = det(m);
  const double scale = std::pow(m.max_abs(), static_cast<double>(m.rows()));
  if (std::abs(d) <= tol * scale) {
    throw SingularMatrix("mat_inverse: |det| = " + std::to_string(std::abs(d)) +
                         " below relative tolerance");
  }
  Mat inv(m.rows(), m.cols());
  if (m.rows() == 2) {
    inv(0, 0) = m(1, 1) / d;
    inv(0, 1) = -m(0, 1) / d;
    inv(1, 0) = -m(1, 0) / d;
    inv(1, 1) = m(0, 0) / d;
  } else {
    // adjugate / det
    inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
    inv(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
    inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
    inv(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
    inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
    inv(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
    inv(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
    inv(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
    inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
  }
  return inv;
}

namespace {

using Cplx = std::complex<double>;

// One or two Newton steps on the characteristic polynomial tighten the
// closed-form roots to near machine precision.
Cplx polish_root(Cplx x, const std::vector<double>& coeff) {
  for (int it = 0; it < 2; ++it) {
    Cplx p(0.0, 0.0), dp(0.0, 0.0);
    for (double c : coeff) {
      dp = dp * x + p;
      p = p * x + c;
    }
    if (std::abs(dp) == 0.0) break;
    x -= p / dp;
  }
  return x;
}

std::vector<Cplx> eig2(const Mat& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double dt = det(m);
  const double disc = tr * tr - 4.0 * dt;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Avoid cancellation: compute the larger-magnitude root first.
    double r1 = (tr >= 0.0) ? (tr + s) / 2.0 : (tr - s) / 2.0;
    double r2 = (std::abs(r1) > 0.0) ? dt / r1 : (tr - s) / 2.0;
    if (s == 0.0) r2 = r1;
    return {Cplx(r1, 0.0), Cplx(r2, 0.0)};
  }
  const double im = std::sqrt(-disc) / 2.0;
  return {Cplx(tr / 2.0, im), Cplx(tr / 2.0, -im)};
}

std::vector<Cplx> eig3(const Mat& m) {
  // Characteristic polynomial x^3 + b x^2 + c x + d.
  const double tr = m(0, 0) + m(1, 1) + m(2, 2);
  const double minors = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) +
                        (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                        (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const double b = -tr;
  const double c = minors;
  const double d = -det(m);

  // Depressed cubic t^3 + p t + q with x = t - b/3.
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double half_q = q / 2.0;
  const double disc = half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0);

  std::vector<Cplx> roots;
  const double scale = std::max({std::abs(p), std::abs(q), 1e-300});
  if (std::abs(p) < 1e-14 * scale && std::abs(q) < 1e-14 * scale) {
    roots = {Cplx(0, 0), Cplx(0, 0), Cplx(0, 0)};
  } else if (disc > 0.0) {
    // One real root, one conjugate pair.
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-half_q + s);
    const double v = std::cbrt(-half_q - s);
    const double t1 = u + v;
    const double re = -t1 / 2.0;
    const double im = std::sqrt(3.0) * (u - v) / 2.0;
    roots = {Cplx(t1, 0.0), Cplx(re, im), Cplx(re, -im)};
  } else {
    // Three real roots via the trigonometric form.
    const double r = std::sqrt(-p / 3.0);
    double arg = -half_q / (r * r * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double kTwoPiThird = 2.0943951023931953;
    roots = {Cplx(2.0 * r * std::cos(theta), 0.0),
             Cplx(2.0 * r * std::cos(theta - kTwoPiThird), 0.0),
             Cplx(2.0 * r * std::cos(theta + kTwoPiThird), 0.0)};
  }
  const std::vector<double> coeff = {1.0, b, c, d};
  for (auto& root : roots) {
    root += shift;
    root = polish_root(root, coeff);
  }
  // Re-symmetrize a conjugate pair so it is exact.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (roots[i].imag() != 0.0 && roots[j].imag() != 0.0 &&
          std::abs(roots[i] - std::conj(roots[j])) <
              1e-8 * (1.0 + std::abs(roots[i]))) {
        const Cplx avg = (roots[i] + std::conj(roots[j])) / 2.0;
        roots[i] = avg;
        roots[j] = std::conj(avg);
      }
    }
  }
  return roots;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Mat& m) {
  if (!m.is_square()) throw ShapeMismatch("eigenvalues: matrix not square");
  switch (m.rows()) {
    case 1:
      return {Cplx(m(0, 0), 0.0)};
    case 2:
      return eig2(m);
    case 3:
      return eig3(m);
    default:
      throw ShapeMismatch("eigenvalues: only 1x1..3x3 supported");
  }
}

double spectral_radius(const Mat& m) {
  double r = 0.0;
  for (const auto& ev : eigenvalues(m)) r = std::max(r, std::abs(ev));
  return r;
}

bool is_schur(const Mat& m, double margin) {
  return spectral_radius(m) < 1.0 - margin;
}

Mat mat_exp(const Mat& m) {
  if (!m.is_square()) throw ShapeMismatch("mat_exp: matrix not square");
  if (!m.all_finite()) throw NonFinite("mat_exp: entries must be finite");
  const std::size_t n = m.rows();

  // Scale so the series argument has max-norm <= 0.25, sum to machine
  // convergence, then square back.
  int s = 0;
  double norm = m.max_abs();
  while (norm > 0.25 && s < 64) {
    norm /= 2.0;
    ++s;
  }
  Mat b = m * std::pow(0.5, s);

  Mat acc = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = (term * b) * (1.0 / k);
    acc = acc + term;
    if (term.max_abs() <= 1e-18 * std::max(acc.max_abs(), 1.0)) break;
  }
  for (int i = 0; i < s; ++i) acc = acc * acc;
  return acc;
}

std::pair<Mat, Mat> zoh_discretize(const Mat& A_c, const Mat& B_c, double T) {
  if (!A_c.is_square()) throw ShapeMismatch("zoh: A_c must be square");
  if (B_c.rows() != A_c.rows()) throw ShapeMismatch("zoh: B_c row count");
  if (!std::isfinite(T)) throw NonFinite("zoh: non-finite sample period");
  if (T <= 0.0) throw InvalidArgument("zoh: sample period must be positive");
  const std::size_t n = A_c.rows();
  const std::size_t mcols = B_c.cols();
  if (n + mcols > Mat::kMaxDim)
    throw ShapeMismatch("zoh: augmented matrix exceeds 4x4");

  Mat aug(n + mcols, n + mcols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A_c(i, j) * T;
    for (std::size_t j = 0; j < mcols; ++j) aug(i, n + j) = B_c(i, j) * T;
  }
  const Mat e = mat_exp(aug);

  Mat A_d(n, n), B_d(n, mcols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A_d(i, j) = e(i, j);
    for (std::size_t j = 0; j < mcols; ++j) B_d(i, j) = e(i, n + j);
  }
  return {A_d, B_d};
}

}  // namespace mdrc
