#ifndef MDRC_TESTS_SUPPORT_ORACLES_HPP_
#define MDRC_TESTS_SUPPORT_ORACLES_HPP_

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "mdrc/matlin.hpp"
#include "mdrc/sim.hpp"
#include "support/test_rng.hpp"

namespace mdrc::testing {

// Independent reference computations. Everything here deliberately avoids
// the library code paths it is used to check.

/// Fine-step RK4 integration of xdot = A x + B u over one sample period
/// with the input held constant; returns the discrete (A_d, B_d) pair
/// column by column. The reference for the zero-order-hold map.
inline std::pair<Mat, Mat> zoh_fine_step_oracle(const Mat& A, const Mat& B,
                                                double T, double dt = 1e-7) {
  const std::size_t n = A.rows();
  const std::size_t m = B.cols();
  const auto nsteps = static_cast<std::size_t>(std::llround(T / dt));

  auto integrate = [&](Mat x, const Mat& bu) {
    for (std::size_t s = 0; s < nsteps; ++s) {
      const Mat k1 = A * x + bu;
      const Mat k2 = A * (x + k1 * (dt / 2.0)) + bu;
      const Mat k3 = A * (x + k2 * (dt / 2.0)) + bu;
      const Mat k4 = A * (x + k3 * dt) + bu;
      x = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    }
    return x;
  };

  Mat A_d(n, n), B_d(n, m);
  for (std::size_t j = 0; j < n; ++j) {
    Mat x0(n, 1);
    x0(j, 0) = 1.0;
    const Mat xf = integrate(x0, Mat::zeros(n, 1));
    for (std::size_t i = 0; i < n; ++i) A_d(i, j) = xf(i, 0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Mat bu(n, 1);
    for (std::size_t i = 0; i < n; ++i) bu(i, 0) = B(i, j);
    const Mat xf = integrate(Mat::zeros(n, 1), bu);
    for (std::size_t i = 0; i < n; ++i) B_d(i, j) = xf(i, 0);
  }
  return {A_d, B_d};
}

/// Row-echelon rank with partial pivoting on a copy of the data;
/// reference for the library's observability test.
inline std::size_t elimination_rank_oracle(std::vector<std::vector<double>> m,
                                           double rel_tol = 1e-10) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    for (std::size_t i = rank + 1; i < rows; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    if (std::abs(m[piv][col]) <= rel_tol * scale) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const double f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// k-th matrix power by repeated multiplication.
inline Mat matrix_power(const Mat& m, std::size_t k) {
  Mat acc = Mat::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

/// Geometric-series bound for the closed-loop state under the preview law:
/// sup_k ||x(k)|| <= C0 ||x0|| + C1 (||b_u|| (|g0| + |g1|) + ||b_d||) D,
/// with C0 = max_m ||A_K^m||_F and C1 the sum of those norms up to the
/// horizon. The Frobenius norm dominates the induced 2-norm, so the bound
/// is rigorous for the simulated trajectory.
struct BibsBound {
  double c0 = 0.0;
  double c1 = 0.0;

  double bound(double x0_norm, double input_scale, double dist_bound) const {
    return c0 * x0_norm + c1 * input_scale * dist_bound;
  }
};

inline BibsBound bibs_bound(const Mat& a_k, std::size_t horizon) {
  BibsBound b;
  Mat p = Mat::identity(2);
  for (std::size_t m = 0; m <= horizon; ++m) {
    const double nrm = p.frobenius();
    b.c0 = std::max(b.c0, nrm);
    b.c1 += nrm;
    p = p * a_k;
  }
  return b;
}

/// Bounded disturbance menu for the exactness sweeps: a step, a sinusoid,
/// or arbitrary bounded noise, in every case acting from the onset index
/// (zero before it, the setting the rejection guarantee addresses). The
/// tails need not converge.
inline DisturbanceSignal sample_bounded_disturbance(TestRng& rng, double bound,
                                                    std::size_t horizon,
                                                    std::size_t onset) {
  switch (rng.below(3)) {
    case 0:
      return DisturbanceSignal::step(rng.uniform(-bound, bound), onset);
    case 1: {
      std::vector<double> v(horizon + 2, 0.0);
      const double amp = rng.uniform(0.1, bound);
      const double period = rng.uniform(5.0, 80.0);
      for (std::size_t k = onset; k < v.size(); ++k)
        v[k] = amp * std::sin(2.0 * 3.141592653589793 *
                              static_cast<double>(k - onset) / period);
      return DisturbanceSignal::explicit_sequence(std::move(v));
    }
    default: {
      std::vector<double> v(horizon + 2, 0.0);
      for (std::size_t k = onset; k < v.size(); ++k)
        v[k] = rng.uniform(-bound, bound);
      return DisturbanceSignal::explicit_sequence(std::move(v));
    }
  }
}

/// First k at which the decay envelope ||M^k||_F e0 falls under `target`;
/// the convergence horizon the error contraction itself predicts. Using
/// the actual power norms covers non-normal transients that a bare
/// spectral-radius power would miss.
inline std::size_t predicted_decay_steps(const Mat& m, double e0_norm,
                                         double target,
                                         std::size_t cap = 50000) {
  Mat p = Mat::identity(m.rows());
  for (std::size_t k = 0; k <= cap; ++k) {
    if (p.frobenius() * e0_norm <= target) return k;
    p = p * m;
  }
  return cap;
}

}  // namespace mdrc::testing

#endif  // MDRC_TESTS_SUPPORT_ORACLES_HPP_
