#ifndef MDRC_OBSERVER_HPP_
#define MDRC_OBSERVER_HPP_

#include "mdrc/plant.hpp"

namespace mdrc {

/// Generalized ESO state: plant-state estimate plus the disturbance
/// estimate carried as the extended coordinate.
struct EsoState {
  Mat x_hat = Mat::zeros(2, 1);
  double d_hat = 0.0;
};

/// Estimation error, e = [x_hat - x; d_hat - d].
struct ErrorState {
  Mat e_x = Mat::zeros(2, 1);
  double e_d = 0.0;

  double norm() const;
};

/**
 * @brief One predictor-form observer update:
 *
 *   xbar_hat(k+1) = A_bar xbar_hat(k) + b_u_bar u(k) + L_bar (y(k) - C_bar xbar_hat(k))
 *
 * The observer consumes y(k) and produces the estimate for k+1; no
 * current-estimator variant is offered.
 */
EsoState eso_step(const EsoState& s, double u, const Mat& y,
                  const ExtendedSystem& es, const Mat& L_bar);

/// A_bar - L_bar C_bar; the estimation error evolves as
/// e(k+1) = (A_bar - L_bar C_bar) e(k) - E h(k).
Mat error_dynamics_matrix(const ExtendedSystem& es, const Mat& L_bar);

}  // namespace mdrc

#endif  // MDRC_OBSERVER_HPP_
