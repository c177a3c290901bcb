#include "mdrc/observer.hpp"

#include <cmath>
#include <string>

namespace mdrc {

double ErrorState::norm() const {
  return std::sqrt(e_x(0, 0) * e_x(0, 0) + e_x(1, 0) * e_x(1, 0) + e_d * e_d);
}

EsoState eso_step(const EsoState& s, double u, const Mat& y,
                  const ExtendedSystem& es, const Mat& L_bar) {
  if (y.rows() != es.r() || y.cols() != 1)
    throw ShapeMismatch("eso_step: y must be " + std::to_string(es.r()) + "x1");
  if (L_bar.rows() != 3 || L_bar.cols() != es.r())
    throw ShapeMismatch("eso_step: L_bar must be 3x" + std::to_string(es.r()));
  if (s.x_hat.rows() != 2 || s.x_hat.cols() != 1)
    throw ShapeMismatch("eso_step: x_hat must be 2x1");

  Mat xbar(3, 1);
  xbar(0, 0) = s.x_hat(0, 0);
  xbar(1, 0) = s.x_hat(1, 0);
  xbar(2, 0) = s.d_hat;

  const Mat innovation = y - es.C_bar * xbar;
  const Mat next = es.A_bar * xbar + es.b_u_bar * u + L_bar * innovation;

  EsoState out;
  out.x_hat = Mat::col2(next(0, 0), next(1, 0));
  out.d_hat = next(2, 0);
  return out;
}

Mat error_dynamics_matrix(const ExtendedSystem& es, const Mat& L_bar) {
  if (L_bar.rows() != 3 || L_bar.cols() != es.r())
    throw ShapeMismatch("error_dynamics_matrix: L_bar must be 3x" +
                        std::to_string(es.r()));
  return es.A_bar - L_bar * es.C_bar;
}

}  // namespace mdrc
