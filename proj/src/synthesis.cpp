#include "mdrc/synthesis.hpp"

#include <cmath>
#include <string>

namespace mdrc {

namespace {

using Cplx = std::complex<double>;

// A pole set is usable only if it is closed under conjugation, so that
// the characteristic polynomial has real coefficients.
void check_conjugate_pair(Cplx p1, Cplx p2) {
  const double scale = 1.0 + std::max(std::abs(p1), std::abs(p2));
  const bool both_real = std::abs(p1.imag()) <= 1e-12 * scale &&
                         std::abs(p2.imag()) <= 1e-12 * scale;
  const bool conjugate = std::abs(p1 - std::conj(p2)) <= 1e-9 * scale;
  if (!both_real && !conjugate)
    throw InvalidArgument("pole set is not closed under conjugation");
}

void check_stable(Cplx p) {
  if (std::abs(p) >= 1.0)
    throw UnstableRequest("requested pole has modulus >= 1: |" +
                          std::to_string(p.real()) + " + " +
                          std::to_string(p.imag()) + "i| >= 1");
}

}  // namespace

Mat place_poles(const Mat& A, const Mat& b_u, Cplx p1, Cplx p2) {
  check_conjugate_pair(p1, p2);
  check_stable(p1);
  check_stable(p2);

  Mat ctrb(2, 2);
  const Mat ab = A * b_u;
  ctrb(0, 0) = b_u(0, 0);
  ctrb(1, 0) = b_u(1, 0);
  ctrb(0, 1) = ab(0, 0);
  ctrb(1, 1) = ab(1, 0);
  Mat ctrb_inv(2, 2);
  try {
    ctrb_inv = mat_inverse(ctrb);
  } catch (const SingularMatrix&) {
    throw Uncontrollable("place_poles: [b_u, A b_u] is singular");
  }

  const double s = (p1 + p2).real();
  const double q = (p1 * p2).real();
  // Ackermann: K = -[0 1] ctrb^-1 (A^2 - s A + q I).
  const Mat qA = A * A - A * s + Mat::identity(2) * q;
  const Mat last_row = Mat(1, 2, {ctrb_inv(1, 0), ctrb_inv(1, 1)});
  return (last_row * qA) * -1.0;
}

Mat compensation_matrix(const Mat& A, const Mat& b_u, const Mat& K) {
  const Mat a_k = A + b_u * K;
  const Mat akb = a_k * b_u;
  Mat p(2, 2);
  p(0, 0) = b_u(0, 0);
  p(1, 0) = b_u(1, 0);
  p(0, 1) = akb(0, 0);
  p(1, 1) = akb(1, 0);
  return mat_inverse(p);  // SingularMatrix here means controllability was lost
}

FeedforwardGains feedforward_gains(const Mat& K_p, const Mat& b_d) {
  FeedforwardGains g;
  g.g0 = -(K_p(0, 0) * b_d(0, 0) + K_p(0, 1) * b_d(1, 0));
  g.g1 = -(K_p(1, 0) * b_d(0, 0) + K_p(1, 1) * b_d(1, 0));
  g.K_d = g.g0 + g.g1;
  return g;
}

double gesobc_gain(const Mat& A, const Mat& b_u, const Mat& b_d, const Mat& c_o,
                   const Mat& K) {
  const Mat a_k = A + b_u * K;
  const Mat m = mat_inverse(Mat::identity(2) - a_k);
  const double dc_u = (c_o * m * b_u)(0, 0);
  const double dc_d = (c_o * m * b_d)(0, 0);
  if (std::abs(dc_u) <= 1e-12)
    throw ZeroDcGain("gesobc_gain: input DC gain to the regulated output is zero");
  return -dc_d / dc_u;
}

Mat place_observer_poles(const Mat& A, const Mat& C,
                         const std::array<Cplx, 3>& poles) {
  if (A.rows() != 3 || A.cols() != 3) throw ShapeMismatch("observer design: A must be 3x3");
  if (C.rows() != 1 || C.cols() != 3) throw ShapeMismatch("observer design: C must be 1x3");

  // Conjugation closure: the three poles must have pairwise-cancelling
  // imaginary parts (all real, or one real plus a conjugate pair).
  const Cplx sum1 = poles[0] + poles[1] + poles[2];
  const Cplx sum2 = poles[0] * poles[1] + poles[0] * poles[2] + poles[1] * poles[2];
  const Cplx prod = poles[0] * poles[1] * poles[2];
  double scale = 1.0;
  for (const auto& p : poles) scale = std::max(scale, std::abs(p));
  if (std::abs(sum1.imag()) > 1e-9 * scale || std::abs(sum2.imag()) > 1e-9 * scale ||
      std::abs(prod.imag()) > 1e-9 * scale)
    throw InvalidArgument("observer pole set is not closed under conjugation");
  for (const auto& p : poles) check_stable(p);

  // Dual Ackermann: place poles of A' + C' Kt, then L = -Kt'.
  const Mat At = A.transpose();
  const Mat bt = C.transpose();
  const Mat ab = At * bt;
  const Mat aab = At * ab;
  Mat ctrb(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    ctrb(i, 0) = bt(i, 0);
    ctrb(i, 1) = ab(i, 0);
    ctrb(i, 2) = aab(i, 0);
  }
  Mat ctrb_inv(3, 3);
  try {
    ctrb_inv = mat_inverse(ctrb);
  } catch (const SingularMatrix&) {
    throw Unobservable("observer design: (A, C) pair is not observable");
  }

  // q(At) = At^3 - sum1 At^2 + sum2 At - prod I, all coefficients real.
  const Mat at2 = At * At;
  const Mat qA = at2 * At - at2 * sum1.real() + At * sum2.real() -
                 Mat::identity(3) * prod.real();
  const Mat last_row = Mat(1, 3, {ctrb_inv(2, 0), ctrb_inv(2, 1), ctrb_inv(2, 2)});
  const Mat kt = (last_row * qA) * -1.0;  // 1x3
  return kt.transpose() * -1.0;           // L = -Kt'
}

Mat design_observer_gain(const ExtendedSystem& es,
                         const std::array<Cplx, 3>& poles) {
  if (es.r() != 1)
    throw UnsupportedShape(
        "design_observer_gain: automatic design covers single-output systems; "
        "supply the gain explicitly for r = 2");
  if (!is_observable(es))
    throw Unobservable("design_observer_gain: extended pair is not observable");
  return place_observer_poles(es.A_bar, es.C_bar, poles);
}

double validate_observer_gain(const ExtendedSystem& es, const Mat& L_bar) {
  if (L_bar.rows() != 3 || L_bar.cols() != es.r())
    throw ShapeMismatch("validate_observer_gain: L_bar must be 3x" +
                        std::to_string(es.r()));
  return spectral_radius(es.A_bar - L_bar * es.C_bar);
}

GainSet make_gain_set(const PlantSpec& p, const Mat& K) {
  if (K.rows() != 1 || K.cols() != 2) throw ShapeMismatch("make_gain_set: K must be 1x2");
  const Mat a_k = p.A + p.b_u * K;
  if (!is_schur(a_k))
    throw UnstableRequest("make_gain_set: A + b_u K is not Schur");

  GainSet gs;
  gs.K = K;
  gs.K_p = compensation_matrix(p.A, p.b_u, K);

  // Multiply-back check on the compensation matrix.
  const Mat akb = a_k * p.b_u;
  Mat pm(2, 2);
  pm(0, 0) = p.b_u(0, 0);
  pm(1, 0) = p.b_u(1, 0);
  pm(0, 1) = akb(0, 0);
  pm(1, 1) = akb(1, 0);
  if (max_abs_diff(gs.K_p * pm, Mat::identity(2)) > 1e-8)
    throw SingularMatrix("make_gain_set: K_p [b_u, (A+b_u K) b_u] deviates from I");

  const FeedforwardGains ff = feedforward_gains(gs.K_p, p.b_d);
  gs.g0 = ff.g0;
  gs.g1 = ff.g1;
  gs.K_d = ff.K_d;
  return gs;
}

}  // namespace mdrc
