#ifndef MDRC_SYNTHESIS_HPP_
#define MDRC_SYNTHESIS_HPP_

#include <array>
#include <complex>
#include <optional>

#include "mdrc/plant.hpp"

namespace mdrc {

/// Disturbance compensation coefficients. The preview law applies g0 to
/// d(k) and g1 to d(k+1); the causal variant collapses both onto d(k)
/// through K_d = g0 + g1.
struct FeedforwardGains {
  double g0 = 0.0;
  double g1 = 0.0;
  double K_d = 0.0;
};

/**
 * @brief Full gain set for one plant: state feedback K, the compensation
 * matrix K_p = [b_u, (A + b_u K) b_u]^-1, feedforward coefficients, and
 * (optionally) an observer gain.
 */
struct GainSet {
  Mat K;    // 1x2
  Mat K_p;  // 2x2
  double g0 = 0.0;
  double g1 = 0.0;
  double K_d = 0.0;
  std::optional<Mat> L_bar;  // 3xr, present once an observer is attached
};

/**
 * @brief Places the closed-loop poles of (A, b_u) by Ackermann's formula
 * for a second-order SISO pair.
 *
 * The pole set must be closed under conjugation and strictly inside the
 * unit circle. Throws Uncontrollable when [b_u, A b_u] is singular and
 * UnstableRequest for poles with modulus >= 1.
 */
Mat place_poles(const Mat& A, const Mat& b_u, std::complex<double> p1,
                std::complex<double> p2);

/// K_p = [b_u, (A + b_u K) b_u]^-1. Throws SingularMatrix when
/// controllability is numerically lost.
Mat compensation_matrix(const Mat& A, const Mat& b_u, const Mat& K);

/// g0 = -(row 1 of K_p) b_d, g1 = -(row 2 of K_p) b_d, K_d = g0 + g1.
FeedforwardGains feedforward_gains(const Mat& K_p, const Mat& b_d);

/**
 * @brief Static baseline gain that nulls only the steady-state (DC)
 * disturbance-to-output map:
 *
 *   K_d = -[c_o (I - A_K)^-1 b_u]^-1  c_o (I - A_K)^-1 b_d,  A_K = A + b_u K.
 */
double gesobc_gain(const Mat& A, const Mat& b_u, const Mat& b_d, const Mat& c_o,
                   const Mat& K);

/// Observer pole placement on a raw (A 3x3, C 1x3) pair via Ackermann on
/// the dual system. Returns L with eigenvalues(A - L C) at the requested
/// poles.
Mat place_observer_poles(const Mat& A, const Mat& C,
                         const std::array<std::complex<double>, 3>& poles);

/// Single-output observer design for an extended system (r must be 1).
/// Multi-output gains are user-supplied and validated instead.
Mat design_observer_gain(const ExtendedSystem& es,
                         const std::array<std::complex<double>, 3>& poles);

/// Default observer poles used when a design is requested without an
/// explicit set; markedly faster than typical closed-loop dynamics.
inline std::array<std::complex<double>, 3> default_observer_poles() {
  return {std::complex<double>(0.3, 0.0), std::complex<double>(0.4, 0.0),
          std::complex<double>(0.5, 0.0)};
}

/// Returns spectral_radius(A_bar - L_bar C_bar); values < 1 are valid.
double validate_observer_gain(const ExtendedSystem& es, const Mat& L_bar);

/// Assembles and checks a GainSet for the given plant and feedback gain:
/// A + b_u K must be Schur, K_p must invert [b_u, (A + b_u K) b_u].
GainSet make_gain_set(const PlantSpec& p, const Mat& K);

}  // namespace mdrc

#endif  // MDRC_SYNTHESIS_HPP_
