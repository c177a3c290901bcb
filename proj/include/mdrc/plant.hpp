#ifndef MDRC_PLANT_HPP_
#define MDRC_PLANT_HPP_

#include "mdrc/matlin.hpp"

namespace mdrc {

/**
 * @brief Second-order discrete-time SISO plant with separate input and
 * disturbance channels.
 *
 *   x(k+1) = A x(k) + b_u u(k) + b_d d(k)
 *   y(k)   = C_m x(k)          (measured output, r in {1, 2})
 *   y_o(k) = c_o x(k)          (regulated output)
 */
struct PlantSpec {
  Mat A;    // 2x2 state transition
  Mat b_u;  // 2x1 input channel
  Mat b_d;  // 2x1 disturbance channel
  Mat C_m;  // rx2 measurement map
  Mat c_o;  // 1x2 regulated-output map

  std::size_t r() const { return C_m.rows(); }
};

/// Outcome of the structural checks on a PlantSpec.
struct ValidationReport {
  bool controllable = false;      // rank [b_u, A b_u] == 2
  bool output_decoupled = false;  // c_o . b_u == 0 (rejection prerequisite)
  bool mismatched = false;        // b_u' b_d == 0 (informational)
  bool b_u_nonzero = false;
  bool b_d_nonzero = false;

  double controllability_margin = 0.0;  // |det [b_u, A b_u]| / entry scale
  double decoupling_residual = 0.0;     // |c_o b_u| after normalization
  double mismatch_residual = 0.0;       // |b_u' b_d| after normalization

  /// Checks that gate gain synthesis and the extended-system build.
  /// The mismatch flag is informational only (matched plants are legal).
  bool required_pass() const {
    return controllable && output_decoupled && b_u_nonzero && b_d_nonzero;
  }
};

/**
 * @brief Plant augmented with the disturbance as a third state,
 * x3(k) = d(k), driven by the increment h(k) = d(k+1) - d(k).
 *
 *   A_bar = [[A, b_d], [0 0, 1]],  b_u_bar = [b_u; 0],
 *   E = [0; 0; 1],                 C_bar = [C_m, 0].
 */
struct ExtendedSystem {
  Mat A_bar;    // 3x3
  Mat b_u_bar;  // 3x1
  Mat E;        // 3x1
  Mat C_bar;    // rx3

  std::size_t r() const { return C_bar.rows(); }
};

/// Checks shapes and the structural conditions; never throws, the report
/// carries failures. Pure: identical inputs give identical reports.
ValidationReport validate_plant(const PlantSpec& p);

/// Builds the extended system by exact block placement.
/// Throws InvalidPlant when the required validation checks fail.
ExtendedSystem extend(const PlantSpec& p);

/// Rank test on the stacked observability matrix [C; CA; CA^2] via
/// partial-pivot elimination with relative pivot threshold 1e-10.
bool is_observable(const ExtendedSystem& es);

}  // namespace mdrc

#endif  // MDRC_PLANT_HPP_
