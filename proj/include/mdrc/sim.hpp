#ifndef MDRC_SIM_HPP_
#define MDRC_SIM_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mdrc/observer.hpp"
#include "mdrc/plant.hpp"
#include "mdrc/synthesis.hpp"

namespace mdrc {

/**
 * @brief Deterministic disturbance generator d(k).
 *
 * step/constant/ramp_to have a limit, so they satisfy the convergence
 * assumption the observer analysis relies on; sinusoid and explicit
 * sequences are available for exploration but carry no rejection claim.
 */
class DisturbanceSignal {
 public:
  enum class Kind { kZero, kStep, kConstant, kRampTo, kSinusoid, kExplicit };

  static DisturbanceSignal zero();
  static DisturbanceSignal step(double magnitude, std::size_t onset_index);
  static DisturbanceSignal constant(double value);
  /// Ramps from 0 by `slope` per step, saturating at `limit`.
  static DisturbanceSignal ramp_to(double limit, double slope);
  static DisturbanceSignal sinusoid(double amplitude, double period_steps);
  static DisturbanceSignal explicit_sequence(std::vector<double> values);

  double at(std::size_t k) const;
  Kind kind() const { return kind_; }
  /// True when at(k) would fall past the end of an explicit sequence.
  bool exhausted_at(std::size_t k) const;

 private:
  DisturbanceSignal() = default;
  Kind kind_ = Kind::kZero;
  double a_ = 0.0, b_ = 0.0;
  std::size_t onset_ = 0;
  std::vector<double> values_;
};

enum class ControlLaw {
  kKnownPreview,      // u = K x + g0 d(k) + g1 d(k+1)
  kKnownCausal,       // u = K x + K_d d(k)
  kEsoStateFeedback,  // u = K x + K_d d_hat(k)
  kEsoOutputFeedback, // u = K x_hat + K_d d_hat(k)
  kGesobcBaseline,    // u = K x + K_d_ges d(k)
  kFeedbackOnly,      // u = K x
};

const char* law_name(ControlLaw law);
bool law_uses_observer(ControlLaw law);

struct Scenario {
  ControlLaw law = ControlLaw::kFeedbackOnly;
  PlantSpec plant;
  GainSet gains;
  double gesobc_K_d = 0.0;  // used by the baseline law only
  DisturbanceSignal disturbance = DisturbanceSignal::zero();
  Mat x0 = Mat::zeros(2, 1);
  EsoState observer_init;  // ESO laws; defaults to zero
  std::size_t horizon = 0;
  double sample_period = 1.0;  // time-axis labeling only
};

/// One recorded simulation step.
struct SimStep {
  Mat x = Mat::zeros(2, 1);
  double u = 0.0;
  double d = 0.0;
  double y_o = 0.0;
  Mat y = Mat::zeros(1, 1);
  // Populated for ESO laws only.
  Mat x_hat = Mat::zeros(2, 1);
  double d_hat = 0.0;
  ErrorState e;
};

struct SimTrace {
  ControlLaw law = ControlLaw::kFeedbackOnly;
  double sample_period = 1.0;
  bool has_estimates = false;
  /// Set when a preview run had to repeat the final value of an explicit
  /// disturbance sequence to obtain d(horizon+1).
  bool preview_tail_repeated = false;
  std::vector<SimStep> steps;  // horizon + 1 entries

  std::vector<double> channel(const std::string& name) const;
};

/// Closed-loop simulation of the scenario; plant and (for ESO laws)
/// observer are stepped in lockstep. The compensation term uses the
/// observer state formed from past measurements, so every input is
/// causal.
SimTrace simulate(const Scenario& sc);

/**
 * @brief Regulated-output reference with the disturbance removed:
 * y_o(m) = c_o (A + b_u K)^m x_pre for m = 1..steps, where x_pre is the
 * state one step before disturbance onset. Under the preview law the
 * simulated regulated output must coincide with this sequence.
 */
std::vector<double> disturbance_free_reference(const PlantSpec& p, const Mat& K,
                                               const Mat& x_pre, std::size_t steps);

struct SteadyState {
  Mat x_inf = Mat::zeros(2, 1);
  double y_o_inf = 0.0;
};

/// Limit of the closed-loop state under u = K x + K_d d as d -> d_limit:
/// x_inf = (I - (A + b_u K))^-1 (b_d + b_u K_d) d_limit.
SteadyState steady_state_prediction(const PlantSpec& p, const Mat& K, double K_d,
                                    double d_limit);

struct Metrics {
  double peak_dev = 0.0;          // max |signal - pre-onset value| after onset
  std::size_t settling_steps = 0; // steps from onset until the signal stays
                                  // within `band` of its final value
  double steady_bias = 0.0;       // mean of last 5% minus pre-onset value
};

Metrics trace_metrics(std::span<const double> signal, std::size_t onset, double band);

}  // namespace mdrc

#endif  // MDRC_SIM_HPP_
