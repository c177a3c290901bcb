#include "mdrc/sim.hpp"

#include <algorithm>
#include <cmath>

namespace mdrc {

DisturbanceSignal DisturbanceSignal::zero() { return DisturbanceSignal(); }

DisturbanceSignal DisturbanceSignal::step(double magnitude, std::size_t onset_index) {
  DisturbanceSignal s;
  s.kind_ = Kind::kStep;
  s.a_ = magnitude;
  s.onset_ = onset_index;
  return s;
}

DisturbanceSignal DisturbanceSignal::constant(double value) {
  DisturbanceSignal s;
  s.kind_ = Kind::kConstant;
  s.a_ = value;
  return s;
}

DisturbanceSignal DisturbanceSignal::ramp_to(double limit, double slope) {
  DisturbanceSignal s;
  s.kind_ = Kind::kRampTo;
  s.a_ = limit;
  s.b_ = slope;
  return s;
}

DisturbanceSignal DisturbanceSignal::sinusoid(double amplitude, double period_steps) {
  if (period_steps <= 0.0)
    throw InvalidArgument("sinusoid: period must be positive");
  DisturbanceSignal s;
  s.kind_ = Kind::kSinusoid;
  s.a_ = amplitude;
  s.b_ = period_steps;
  return s;
}

DisturbanceSignal DisturbanceSignal::explicit_sequence(std::vector<double> values) {
  if (values.empty())
    throw InvalidArgument("explicit disturbance sequence must not be empty");
  for (double v : values)
    if (!std::isfinite(v)) throw NonFinite("explicit disturbance sequence entry");
  DisturbanceSignal s;
  s.kind_ = Kind::kExplicit;
  s.values_ = std::move(values);
  return s;
}

double DisturbanceSignal::at(std::size_t k) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kStep:
      return k >= onset_ ? a_ : 0.0;
    case Kind::kConstant:
      return a_;
    case Kind::kRampTo: {
      const double v = b_ * static_cast<double>(k);
      return (b_ >= 0.0) ? std::min(v, a_) : std::max(v, a_);
    }
    case Kind::kSinusoid:
      return a_ * std::sin(2.0 * 3.141592653589793238462643383279502884 *
                           static_cast<double>(k) / b_);
    case Kind::kExplicit:
      return k < values_.size() ? values_[k] : values_.back();
  }
  return 0.0;
}

bool DisturbanceSignal::exhausted_at(std::size_t k) const {
  return kind_ == Kind::kExplicit && k >= values_.size();
}

const char* law_name(ControlLaw law) {
  switch (law) {
    case ControlLaw::kKnownPreview: return "known_preview";
    case ControlLaw::kKnownCausal: return "known_causal";
    case ControlLaw::kEsoStateFeedback: return "eso_state_feedback";
    case ControlLaw::kEsoOutputFeedback: return "eso_output_feedback";
    case ControlLaw::kGesobcBaseline: return "gesobc_baseline";
    case ControlLaw::kFeedbackOnly: return "feedback_only";
  }
  return "unknown";
}

bool law_uses_observer(ControlLaw law) {
  return law == ControlLaw::kEsoStateFeedback || law == ControlLaw::kEsoOutputFeedback;
}

std::vector<double> SimTrace::channel(const std::string& name) const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    if (name == "x1") out.push_back(s.x(0, 0));
    else if (name == "x2") out.push_back(s.x(1, 0));
    else if (name == "u") out.push_back(s.u);
    else if (name == "d") out.push_back(s.d);
    else if (name == "y_o") out.push_back(s.y_o);
    else if (name == "xhat1") out.push_back(s.x_hat(0, 0));
    else if (name == "xhat2") out.push_back(s.x_hat(1, 0));
    else if (name == "dhat") out.push_back(s.d_hat);
    else throw InvalidArgument("unknown trace channel: " + name);
  }
  return out;
}

SimTrace simulate(const Scenario& sc) {
  if (sc.horizon == 0) throw InvalidArgument("simulate: horizon must be positive");
  if (sc.x0.rows() != 2 || sc.x0.cols() != 1)
    throw ShapeMismatch("simulate: x0 must be 2x1");
  if (sc.gains.K.rows() != 1 || sc.gains.K.cols() != 2)
    throw MissingGain("simulate: state feedback gain K missing or misshapen");
  const bool uses_observer = law_uses_observer(sc.law);
  if (uses_observer && !sc.gains.L_bar.has_value())
    throw MissingGain("simulate: ESO law requires an observer gain L_bar");

  ExtendedSystem es;
  Mat l_bar(3, 1);
  if (uses_observer) {
    es = extend(sc.plant);
    l_bar = *sc.gains.L_bar;
    if (l_bar.rows() != 3 || l_bar.cols() != es.r())
      throw ShapeMismatch("simulate: L_bar must be 3xr");
  }

  SimTrace trace;
  trace.law = sc.law;
  trace.sample_period = sc.sample_period;
  trace.has_estimates = uses_observer;
  trace.steps.reserve(sc.horizon + 1);

  Mat x = sc.x0;
  EsoState eso = sc.observer_init;

  for (std::size_t k = 0; k <= sc.horizon; ++k) {
    const double d_k = sc.disturbance.at(k);

    SimStep step;
    step.x = x;
    step.d = d_k;
    step.y_o = (sc.plant.c_o * x)(0, 0);
    step.y = sc.plant.C_m * x;

    double u = (sc.gains.K * x)(0, 0);
    switch (sc.law) {
      case ControlLaw::kKnownPreview:
        if (sc.disturbance.exhausted_at(k + 1)) trace.preview_tail_repeated = true;
        u = (sc.gains.K * x)(0, 0) + sc.gains.g0 * d_k +
            sc.gains.g1 * sc.disturbance.at(k + 1);
        break;
      case ControlLaw::kKnownCausal:
        u = (sc.gains.K * x)(0, 0) + sc.gains.K_d * d_k;
        break;
      case ControlLaw::kEsoStateFeedback:
        u = (sc.gains.K * x)(0, 0) + sc.gains.K_d * eso.d_hat;
        break;
      case ControlLaw::kEsoOutputFeedback:
        u = (sc.gains.K * eso.x_hat)(0, 0) + sc.gains.K_d * eso.d_hat;
        break;
      case ControlLaw::kGesobcBaseline:
        u = (sc.gains.K * x)(0, 0) + sc.gesobc_K_d * d_k;
        break;
      case ControlLaw::kFeedbackOnly:
        break;
    }
    step.u = u;

    if (uses_observer) {
      step.x_hat = eso.x_hat;
      step.d_hat = eso.d_hat;
      step.e.e_x = eso.x_hat - x;
      step.e.e_d = eso.d_hat - d_k;
      eso = eso_step(eso, u, step.y, es, l_bar);
    }
    trace.steps.push_back(step);

    if (k < sc.horizon) {
      x = sc.plant.A * x + sc.plant.b_u * u + sc.plant.b_d * d_k;
    }
  }
  return trace;
}

std::vector<double> disturbance_free_reference(const PlantSpec& p, const Mat& K,
                                               const Mat& x_pre, std::size_t steps) {
  const Mat a_k = p.A + p.b_u * K;
  std::vector<double> out;
  out.reserve(steps);
  Mat z = x_pre;
  for (std::size_t m = 1; m <= steps; ++m) {
    z = a_k * z;
    out.push_back((p.c_o * z)(0, 0));
  }
  return out;
}

SteadyState steady_state_prediction(const PlantSpec& p, const Mat& K, double K_d,
                                    double d_limit) {
  const Mat a_k = p.A + p.b_u * K;
  const Mat m = mat_inverse(Mat::identity(2) - a_k);
  SteadyState ss;
  ss.x_inf = m * (p.b_d + p.b_u * K_d) * d_limit;
  ss.y_o_inf = (p.c_o * ss.x_inf)(0, 0);
  return ss;
}

Metrics trace_metrics(std::span<const double> signal, std::size_t onset, double band) {
  if (signal.empty()) throw EmptyTrace("trace_metrics: empty signal");
  if (onset >= signal.size())
    throw InvalidArgument("trace_metrics: onset past end of trace");

  const double baseline = signal[onset > 0 ? onset - 1 : 0];

  Metrics m;
  for (std::size_t k = onset; k < signal.size(); ++k)
    m.peak_dev = std::max(m.peak_dev, std::abs(signal[k] - baseline));

  // Final value: mean over the last 5% of the trace (at least one sample).
  const std::size_t tail = std::max<std::size_t>(1, signal.size() / 20);
  double final_value = 0.0;
  for (std::size_t k = signal.size() - tail; k < signal.size(); ++k)
    final_value += signal[k];
  final_value /= static_cast<double>(tail);
  m.steady_bias = final_value - baseline;

  // First index after which the signal stays inside the band around the
  // final value; reported relative to onset. A trace that never enters
  // the band reports the full post-onset length.
  std::size_t settled = signal.size();
  for (std::size_t k = signal.size(); k-- > onset;) {
    if (std::abs(signal[k] - final_value) > band) break;
    settled = k;
  }
  m.settling_steps = (settled == signal.size()) ? signal.size() - onset
                                                : settled - onset;
  return m;
}

}  // namespace mdrc
