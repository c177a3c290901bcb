#include "mdrc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace mdrc {

bool RunOutcome::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

void print_checks(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    std::printf("%s: %s%s%s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL",
                c.detail.empty() ? "" : " ", c.detail.c_str());
  }
}

int execute_guarded(const std::function<RunOutcome()>& body) {
  try {
    return body().exit_code;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIoFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIoFailure;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidationFailure;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidationFailure;
  } catch (const InvalidPlant& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidationFailure;
  } catch (const MissingGain& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidationFailure;
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidationFailure;
  } catch (const Error& e) {
    // Remaining library errors are numerical in nature.
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitNumericalFailure;
  }
}

namespace {

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return CheckResult{name, pass, "(" + detail + ")"};
}

std::filesystem::path prepare_out_dir(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());
  return out_dir;
}

}  // namespace

// ---------------------------------------------------------------------------
// Experiment 1

PlantSpec example1_plant() {
  PlantSpec p;
  p.A = Mat(2, 2, {1.0, 0.01, -0.02, 0.99});
  p.b_u = Mat::col2(0.0, 0.01);
  p.b_d = Mat::col2(0.01, 0.0);
  p.C_m = Mat::identity(2);
  p.c_o = Mat::row2(1.0, 0.0);
  return p;
}

Mat example1_feedback_gain() { return Mat::row2(-20.0, -4.0); }

GainSet example1_gain_set() {
  return make_gain_set(example1_plant(), example1_feedback_gain());
}

Scenario example1_scenario(ControlLaw law) {
  Scenario sc;
  sc.law = law;
  sc.plant = example1_plant();
  sc.gains = example1_gain_set();
  if (law == ControlLaw::kGesobcBaseline) {
    sc.gesobc_K_d = gesobc_gain(sc.plant.A, sc.plant.b_u, sc.plant.b_d,
                                sc.plant.c_o, sc.gains.K);
  }
  sc.disturbance = DisturbanceSignal::step(3.0, 60);
  sc.x0 = Mat::col2(1.0, 0.0);
  sc.horizon = 300;
  sc.sample_period = 0.01;
  return sc;
}

RunOutcome run_example1(const std::filesystem::path& out_dir, bool verify) {
  RunOutcome outcome;
  prepare_out_dir(out_dir);

  const PlantSpec plant = example1_plant();
  const GainSet gains = example1_gain_set();
  const double gesobc = gesobc_gain(plant.A, plant.b_u, plant.b_d, plant.c_o, gains.K);

  const Scenario preview = example1_scenario(ControlLaw::kKnownPreview);
  const Scenario baseline = example1_scenario(ControlLaw::kGesobcBaseline);
  const Scenario fb_only = example1_scenario(ControlLaw::kFeedbackOnly);

  const SimTrace t_preview = simulate(preview);
  const SimTrace t_baseline = simulate(baseline);
  const SimTrace t_fb = simulate(fb_only);

  write_trace_csv(out_dir / "example1_known_preview.csv", t_preview);
  write_trace_csv(out_dir / "example1_gesobc_baseline.csv", t_baseline);
  write_trace_csv(out_dir / "example1_feedback_only.csv", t_fb);
  write_gain_report(out_dir / "example1_gains.txt",
                    build_gain_report(plant, gains, std::nullopt));

  // Exact-rejection check: from disturbance onset the preview law must
  // track the disturbance-free closed-loop response exactly.
  const std::size_t onset = 60;
  const std::vector<double> reference = disturbance_free_reference(
      plant, gains.K, t_preview.steps[onset - 1].x, preview.horizon - onset + 1);
  double max_dev = 0.0;
  for (std::size_t m = 0; m < reference.size(); ++m)
    max_dev = std::max(max_dev,
                       std::abs(t_preview.steps[onset + m].y_o - reference[m]));
  outcome.checks.push_back(check(
      "exact_rejection", max_dev <= 1e-9,
      "max |y_o - disturbance-free reference| = " + format_number(max_dev) +
          ", tol 1e-9"));

  if (verify) {
    outcome.checks.push_back(check("g0_value", std::abs(gains.g0 - 95.0) <= 1e-6,
                                   "g0 = " + format_number(gains.g0)));
    outcome.checks.push_back(check("g1_value", std::abs(gains.g1 + 100.0) <= 1e-6,
                                   "g1 = " + format_number(gains.g1)));
    outcome.checks.push_back(check("gesobc_gain_value", std::abs(gesobc + 5.0) <= 1e-6,
                                   "gesobc_K_d = " + format_number(gesobc)));

    // The preview trace must coincide with a disturbance-free run at
    // every step, onset included.
    Scenario fb_nodist = fb_only;
    fb_nodist.disturbance = DisturbanceSignal::zero();
    const SimTrace t_clean = simulate(fb_nodist);
    double dev_all = 0.0;
    for (std::size_t k = 0; k < t_preview.steps.size(); ++k)
      dev_all = std::max(dev_all,
                         std::abs(t_preview.steps[k].y_o - t_clean.steps[k].y_o));
    outcome.checks.push_back(
        check("preview_equals_disturbance_free", dev_all <= 1e-9,
              "max deviation " + format_number(dev_all) + ", tol 1e-9"));

    // The DC-nulling baseline leaves a visible transient.
    double baseline_peak = 0.0;
    for (std::size_t k = onset; k < t_baseline.steps.size(); ++k)
      baseline_peak = std::max(baseline_peak, std::abs(t_baseline.steps[k].y_o -
                                                       t_clean.steps[k].y_o));
    outcome.checks.push_back(
        check("gesobc_transient_visible", baseline_peak > 0.01,
              "peak |y_o| deviation " + format_number(baseline_peak)));

    const SteadyState ss = steady_state_prediction(plant, gains.K, gains.K_d, 3.0);
    outcome.checks.push_back(
        check("steady_state_regulated_output_null", std::abs(ss.y_o_inf) <= 1e-10,
              "predicted y_o limit " + format_number(ss.y_o_inf)));
  }

  print_checks(outcome.checks);
  outcome.exit_code = outcome.all_checks_pass() ? kExitOk : kExitValidationFailure;
  return outcome;
}

// ---------------------------------------------------------------------------
// PMDC experiment

PmdcContinuous pmdc_continuous(const PmdcParameters& par) {
  // Motor model with x = [w_m; i_a], u = V_a, d = T_L:
  //   J_m dw/dt = k i_a - B_m w - T_L
  //   L_a di/dt = V_a - R_a i_a - k w
  PmdcContinuous c;
  c.A_c = Mat(2, 2, {-par.B_m / par.J_m, par.k / par.J_m,
                     -par.k / par.L_a, -par.R_a / par.L_a});
  c.b_u_c = Mat::col2(0.0, 1.0 / par.L_a);
  c.b_d_c = Mat::col2(-1.0 / par.J_m, 0.0);
  return c;
}

PlantSpec pmdc_plant() {
  // Forward-Euler discretization. An exact ZOH map couples the input into
  // the speed row at order T^2/2 (c_o . b_u ~ 4.4e-3 at T = 1 ms), which
  // destroys the decoupling c_o . b_u = 0 the rejection law relies on and
  // leaves a steady speed offset. Euler keeps the zero exactly.
  const PmdcContinuous c = pmdc_continuous();
  PlantSpec p;
  p.A = Mat::identity(2) + c.A_c * kPmdcSamplePeriod;
  p.b_u = c.b_u_c * kPmdcSamplePeriod;
  p.b_d = c.b_d_c * kPmdcSamplePeriod;
  p.C_m = Mat::identity(2);
  p.c_o = Mat::row2(1.0, 0.0);
  return p;
}

GainSet pmdc_gain_set() {
  return make_gain_set(pmdc_plant(), Mat::row2(-0.5, -4.0));
}

Mat pmdc_observer_gain() {
  return Mat(3, 2, {0.3, 0.1, 0.1, 0.8, -0.2, -0.05});
}

Scenario pmdc_scenario() {
  Scenario sc;
  sc.law = ControlLaw::kEsoOutputFeedback;
  sc.plant = pmdc_plant();
  sc.gains = pmdc_gain_set();
  sc.gains.L_bar = pmdc_observer_gain();
  sc.disturbance = DisturbanceSignal::step(5.0, 600);
  sc.x0 = Mat::zeros(2, 1);
  sc.horizon = 1200;
  sc.sample_period = kPmdcSamplePeriod;
  return sc;
}

RunOutcome run_pmdc(const std::filesystem::path& out_dir, bool verify) {
  RunOutcome outcome;
  prepare_out_dir(out_dir);

  Scenario sc = pmdc_scenario();
  const ExtendedSystem es = extend(sc.plant);
  const double rho = validate_observer_gain(es, *sc.gains.L_bar);
  if (rho >= 1.0)
    throw ObserverUnstable("pmdc: observer gain is unstable for this "
                           "discretization, spectral radius " +
                           format_number(rho));

  const SimTrace trace = simulate(sc);
  write_trace_csv(out_dir / "pmdc_trace.csv", trace);
  write_gain_report(out_dir / "pmdc_gains.txt",
                    build_gain_report(sc.plant, sc.gains, sc.gains.L_bar));

  const std::size_t onset = 600;
  const std::vector<double> speed = trace.channel("x1");
  const std::vector<double> current = trace.channel("x2");

  // Settling band: a fixed fraction of the peak excursion.
  const double peak = trace_metrics(speed, onset, 0.0).peak_dev;
  const double band = kPmdcSettlingBandFraction * peak;
  const Metrics speed_m = trace_metrics(speed, onset, band);
  const Metrics current_m = trace_metrics(current, onset, band);
  const double settling_s = static_cast<double>(speed_m.settling_steps) *
                            sc.sample_period;
  const double dhat_final = trace.steps.back().d_hat;

  {
    std::ofstream metrics(out_dir / "pmdc_metrics.txt", std::ios::binary);
    if (!metrics) throw IoError("cannot open pmdc_metrics.txt for writing");
    metrics << "speed_peak_dev_rad_s = " << format_number(speed_m.peak_dev) << "\n"
            << "current_peak_dev_A = " << format_number(current_m.peak_dev) << "\n"
            << "speed_settling_band_rad_s = " << format_number(band) << "\n"
            << "speed_settling_steps = " << speed_m.settling_steps << "\n"
            << "speed_settling_time_s = " << format_number(settling_s) << "\n"
            << "speed_steady_bias_rad_s = " << format_number(speed_m.steady_bias)
            << "\n"
            << "dhat_final = " << format_number(dhat_final) << "\n"
            << "K_d = " << format_number(sc.gains.K_d) << "\n"
            << "observer_spectral_radius = " << format_number(rho) << "\n";
  }

  if (verify) {
    outcome.checks.push_back(check("speed_peak_dev", speed_m.peak_dev < 10.0,
                                   format_number(speed_m.peak_dev) +
                                       " rad/s, limit 10"));
    outcome.checks.push_back(check("current_peak_dev", current_m.peak_dev < 3.0,
                                   format_number(current_m.peak_dev) +
                                       " A, limit 3"));
    outcome.checks.push_back(check(
        "speed_settling_time", settling_s >= 0.05 && settling_s <= 0.15,
        format_number(settling_s) + " s, window [0.05, 0.15]"));
    outcome.checks.push_back(check(
        "speed_steady_bias", std::abs(speed_m.steady_bias) <= 1e-3,
        format_number(speed_m.steady_bias) + " rad/s, tol 1e-3"));
    outcome.checks.push_back(check("dhat_converges",
                                   std::abs(dhat_final - 5.0) <= 1e-3,
                                   "final estimate " + format_number(dhat_final)));
    outcome.checks.push_back(check(
        "K_d_in_reported_range", sc.gains.K_d >= 5.1 && sc.gains.K_d <= 5.5,
        "K_d = " + format_number(sc.gains.K_d) + ", range [5.1, 5.5]"));
    print_checks(outcome.checks);
  }

  outcome.exit_code = outcome.all_checks_pass() ? kExitOk : kExitValidationFailure;
  return outcome;
}

}  // namespace mdrc
