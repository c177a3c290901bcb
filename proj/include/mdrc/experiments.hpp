#ifndef MDRC_EXPERIMENTS_HPP_
#define MDRC_EXPERIMENTS_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mdrc/report.hpp"
#include "mdrc/sim.hpp"

namespace mdrc {

/// Process exit codes shared by the CLI subcommands.
enum ExitCode {
  kExitOk = 0,
  kExitValidationFailure = 1,
  kExitIoFailure = 2,
  kExitNumericalFailure = 3,
};

/// One named check with its outcome, printed as a PASS/FAIL line.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<CheckResult> checks;

  bool all_checks_pass() const;
};

// ---- Built-in experiment 1: second-order benchmark plant ----

/// A = [[1, 0.01], [-0.02, 0.99]], b_u = [0; 0.01], b_d = [0.01; 0],
/// C_m = I, c_o = [1, 0]. The disturbance enters orthogonally to the
/// input channel and must be removed from x1.
PlantSpec example1_plant();

/// The benchmark feedback gain [-20, -4].
Mat example1_feedback_gain();

GainSet example1_gain_set();

/// Step disturbance of 3 at k = 60, x0 = [1; 0], horizon 300, T = 0.01 s.
Scenario example1_scenario(ControlLaw law);

/// Runs the preview, GESOBC-baseline and feedback-only scenarios, writes
/// one CSV per scenario plus a gain report, and prints the exact-rejection
/// check. With `verify`, additional oracle checks are printed.
RunOutcome run_example1(const std::filesystem::path& out_dir, bool verify);

// ---- Built-in experiment 2: PMDC motor under load steps ----

/// PMDC motor constants (SI units).
struct PmdcParameters {
  double R_a = 0.5;      // armature resistance, ohm
  double L_a = 0.012;    // armature inductance, H
  double J_m = 0.00471;  // total inertia, kg m^2
  double B_m = 0.002;    // viscous friction, N m s/rad
  double k = 0.5;        // torque and back-emf constant
};

/// Continuous-time motor model, x = [speed; current], u = armature
/// voltage, d = load torque.
struct PmdcContinuous {
  Mat A_c;    // 2x2
  Mat b_u_c;  // 2x1
  Mat b_d_c;  // 2x1
};

PmdcContinuous pmdc_continuous(const PmdcParameters& par = {});

constexpr double kPmdcSamplePeriod = 0.001;

/// Discrete PMDC plant at T = 1 ms. Forward-Euler is used here because it
/// preserves c_o . b_u = 0 exactly; see pmdc_plant() notes.
PlantSpec pmdc_plant();

GainSet pmdc_gain_set();

/// Hand-specified 3x2 observer gain for the two-output PMDC system.
Mat pmdc_observer_gain();

/// Output-feedback composite control under a 5 N m load step at 0.6 s,
/// horizon 1.2 s, zero initial plant and observer state.
Scenario pmdc_scenario();

/// Fraction of the peak deviation used as the settling band in the PMDC
/// metrics report.
constexpr double kPmdcSettlingBandFraction = 0.05;

RunOutcome run_pmdc(const std::filesystem::path& out_dir, bool verify);

// ---- Config-driven scenario execution ----

RunOutcome run_config_file(const std::filesystem::path& config_path,
                           const std::filesystem::path& out_dir);

/// Prints each check as a "name: PASS/FAIL (detail)" line.
void print_checks(const std::vector<CheckResult>& checks);

/// Runs a command body, mapping library errors onto the exit-code
/// contract: user/config problems -> 1, I/O -> 2, numerical -> 3.
int execute_guarded(const std::function<RunOutcome()>& body);

}  // namespace mdrc

#endif  // MDRC_EXPERIMENTS_HPP_
