#ifndef MDRC_REPORT_HPP_
#define MDRC_REPORT_HPP_

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mdrc/sim.hpp"

namespace mdrc {

/// Formats a double with 12 significant digits (the trace and report
/// number format; deterministic across runs).
std::string format_number(double v);

/// Writes a trace as CSV with header
///   k,t,x1,x2,u,d,y_o[,xhat1,xhat2,dhat,e1,e2,ed]
/// where the bracketed columns appear only for observer-based laws.
void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace);

/// Everything the synthesis produced for one scenario, in printable form.
struct GainReport {
  Mat K = Mat::zeros(1, 2);
  std::vector<std::complex<double>> closed_loop_poles;
  Mat K_p = Mat::zeros(2, 2);
  double g0 = 0.0;
  double g1 = 0.0;
  double K_d = 0.0;
  std::optional<double> gesobc_K_d;
  std::optional<double> observer_spectral_radius;
  ValidationReport validation;
};

GainReport build_gain_report(const PlantSpec& p, const GainSet& gains,
                             const std::optional<Mat>& L_bar);

/// Plain-text key/value rendering of a gain report.
std::string render_gain_report(const GainReport& r);

void write_gain_report(const std::filesystem::path& path, const GainReport& r);

}  // namespace mdrc

#endif  // MDRC_REPORT_HPP_
