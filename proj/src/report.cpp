#include "mdrc/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mdrc {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string format_complex(const std::complex<double>& z) {
  std::string s = format_number(z.real());
  if (z.imag() >= 0.0)
    s += "+" + format_number(z.imag()) + "i";
  else
    s += "-" + format_number(-z.imag()) + "i";
  return s;
}

std::string format_mat(const Mat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.rows() > 1) s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      s += format_number(m(i, j));
      if (j + 1 < m.cols()) s += ", ";
    }
    if (m.rows() > 1) s += "]";
    if (i + 1 < m.rows()) s += ", ";
  }
  return s + "]";
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());

  out << "k,t,x1,x2,u,d,y_o";
  if (trace.has_estimates) out << ",xhat1,xhat2,dhat,e1,e2,ed";
  out << "\n";

  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const SimStep& s = trace.steps[k];
    out << k << ',' << format_number(static_cast<double>(k) * trace.sample_period)
        << ',' << format_number(s.x(0, 0)) << ',' << format_number(s.x(1, 0))
        << ',' << format_number(s.u) << ',' << format_number(s.d) << ','
        << format_number(s.y_o);
    if (trace.has_estimates) {
      out << ',' << format_number(s.x_hat(0, 0)) << ','
          << format_number(s.x_hat(1, 0)) << ',' << format_number(s.d_hat) << ','
          << format_number(s.e.e_x(0, 0)) << ',' << format_number(s.e.e_x(1, 0))
          << ',' << format_number(s.e.e_d);
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

GainReport build_gain_report(const PlantSpec& p, const GainSet& gains,
                             const std::optional<Mat>& L_bar) {
  GainReport r;
  r.K = gains.K;
  r.closed_loop_poles = eigenvalues(p.A + p.b_u * gains.K);
  r.K_p = gains.K_p;
  r.g0 = gains.g0;
  r.g1 = gains.g1;
  r.K_d = gains.K_d;
  try {
    r.gesobc_K_d = gesobc_gain(p.A, p.b_u, p.b_d, p.c_o, gains.K);
  } catch (const Error&) {
    // DC gain unavailable; leave the field empty.
  }
  if (L_bar.has_value()) {
    r.observer_spectral_radius = validate_observer_gain(extend(p), *L_bar);
  }
  r.validation = validate_plant(p);
  return r;
}

std::string render_gain_report(const GainReport& r) {
  std::ostringstream out;
  out << "K = " << format_mat(r.K) << "\n";
  for (std::size_t i = 0; i < r.closed_loop_poles.size(); ++i)
    out << "closed_loop_pole_" << (i + 1) << " = "
        << format_complex(r.closed_loop_poles[i]) << "\n";
  out << "K_p = " << format_mat(r.K_p) << "\n";
  out << "g0 = " << format_number(r.g0) << "\n";
  out << "g1 = " << format_number(r.g1) << "\n";
  out << "K_d = " << format_number(r.K_d) << "\n";
  if (r.gesobc_K_d.has_value())
    out << "gesobc_K_d = " << format_number(*r.gesobc_K_d) << "\n";
  if (r.observer_spectral_radius.has_value())
    out << "observer_spectral_radius = "
        << format_number(*r.observer_spectral_radius) << "\n";
  out << "controllable = " << (r.validation.controllable ? "true" : "false") << "\n";
  out << "output_decoupled = "
      << (r.validation.output_decoupled ? "true" : "false") << "\n";
  out << "mismatched = " << (r.validation.mismatched ? "true" : "false") << "\n";
  return out.str();
}

void write_gain_report(const std::filesystem::path& path, const GainReport& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << render_gain_report(r);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace mdrc
