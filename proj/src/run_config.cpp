#include <array>
#include <complex>
#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "mdrc/experiments.hpp"

namespace mdrc {

namespace {

using nlohmann::json;

[[noreturn]] void fail_validation(const std::string& field, const std::string& why) {
  throw ValidationError("config field '" + field + "': " + why);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail_validation(field, "expected a number");
  return j.get<double>();
}

Mat parse_matrix(const json& j, std::size_t rows, std::size_t cols,
                 const std::string& field) {
  // Vectors may be written flat; matrices as an array of rows.
  Mat m(rows, cols);
  if (cols == 1 || rows == 1) {
    if (j.is_array() && j.size() == rows * cols && j[0].is_number()) {
      for (std::size_t i = 0; i < rows * cols; ++i)
        m(cols == 1 ? i : 0, cols == 1 ? 0 : i) = get_number(j[i], field);
      if (!m.all_finite()) fail_validation(field, "entries must be finite");
      return m;
    }
  }
  if (!j.is_array() || j.size() != rows)
    fail_validation(field, "expected " + std::to_string(rows) + " rows");
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail_validation(field, "row " + std::to_string(i) + " must have " +
                                 std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = get_number(j[i][c], field);
  }
  if (!m.all_finite()) fail_validation(field, "entries must be finite");
  return m;
}

std::complex<double> parse_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    fail_validation(field, "expected [real, imaginary]");
  return {get_number(j[0], field), get_number(j[1], field)};
}

std::size_t measurement_rows(const json& cm, const std::string& field) {
  if (!cm.is_array() || cm.empty()) fail_validation(field, "expected matrix rows");
  if (cm[0].is_number()) return 1;  // flat 1x2 row
  const std::size_t r = cm.size();
  if (r < 1 || r > 2) fail_validation(field, "C_m must have 1 or 2 rows");
  return r;
}

PlantSpec parse_plant_matrices(const json& j, const std::string& prefix) {
  for (const char* key : {"A", "b_u", "b_d", "C_m", "c_o"})
    if (!j.contains(key)) fail_validation(prefix + "." + key, "missing");
  PlantSpec p;
  p.A = parse_matrix(j["A"], 2, 2, prefix + ".A");
  p.b_u = parse_matrix(j["b_u"], 2, 1, prefix + ".b_u");
  p.b_d = parse_matrix(j["b_d"], 2, 1, prefix + ".b_d");
  const std::size_t r = measurement_rows(j["C_m"], prefix + ".C_m");
  p.C_m = parse_matrix(j["C_m"], r, 2, prefix + ".C_m");
  p.c_o = parse_matrix(j["c_o"], 1, 2, prefix + ".c_o");
  return p;
}

ControlLaw parse_law(const std::string& s) {
  if (s == "known_preview") return ControlLaw::kKnownPreview;
  if (s == "known_causal") return ControlLaw::kKnownCausal;
  if (s == "eso_state_feedback") return ControlLaw::kEsoStateFeedback;
  if (s == "eso_output_feedback") return ControlLaw::kEsoOutputFeedback;
  if (s == "gesobc_baseline") return ControlLaw::kGesobcBaseline;
  if (s == "feedback_only") return ControlLaw::kFeedbackOnly;
  fail_validation("law", "unknown control law '" + s + "'");
}

DisturbanceSignal parse_disturbance(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail_validation("disturbance", "expected an object with a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zero") return DisturbanceSignal::zero();
  if (kind == "step") {
    if (!j.contains("magnitude") || !j.contains("onset"))
      fail_validation("disturbance", "step needs 'magnitude' and 'onset'");
    return DisturbanceSignal::step(get_number(j["magnitude"], "disturbance.magnitude"),
                                   j["onset"].get<std::size_t>());
  }
  if (kind == "constant") {
    if (!j.contains("value")) fail_validation("disturbance", "constant needs 'value'");
    return DisturbanceSignal::constant(get_number(j["value"], "disturbance.value"));
  }
  if (kind == "ramp_to") {
    if (!j.contains("limit") || !j.contains("slope"))
      fail_validation("disturbance", "ramp_to needs 'limit' and 'slope'");
    return DisturbanceSignal::ramp_to(get_number(j["limit"], "disturbance.limit"),
                                      get_number(j["slope"], "disturbance.slope"));
  }
  if (kind == "sinusoid") {
    if (!j.contains("amplitude") || !j.contains("period"))
      fail_validation("disturbance", "sinusoid needs 'amplitude' and 'period'");
    return DisturbanceSignal::sinusoid(
        get_number(j["amplitude"], "disturbance.amplitude"),
        get_number(j["period"], "disturbance.period"));
  }
  if (kind == "explicit") {
    if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
      fail_validation("disturbance", "explicit needs a non-empty 'values' array");
    std::vector<double> v;
    for (const auto& e : j["values"])
      v.push_back(get_number(e, "disturbance.values"));
    return DisturbanceSignal::explicit_sequence(std::move(v));
  }
  fail_validation("disturbance.kind", "unknown kind '" + kind + "'");
}

}  // namespace

RunOutcome run_config_file(const std::filesystem::path& config_path,
                           const std::filesystem::path& out_dir) {
  RunOutcome outcome;

  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open config file " + config_path.string());

  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config parse failed: ") + e.what());
  }

  for (const char* key : {"plant", "law", "gains", "disturbance", "sim"})
    if (!root.contains(key)) fail_validation(key, "missing top-level section");

  // ---- plant: exactly one of discrete / continuous + sample_period ----
  const json& jplant = root["plant"];
  const bool has_discrete = jplant.contains("discrete");
  const bool has_continuous = jplant.contains("continuous");
  if (has_discrete == has_continuous)
    fail_validation("plant", "give exactly one of 'discrete' or 'continuous'");

  PlantSpec plant;
  double label_period = 1.0;
  if (has_discrete) {
    plant = parse_plant_matrices(jplant["discrete"], "plant.discrete");
  } else {
    if (!jplant.contains("sample_period"))
      fail_validation("plant.sample_period", "required with a continuous plant");
    const double T = get_number(jplant["sample_period"], "plant.sample_period");
    if (T <= 0.0) fail_validation("plant.sample_period", "must be positive");
    PlantSpec cont = parse_plant_matrices(jplant["continuous"], "plant.continuous");
    Mat B(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      B(i, 0) = cont.b_u(i, 0);
      B(i, 1) = cont.b_d(i, 0);
    }
    const auto [A_d, B_d] = zoh_discretize(cont.A, B, T);
    plant = cont;
    plant.A = A_d;
    plant.b_u = Mat::col2(B_d(0, 0), B_d(1, 0));
    plant.b_d = Mat::col2(B_d(0, 1), B_d(1, 1));
    label_period = T;
  }

  const ValidationReport rep = validate_plant(plant);
  if (!rep.required_pass()) {
    std::string why = "plant checks failed:";
    if (!rep.b_u_nonzero) why += " input channel b_u is zero;";
    if (!rep.b_d_nonzero) why += " disturbance channel b_d is zero;";
    if (!rep.controllable) why += " (A, b_u) is not controllable;";
    if (!rep.output_decoupled)
      why += " regulated output is not decoupled from the input channel"
             " (c_o . b_u must be 0, residual " +
             format_number(rep.decoupling_residual) + ");";
    throw ValidationError(why);
  }

  // ---- law ----
  const ControlLaw law = parse_law(root["law"].get<std::string>());

  // ---- gains ----
  const json& jgains = root["gains"];
  Mat K(1, 2);
  if (jgains.contains("K")) {
    K = parse_matrix(jgains["K"], 1, 2, "gains.K");
  } else if (jgains.contains("closed_loop_poles")) {
    const json& jp = jgains["closed_loop_poles"];
    if (!jp.is_array() || jp.size() != 2)
      fail_validation("gains.closed_loop_poles", "expected two [re, im] pairs");
    try {
      K = place_poles(plant.A, plant.b_u,
                      parse_complex(jp[0], "gains.closed_loop_poles[0]"),
                      parse_complex(jp[1], "gains.closed_loop_poles[1]"));
    } catch (const UnstableRequest& e) {
      throw ValidationError(std::string("gains.closed_loop_poles: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ValidationError(std::string("gains.closed_loop_poles: ") + e.what());
    }
  } else {
    fail_validation("gains", "give either 'K' or 'closed_loop_poles'");
  }

  GainSet gains;
  try {
    gains = make_gain_set(plant, K);
  } catch (const UnstableRequest& e) {
    throw ValidationError(std::string("gains: ") + e.what());
  }

  Scenario sc;
  sc.law = law;
  sc.plant = plant;

  if (law == ControlLaw::kGesobcBaseline) {
    sc.gesobc_K_d = gesobc_gain(plant.A, plant.b_u, plant.b_d, plant.c_o, K);
  }

  // ---- observer (ESO laws) ----
  std::optional<Mat> l_bar;
  if (law_uses_observer(law)) {
    if (!root.contains("observer"))
      fail_validation("observer", "required for observer-based laws");
    const json& jobs = root["observer"];
    const ExtendedSystem es = extend(plant);
    if (jobs.contains("L_bar")) {
      Mat L = parse_matrix(jobs["L_bar"], 3, plant.r(), "observer.L_bar");
      const double rho = validate_observer_gain(es, L);
      if (rho >= 1.0)
        fail_validation("observer.L_bar",
                        "gain does not stabilize the error dynamics "
                        "(spectral radius " +
                            format_number(rho) + ")");
      l_bar = L;
    } else {
      std::array<std::complex<double>, 3> poles = default_observer_poles();
      if (jobs.contains("poles")) {
        const json& jp = jobs["poles"];
        if (!jp.is_array() || jp.size() != 3)
          fail_validation("observer.poles", "expected three [re, im] pairs");
        for (std::size_t i = 0; i < 3; ++i)
          poles[i] = parse_complex(jp[i], "observer.poles");
      }
      try {
        l_bar = design_observer_gain(es, poles);
      } catch (const Error& e) {
        throw ValidationError(std::string("observer: ") + e.what());
      }
    }
  }
  gains.L_bar = l_bar;
  sc.gains = gains;

  // ---- disturbance ----
  sc.disturbance = parse_disturbance(root["disturbance"]);

  // ---- sim ----
  const json& jsim = root["sim"];
  if (!jsim.contains("horizon")) fail_validation("sim.horizon", "missing");
  sc.horizon = jsim["horizon"].get<std::size_t>();
  if (sc.horizon == 0) fail_validation("sim.horizon", "must be positive");
  sc.x0 = jsim.contains("x0") ? parse_matrix(jsim["x0"], 2, 1, "sim.x0")
                              : Mat::zeros(2, 1);
  if (jsim.contains("sample_period")) {
    label_period = get_number(jsim["sample_period"], "sim.sample_period");
    if (label_period <= 0.0) fail_validation("sim.sample_period", "must be positive");
  }
  sc.sample_period = label_period;
  if (jsim.contains("observer_init")) {
    const Mat oi = parse_matrix(jsim["observer_init"], 3, 1, "sim.observer_init");
    sc.observer_init.x_hat = Mat::col2(oi(0, 0), oi(1, 0));
    sc.observer_init.d_hat = oi(2, 0);
  }
  const std::string name =
      jsim.contains("output_name") ? jsim["output_name"].get<std::string>() : "trace";

  // ---- run and write ----
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());

  const SimTrace trace = simulate(sc);
  write_trace_csv(out_dir / (name + ".csv"), trace);
  write_gain_report(out_dir / (name + "_gains.txt"),
                    build_gain_report(plant, sc.gains, l_bar));

  outcome.exit_code = kExitOk;
  return outcome;
}

}  // namespace mdrc
