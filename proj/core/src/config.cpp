#include "nvodmr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nvodmr/error.hpp"
#include "nvodmr/io.hpp"

namespace nvodmr {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

double to_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + raw + "'");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + raw + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "expected true/false, got '" + raw + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::string s = raw;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_number(key, tok));
  if (out.empty()) throw ConfigError(key, "expected a list of numbers");
  return out;
}

FieldVector to_vector3(const std::string& key, const std::string& raw, double scale) {
  const auto v = to_list(key, raw);
  if (v.size() != 3) throw ConfigError(key, "expected 3 components");
  return FieldVector(v[0], v[1], v[2]) * scale;
}

double nonnegative(const std::string& key, double v) {
  if (v < 0.0) throw ConfigError(key, "must be >= 0");
  return v;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key, "must be > 0");
  return v;
}

double mw_dbm(const std::string& key, double dbm) {
  if (dbm < kMinMwPowerDbm || dbm > kMaxMwPowerDbm) {
    std::ostringstream msg;
    msg << "must be within [" << kMinMwPowerDbm << ", " << kMaxMwPowerDbm << "] dBm";
    throw ConfigError(key, msg.str());
  }
  return dbm_to_watts(dbm);
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;
using Section = std::map<std::string, Setter>;

std::map<std::string, Section> schema(RunConfig& c) {
  auto num = [](double& target, double (*check)(const std::string&, double) = nullptr) -> Setter {
    return [&target, check](const std::string& k, const std::string& v) {
      const double x = to_number(k, v);
      target = check ? check(k, x) : x;
    };
  };
  auto flag = [](bool& target) -> Setter {
    return [&target](const std::string& k, const std::string& v) { target = to_bool(k, v); };
  };
  constexpr double kDeg = constants::kPi / 180.0;

  auto& a = c.apparatus;
  auto& n = c.noise;
  std::map<std::string, Section> s;

  s["run"] = {
      {"seed", [&c](const auto& k, const auto& v) { c.seed = to_unsigned(k, v); }},
      {"out", [&c](const auto&, const auto& v) { c.out_dir = trim(v); }},
      {"threads",
       [&c](const auto& k, const auto& v) {
         const auto t = to_unsigned(k, v);
         if (t < 1) throw ConfigError(k, "must be >= 1");
         c.threads = static_cast<unsigned>(t);
       }},
  };
  s["field"] = {
      {"b_ut", [&c](const auto& k, const auto& v) { c.field_t = to_vector3(k, v, 1e-6); }},
      // uT per um is T per m.
      {"grad_x_ut_per_um",
       [&c](const auto& k, const auto& v) { c.gradient_x_t_per_m = to_vector3(k, v, 1.0); }},
      {"grad_y_ut_per_um",
       [&c](const auto& k, const auto& v) { c.gradient_y_t_per_m = to_vector3(k, v, 1.0); }},
  };
  s["bias"] = {
      {"b_mt", [&c](const auto& k, const auto& v) { c.bias_t = to_vector3(k, v, 1e-3); }},
  };
  s["apparatus"] = {
      {"laser_power_w", num(a.laser_power_w, nonnegative)},
      {"beam_waist_m", num(a.beam_waist_m, positive)},
      {"cross_section_m2", num(a.cross_section_m2, positive)},
      {"eta",
       [&a](const auto& k, const auto& v) {
         a.eta = to_number(k, v);
         if (!(a.eta > 0.0 && a.eta <= 1.0)) throw ConfigError(k, "must be in (0, 1]");
       }},
      {"temperature_k", num(a.temperature_k, nonnegative)},
      {"mw_power_dbm", [&a](const auto& k, const auto& v) { a.mw_power_w = mw_dbm(k, to_number(k, v)); }},
      {"mw_theta_deg", [&a, kDeg](const auto& k, const auto& v) { a.mw_theta_rad = to_number(k, v) * kDeg; }},
      {"mw_phi_deg", [&a, kDeg](const auto& k, const auto& v) { a.mw_phi_rad = to_number(k, v) * kDeg; }},
      {"antenna_t_per_sqrt_w", num(a.antenna_t_per_sqrt_w, nonnegative)},
      {"rate_calibration", num(a.rate_calibration, nonnegative)},
      {"gamma_c_inf_hz", num(a.linewidth.gamma_c_inf_hz, positive)},
      {"gamma_p_inf_hz", num(a.linewidth.gamma_p_inf_hz, positive)},
      {"saturation_pump_rate_hz", num(a.linewidth.saturation_pump_rate_hz, positive)},
      {"orientation_weights",
       [&a](const auto& k, const auto& v) {
         const auto w = to_list(k, v);
         if (w.size() != kOrientations) throw ConfigError(k, "expected 8 weights");
         OrientationWeights out{};
         std::copy(w.begin(), w.end(), out.begin());
         try {
           a.weights = normalized(out);
         } catch (const InvalidArgument& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"axis_weights",
       [&a](const auto& k, const auto& v) {
         const auto w = to_list(k, v);
         if (w.size() != kAxes) throw ConfigError(k, "expected 4 weights");
         try {
           a.weights = axis_weights({w[0], w[1], w[2], w[3]});
         } catch (const InvalidArgument& e) {
           throw ConfigError(k, e.what());
         }
       }},
  };
  s["sweep"] = {
      {"f_start_hz", num(c.sweep.f_start_hz, positive)},
      {"f_end_hz", num(c.sweep.f_end_hz, positive)},
      {"n_freq", [&c](const auto& k, const auto& v) { c.sweep.n_freq = to_unsigned(k, v); }},
  };
  s["noise"] = {
      {"enabled",
       [&n](const auto& k, const auto& v) {
         if (!to_bool(k, v)) {
           const NoiseConfig off = NoiseConfig::disabled();
           n.shot_noise = off.shot_noise;
           n.laser_power = off.laser_power;
           n.mw_power = off.mw_power;
           n.mw_phase = n.mw_freq_jitter = n.dephasing = n.t2_star_spread = n.g_spread = false;
           n.surface_field = n.temperature_drift = false;
         }
       }},
      {"shot", flag(n.shot_noise)},
      {"shot_baseline", flag(n.shot_noise_baseline)},
      {"integration_time_s", num(n.integration_time_s, positive)},
      {"laser_power", flag(n.laser_power)},
      {"laser_power_rel_std", num(n.laser_power_rel_std, nonnegative)},
      {"mw_power", flag(n.mw_power)},
      {"mw_power_rel_std", num(n.mw_power_rel_std, nonnegative)},
      {"mw_phase", flag(n.mw_phase)},
      {"mw_phase_field_std_t", num(n.mw_phase_field_std_t, nonnegative)},
      {"mw_freq_jitter", flag(n.mw_freq_jitter)},
      {"mw_freq_jitter_std_hz", num(n.mw_freq_jitter_std_hz, nonnegative)},
      {"dephasing", flag(n.dephasing)},
      {"t2_star_s", num(n.t2_star_s, positive)},
      {"t2_star_spread", flag(n.t2_star_spread)},
      {"t2_star_std_s", num(n.t2_star_std_s, nonnegative)},
      {"g_spread", flag(n.g_spread)},
      {"g_std", num(n.g_std, nonnegative)},
      {"g_distribution",
       [&n](const auto& k, const auto& v) {
         const std::string d = trim(v);
         if (d == "uniform") {
           n.g_distribution = GDistribution::kUniform;
         } else if (d == "normal") {
           n.g_distribution = GDistribution::kNormal;
         } else {
           throw ConfigError(k, "expected 'uniform' or 'normal'");
         }
       }},
      {"surface_field", flag(n.surface_field)},
      {"surface_field_std_t", num(n.surface_field_std_t, nonnegative)},
      {"temperature_drift", flag(n.temperature_drift)},
      {"drift_start_k", num(n.drift_start_k, nonnegative)},
      {"drift_end_k", num(n.drift_end_k, nonnegative)},
  };
  s["grid"] = {
      {"nx", [&c](const auto& k, const auto& v) { c.grid.nx = to_unsigned(k, v); }},
      {"ny", [&c](const auto& k, const auto& v) { c.grid.ny = to_unsigned(k, v); }},
      {"pitch_m", num(c.grid.pitch_m, positive)},
      {"beam_center_x_m", num(c.grid.beam_center_x_m)},
      {"beam_center_y_m", num(c.grid.beam_center_y_m)},
  };
  s["reconstruct"] = {
      {"input", [&c](const auto&, const auto& v) { c.reconstruct.input = trim(v); }},
      {"relative_prominence", num(c.reconstruct.relative_prominence, positive)},
      {"axis_order",
       [&c](const auto& k, const auto& v) {
         const std::string o = trim(v);
         if (o == "printed") {
           c.reconstruct.axis_order = AxisOrder::kPrinted;
         } else if (o == "natural") {
           c.reconstruct.axis_order = AxisOrder::kNatural;
         } else {
           throw ConfigError(k, "expected 'printed' or 'natural'");
         }
       }},
  };
  s["denoise"] = {
      {"input", [&c](const auto&, const auto& v) { c.denoise.input = trim(v); }},
      {"sigmas",
       [&c](const auto& k, const auto& v) {
         c.denoise.sigmas = to_list(k, v);
         for (double x : c.denoise.sigmas) nonnegative(k, x);
       }},
      {"bilateral_sigma_s", num(c.denoise.bilateral_sigma_s, positive)},
      {"bilateral_sigma_r", num(c.denoise.bilateral_sigma_r, positive)},
      {"bilateral_window",
       [&c](const auto& k, const auto& v) {
         c.denoise.bilateral_window = to_unsigned(k, v);
         if (c.denoise.bilateral_window < 1) throw ConfigError(k, "must be >= 1");
       }},
  };
  s["fom"] = {
      {"laser_powers_w",
       [&c](const auto& k, const auto& v) {
         c.fom.laser_powers_w = to_list(k, v);
         for (double x : c.fom.laser_powers_w) positive(k, x);
       }},
      {"mw_powers_dbm",
       [&c](const auto& k, const auto& v) {
         c.fom.mw_powers_w.clear();
         for (double x : to_list(k, v)) c.fom.mw_powers_w.push_back(mw_dbm(k, x));
       }},
      {"target_dip",
       [&c](const auto& k, const auto& v) {
         const std::string t = trim(v);
         if (t == "deepest") {
           c.fom.options.target_dip.reset();
         } else {
           c.fom.options.target_dip = to_unsigned(k, t);
         }
       }},
      {"seeds",
       [&c](const auto& k, const auto& v) {
         c.fom.options.seeds = to_unsigned(k, v);
         if (c.fom.options.seeds < 1) throw ConfigError(k, "must be >= 1");
       }},
      {"relative_prominence", num(c.fom.options.relative_prominence, positive)},
  };
  return s;
}

RunConfig parse_tree(const pt::ptree& tree) {
  RunConfig c;
  auto sections = schema(c);
  for (const auto& [section_name, section] : tree) {
    if (section.empty() && !section.data().empty()) {
      throw ConfigError(section_name, "keys must live inside a [section]");
    }
    const auto it = sections.find(section_name);
    if (it == sections.end()) throw ConfigError(section_name, "unknown section");
    for (const auto& [key, value] : section) {
      const std::string full = section_name + "." + key;
      const auto setter = it->second.find(key);
      if (setter == it->second.end()) throw ConfigError(full, "unknown key");
      setter->second(full, value.data());
    }
  }
  validate(c);
  return c;
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw InvalidArgument("watts_to_dbm: power must be > 0");
  return 10.0 * std::log10(watts) + 30.0;
}

void validate(const RunConfig& c) {
  c.apparatus.validate();
  c.noise.validate();
  c.sweep.validate();
  c.grid.validate();
  if (c.apparatus.mw_power_w > 0.0) {
    const double dbm = watts_to_dbm(c.apparatus.mw_power_w);
    if (dbm < kMinMwPowerDbm - 1e-9 || dbm > kMaxMwPowerDbm + 1e-9) {
      throw ConfigError("apparatus.mw_power_dbm", "must be within [5, 50] dBm");
    }
  }
  if (c.fom.laser_powers_w.empty() || c.fom.mw_powers_w.empty()) {
    throw ConfigError("fom", "power grids must be non-empty");
  }
  if (c.threads < 1) throw ConfigError("run.threads", "must be >= 1");
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", std::string("malformed INI: ") + e.what());
  }
  return parse_tree(tree);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_string(buf.str());
}

nlohmann::json config_to_json(const RunConfig& c) {
  using nlohmann::json;
  auto vec = [](const FieldVector& v) { return json::array({v.x(), v.y(), v.z()}); };
  json fom_target = c.fom.options.target_dip ? json(*c.fom.options.target_dip) : json("deepest");
  return json{
      {"seed", c.seed ? json(*c.seed) : json(nullptr)},
      {"threads", c.threads},
      {"field_t", vec(c.field_t)},
      {"gradient_x_t_per_m", vec(c.gradient_x_t_per_m)},
      {"gradient_y_t_per_m", vec(c.gradient_y_t_per_m)},
      {"bias_t", vec(c.bias_t)},
      {"apparatus", c.apparatus},
      {"noise", c.noise},
      {"sweep", c.sweep},
      {"grid", c.grid},
      {"reconstruct",
       {{"relative_prominence", c.reconstruct.relative_prominence},
        {"axis_order", c.reconstruct.axis_order == AxisOrder::kPrinted ? "printed" : "natural"}}},
      {"denoise",
       {{"sigmas", c.denoise.sigmas},
        {"bilateral_sigma_s", c.denoise.bilateral_sigma_s},
        {"bilateral_sigma_r", c.denoise.bilateral_sigma_r},
        {"bilateral_window", c.denoise.bilateral_window}}},
      {"fom",
       {{"laser_powers_w", c.fom.laser_powers_w},
        {"mw_powers_w", c.fom.mw_powers_w},
        {"target_dip", fom_target},
        {"seeds", c.fom.options.seeds},
        {"relative_prominence", c.fom.options.relative_prominence}}},
  };
}

}  // namespace nvodmr
