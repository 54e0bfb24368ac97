#include "nvodmr/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nvodmr/error.hpp"

namespace nvodmr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<char, 8> kCubeMagic{'N', 'V', 'O', 'D', 'M', 'R', 'C', 'B'};
constexpr std::uint32_t kCubeVersion = 1;
constexpr const char* kProvenancePrefix = "# provenance: ";

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view s, const fs::path& path, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": cannot parse number '" << s << "'";
    throw IoError(msg.str());
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw IoError("binary cube: unexpected end of file");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_le(in, 8)); }

std::string pixel_file(std::size_t ix, std::size_t iy) {
  return "pixel_x" + std::to_string(ix) + "_y" + std::to_string(iy) + ".csv";
}

}  // namespace

void to_json(json& j, const ApparatusConfig& a) {
  j = json{
      {"laser_power_w", a.laser_power_w},
      {"beam_waist_m", a.beam_waist_m},
      {"cross_section_m2", a.cross_section_m2},
      {"eta", a.eta},
      {"temperature_k", a.temperature_k},
      {"mw_power_w", a.mw_power_w},
      {"mw_theta_rad", a.mw_theta_rad},
      {"mw_phi_rad", a.mw_phi_rad},
      {"antenna_t_per_sqrt_w", a.antenna_t_per_sqrt_w},
      {"rate_calibration", a.rate_calibration},
      {"gamma_c_inf_hz", a.linewidth.gamma_c_inf_hz},
      {"gamma_p_inf_hz", a.linewidth.gamma_p_inf_hz},
      {"saturation_pump_rate_hz", a.linewidth.saturation_pump_rate_hz},
      {"rates_hz",
       {{"radiative", a.rates.radiative},
        {"k47", a.rates.k47},
        {"k57", a.rates.k57},
        {"k71", a.rates.k71},
        {"k72", a.rates.k72}}},
      {"orientation_weights", a.weights},
  };
}

void to_json(json& j, const NoiseConfig& n) {
  j = json{
      {"seed", n.seed},
      {"shot_noise", n.shot_noise},
      {"shot_noise_baseline", n.shot_noise_baseline},
      {"integration_time_s", n.integration_time_s},
      {"laser_power", n.laser_power},
      {"laser_power_rel_std", n.laser_power_rel_std},
      {"mw_power", n.mw_power},
      {"mw_power_rel_std", n.mw_power_rel_std},
      {"mw_phase", n.mw_phase},
      {"mw_phase_field_std_t", n.mw_phase_field_std_t},
      {"mw_freq_jitter", n.mw_freq_jitter},
      {"mw_freq_jitter_std_hz", n.mw_freq_jitter_std_hz},
      {"dephasing", n.dephasing},
      {"t2_star_s", n.t2_star_s},
      {"t2_star_spread", n.t2_star_spread},
      {"t2_star_std_s", n.t2_star_std_s},
      {"g_spread", n.g_spread},
      {"g_std", n.g_std},
      {"g_distribution", n.g_distribution == GDistribution::kUniform ? "uniform" : "normal"},
      {"surface_field", n.surface_field},
      {"surface_field_std_t", n.surface_field_std_t},
      {"temperature_drift", n.temperature_drift},
      {"drift_start_k", n.drift_start_k},
      {"drift_end_k", n.drift_end_k},
  };
}

void to_json(json& j, const SweepGrid& s) {
  j = json{{"f_start_hz", s.f_start_hz}, {"f_end_hz", s.f_end_hz}, {"n_freq", s.n_freq}};
}

void to_json(json& j, const GridGeometry& g) {
  j = json{{"nx", g.nx},
           {"ny", g.ny},
           {"pitch_m", g.pitch_m},
           {"beam_center_x_m", g.beam_center_x_m},
           {"beam_center_y_m", g.beam_center_y_m}};
}

void to_json(json& j, const ReconstructionResult& r) {
  auto vec = [](const FieldVector& v) { return json::array({v.x(), v.y(), v.z()}); };
  j = json{{"b_actual_t", vec(r.b_actual)},
           {"b_measured_t", vec(r.b_measured)},
           {"b_bias_t", vec(r.b_bias)},
           {"projections_t", r.projections},
           {"dip_centers_hz", r.dip_centers_hz},
           {"residuals_t", r.residuals}};
}

void to_json(json& j, const FomPoint& p) {
  j = json{{"laser_power_w", p.laser_power_w},
           {"mw_power_w", p.mw_power_w},
           {"contrast", p.contrast},
           {"linewidth_hz", p.linewidth_hz},
           {"fom", p.fom}};
}

void write_spectrum_csv(const fs::path& path, const Spectrum& spectrum) {
  std::ofstream out = open_out(path);
  const bool photons = !spectrum.photon_counts.empty();
  out << kProvenancePrefix << spectrum.metadata.dump() << '\n';
  out << "freq_hz,contrast" << (photons ? ",photons" : "") << '\n';
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    out << fmt(spectrum.freqs_hz[k]) << ',' << fmt(spectrum.contrast[k]);
    if (photons) out << ',' << spectrum.photon_counts[k];
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Spectrum read_spectrum_csv(const fs::path& path) {
  std::ifstream in = open_in(path);
  Spectrum s;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool photons = false;
  const std::string prefix = kProvenancePrefix;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind(prefix, 0) == 0) {
        try {
          s.metadata = json::parse(line.substr(prefix.size()));
        } catch (const json::exception& e) {
          throw IoError(path.string() + ": bad provenance line: " + e.what());
        }
      }
      continue;
    }
    if (!header_seen) {
      const auto cols = split(line, ',');
      if (cols.size() < 2 || cols[0] != "freq_hz" || cols[1] != "contrast") {
        throw IoError(path.string() + ": expected header freq_hz,contrast[,photons]");
      }
      photons = cols.size() >= 3 && cols[2] == "photons";
      header_seen = true;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() < (photons ? 3u : 2u)) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": too few columns");
    }
    s.freqs_hz.push_back(parse_double(cols[0], path, lineno));
    s.contrast.push_back(parse_double(cols[1], path, lineno));
    if (photons) {
      s.photon_counts.push_back(static_cast<std::int64_t>(parse_double(cols[2], path, lineno)));
    }
  }
  if (!header_seen) throw IoError(path.string() + ": no CSV header found");
  return s;
}

json spectrum_to_json(const Spectrum& spectrum) {
  json j{{"format", kSpectrumFormat},
         {"metadata", spectrum.metadata},
         {"freqs_hz", spectrum.freqs_hz},
         {"contrast", spectrum.contrast}};
  if (!spectrum.photon_counts.empty()) j["photon_counts"] = spectrum.photon_counts;
  return j;
}

Spectrum spectrum_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kSpectrumFormat) {
      throw IoError("spectrum JSON: unsupported format " + j.at("format").dump());
    }
    Spectrum s;
    s.metadata = j.value("metadata", json::object());
    s.freqs_hz = j.at("freqs_hz").get<std::vector<double>>();
    s.contrast = j.at("contrast").get<std::vector<double>>();
    if (j.contains("photon_counts")) {
      s.photon_counts = j.at("photon_counts").get<std::vector<std::int64_t>>();
    }
    if (s.freqs_hz.size() != s.contrast.size()) {
      throw IoError("spectrum JSON: freqs_hz and contrast differ in length");
    }
    return s;
  } catch (const json::exception& e) {
    throw IoError(std::string("spectrum JSON: ") + e.what());
  }
}

void write_spectrum_json(const fs::path& path, const Spectrum& spectrum) {
  write_json(path, spectrum_to_json(spectrum));
}

Spectrum read_spectrum_json(const fs::path& path) { return spectrum_from_json(read_json(path)); }

Spectrum read_spectrum(const fs::path& path) {
  return path.extension() == ".json" ? read_spectrum_json(path) : read_spectrum_csv(path);
}

void write_cube_directory(const fs::path& dir, const WidefieldCube& cube, const json& provenance) {
  fs::create_directories(dir);
  json pixels = json::array();
  for (std::size_t iy = 0; iy < cube.grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < cube.grid.nx; ++ix) {
      const std::size_t idx = cube.grid.index(ix, iy);
      json entry{{"ix", ix}, {"iy", iy}, {"x_m", cube.grid.x_m(ix)}, {"y_m", cube.grid.y_m(iy)}};
      if (cube.errors[idx].empty()) {
        entry["file"] = pixel_file(ix, iy);
        write_spectrum_csv(dir / pixel_file(ix, iy), cube.pixels[idx]);
      } else {
        entry["error"] = cube.errors[idx];
      }
      pixels.push_back(entry);
    }
  }
  write_json(dir / "index.json", json{{"format", kCubeFormat},
                                      {"provenance", provenance},
                                      {"grid", cube.grid},
                                      {"sweep", cube.sweep},
                                      {"pixels", pixels}});
}

WidefieldCube read_cube_directory(const fs::path& dir) {
  const json index = read_json(dir / "index.json");
  try {
    if (index.at("format").get<std::string>() != kCubeFormat) {
      throw IoError("cube index: unsupported format " + index.at("format").dump());
    }
    WidefieldCube cube;
    const json& g = index.at("grid");
    cube.grid.nx = g.at("nx").get<std::size_t>();
    cube.grid.ny = g.at("ny").get<std::size_t>();
    cube.grid.pitch_m = g.at("pitch_m").get<double>();
    cube.grid.beam_center_x_m = g.at("beam_center_x_m").get<double>();
    cube.grid.beam_center_y_m = g.at("beam_center_y_m").get<double>();
    const json& s = index.at("sweep");
    cube.sweep.f_start_hz = s.at("f_start_hz").get<double>();
    cube.sweep.f_end_hz = s.at("f_end_hz").get<double>();
    cube.sweep.n_freq = s.at("n_freq").get<std::size_t>();
    cube.pixels.resize(cube.grid.size());
    cube.errors.assign(cube.grid.size(), "missing from index");
    for (const json& p : index.at("pixels")) {
      const std::size_t idx = cube.grid.index(p.at("ix").get<std::size_t>(), p.at("iy").get<std::size_t>());
      if (idx >= cube.grid.size()) throw IoError("cube index: pixel outside grid");
      if (p.contains("file")) {
        cube.pixels[idx] = read_spectrum_csv(dir / p.at("file").get<std::string>());
        cube.errors[idx].clear();
      } else {
        cube.errors[idx] = p.value("error", std::string("unknown error"));
      }
    }
    return cube;
  } catch (const json::exception& e) {
    throw IoError(std::string("cube index: ") + e.what());
  }
}

void write_cube_binary(const fs::path& path, const WidefieldCube& cube, const json& provenance) {
  std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
  const std::string header = json{{"format", kCubeFormat},
                                  {"provenance", provenance},
                                  {"grid", cube.grid},
                                  {"sweep", cube.sweep},
                                  {"errors", cube.errors}}
                                 .dump();
  out.write(kCubeMagic.data(), kCubeMagic.size());
  put_u32(out, kCubeVersion);
  put_u32(out, 0);
  put_u64(out, cube.grid.ny);
  put_u64(out, cube.grid.nx);
  put_u64(out, cube.sweep.n_freq);
  put_f64(out, cube.sweep.f_start_hz);
  put_f64(out, cube.sweep.f_end_hz);
  put_u64(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (std::size_t idx = 0; idx < cube.grid.size(); ++idx) {
    const bool good = cube.errors[idx].empty() && cube.pixels[idx].contrast.size() == cube.sweep.n_freq;
    for (std::size_t k = 0; k < cube.sweep.n_freq; ++k) {
      put_f64(out, good ? cube.pixels[idx].contrast[k] : std::numeric_limits<double>::quiet_NaN());
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

CubeData read_cube_binary(const fs::path& path) {
  std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCubeMagic) throw IoError(path.string() + ": not a binary cube");
  const auto version = static_cast<std::uint32_t>(get_le(in, 4));
  if (version != kCubeVersion) throw IoError(path.string() + ": unsupported cube version");
  (void)get_le(in, 4);
  CubeData c;
  c.ny = get_le(in, 8);
  c.nx = get_le(in, 8);
  c.n_freq = get_le(in, 8);
  c.f_start_hz = get_f64(in);
  c.f_end_hz = get_f64(in);
  const std::uint64_t header_len = get_le(in, 8);
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw IoError(path.string() + ": truncated header");
  try {
    c.header = json::parse(header);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": bad header JSON: " + e.what());
  }
  const std::uint64_t total = c.ny * c.nx * c.n_freq;
  c.contrast.resize(total);
  for (std::uint64_t i = 0; i < total; ++i) c.contrast[i] = get_f64(in);
  return c;
}

void write_field_map_csv(const fs::path& path, const std::vector<FieldMapRow>& rows,
                         const json& provenance) {
  std::ofstream out = open_out(path);
  out << kProvenancePrefix << provenance.dump() << '\n';
  out << "x_m,y_m,bx_t,by_t,bz_t\n";
  for (const auto& r : rows) {
    out << fmt(r.x_m) << ',' << fmt(r.y_m) << ',' << fmt(r.b.x()) << ',' << fmt(r.b.y()) << ','
        << fmt(r.b.z()) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_heatmap_csv(const fs::path& path, const FomHeatmap& heatmap, const json& provenance) {
  std::ofstream out = open_out(path);
  out << kProvenancePrefix << provenance.dump() << '\n';
  out << "p_laser_w,p_mw_w,contrast,linewidth_hz,fom\n";
  for (const auto& cell : heatmap.cells) {
    if (!cell) continue;
    out << fmt(cell->laser_power_w) << ',' << fmt(cell->mw_power_w) << ',' << fmt(cell->contrast)
        << ',' << fmt(cell->linewidth_hz) << ',' << fmt(cell->fom) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace nvodmr
