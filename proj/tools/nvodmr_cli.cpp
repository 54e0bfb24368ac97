#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "nvodmr/config.hpp"
#include "nvodmr/error.hpp"
#include "nvodmr/filters.hpp"
#include "nvodmr/io.hpp"
#include "nvodmr/optimize.hpp"
#include "nvodmr/peaks.hpp"
#include "nvodmr/reconstruct.hpp"
#include "nvodmr/spectrum.hpp"
#include "nvodmr/widefield.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nvodmr;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool no_noise = false;
  std::string input;
  std::string reference;
};

struct Run {
  RunConfig config;
  json provenance;
  fs::path out;
};

Run resolve(const CommonFlags& f) {
  Run r;
  r.config = f.config.empty() ? parse_config_string("") : parse_config(f.config);
  if (f.seed) r.config.seed = *f.seed;
  if (f.out) r.config.out_dir = *f.out;
  if (f.threads) {
    if (*f.threads < 1) throw ConfigError("--threads", "must be >= 1");
    r.config.threads = *f.threads;
  }
  if (f.no_noise) {
    const std::uint64_t keep = r.config.noise.seed;
    r.config.noise = NoiseConfig::disabled();
    r.config.noise.seed = keep;
  }
  if (!r.config.seed) {
    r.config.seed = std::random_device{}() | (static_cast<std::uint64_t>(std::random_device{}()) << 32);
    std::cout << "seed: " << *r.config.seed << " (generated)\n";
  }
  r.config.noise.seed = *r.config.seed;
  validate(r.config);
  r.provenance = {{"tool", "nvodmr"}, {"config", config_to_json(r.config)}};
  if (!f.config.empty()) r.provenance["config_path"] = f.config;
  r.out = r.config.out_dir;
  fs::create_directories(r.out);
  return r;
}

FieldVector measured_field(const RunConfig& c) { return c.field_t + c.bias_t; }

void stamp(Spectrum& s, const json& provenance) { s.metadata["provenance"] = provenance; }

int cmd_simulate(const CommonFlags& f) {
  Run r = resolve(f);
  Spectrum s = simulate_spectrum(measured_field(r.config), r.config.apparatus, r.config.noise, r.config.sweep);
  stamp(s, r.provenance);
  write_spectrum_csv(r.out / "spectrum.csv", s);
  write_spectrum_json(r.out / "spectrum.json", s);
  std::cout << "wrote " << (r.out / "spectrum.csv").string() << " (" << s.size() << " points)\n";
  return 0;
}

int cmd_widefield(const CommonFlags& f) {
  Run r = resolve(f);
  const RunConfig& c = r.config;
  const FieldFunction field = [&c](double x, double y) -> FieldVector { return c.field_at(x, y) + c.bias_t; };
  const WidefieldCube cube = simulate_widefield(field, c.apparatus, c.noise, c.sweep, c.grid, c.threads);
  write_cube_directory(r.out / "cube", cube, r.provenance);
  write_cube_binary(r.out / "cube.bin", cube, r.provenance);
  std::cout << "wrote " << cube.grid.size() << " pixels to " << (r.out / "cube").string() << " ("
            << cube.failures() << " failed)\n";
  return cube.failures() == 0 ? 0 : 1;
}

ReconstructionResult reconstruct_one(const Spectrum& s, const RunConfig& c) {
  PeakSearchOptions o;
  o.prominence = c.reconstruct.relative_prominence * *std::max_element(s.contrast.begin(), s.contrast.end());
  const std::vector<double> centers = find_and_fit_peaks(s, o, 8);
  std::array<double, 8> cc{};
  std::copy(centers.begin(), centers.end(), cc.begin());
  return reconstruct_field(cc, calibrate_bias(c.bias_t), c.bias_t, gamma_nv(constants::kGFactor),
                           c.reconstruct.axis_order);
}

int cmd_reconstruct(const CommonFlags& f) {
  Run r = resolve(f);
  const std::string input = f.input.empty() ? r.config.reconstruct.input : f.input;
  if (input.empty()) throw ConfigError("reconstruct.input", "no input spectrum or cube given");
  json report{{"provenance", r.provenance}, {"input", input}};
  std::vector<FieldMapRow> rows;
  int status = 0;

  if (fs::is_directory(input)) {
    const WidefieldCube cube = read_cube_directory(input);
    json pixels = json::array();
    for (std::size_t iy = 0; iy < cube.grid.ny; ++iy) {
      for (std::size_t ix = 0; ix < cube.grid.nx; ++ix) {
        json entry{{"ix", ix}, {"iy", iy}};
        if (!cube.ok(ix, iy)) {
          entry["error"] = cube.errors[cube.grid.index(ix, iy)];
          status = 1;
        } else {
          try {
            const ReconstructionResult res = reconstruct_one(cube.at(ix, iy), r.config);
            entry["result"] = res;
            rows.push_back({cube.grid.x_m(ix), cube.grid.y_m(iy), res.b_actual});
          } catch (const Error& e) {
            entry["error"] = e.what();
            status = 1;
          }
        }
        pixels.push_back(entry);
      }
    }
    report["pixels"] = pixels;
  } else {
    const ReconstructionResult res = reconstruct_one(read_spectrum(input), r.config);
    report["result"] = res;
    const FieldVector truth = r.config.field_t;
    report["error_vs_config_t"] = {std::abs(res.b_actual.x() - truth.x()), std::abs(res.b_actual.y() - truth.y()),
                                   std::abs(res.b_actual.z() - truth.z())};
    rows.push_back({0.0, 0.0, res.b_actual});
    std::cout << "B = (" << res.b_actual.x() * 1e6 << ", " << res.b_actual.y() * 1e6 << ", "
              << res.b_actual.z() * 1e6 << ") uT\n";
  }
  write_json(r.out / "reconstruction.json", report);
  write_field_map_csv(r.out / "field_map.csv", rows, r.provenance);
  return status;
}

int cmd_denoise(const CommonFlags& f) {
  Run r = resolve(f);
  const RunConfig& c = r.config;
  const std::string input = f.input.empty() ? c.denoise.input : f.input;
  Spectrum noisy;
  Spectrum reference;
  if (input.empty()) {
    noisy = simulate_spectrum(measured_field(c), c.apparatus, c.noise, c.sweep);
  } else {
    noisy = read_spectrum(input);
  }
  if (!f.reference.empty()) {
    reference = read_spectrum(f.reference);
  } else {
    // noiseless model of the configured field on the input grid
    if (noisy.size() < 2) throw InvalidArgument("denoise: input needs at least 2 points");
    const SweepGrid grid{noisy.freqs_hz.front(), noisy.freqs_hz.back(), noisy.size()};
    reference = simulate_spectrum(measured_field(c), c.apparatus, NoiseConfig::disabled(), grid);
  }
  if (reference.size() != noisy.size()) throw InvalidArgument("denoise: reference length differs from input");

  const double raw = snr_of_spectrum(noisy, reference);
  json gaussian = json::array();
  double best_snr = -1e300;
  double best_sigma = 0.0;
  for (double sigma : c.denoise.sigmas) {
    const double snr = snr_db(gaussian_filter_1d(noisy.contrast, sigma), reference.contrast);
    gaussian.push_back({{"sigma", sigma}, {"snr_db", snr}});
    if (snr > best_snr) {
      best_snr = snr;
      best_sigma = sigma;
    }
  }
  Spectrum gd = noisy;
  gd.contrast = gaussian_filter_1d(noisy.contrast, best_sigma);
  gd.photon_counts.clear();
  Spectrum bf = noisy;
  bf.contrast = bilateral_filter_1d(noisy.contrast, c.denoise.bilateral_sigma_s, c.denoise.bilateral_sigma_r,
                                    c.denoise.bilateral_window);
  bf.photon_counts.clear();
  stamp(gd, r.provenance);
  stamp(bf, r.provenance);
  gd.metadata["filter"] = {{"type", "gaussian"}, {"sigma", best_sigma}};
  bf.metadata["filter"] = {{"type", "bilateral"},
                           {"sigma_s", c.denoise.bilateral_sigma_s},
                           {"sigma_r", c.denoise.bilateral_sigma_r},
                           {"window", c.denoise.bilateral_window}};
  write_spectrum_csv(r.out / "denoised_gaussian.csv", gd);
  write_spectrum_csv(r.out / "denoised_bilateral.csv", bf);

  const json report{{"provenance", r.provenance},
                    {"input", input.empty() ? json("simulated") : json(input)},
                    {"raw_snr_db", raw},
                    {"gaussian", gaussian},
                    {"best_sigma", best_sigma},
                    {"best_gain_db", best_snr - raw},
                    {"bilateral_snr_db", snr_of_spectrum(bf, reference)}};
  write_json(r.out / "snr_report.json", report);
  std::cout << "raw SNR " << raw << " dB; best Gaussian sigma " << best_sigma << " -> " << best_snr << " dB\n";
  return 0;
}

int cmd_sweep_fom(const CommonFlags& f) {
  Run r = resolve(f);
  const RunConfig& c = r.config;
  const FomHeatmap map = sweep_fom(c.fom.laser_powers_w, c.fom.mw_powers_w, measured_field(c), c.apparatus,
                                   c.noise, c.sweep, c.fom.options, c.threads);
  write_heatmap_csv(r.out / "heatmap.csv", map, r.provenance);
  json summary{{"provenance", r.provenance}, {"failures", map.failures()}, {"errors", map.errors}};
  if (const auto best = map.argmax()) {
    summary["best"] = *map.at(best->first, best->second);
    std::cout << "best FOM at P_laser = " << map.laser_powers_w[best->first]
              << " W, P_mw = " << map.mw_powers_w[best->second] << " W\n";
  }
  write_json(r.out / "fom.json", summary);
  return map.failures() == 0 ? 0 : 1;
}

int cmd_selftest() {
  int failed = 0;
  for (int id = 1; id <= acceptance::kCriteria; ++id) {
    const acceptance::CriterionResult res = acceptance::run_criterion(id);
    std::cout << acceptance::format(res) << std::endl;
    if (!res.passed) ++failed;
  }
  std::cout << (acceptance::kCriteria - failed) << "/" << acceptance::kCriteria << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "INI run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "root seed (generated and printed when omitted)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_flag("--no-noise", f.no_noise, "disable every noise source");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-center ensemble ODMR simulator"};
  app.require_subcommand(1);
  CommonFlags f;

  auto* simulate = app.add_subcommand("simulate", "simulate one ensemble spectrum");
  auto* widefield = app.add_subcommand("widefield", "simulate a wide-field spectral cube");
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruct B from a spectrum or cube");
  auto* denoise = app.add_subcommand("denoise", "Gaussian and bilateral filtering with an SNR report");
  auto* fom = app.add_subcommand("sweep-fom", "contrast/linewidth heatmap over laser and MW power");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  for (auto* cmd : {simulate, widefield, reconstruct, denoise, fom}) add_common(cmd, f);
  reconstruct->add_option("--input", f.input, "spectrum file (.csv/.json) or cube directory");
  denoise->add_option("--input", f.input, "noisy spectrum (simulated from the config when omitted)");
  denoise->add_option("--reference", f.reference, "clean reference spectrum for SNR");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*simulate) return cmd_simulate(f);
    if (*widefield) return cmd_widefield(f);
    if (*reconstruct) return cmd_reconstruct(f);
    if (*denoise) return cmd_denoise(f);
    if (*fom) return cmd_sweep_fom(f);
    if (*selftest) return cmd_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.field() << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
