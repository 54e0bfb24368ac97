#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nvodmr/optimize.hpp"
#include "nvodmr/reconstruct.hpp"
#include "nvodmr/spectrum.hpp"
#include "nvodmr/widefield.hpp"

namespace nvodmr {

// JSON snapshots used for provenance. Units are SI and spelled out in the
// key names.
void to_json(nlohmann::json& j, const ApparatusConfig& a);
void to_json(nlohmann::json& j, const NoiseConfig& n);
void to_json(nlohmann::json& j, const SweepGrid& s);
void to_json(nlohmann::json& j, const GridGeometry& g);
void to_json(nlohmann::json& j, const ReconstructionResult& r);
void to_json(nlohmann::json& j, const FomPoint& p);

inline constexpr const char* kSpectrumFormat = "nvodmr.spectrum/1";
inline constexpr const char* kCubeFormat = "nvodmr.cube/1";

/// CSV with a leading "# provenance: {json}" line, then
/// freq_hz,contrast[,photons].
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum);
Spectrum read_spectrum_csv(const std::filesystem::path& path);

/// {"format", "metadata", "freqs_hz", "contrast"[, "photon_counts"]}.
nlohmann::json spectrum_to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const nlohmann::json& j);
void write_spectrum_json(const std::filesystem::path& path, const Spectrum& spectrum);
Spectrum read_spectrum_json(const std::filesystem::path& path);

/// Dispatches on the extension (.json, otherwise CSV).
Spectrum read_spectrum(const std::filesystem::path& path);

/// index.json manifest plus pixel_x{ix}_y{iy}.csv for every good pixel.
void write_cube_directory(const std::filesystem::path& dir, const WidefieldCube& cube,
                          const nlohmann::json& provenance);
WidefieldCube read_cube_directory(const std::filesystem::path& dir);

/// Flat cube: "NVODMRCB", u32 version, u32 reserved, u64 ny, nx, n_freq,
/// f64 f_start, f_end, u64 header length + JSON header, then little-endian
/// f64 contrast in row-major [y][x][freq]. Failed pixels are NaN.
struct CubeData {
  std::uint64_t ny = 0;
  std::uint64_t nx = 0;
  std::uint64_t n_freq = 0;
  double f_start_hz = 0.0;
  double f_end_hz = 0.0;
  nlohmann::json header;
  std::vector<double> contrast;

  double at(std::size_t iy, std::size_t ix, std::size_t k) const {
    return contrast[(iy * nx + ix) * n_freq + k];
  }
};

void write_cube_binary(const std::filesystem::path& path, const WidefieldCube& cube,
                       const nlohmann::json& provenance);
CubeData read_cube_binary(const std::filesystem::path& path);

struct FieldMapRow {
  double x_m = 0.0;
  double y_m = 0.0;
  FieldVector b = FieldVector::Zero();
};

/// x_m,y_m,bx_t,by_t,bz_t with a provenance line.
void write_field_map_csv(const std::filesystem::path& path, const std::vector<FieldMapRow>& rows,
                         const nlohmann::json& provenance);

/// p_laser_w,p_mw_w,contrast,linewidth_hz,fom; failed cells are omitted.
void write_heatmap_csv(const std::filesystem::path& path, const FomHeatmap& heatmap,
                       const nlohmann::json& provenance);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace nvodmr
