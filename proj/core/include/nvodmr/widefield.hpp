#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nvodmr/spectrum.hpp"

namespace nvodmr {

struct GridGeometry {
  std::size_t nx = 8;
  std::size_t ny = 8;
  double pitch_m = 3e-6;
  /// Beam center relative to the grid center.
  double beam_center_x_m = 0.0;
  double beam_center_y_m = 0.0;

  /// Pixel center coordinates relative to the grid center.
  double x_m(std::size_t ix) const;
  double y_m(std::size_t iy) const;
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
  std::size_t size() const { return nx * ny; }
  void validate() const;
};

struct WidefieldCube {
  GridGeometry grid;
  SweepGrid sweep;
  /// Row-major [iy][ix]; a failed pixel has empty arrays and a message in
  /// `errors` at the same index.
  std::vector<Spectrum> pixels;
  std::vector<std::string> errors;

  const Spectrum& at(std::size_t ix, std::size_t iy) const { return pixels[grid.index(ix, iy)]; }
  bool ok(std::size_t ix, std::size_t iy) const { return errors[grid.index(ix, iy)].empty(); }
  std::size_t failures() const;
};

using FieldFunction = std::function<FieldVector(double x_m, double y_m)>;

/// Each pixel sees the laser power scaled by the Gaussian beam profile at its
/// center and its own noise streams (pixel index = iy * nx + ix). Results do
/// not depend on `threads`.
WidefieldCube simulate_widefield(const FieldFunction& field, const ApparatusConfig& apparatus,
                                 const NoiseConfig& noise, const SweepGrid& sweep,
                                 const GridGeometry& grid, unsigned threads = 1);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
/// thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace nvodmr
