#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mindiag/metric.hpp"
#include "mindiag/raster.hpp"

namespace mindiag {

// Annulus around the hub, rasterized over its bounding square with
// `resolution` pixels per side.
struct AnnulusConfig {
  PlanarPoint hub;
  double inner = 1.0;
  double outer = 18.0;
  int resolution = 512;

  // Throws InputError unless 0 < inner < outer and resolution >= 2.
  void validate() const;
  Rect window() const;
  double pixel_size() const { return 2.0 * outer / resolution; }
  bool contains(PlanarPoint p) const;
};

// Radius e^L with L uniform on [ln inner, ln outer], angle uniform on
// [0, 2 pi). Deterministic for a given seed.
std::vector<PlanarPoint> sample_exponential(const AnnulusConfig& cfg, int n, std::uint64_t seed);

// Uniform by area over the annulus; the control initialization.
std::vector<PlanarPoint> sample_uniform_area(const AnnulusConfig& cfg, int n,
                                             std::uint64_t seed);

// 1 / d(q, o)^2.
double pixel_weight(const AnnulusConfig& cfg, PlanarPoint q);

// sum over q of d_o(p, q)^2 / d(q, o)^2.
double cell_objective(const AnnulusConfig& cfg, std::span<const PlanarPoint> pixels,
                      PlanarPoint p);

// Approximate minimizer of cell_objective by compass search inside the
// annulus. Starts from the better of `current` and the exponential image of
// the mean log-plane position of the pixels (angles unwrapped around
// `current`), with step 1/8 of the pixels' bounding-box diagonal, halving
// until it drops below half a pixel. Never worse than either start.
// Throws InputError for an empty cell.
PlanarPoint weighted_centroid(const AnnulusConfig& cfg, std::span<const PlanarPoint> pixels,
                              PlanarPoint current);

// Each annulus pixel labeled with the site of least smoothed distance
// (lowest index on ties); other pixels are kOutside.
RasterDiagram smoothed_assignment(const AnnulusConfig& cfg, std::span<const PlanarPoint> sites);

// Objective of an assignment: sum over labeled pixels of
// d_o(site, pixel)^2 / d(pixel, o)^2.
double assignment_objective(const AnnulusConfig& cfg, const RasterDiagram& r);

struct LloydState {
  std::vector<PlanarPoint> sites;
  int iteration = 0;
  double objective = 0.0;
  std::uint64_t seed = 0;
};

// State for the given sites: collisions resolved and objective evaluated.
LloydState make_lloyd_state(const AnnulusConfig& cfg, std::vector<PlanarPoint> sites,
                            std::uint64_t seed);

// Assign, move every site to its weighted centroid, resolve collisions,
// re-evaluate. Throws NumericError naming a site whose cell has no pixel.
LloydState lloyd_step(const LloydState& state, const AnnulusConfig& cfg);

// Coefficient of variation (population std / mean) of each site's smallest
// smoothed distance to another site. 0 for fewer than two sites.
double spacing_cv(const AnnulusConfig& cfg, std::span<const PlanarPoint> sites);

struct LloydFrame {
  int iteration = 0;
  std::vector<PlanarPoint> sites;
  double objective = 0.0;
  double spacing_cv = 0.0;
};

enum class InitialSampling { Exponential, UniformArea };

// Frames 0..iterations; frame 0 is the initial sample.
std::vector<LloydFrame> run_lloyd(const AnnulusConfig& cfg, int n, int iterations,
                                  std::uint64_t seed,
                                  InitialSampling init = InitialSampling::Exponential);

}  // namespace mindiag
