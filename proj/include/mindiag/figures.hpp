#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mindiag/geometry.hpp"
#include "mindiag/lloyd.hpp"
#include "mindiag/metric.hpp"
#include "mindiag/render.hpp"

namespace mindiag {

// {q : d_o(p, q) = radius}, one point per ray from p at `samples` equally
// spaced angles: the first crossing of the level along each ray. Requires
// 0 < radius < 1 and p != o.
Polyline smoothed_circle(const OriginAnchoredMetric& m, PlanarPoint p, double radius,
                         int samples);

// {(x, y) : delta((x, y), (0, 0)) = radius} in the log plane, by first
// crossings along rays from the origin. All points satisfy |y| < pi.
Polyline delta_circle(const OriginAnchoredMetric& m, double radius, int samples);

// Whether a closed polygon turns the same way at every vertex.
bool convex_position(const Polyline& closed);

struct CurveFamily {
  std::vector<double> levels;
  std::vector<Polyline> curves;
};

// Smoothed-distance circles around p = (1, 0) with hub (0, 0) at radii
// 0.5, 0.6, 0.7, 0.8, 0.9.
CurveFamily figure1_curves(int samples = 720);
// Delta circles in the log plane at radii 0.5, 0.75, 0.9, 0.99, 0.999.
CurveFamily figure2_curves(int samples = 720);

struct Figure3Data {
  CurveFamily levels;  // exp-square level sets at 2.5 ... 160 around the origin
  Polyline translated;  // the 2.5 level set moved along the diagonal
  PlanarPoint shift;
  CrossingCount crossings;  // of the translated curve with the 160 level set
};
Figure3Data figure3_data(int samples = 720);

Scene figure1_scene(const CurveFamily& f);
Scene figure2_scene(const CurveFamily& f);
Scene figure3_scene(const Figure3Data& d);

// One Lloyd frame: cells as a colored underlay, annulus outline, sites as
// large filled dots, next centroids (if any) as small hollow dots.
Scene lloyd_frame_scene(const AnnulusConfig& cfg, std::span<const PlanarPoint> sites,
                        std::span<const PlanarPoint> next_sites);

struct FigureParams {
  std::uint64_t seed = 1;
  int resolution = 512;
  int lloyd_sites = 128;
  int lloyd_iterations = 16;
  int svg_size = 800;
};

struct FigureFile {
  std::string name;
  std::string content;
};

// Files of fig1, fig2, fig3 or fig6 (SVG, plus metrics JSON for fig6).
// Throws InputError for any other name.
std::vector<FigureFile> figure_files(const std::string& name, const FigureParams& params);

}  // namespace mindiag
