#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mindiag/geometry.hpp"

namespace mindiag {

// Pixel-labeled nearest-site diagram. Row 0 is the bottom row (y = y0).
struct RasterDiagram {
  static constexpr int kOutside = -1;

  Rect window;
  int nx = 0;
  int ny = 0;
  std::vector<int> labels;
  std::vector<PlanarPoint> sites;

  int at(int ix, int iy) const { return labels[static_cast<std::size_t>(iy) * nx + ix]; }
  double pixel_width() const { return window.width() / nx; }
  double pixel_height() const { return window.height() / ny; }
  PlanarPoint pixel_center(int ix, int iy) const {
    return {window.x0 + (ix + 0.5) * pixel_width(), window.y0 + (iy + 0.5) * pixel_height()};
  }
  // Pixel containing p, or nullopt outside the window.
  std::optional<std::pair<int, int>> pixel_of(PlanarPoint p) const;
};

// Labels each pixel with the argmin over sites of cost(site index, pixel
// center), lowest index on ties. A pixel where any cost is not finite gets
// kOutside.
RasterDiagram build_raster_by(std::span<const PlanarPoint> sites, const Rect& window, int nx,
                              int ny,
                              const std::function<double(int, PlanarPoint)>& cost);

// Minimization diagram of f_site over a resolution x resolution grid.
// Exploits f = g + h: one table of g per column and h per row.
RasterDiagram build_raster(const FunctionPair& pair, std::span<const PlanarPoint> sites,
                           const Rect& window, int resolution);

struct CellTopology {
  int pixels = 0;
  // 4-connected components of the cell.
  int components = 0;
  // 8-connected components of the complement that do not reach the frame.
  int holes = 0;

  bool simply_connected() const { return components == 1 && holes == 0; }
};

// One report per site. Requires at least 128 pixels along each axis.
// A wedge thinner than a pixel can leave isolated pixels near its tip, which
// count as separate components.
std::vector<CellTopology> raster_cell_topology(const RasterDiagram& r);

// 4-connected pieces of one cell, each a list of pixel indices iy * nx + ix.
std::vector<std::vector<int>> raster_cell_pieces(const RasterDiagram& r, int label);

// Binary PGM of the labels, one gray level per site (kOutside is black),
// top row first.
std::string raster_to_pgm(const RasterDiagram& r);

}  // namespace mindiag
