#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mindiag/geometry.hpp"
#include "mindiag/raster.hpp"

namespace mindiag {

// Piece of a cell boundary, traversed counterclockwise around the cell.
struct BoundaryPiece {
  PlanarPoint from;
  PlanarPoint to;
  // Site across the piece, or kFrame for a piece of the window border.
  int neighbor = -1;

  static constexpr int kFrame = -1;
};

struct DiagramCell {
  int site = 0;
  std::vector<BoundaryPiece> boundary;
};

struct DiagramVertex {
  PlanarPoint point;
  // Sorted indices of the three sites meeting here.
  std::array<int, 3> sites{};
};

// Minimization diagram clipped to a window. cells[i] belongs to sites[i].
struct MinDiagram {
  FunctionPair pair;
  Rect window;
  std::vector<PlanarPoint> sites;
  std::vector<int> insertion_order;
  std::vector<DiagramCell> cells;
  // Sorted by site triple.
  std::vector<DiagramVertex> vertices;
  // Pairs (i, j), i < j, sharing a boundary arc; sorted.
  std::vector<std::pair<int, int>> adjacency;
};

// Randomized incremental construction. Sites are inserted in an order drawn
// from `seed`; each insertion walks the cells whose boundary has nodes closer
// to the new site and cuts them along the new bisectors. Requires profiles
// defined on the whole line and sites strictly inside the window (default:
// default_window(sites)). Throws DegeneracyError when a new vertex lands
// within 1e-9 of an existing boundary node.
MinDiagram build_incremental(const FunctionPair& pair, std::span<const PlanarPoint> sites,
                             std::uint64_t seed, std::optional<Rect> window = {});

struct FeatureCounts {
  int cells = 0;
  // Bisector arcs; arcs cut by the window count once.
  int arcs = 0;
  int vertices = 0;
};

FeatureCounts feature_counts(const MinDiagram& d);

// Closed polygon of a cell with curved pieces subdivided until consecutive
// points are at most max_step apart.
Polyline cell_polygon(const MinDiagram& d, int site, double max_step);

// Fraction of raster pixels whose label differs from the analytic cell
// containing the pixel center, ignoring pixels within 2 pixels of a bisector
// arc. Throws InputError if the two diagrams have different sites.
double verify_against_raster(const MinDiagram& d, const RasterDiagram& r);

}  // namespace mindiag
