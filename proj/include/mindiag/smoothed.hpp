#pragma once

#include <utility>
#include <vector>

#include "mindiag/metric.hpp"
#include "mindiag/raster.hpp"

namespace mindiag {

// Star graph: every leaf is joined to the hub and nothing else.
struct StarNetwork {
  PlanarPoint hub;
  std::vector<PlanarPoint> leaves;

  // Throws DomainError for a leaf at the hub, InputError for repeated leaves
  // or non-finite coordinates.
  void validate() const;
};

// Closed annulus inner <= |q - hub| <= outer.
struct Annulus {
  double inner = 1.0;
  double outer = 2.0;
};

// Unsigned angle between p - hub and q - hub, in [0, pi].
double hub_angle(PlanarPoint hub, PlanarPoint p, PlanarPoint q);

// D(p, q) = g(ln(|p - o| / |q - o|)) + h(angle poq) with g = smoothed-g and
// h = extended-h. Agrees with smoothed_to_f(d_o(p, q)) while the angle is at
// most pi/2. Throws DomainError when p or q is the hub.
double modified_distance(PlanarPoint hub, PlanarPoint p, PlanarPoint q);
inline double modified_distance(const StarNetwork& net, PlanarPoint p, PlanarPoint q) {
  return modified_distance(net.hub, p, q);
}

struct AngleReport {
  // Per leaf: largest angle (leaf, hub, pixel) over the pixels of its cell,
  // and the one-pixel slack at the cell's innermost radius. A leaf whose cell
  // has no pixel gets max_angle = +inf.
  std::vector<double> max_angle;
  std::vector<double> slack;
  // Largest max_angle - slack - pi/2 over cells.
  double worst_excess = 0.0;
  int worst_cell = -1;
  bool ok = false;
};

struct SmoothedDiagram {
  StarNetwork network;
  Annulus annulus;
  // Square window of side 2 * outer around the hub; pixels outside the
  // annulus are RasterDiagram::kOutside.
  RasterDiagram raster;
  // Leaf pairs (i < j) separated by at least kMinBoundaryPairs 4-neighbour
  // pixel pairs, sorted.
  std::vector<std::pair<int, int>> adjacency;
  AngleReport angles;
  bool angle_ok = false;

  static constexpr int kMinBoundaryPairs = 3;
};

// Labels every annulus pixel with the leaf minimizing modified_distance
// (lowest index on ties), then extracts adjacency and runs the angle check.
// Throws InputError when 0 < inner < outer fails, when a leaf lies outside
// the annulus, or when resolution < 2.
SmoothedDiagram build_smoothed_voronoi(const StarNetwork& net, Annulus annulus, int resolution);

// Every pixel of a cell must see its leaf at an angle of at most pi/2 plus
// the angle subtended by one pixel diagonal at the cell's innermost radius.
AngleReport check_angle_condition(const SmoothedDiagram& d);

struct DilationPair {
  int i = -1;
  int j = -1;
  double value = 0.0;
};

// Exhaustive maximum of (|p-o| + |o-q|) / |p-q| over leaf pairs; the
// lexicographically first pair wins ties. Needs at least two leaves.
DilationPair max_dilation_pair_bruteforce(const StarNetwork& net);

// The same maximum restricted to adjacent cells. Throws InputError unless the
// diagram passed the angle check.
DilationPair max_dilation_pair_via_diagram(const SmoothedDiagram& d);

}  // namespace mindiag
