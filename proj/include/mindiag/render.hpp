#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mindiag/geometry.hpp"
#include "mindiag/raster.hpp"

namespace mindiag {

struct Style {
  std::string stroke = "black";
  double stroke_width = 1.0;  // in output pixels
  std::string fill = "none";
};

struct PolylineElement {
  Polyline points;
  bool closed = false;
  Style style;
};

struct MarkerElement {
  PlanarPoint at;
  double radius = 3.0;  // in output pixels
  Style style{"black", 1.0, "black"};
};

// Labels drawn as colored runs; kOutside pixels are left to the background.
struct RasterUnderlay {
  RasterDiagram raster;
};

using SceneElement = std::variant<PolylineElement, MarkerElement, RasterUnderlay>;

struct Scene {
  Rect window;
  std::string background = "white";
  std::vector<SceneElement> elements;

  void add_polyline(Polyline points, bool closed = false, Style style = {});
  void add_marker(PlanarPoint at, double radius = 3.0, Style style = {"black", 1.0, "black"});
  void add_raster(RasterDiagram raster);
};

// Parts of the polyline inside the window, split where it leaves and
// re-enters. A closed polyline is treated as ending at its first point.
std::vector<Polyline> clip_polyline(const Polyline& points, bool closed, const Rect& window);

// Deterministic SVG 1.1 document of the scene mapped onto width x height
// pixels, mathematical up being image up. Polylines are clipped to the
// window (one path element per clipped part) and markers outside it are
// dropped. Throws InputError for non-positive dimensions or an empty window.
std::string render_svg(const Scene& scene, int width, int height);

// Fill color for a raster label, as #rrggbb.
std::string label_color(int label);

}  // namespace mindiag
