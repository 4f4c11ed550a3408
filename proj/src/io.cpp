#include "mindiag/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mindiag/errors.hpp"

namespace mindiag {

using nlohmann::json;

std::vector<PlanarPoint> parse_points(std::istream& in) {
  std::vector<PlanarPoint> pts;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double x = 0.0, y = 0.0;
    std::string extra;
    if (!(fields >> x >> y) || (fields >> extra) || !std::isfinite(x) || !std::isfinite(y)) {
      throw InputError("line " + std::to_string(number) + ": expected two numbers, got '" + line +
                       "'");
    }
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<PlanarPoint> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file " + path);
  try {
    return parse_points(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json point_json(PlanarPoint p) { return json::array({p.x, p.y}); }

json polyline_json(const Polyline& line) {
  json out = json::array();
  for (const PlanarPoint& p : line) out.push_back(point_json(p));
  return out;
}

json diagram_json(const MinDiagram& d, double max_step) {
  json out;
  out["sites"] = polyline_json(d.sites);
  out["vertices"] = json::array();
  for (const DiagramVertex& v : d.vertices) {
    out["vertices"].push_back(
        {{"point", point_json(v.point)}, {"triple", {v.sites[0], v.sites[1], v.sites[2]}}});
  }
  out["adjacency"] = json::array();
  for (const auto& [i, j] : d.adjacency) out["adjacency"].push_back({i, j});
  out["cells"] = json::array();
  for (const DiagramCell& c : d.cells) {
    out["cells"].push_back(
        {{"site", c.site}, {"boundary", polyline_json(cell_polygon(d, c.site, max_step))}});
  }
  return out;
}

json smoothed_json(const SmoothedDiagram& d) {
  json out;
  out["sites"] = polyline_json(d.network.leaves);
  out["origin"] = point_json(d.network.hub);
  out["annulus"] = {d.annulus.inner, d.annulus.outer};
  out["resolution"] = d.raster.nx;
  out["adjacency"] = json::array();
  for (const auto& [i, j] : d.adjacency) out["adjacency"].push_back({i, j});
  out["angle_ok"] = d.angle_ok;
  json angles = json::array(), slack = json::array();
  for (std::size_t i = 0; i < d.angles.max_angle.size(); ++i) {
    // JSON has no infinity; an empty cell reports null.
    if (std::isfinite(d.angles.max_angle[i])) {
      angles.push_back(d.angles.max_angle[i]);
    } else {
      angles.push_back(nullptr);
    }
    slack.push_back(d.angles.slack[i]);
  }
  out["max_angle"] = angles;
  out["slack"] = slack;
  return out;
}

json dilation_json(const DilationPair& p, const std::string& method) {
  return {{"pair", {p.i, p.j}}, {"value", p.value}, {"method", method}};
}

json lloyd_metrics_json(std::span<const LloydFrame> frames) {
  json out = json::array();
  for (const LloydFrame& f : frames) {
    out.push_back(
        {{"iteration", f.iteration}, {"objective", f.objective}, {"spacing_cv", f.spacing_cv}});
  }
  return out;
}

json admissibility_json(const AdmissibilityReport& r) {
  json out{{"profile", r.profile},
           {"interval", {r.interval.lo, r.interval.hi}},
           {"samples", r.samples},
           {"min_margin", r.min_margin},
           {"admissible", r.admissible()}};
  out["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
  return out;
}

}  // namespace mindiag
