#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mindiag/diagram.hpp"
#include "mindiag/lloyd.hpp"
#include "mindiag/profile.hpp"
#include "mindiag/smoothed.hpp"

namespace mindiag {

// Point files: one point per line as two whitespace-separated decimals;
// lines starting with '#' and blank lines are skipped. Throws InputError
// naming the offending line.
std::vector<PlanarPoint> parse_points(std::istream& in);
std::vector<PlanarPoint> read_points_file(const std::string& path);

nlohmann::json point_json(PlanarPoint p);
nlohmann::json polyline_json(const Polyline& line);

// {sites, vertices: [{point, triple}], adjacency, cells: [{site, boundary}]},
// cell boundaries subdivided to max_step.
nlohmann::json diagram_json(const MinDiagram& d, double max_step);

// {sites, origin, annulus, resolution, adjacency, angle_ok, max_angle, slack}.
nlohmann::json smoothed_json(const SmoothedDiagram& d);

// {pair: [i, j], value, method}.
nlohmann::json dilation_json(const DilationPair& p, const std::string& method);

// [{iteration, objective, spacing_cv}].
nlohmann::json lloyd_metrics_json(std::span<const LloydFrame> frames);

nlohmann::json admissibility_json(const AdmissibilityReport& r);

}  // namespace mindiag
