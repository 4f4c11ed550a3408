#include "mindiag/smoothed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "mindiag/errors.hpp"
#include "mindiag/profile.hpp"

namespace mindiag {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(PlanarPoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// |a - b| wrapped into [0, pi] for angles a, b in (-pi, pi].
double angle_gap(double a, double b) {
  double d = std::abs(a - b);
  if (d > kPi) d = 2.0 * kPi - d;
  return d;
}

}  // namespace

void StarNetwork::validate() const {
  if (!finite(hub)) throw InputError("hub coordinates must be finite");
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const PlanarPoint p = leaves[i];
    if (!finite(p)) throw InputError("leaf " + std::to_string(i) + " is not finite");
    if (p == hub) throw DomainError("leaf " + std::to_string(i) + " coincides with the hub");
    if (!seen.insert({p.x, p.y}).second) {
      throw InputError("leaf " + std::to_string(i) + " repeats an earlier leaf");
    }
  }
}

double hub_angle(PlanarPoint hub, PlanarPoint p, PlanarPoint q) {
  const PlanarPoint a = p - hub, b = q - hub;
  return std::atan2(std::abs(a.x * b.y - a.y * b.x), a.x * b.x + a.y * b.y);
}

double modified_distance(PlanarPoint hub, PlanarPoint p, PlanarPoint q) {
  if (p == hub || q == hub) throw DomainError("modified distance is undefined at the hub");
  const double ratio = std::log(distance(p, hub) / distance(q, hub));
  return smoothed_g_value(ratio) + extended_h_value(hub_angle(hub, p, q));
}

SmoothedDiagram build_smoothed_voronoi(const StarNetwork& net, Annulus annulus, int resolution) {
  net.validate();
  if (!(annulus.inner > 0.0 && annulus.inner < annulus.outer) || !std::isfinite(annulus.outer)) {
    throw InputError("annulus needs 0 < inner < outer");
  }
  if (resolution < 2) throw InputError("resolution must be at least 2");
  const PlanarPoint o = net.hub;
  const int n = static_cast<int>(net.leaves.size());
  std::vector<double> leaf_log(n), leaf_theta(n);
  for (int i = 0; i < n; ++i) {
    const double r = distance(net.leaves[i], o);
    if (r < annulus.inner || r > annulus.outer) {
      throw InputError("leaf " + std::to_string(i) + " lies outside the annulus");
    }
    leaf_log[i] = std::log(r);
    const PlanarPoint rel = net.leaves[i] - o;
    leaf_theta[i] = std::atan2(rel.y, rel.x);
  }

  SmoothedDiagram d;
  d.network = net;
  d.annulus = annulus;
  RasterDiagram& r = d.raster;
  r.window = {o.x - annulus.outer, o.y - annulus.outer, o.x + annulus.outer, o.y + annulus.outer};
  r.nx = r.ny = resolution;
  r.sites = net.leaves;
  r.labels.assign(static_cast<std::size_t>(resolution) * resolution, RasterDiagram::kOutside);
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const PlanarPoint rel = r.pixel_center(ix, iy) - o;
      const double rad = norm(rel);
      if (rad < annulus.inner || rad > annulus.outer || n == 0) continue;
      const double lr = std::log(rad);
      const double th = std::atan2(rel.y, rel.x);
      int best = 0;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double c =
            smoothed_g_value(leaf_log[i] - lr) + extended_h_value(angle_gap(leaf_theta[i], th));
        if (c < best_cost) {
          best_cost = c;
          best = i;
        }
      }
      r.labels[static_cast<std::size_t>(iy) * r.nx + ix] = best;
    }
  }

  std::map<std::pair<int, int>, int> boundary;
  auto touch = [&](int a, int b) {
    if (a < 0 || b < 0 || a == b) return;
    ++boundary[{std::min(a, b), std::max(a, b)}];
  };
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      if (ix + 1 < r.nx) touch(r.at(ix, iy), r.at(ix + 1, iy));
      if (iy + 1 < r.ny) touch(r.at(ix, iy), r.at(ix, iy + 1));
    }
  }
  for (const auto& [pair, count] : boundary) {
    if (count >= SmoothedDiagram::kMinBoundaryPairs) d.adjacency.push_back(pair);
  }

  d.angles = check_angle_condition(d);
  d.angle_ok = d.angles.ok;
  return d;
}

AngleReport check_angle_condition(const SmoothedDiagram& d) {
  const RasterDiagram& r = d.raster;
  const PlanarPoint o = d.network.hub;
  const int n = static_cast<int>(d.network.leaves.size());
  AngleReport rep;
  rep.max_angle.assign(n, -1.0);
  rep.slack.assign(n, 0.0);
  std::vector<double> min_radius(n, std::numeric_limits<double>::infinity());
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const int l = r.at(ix, iy);
      if (l < 0) continue;
      const PlanarPoint c = r.pixel_center(ix, iy);
      rep.max_angle[l] = std::max(rep.max_angle[l], hub_angle(o, d.network.leaves[l], c));
      min_radius[l] = std::min(min_radius[l], distance(c, o));
    }
  }
  const double diag = std::hypot(r.pixel_width(), r.pixel_height());
  rep.ok = n > 0;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (rep.max_angle[i] < 0.0) {
      rep.max_angle[i] = std::numeric_limits<double>::infinity();
    } else {
      rep.slack[i] = diag / min_radius[i];
    }
    const double excess = rep.max_angle[i] - rep.slack[i] - kPi / 2.0;
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      rep.worst_cell = i;
    }
    if (excess > 0.0) rep.ok = false;
  }
  return rep;
}

DilationPair max_dilation_pair_bruteforce(const StarNetwork& net) {
  net.validate();
  const int n = static_cast<int>(net.leaves.size());
  if (n < 2) throw InputError("dilation needs at least two leaves");
  const OriginAnchoredMetric m(net.hub);
  DilationPair best;
  best.value = -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = m.dilation(net.leaves[i], net.leaves[j]);
      if (v > best.value) best = {i, j, v};
    }
  }
  return best;
}

DilationPair max_dilation_pair_via_diagram(const SmoothedDiagram& d) {
  if (!d.angle_ok) {
    throw InputError("smoothed diagram fails the angle condition; adjacency is not reliable");
  }
  if (d.network.leaves.size() < 2) throw InputError("dilation needs at least two leaves");
  const OriginAnchoredMetric m(d.network.hub);
  DilationPair best;
  best.value = -1.0;
  // adjacency is sorted, so the first maximum is the lexicographically first.
  for (const auto& [i, j] : d.adjacency) {
    const double v = m.dilation(d.network.leaves[i], d.network.leaves[j]);
    if (v > best.value) best = {i, j, v};
  }
  if (best.i < 0) throw NumericError("smoothed diagram has no adjacent cells");
  return best;
}

}  // namespace mindiag
