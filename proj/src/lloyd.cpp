#include "mindiag/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "mindiag/errors.hpp"

namespace mindiag {

namespace {

constexpr double kPi = std::numbers::pi;

// d_o(p, q) with d(p, o) = rp and d(q, o) = rq already known.
double smoothed(PlanarPoint p, PlanarPoint q, double rp, double rq) {
  const double d = distance(p, q);
  return d == 0.0 ? 0.0 : 2.0 * d / (rp + rq + d);
}

struct WeightedPixels {
  std::vector<PlanarPoint> at;
  std::vector<double> radius;
  std::vector<double> weight;
};

WeightedPixels weigh(const AnnulusConfig& cfg, std::span<const PlanarPoint> pixels) {
  WeightedPixels w;
  w.at.assign(pixels.begin(), pixels.end());
  for (const PlanarPoint& q : pixels) {
    const double r = distance(q, cfg.hub);
    w.radius.push_back(r);
    w.weight.push_back(1.0 / (r * r));
  }
  return w;
}

double objective_of(const AnnulusConfig& cfg, const WeightedPixels& w, PlanarPoint p) {
  const double rp = distance(p, cfg.hub);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.at.size(); ++i) {
    const double d = smoothed(p, w.at[i], rp, w.radius[i]);
    sum += d * d * w.weight[i];
  }
  return sum;
}

// Later sites sharing a pixel with an earlier one move one pixel radially
// outward (inward when that would leave the annulus) until no two share.
void resolve_collisions(const AnnulusConfig& cfg, std::vector<PlanarPoint>& sites) {
  const Rect win = cfg.window();
  const double px = cfg.pixel_size();
  auto cell_of = [&](PlanarPoint p) {
    const int ix = std::clamp(static_cast<int>((p.x - win.x0) / px), 0, cfg.resolution - 1);
    const int iy = std::clamp(static_cast<int>((p.y - win.y0) / px), 0, cfg.resolution - 1);
    return std::pair{ix, iy};
  };
  for (int pass = 0; pass < 64; ++pass) {
    std::map<std::pair<int, int>, int> taken;
    bool moved = false;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (taken.emplace(cell_of(sites[i]), static_cast<int>(i)).second) continue;
      const PlanarPoint rel = sites[i] - cfg.hub;
      const double r = norm(rel);
      double target = r + px;
      if (target > cfg.outer) target = r - px;
      sites[i] = cfg.hub + (target / r) * rel;
      moved = true;
    }
    if (!moved) return;
  }
  throw NumericError("could not separate coincident Lloyd sites");
}

}  // namespace

void AnnulusConfig::validate() const {
  if (!(inner > 0.0 && inner < outer) || !std::isfinite(outer)) {
    throw InputError("annulus needs 0 < inner < outer");
  }
  if (resolution < 2) throw InputError("resolution must be at least 2");
  if (!std::isfinite(hub.x) || !std::isfinite(hub.y)) throw InputError("hub must be finite");
}

Rect AnnulusConfig::window() const {
  return {hub.x - outer, hub.y - outer, hub.x + outer, hub.y + outer};
}

bool AnnulusConfig::contains(PlanarPoint p) const {
  const double r = distance(p, hub);
  return r >= inner && r <= outer;
}

std::vector<PlanarPoint> sample_exponential(const AnnulusConfig& cfg, int n, std::uint64_t seed) {
  cfg.validate();
  if (n < 1) throw InputError("need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_r(std::log(cfg.inner), std::log(cfg.outer));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<PlanarPoint> out;
  for (int i = 0; i < n; ++i) {
    const double r = std::clamp(std::exp(log_r(rng)), cfg.inner, cfg.outer);
    const double a = angle(rng);
    out.push_back(cfg.hub + PlanarPoint{r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

std::vector<PlanarPoint> sample_uniform_area(const AnnulusConfig& cfg, int n,
                                             std::uint64_t seed) {
  cfg.validate();
  if (n < 1) throw InputError("need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r2(cfg.inner * cfg.inner, cfg.outer * cfg.outer);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<PlanarPoint> out;
  for (int i = 0; i < n; ++i) {
    const double r = std::clamp(std::sqrt(r2(rng)), cfg.inner, cfg.outer);
    const double a = angle(rng);
    out.push_back(cfg.hub + PlanarPoint{r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

double pixel_weight(const AnnulusConfig& cfg, PlanarPoint q) {
  const double r = distance(q, cfg.hub);
  return 1.0 / (r * r);
}

double cell_objective(const AnnulusConfig& cfg, std::span<const PlanarPoint> pixels,
                      PlanarPoint p) {
  return objective_of(cfg, weigh(cfg, pixels), p);
}

PlanarPoint weighted_centroid(const AnnulusConfig& cfg, std::span<const PlanarPoint> pixels,
                              PlanarPoint current) {
  if (pixels.empty()) throw InputError("weighted centroid of an empty cell");
  if (pixels.size() == 1) return pixels[0];
  const WeightedPixels w = weigh(cfg, pixels);

  const PlanarPoint rel = current - cfg.hub;
  const double base = std::atan2(rel.y, rel.x);
  double mean_u = 0.0, mean_v = 0.0;
  double x0 = pixels[0].x, x1 = x0, y0 = pixels[0].y, y1 = y0;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const PlanarPoint q = pixels[i] - cfg.hub;
    mean_u += std::log(w.radius[i]);
    mean_v += normalize_angle(std::atan2(q.y, q.x) - base);
    x0 = std::min(x0, pixels[i].x);
    x1 = std::max(x1, pixels[i].x);
    y0 = std::min(y0, pixels[i].y);
    y1 = std::max(y1, pixels[i].y);
  }
  const double count = static_cast<double>(pixels.size());
  mean_u /= count;
  mean_v = base + mean_v / count;
  const PlanarPoint seed =
      cfg.hub + PlanarPoint{std::exp(mean_u) * std::cos(mean_v), std::exp(mean_u) * std::sin(mean_v)};

  auto value = [&](PlanarPoint p) {
    return cfg.contains(p) ? objective_of(cfg, w, p) : std::numeric_limits<double>::infinity();
  };
  PlanarPoint best = current;
  double best_value = value(current);
  if (const double sv = value(seed); sv < best_value) {
    best = seed;
    best_value = sv;
  }

  const double stop = 0.5 * cfg.pixel_size();
  double step = std::hypot(x1 - x0, y1 - y0) / 8.0;
  const PlanarPoint dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int guard = 0; step >= stop && guard < 100000; ++guard) {
    PlanarPoint next = best;
    double next_value = best_value;
    for (const PlanarPoint& d : dirs) {
      const PlanarPoint cand = best + step * d;
      const double v = value(cand);
      if (v < next_value) {
        next = cand;
        next_value = v;
      }
    }
    if (next_value < best_value) {
      best = next;
      best_value = next_value;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

RasterDiagram smoothed_assignment(const AnnulusConfig& cfg, std::span<const PlanarPoint> sites) {
  cfg.validate();
  RasterDiagram r;
  r.window = cfg.window();
  r.nx = r.ny = cfg.resolution;
  r.sites.assign(sites.begin(), sites.end());
  r.labels.assign(static_cast<std::size_t>(r.nx) * r.ny, RasterDiagram::kOutside);
  const int n = static_cast<int>(sites.size());
  std::vector<double> site_r(n);
  for (int i = 0; i < n; ++i) site_r[i] = distance(sites[i], cfg.hub);
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const PlanarPoint q = r.pixel_center(ix, iy);
      const double rq = distance(q, cfg.hub);
      if (rq < cfg.inner || rq > cfg.outer || n == 0) continue;
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double d = smoothed(sites[i], q, site_r[i], rq);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      r.labels[static_cast<std::size_t>(iy) * r.nx + ix] = best;
    }
  }
  return r;
}

double assignment_objective(const AnnulusConfig& cfg, const RasterDiagram& r) {
  double sum = 0.0;
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const int l = r.at(ix, iy);
      if (l < 0) continue;
      const PlanarPoint q = r.pixel_center(ix, iy);
      const double rq = distance(q, cfg.hub);
      const double d = smoothed(r.sites[l], q, distance(r.sites[l], cfg.hub), rq);
      sum += d * d / (rq * rq);
    }
  }
  return sum;
}

LloydState make_lloyd_state(const AnnulusConfig& cfg, std::vector<PlanarPoint> sites,
                            std::uint64_t seed) {
  cfg.validate();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!cfg.contains(sites[i])) {
      throw InputError("site " + std::to_string(i) + " lies outside the annulus");
    }
  }
  resolve_collisions(cfg, sites);
  LloydState s;
  s.seed = seed;
  s.objective = assignment_objective(cfg, smoothed_assignment(cfg, sites));
  s.sites = std::move(sites);
  return s;
}

LloydState lloyd_step(const LloydState& state, const AnnulusConfig& cfg) {
  const RasterDiagram r = smoothed_assignment(cfg, state.sites);
  const int n = static_cast<int>(state.sites.size());
  std::vector<std::vector<PlanarPoint>> cells(n);
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const int l = r.at(ix, iy);
      if (l >= 0) cells[l].push_back(r.pixel_center(ix, iy));
    }
  }
  LloydState next;
  next.seed = state.seed;
  next.iteration = state.iteration + 1;
  next.sites.resize(n);
  for (int i = 0; i < n; ++i) {
    if (cells[i].empty()) {
      throw NumericError("Lloyd site " + std::to_string(i) + " has an empty cell at iteration " +
                         std::to_string(state.iteration));
    }
    next.sites[i] = weighted_centroid(cfg, cells[i], state.sites[i]);
  }
  resolve_collisions(cfg, next.sites);
  next.objective = assignment_objective(cfg, smoothed_assignment(cfg, next.sites));
  return next;
}

double spacing_cv(const AnnulusConfig& cfg, std::span<const PlanarPoint> sites) {
  const int n = static_cast<int>(sites.size());
  if (n < 2) return 0.0;
  const OriginAnchoredMetric m(cfg.hub);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = m.smoothed_distance(sites[i], sites[j]);
      nearest[i] = std::min(nearest[i], d);
      nearest[j] = std::min(nearest[j], d);
    }
  }
  double mean = 0.0;
  for (double d : nearest) mean += d;
  mean /= n;
  double var = 0.0;
  for (double d : nearest) var += (d - mean) * (d - mean);
  var /= n;
  return mean > 0.0 ? std::sqrt(var) / mean : 0.0;
}

std::vector<LloydFrame> run_lloyd(const AnnulusConfig& cfg, int n, int iterations,
                                  std::uint64_t seed, InitialSampling init) {
  if (iterations < 0) throw InputError("iterations must be non-negative");
  std::vector<PlanarPoint> start = init == InitialSampling::Exponential
                                       ? sample_exponential(cfg, n, seed)
                                       : sample_uniform_area(cfg, n, seed);
  LloydState state = make_lloyd_state(cfg, std::move(start), seed);
  std::vector<LloydFrame> frames;
  auto record = [&] {
    frames.push_back({state.iteration, state.sites, state.objective, spacing_cv(cfg, state.sites)});
  };
  record();
  for (int k = 0; k < iterations; ++k) {
    state = lloyd_step(state, cfg);
    record();
  }
  return frames;
}

}  // namespace mindiag
