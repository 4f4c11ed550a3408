#include "mindiag/figures.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "mindiag/errors.hpp"
#include "mindiag/io.hpp"
#include "mindiag/root_find.hpp"

namespace mindiag {

namespace {

constexpr double kPi = std::numbers::pi;

// First t > 0 with fn(t) >= 0 when marching with steps growing with t, then
// refined. fn(0) < 0 is assumed.
template <class F>
double first_crossing(F&& fn, double scale, double t_max) {
  double prev = 0.0;
  double t = 0.0;
  while (t < t_max) {
    t += 0.002 * (scale + t);
    if (fn(t) >= 0.0) return find_root(fn, prev, t, {1e-14 * (scale + t), 200});
    prev = t;
  }
  throw NumericError("level curve does not close within the search range");
}

Rect bounds(const std::vector<Polyline>& curves, double margin) {
  Rect r{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const Polyline& c : curves) {
    for (const PlanarPoint& p : c) {
      r.x0 = std::min(r.x0, p.x);
      r.y0 = std::min(r.y0, p.y);
      r.x1 = std::max(r.x1, p.x);
      r.y1 = std::max(r.y1, p.y);
    }
  }
  const double pad = margin * std::max(r.width(), r.height());
  return r.inflated(pad);
}

Scene curve_scene(const CurveFamily& f, double margin) {
  Scene s;
  s.window = bounds(f.curves, margin);
  for (const Polyline& c : f.curves) s.add_polyline(c, true, {"black", 1.5, "none"});
  return s;
}

Polyline circle(PlanarPoint c, double r, int n) {
  Polyline out;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n;
    out.push_back(c + PlanarPoint{r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

}  // namespace

Polyline smoothed_circle(const OriginAnchoredMetric& m, PlanarPoint p, double radius,
                         int samples) {
  if (!(radius > 0.0 && radius < 1.0)) throw InputError("smoothed radius must be in (0, 1)");
  if (samples < 3) throw InputError("need at least 3 samples");
  const PlanarPoint o = m.origin();
  if (p == o) throw DomainError("smoothed circle around the hub");
  const double dp = distance(p, o);
  Polyline out;
  for (int k = 0; k < samples; ++k) {
    const double a = 2 * kPi * k / samples;
    const PlanarPoint u{std::cos(a), std::sin(a)};
    // d_o written out so that passing through the hub itself is harmless.
    auto fn = [&](double t) {
      const PlanarPoint q = p + t * u;
      const double d = distance(p, q);
      return 2.0 * d / (dp + distance(q, o) + d) - radius;
    };
    out.push_back(p + first_crossing(fn, dp, 1e8 * dp) * u);
  }
  return out;
}

Polyline delta_circle(const OriginAnchoredMetric& m, double radius, int samples) {
  if (!(radius > 0.0 && radius < 1.0)) throw InputError("delta radius must be in (0, 1)");
  if (samples < 3) throw InputError("need at least 3 samples");
  Polyline out;
  for (int k = 0; k < samples; ++k) {
    const double a = 2 * kPi * k / samples;
    const PlanarPoint u{std::cos(a), std::sin(a)};
    auto fn = [&](double t) { return m.delta_distance({t * u.x, t * u.y}, {0.0, 0.0}) - radius; };
    out.push_back(first_crossing(fn, 1.0, 700.0) * u);
  }
  return out;
}

bool convex_position(const Polyline& closed) {
  const std::size_t n = closed.size();
  if (n < 4) return true;
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint a = closed[i], b = closed[(i + 1) % n];
    area += a.x * b.y - a.y * b.x;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint a = closed[i], b = closed[(i + 1) % n], c = closed[(i + 2) % n];
    const double turn = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (turn * area < 0.0) return false;
  }
  return true;
}

CurveFamily figure1_curves(int samples) {
  const OriginAnchoredMetric m;
  CurveFamily f;
  f.levels = {0.5, 0.6, 0.7, 0.8, 0.9};
  for (double r : f.levels) f.curves.push_back(smoothed_circle(m, {1.0, 0.0}, r, samples));
  return f;
}

CurveFamily figure2_curves(int samples) {
  const OriginAnchoredMetric m;
  CurveFamily f;
  f.levels = {0.5, 0.75, 0.9, 0.99, 0.999};
  for (double r : f.levels) f.curves.push_back(delta_circle(m, r, samples));
  return f;
}

Figure3Data figure3_data(int samples) {
  const FunctionPair pair{make_builtin("exp-square"), make_builtin("exp-square")};
  Figure3Data d;
  d.levels.levels = {2.5, 5, 10, 20, 40, 80, 160};
  for (double level : d.levels.levels) {
    d.levels.curves.push_back(sample_level_set({pair, {0.0, 0.0}, level}, samples));
  }
  const LevelSet outer{pair, {0.0, 0.0}, 160.0};
  const LevelSet inner{pair, {0.0, 0.0}, 2.5};
  const auto hit = find_translation_with_crossings(outer, inner, {1.0, 1.0}, 3.0, 0.01, 4);
  if (!hit) throw NumericError("no translation with four crossings found");
  d.shift = {hit->shift, hit->shift};
  const LevelSet moved{pair, d.shift, 2.5};
  d.translated = sample_level_set(moved, samples);
  d.crossings = count_crossings(outer, moved, 2048);
  return d;
}

Scene figure1_scene(const CurveFamily& f) {
  Scene s = curve_scene(f, 0.05);
  s.add_marker({1.0, 0.0}, 4.0);
  s.add_marker({0.0, 0.0}, 4.0, {"black", 1.5, "white"});
  return s;
}

Scene figure2_scene(const CurveFamily& f) {
  Scene s = curve_scene(f, 0.05);
  s.add_polyline({{s.window.x0, kPi}, {s.window.x1, kPi}}, false, {"gray", 1.0, "none"});
  s.add_polyline({{s.window.x0, -kPi}, {s.window.x1, -kPi}}, false, {"gray", 1.0, "none"});
  s.add_marker({0.0, 0.0}, 4.0);
  return s;
}

Scene figure3_scene(const Figure3Data& d) {
  std::vector<Polyline> all = d.levels.curves;
  all.push_back(d.translated);
  Scene s;
  s.window = bounds(all, 0.05);
  for (const Polyline& c : d.levels.curves) s.add_polyline(c, true, {"black", 1.0, "none"});
  s.add_polyline(d.translated, true, {"#c03030", 2.0, "none"});
  return s;
}

Scene lloyd_frame_scene(const AnnulusConfig& cfg, std::span<const PlanarPoint> sites,
                        std::span<const PlanarPoint> next_sites) {
  Scene s;
  s.window = cfg.window();
  s.add_raster(smoothed_assignment(cfg, sites));
  s.add_polyline(circle(cfg.hub, cfg.inner, 256), true, {"black", 1.0, "none"});
  s.add_polyline(circle(cfg.hub, cfg.outer, 512), true, {"black", 1.0, "none"});
  for (const PlanarPoint& p : sites) s.add_marker(p, 4.0);
  for (const PlanarPoint& p : next_sites) s.add_marker(p, 2.0, {"black", 0.75, "white"});
  return s;
}

std::vector<FigureFile> figure_files(const std::string& name, const FigureParams& params) {
  const int size = params.svg_size;
  if (name == "fig1") return {{"fig1.svg", render_svg(figure1_scene(figure1_curves()), size, size)}};
  if (name == "fig2") {
    const Scene s = figure2_scene(figure2_curves());
    const int h = static_cast<int>(std::lround(size * s.window.height() / s.window.width()));
    return {{"fig2.svg", render_svg(s, size, std::max(h, 1))}};
  }
  if (name == "fig3") return {{"fig3.svg", render_svg(figure3_scene(figure3_data()), size, size)}};
  if (name == "fig6") {
    AnnulusConfig cfg;
    cfg.inner = 1.0;
    cfg.outer = 18.0;
    cfg.resolution = params.resolution;
    const auto frames = run_lloyd(cfg, params.lloyd_sites, params.lloyd_iterations, params.seed);
    std::vector<FigureFile> files;
    for (std::size_t k = 0; k < frames.size(); ++k) {
      std::span<const PlanarPoint> next;
      if (k + 1 < frames.size()) next = frames[k + 1].sites;
      char file[32];
      std::snprintf(file, sizeof file, "fig6_frame_%02zu.svg", k);
      files.push_back({file, render_svg(lloyd_frame_scene(cfg, frames[k].sites, next), size, size)});
    }
    files.push_back({"fig6_metrics.json", lloyd_metrics_json(frames).dump(2) + "\n"});
    return files;
  }
  throw InputError("unknown figure '" + name + "' (expected fig1, fig2, fig3 or fig6)");
}

}  // namespace mindiag
