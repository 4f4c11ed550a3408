#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mindiag/metric.hpp"
#include "mindiag/profile.hpp"

namespace mindiag {

using Polyline = std::vector<PlanarPoint>;

// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(PlanarPoint p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Rect inflated(double margin) const { return {x0 - margin, y0 - margin, x1 + margin, y1 + margin}; }
};

// Bounding box of the sites grown on every side by 3x its diagonal (1x if the
// sites coincide). The vertical margin is larger by a relative 2^-20 so that
// diagonal symmetry lines of symmetric inputs do not hit a corner.
Rect default_window(std::span<const PlanarPoint> sites);

// f(x, y) = g(x) + h(y). For a site p, f_p(s) = f(s - p).
struct FunctionPair {
  Profile1D gx;
  Profile1D hy;

  double operator()(PlanarPoint rel) const { return gx.eval(rel.x) + hy.eval(rel.y); }
  double value_or_inf(PlanarPoint rel) const {
    return gx.value_or_inf(rel.x) + hy.value_or_inf(rel.y);
  }
  // f_site(p)
  double at(PlanarPoint site, PlanarPoint p) const { return (*this)(p - site); }
  PlanarPoint gradient(PlanarPoint rel) const { return {gx.eval(rel.x, 1), hy.eval(rel.y, 1)}; }
  PlanarPoint minimizer() const { return {gx.minimizer(), hy.minimizer()}; }
  double min_value() const { return (*this)(minimizer()); }
  bool strictly_convex() const { return gx.strictly_convex() && hy.strictly_convex(); }
};

// S_r(p) = { q : f(q - p) = level }.
struct LevelSet {
  FunctionPair pair;
  PlanarPoint center;
  double level = 0.0;

  // The point of the level set on the ray from the translated minimum at the
  // given angle. f increases strictly along such rays, so the point is unique.
  PlanarPoint point_at(double angle) const;
};

// n points counterclockwise by angle around the translated minimum, each with
// |f_center - level| <= 1e-10. Throws InputError when level <= min f.
Polyline sample_level_set(const LevelSet& ls, int n);

// Tangent slope -h'/g' of the level set through rel, in the run-over-rise
// sense (dx/dy along the curve). nullopt is the vertical value (g' = 0).
std::optional<double> tangent_slope(const FunctionPair& pair, PlanarPoint rel);

// (g' h''/h' + h' g''/g') / sqrt(g'^2 + h'^2). Compares curvature of level sets
// at points of equal tangent slope: larger magnitude means a tighter curve.
// The sign follows the signs of g' and h'.
// Throws DomainError where g' or h' vanishes.
double curvature_measure(const FunctionPair& pair, PlanarPoint rel);

// Slope (h''/h') / (g''/g') of the curve of constant tangent slope through rel.
double t_curve_slope(const FunctionPair& pair, PlanarPoint rel);

struct CrossingCount {
  int crossings = 0;
  // Touching points (|residual| < 1e-8) without a sign change.
  int tangencies = 0;
};

// Proper crossings of level set b by level set a, found by sign changes of
// f_a - level_a along n samples of b with local refinement.
CrossingCount count_crossings(const LevelSet& a, const LevelSet& b, int n = 256);

struct TranslationHit {
  double shift = 0.0;
  CrossingCount count;
};

// Slides `moving` by t * direction for t = 0, step, 2 step, ... <= t_max and
// returns the middle of the first run of shifts at which `moving` crosses
// `fixed` exactly `target` times (no tangencies). nullopt if none does.
std::optional<TranslationHit> find_translation_with_crossings(const LevelSet& fixed,
                                                              const LevelSet& moving,
                                                              PlanarPoint direction, double t_max,
                                                              double step, int target);

enum class BisectorKind { VerticalLine, HorizontalLine, MonotoneCurve };

const char* to_string(BisectorKind kind);

// B(p, q) = { s : f_p(s) = f_q(s) }.
struct Bisector {
  FunctionPair pair;
  PlanarPoint site_a;
  PlanarPoint site_b;
  BisectorKind kind = BisectorKind::MonotoneCurve;
  // x of a vertical line or y of a horizontal line.
  double line = 0.0;
  // For monotone curves: whether y grows with x.
  bool increasing = false;
};

// Sites sharing a y coordinate give a vertical line, sharing an x coordinate
// a horizontal line (exact comparison); otherwise a doubly monotone curve.
Bisector classify_bisector(const FunctionPair& pair, PlanarPoint p, PlanarPoint q);

// The unique y with f_a(x, y) = f_b(x, y); nullopt when the equation has no
// solution inside the domain of h. Horizontal lines return their y, vertical
// lines nullopt.
std::optional<double> bisector_y_at_x(const Bisector& b, double x);
std::optional<double> bisector_x_at_y(const Bisector& b, double y);

// Bisector points inside the window, ordered by increasing x (by y for a
// vertical line), sampled along both axes.
Polyline trace_bisector(const Bisector& b, const Rect& window, int samples = 256);

// Point of the bisector arc between two of its points `from` and `to`,
// parameterized by t in [0, 1] along the arc's dominant axis.
PlanarPoint bisector_arc_point(const Bisector& b, PlanarPoint from, PlanarPoint to, double t);

// Root of fn along the arc between from and to, or nullopt if fn does not
// change sign between the ends.
std::optional<PlanarPoint> solve_on_bisector_arc(const Bisector& b, PlanarPoint from,
                                                 PlanarPoint to,
                                                 const std::function<double(PlanarPoint)>& fn);

// A few Newton steps on (f_p - f_q, f_p - f_s) = 0; returns the better of
// input and polished point.
PlanarPoint polish_vertex(const FunctionPair& pair, PlanarPoint p, PlanarPoint q, PlanarPoint s,
                          PlanarPoint v);

// Largest of |f_p - f_q|, |f_q - f_s| at v.
double vertex_residual(const FunctionPair& pair, PlanarPoint p, PlanarPoint q, PlanarPoint s,
                       PlanarPoint v);

struct VertexSolve {
  std::optional<PlanarPoint> point;
  // Set when B(p,q) and B(p,s) are parallel axis lines.
  bool degenerate = false;
};

// Point equidistant (under f) from p, q and s, found by tracing B(p, q) inside
// the window (default_window of the three sites when omitted).
VertexSolve three_site_vertex(const FunctionPair& pair, PlanarPoint p, PlanarPoint q,
                              PlanarPoint s, std::optional<Rect> window = {});

// Crossings of B(p, q) and B(p, s) inside the window.
int count_bisector_intersections(const FunctionPair& pair, PlanarPoint p, PlanarPoint q,
                                 PlanarPoint s, const Rect& window);

}  // namespace mindiag
