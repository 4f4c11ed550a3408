#include "mindiag/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "mindiag/errors.hpp"
#include "mindiag/root_find.hpp"

namespace mindiag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTangencyResidual = 1e-8;
constexpr RootOptions kFineRoot{1e-15, 200};

// Solves prof(t - a) - prof(t - b) = rhs for t. For strictly convex prof the
// left side is strictly monotone in t (increasing when a < b), so the root is
// unique when it exists. `hint` is tried first as a bracket.
std::optional<double> solve_difference(const Profile1D& prof, double a, double b, double rhs,
                                       std::optional<std::pair<double, double>> hint = {}) {
  const Interval& dom = prof.domain();
  const double lo = std::max(a, b) + dom.lo;
  const double hi = std::min(a, b) + dom.hi;
  if (!(lo < hi)) return std::nullopt;
  const double sgn = a < b ? 1.0 : -1.0;
  auto E = [&](double t) { return sgn * (prof.eval(t - a) - prof.eval(t - b) - rhs); };
  auto inside = [&](double t) { return t > lo && t < hi; };

  if (hint) {
    const double h0 = hint->first, h1 = hint->second;
    if (inside(h0) && inside(h1) && h0 < h1) {
      const double e0 = E(h0), e1 = E(h1);
      if (e0 <= 0.0 && e1 >= 0.0) return find_root(E, h0, h1, kFineRoot);
    }
  }

  double t0 = 0.5 * (a + b) + prof.minimizer();
  if (!inside(t0)) {
    if (std::isfinite(lo) && std::isfinite(hi)) {
      t0 = 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
      t0 = lo + 1.0;
    } else {
      t0 = hi - 1.0;
    }
  }
  const double e0 = E(t0);
  if (e0 == 0.0) return t0;
  const double dir = e0 < 0.0 ? 1.0 : -1.0;
  const double limit = dir > 0.0 ? hi : lo;
  double step = std::max(1.0, std::abs(a - b));
  const double reach = 1e7 * (1.0 + std::abs(a) + std::abs(b));
  double prev = t0;
  for (int k = 0; k < 400; ++k) {
    double cand = prev + dir * step;
    if (std::isfinite(limit) && (dir > 0.0 ? cand >= limit : cand <= limit)) {
      cand = prev + 0.5 * (limit - prev);
    }
    // Far out, t - a and t - b round to the same value and E turns to noise.
    if (cand == prev || !inside(cand) || std::abs(cand) > reach) return std::nullopt;
    const double ec = E(cand);
    if (!std::isfinite(ec)) return std::nullopt;
    if (dir > 0.0 ? ec >= 0.0 : ec <= 0.0) {
      if (ec == 0.0) return cand;
      return find_root(E, std::min(prev, cand), std::max(prev, cand), kFineRoot);
    }
    prev = cand;
    step *= 2.0;
  }
  return std::nullopt;
}

std::optional<double> y_at_x(const Bisector& b, double x,
                             std::optional<std::pair<double, double>> hint) {
  switch (b.kind) {
    case BisectorKind::HorizontalLine: return b.line;
    case BisectorKind::VerticalLine: return std::nullopt;
    case BisectorKind::MonotoneCurve: break;
  }
  const Interval& gd = b.pair.gx.domain();
  if (!gd.contains(x - b.site_a.x) || !gd.contains(x - b.site_b.x)) return std::nullopt;
  const double rhs = b.pair.gx.eval(x - b.site_b.x) - b.pair.gx.eval(x - b.site_a.x);
  return solve_difference(b.pair.hy, b.site_a.y, b.site_b.y, rhs, hint);
}

std::optional<double> x_at_y(const Bisector& b, double y,
                             std::optional<std::pair<double, double>> hint) {
  switch (b.kind) {
    case BisectorKind::VerticalLine: return b.line;
    case BisectorKind::HorizontalLine: return std::nullopt;
    case BisectorKind::MonotoneCurve: break;
  }
  const Interval& hd = b.pair.hy.domain();
  if (!hd.contains(y - b.site_a.y) || !hd.contains(y - b.site_b.y)) return std::nullopt;
  const double rhs = b.pair.hy.eval(y - b.site_b.y) - b.pair.hy.eval(y - b.site_a.y);
  return solve_difference(b.pair.gx, b.site_a.x, b.site_b.x, rhs, hint);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = 0.5 * (a + b);
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

bool positive(double v) { return v > 0.0; }

// Counts sign changes of fn over [t0, t1] (sampled at `pieces` subintervals).
template <class F>
int sub_sign_changes(F&& fn, double t0, double t1, int pieces) {
  int count = 0;
  bool prev = positive(fn(t0));
  for (int k = 1; k <= pieces; ++k) {
    const bool cur = positive(fn(t0 + (t1 - t0) * k / pieces));
    if (cur != prev) ++count;
    prev = cur;
  }
  return count;
}

}  // namespace

Rect default_window(std::span<const PlanarPoint> sites) {
  if (sites.empty()) throw InputError("default window needs at least one site");
  Rect r{sites[0].x, sites[0].y, sites[0].x, sites[0].y};
  for (const PlanarPoint& p : sites) {
    r.x0 = std::min(r.x0, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.x1 = std::max(r.x1, p.x);
    r.y1 = std::max(r.y1, p.y);
  }
  double diag = std::hypot(r.width(), r.height());
  if (diag == 0.0) diag = 1.0;
  Rect w = r.inflated(3.0 * diag);
  // A slightly taller margin keeps 45-degree symmetry lines of symmetric
  // inputs off the window corners.
  const double extra = 3.0 * diag * 0x1p-20;
  w.y0 -= extra;
  w.y1 += extra;
  return w;
}

PlanarPoint LevelSet::point_at(double angle) const {
  const PlanarPoint m = pair.minimizer();
  if (!(level > pair(m))) {
    throw InputError("empty level set: level " + std::to_string(level) +
                     " is not above the minimum " + std::to_string(pair(m)));
  }
  const PlanarPoint dir{std::cos(angle), std::sin(angle)};
  auto phi = [&](double t) { return pair.value_or_inf(m + t * dir) - level; };
  double a = 0.0;
  double t = 1.0;
  bool bracketed = false;
  for (int k = 0; k < 400 && !bracketed; ++k) {
    const double v = phi(t);
    if (std::isinf(v)) {
      // Past the domain boundary: back off toward the last point inside.
      double b = t;
      for (int j = 0; j < 200; ++j) {
        const double mid = 0.5 * (a + b);
        const double vm = phi(mid);
        if (std::isinf(vm)) {
          b = mid;
        } else if (vm > 0.0) {
          t = mid;
          bracketed = true;
          break;
        } else {
          a = mid;
        }
      }
      if (!bracketed) throw NumericError("level set does not close inside the domain");
    } else if (v > 0.0) {
      bracketed = true;
    } else {
      a = t;
      t *= 2.0;
    }
  }
  if (!bracketed) throw NumericError("could not bracket the level set along a ray");
  const double root = find_root(phi, a, t, kFineRoot);
  return center + m + root * dir;
}

Polyline sample_level_set(const LevelSet& ls, int n) {
  if (n < 1) throw InputError("level set sampling needs n >= 1");
  Polyline out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(ls.point_at(kTwoPi * i / n));
  return out;
}

std::optional<double> tangent_slope(const FunctionPair& pair, PlanarPoint rel) {
  const double g1 = pair.gx.eval(rel.x, 1);
  const double h1 = pair.hy.eval(rel.y, 1);
  if (g1 == 0.0) return std::nullopt;
  return -h1 / g1;
}

double curvature_measure(const FunctionPair& pair, PlanarPoint rel) {
  const double g1 = pair.gx.eval(rel.x, 1);
  const double h1 = pair.hy.eval(rel.y, 1);
  if (g1 == 0.0 || h1 == 0.0) throw DomainError("curvature measure has a pole where g' or h' = 0");
  const double g2 = pair.gx.eval(rel.x, 2);
  const double h2 = pair.hy.eval(rel.y, 2);
  return (g1 * h2 / h1 + h1 * g2 / g1) / std::hypot(g1, h1);
}

double t_curve_slope(const FunctionPair& pair, PlanarPoint rel) {
  const double g1 = pair.gx.eval(rel.x, 1);
  const double h1 = pair.hy.eval(rel.y, 1);
  const double g2 = pair.gx.eval(rel.x, 2);
  const double h2 = pair.hy.eval(rel.y, 2);
  if (g1 == 0.0 || h1 == 0.0 || g2 == 0.0) {
    throw DomainError("slope of the constant-tangent curve has a pole at this point");
  }
  return (h2 / h1) / (g2 / g1);
}

CrossingCount count_crossings(const LevelSet& a, const LevelSet& b, int n) {
  if (n < 256) throw InputError("count_crossings needs n >= 256");
  auto r = [&](double theta) {
    return a.pair.value_or_inf(b.point_at(theta) - a.center) - a.level;
  };
  // Samples within the tangency threshold of the curve count as touching.
  auto sign = [](double v) { return std::abs(v) < kTangencyResidual ? 0 : (v > 0.0 ? 1 : -1); };
  const double h = kTwoPi / n;
  std::vector<double> vals(n);
  std::vector<int> signs(n);
  for (int i = 0; i < n; ++i) {
    vals[i] = r(h * i);
    signs[i] = sign(vals[i]);
  }

  CrossingCount out;
  int start = 0;
  while (start < n && signs[start] == 0) ++start;
  if (start == n) return out;

  // Walk once around b from a sample off a's curve.
  int last = signs[start];
  bool touching = false;
  for (int k = 1; k <= n; ++k) {
    const int j = (start + k) % n;
    if (signs[j] == 0) {
      touching = true;
      continue;
    }
    if (touching) {
      if (signs[j] != last) {
        ++out.crossings;
      } else {
        ++out.tangencies;
      }
      touching = false;
    } else if (signs[j] != last) {
      // An odd number of crossings hides in this interval; look closer.
      const double t0 = h * (start + k - 1);
      out.crossings += sub_sign_changes(r, t0, t0 + h, 8);
    }
    last = signs[j];
  }

  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    const int prev = (i + n - 1) % n;
    if (signs[i] == 0 || signs[prev] != signs[i] || signs[next] != signs[i]) continue;
    const double ai = std::abs(vals[i]);
    if (ai > std::abs(vals[prev]) || ai > std::abs(vals[next])) continue;
    // A local approach to zero without a sign change: either a tangency or
    // a pair of crossings closer together than the sampling step.
    const double s = signs[i];
    const double v =
        golden_min([&](double t) { return s * r(t); }, h * (i - 1), h * (i + 1), 50).second;
    if (v < -kTangencyResidual) {
      out.crossings += 2;
    } else if (v < kTangencyResidual) {
      ++out.tangencies;
    }
  }
  return out;
}

std::optional<TranslationHit> find_translation_with_crossings(const LevelSet& fixed,
                                                              const LevelSet& moving,
                                                              PlanarPoint direction, double t_max,
                                                              double step, int target) {
  if (!(step > 0.0) || !(t_max >= 0.0)) throw InputError("translation search needs step > 0");
  auto count_at = [&](double t) {
    LevelSet shifted = moving;
    shifted.center = moving.center + t * direction;
    return count_crossings(fixed, shifted);
  };
  const int steps = static_cast<int>(std::floor(t_max / step + 1e-9));
  int run_start = -1;
  int run_end = -1;
  for (int i = 0; i <= steps; ++i) {
    const CrossingCount c = count_at(i * step);
    const bool hit = c.crossings == target && c.tangencies == 0;
    if (hit && run_start < 0) run_start = i;
    if (hit) run_end = i;
    if (!hit && run_start >= 0) break;
  }
  if (run_start < 0) return std::nullopt;
  const double t = 0.5 * (run_start + run_end) * step;
  return TranslationHit{t, count_at(t)};
}

const char* to_string(BisectorKind kind) {
  switch (kind) {
    case BisectorKind::VerticalLine: return "vertical-line";
    case BisectorKind::HorizontalLine: return "horizontal-line";
    case BisectorKind::MonotoneCurve: return "monotone-curve";
  }
  return "unknown";
}

Bisector classify_bisector(const FunctionPair& pair, PlanarPoint p, PlanarPoint q) {
  if (p == q) throw InputError("bisector of coincident sites");
  if (!pair.strictly_convex()) throw InputError("bisectors require strictly convex profiles");
  Bisector b{pair, p, q, BisectorKind::MonotoneCurve, 0.0, false};
  if (p.y == q.y) {
    b.kind = BisectorKind::VerticalLine;
    const auto x = solve_difference(pair.gx, p.x, q.x, 0.0);
    if (!x) throw NumericError("no vertical bisector line found");
    b.line = *x;
  } else if (p.x == q.x) {
    b.kind = BisectorKind::HorizontalLine;
    const auto y = solve_difference(pair.hy, p.y, q.y, 0.0);
    if (!y) throw NumericError("no horizontal bisector line found");
    b.line = *y;
  } else {
    b.increasing = (p.x - q.x) * (p.y - q.y) < 0.0;
  }
  return b;
}

std::optional<double> bisector_y_at_x(const Bisector& b, double x) { return y_at_x(b, x, {}); }

std::optional<double> bisector_x_at_y(const Bisector& b, double y) { return x_at_y(b, y, {}); }

Polyline trace_bisector(const Bisector& b, const Rect& window, int samples) {
  if (samples < 2) throw InputError("bisector tracing needs at least 2 samples");
  Polyline out;
  switch (b.kind) {
    case BisectorKind::VerticalLine:
      if (b.line >= window.x0 && b.line <= window.x1) {
        for (double y : linspace(window.y0, window.y1, samples)) out.push_back({b.line, y});
      }
      return out;
    case BisectorKind::HorizontalLine:
      if (b.line >= window.y0 && b.line <= window.y1) {
        for (double x : linspace(window.x0, window.x1, samples)) out.push_back({x, b.line});
      }
      return out;
    case BisectorKind::MonotoneCurve: break;
  }
  for (double x : linspace(window.x0, window.x1, samples)) {
    const auto y = bisector_y_at_x(b, x);
    if (y && *y >= window.y0 && *y <= window.y1) out.push_back({x, *y});
  }
  for (double y : linspace(window.y0, window.y1, samples)) {
    const auto x = bisector_x_at_y(b, y);
    if (x && *x >= window.x0 && *x <= window.x1) out.push_back({*x, y});
  }
  std::sort(out.begin(), out.end(), [](PlanarPoint u, PlanarPoint v) { return u.x < v.x; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](PlanarPoint u, PlanarPoint v) { return u.x == v.x; }),
            out.end());
  return out;
}

PlanarPoint bisector_arc_point(const Bisector& b, PlanarPoint from, PlanarPoint to, double t) {
  switch (b.kind) {
    case BisectorKind::VerticalLine: return {b.line, from.y + t * (to.y - from.y)};
    case BisectorKind::HorizontalLine: return {from.x + t * (to.x - from.x), b.line};
    case BisectorKind::MonotoneCurve: break;
  }
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (std::abs(dx) >= std::abs(dy)) {
    const double x = t == 1.0 ? to.x : from.x + t * dx;
    const double slack = 1e-9 * (1.0 + std::abs(dy));
    const auto y = y_at_x(b, x, std::pair{std::min(from.y, to.y) - slack,
                                          std::max(from.y, to.y) + slack});
    if (!y) throw NumericError("bisector arc left the domain of h");
    return {x, *y};
  }
  const double y = t == 1.0 ? to.y : from.y + t * dy;
  const double slack = 1e-9 * (1.0 + std::abs(dx));
  const auto x =
      x_at_y(b, y, std::pair{std::min(from.x, to.x) - slack, std::max(from.x, to.x) + slack});
  if (!x) throw NumericError("bisector arc left the domain of g");
  return {*x, y};
}

std::optional<PlanarPoint> solve_on_bisector_arc(const Bisector& b, PlanarPoint from,
                                                 PlanarPoint to,
                                                 const std::function<double(PlanarPoint)>& fn) {
  auto F = [&](double t) { return fn(bisector_arc_point(b, from, to, t)); };
  const double f0 = F(0.0);
  const double f1 = F(1.0);
  if (f0 == 0.0) return bisector_arc_point(b, from, to, 0.0);
  if (f1 == 0.0) return bisector_arc_point(b, from, to, 1.0);
  if ((f0 > 0.0) == (f1 > 0.0)) return std::nullopt;
  const double t = find_root(F, 0.0, 1.0, kFineRoot);
  return bisector_arc_point(b, from, to, t);
}

double vertex_residual(const FunctionPair& pair, PlanarPoint p, PlanarPoint q, PlanarPoint s,
                       PlanarPoint v) {
  const double fp = pair.at(p, v), fq = pair.at(q, v), fs = pair.at(s, v);
  return std::max({std::abs(fp - fq), std::abs(fq - fs), std::abs(fp - fs)});
}

PlanarPoint polish_vertex(const FunctionPair& pair, PlanarPoint p, PlanarPoint q, PlanarPoint s,
                          PlanarPoint v) {
  PlanarPoint best = v;
  double best_res = vertex_residual(pair, p, q, s, v);
  PlanarPoint cur = v;
  try {
    for (int it = 0; it < 4 && best_res > 0.0; ++it) {
      const double fp = pair.at(p, cur), fq = pair.at(q, cur), fs = pair.at(s, cur);
      const PlanarPoint gp = pair.gradient(cur - p);
      const PlanarPoint gq = pair.gradient(cur - q);
      const PlanarPoint gs = pair.gradient(cur - s);
      const double a11 = gp.x - gq.x, a12 = gp.y - gq.y;
      const double a21 = gp.x - gs.x, a22 = gp.y - gs.y;
      const double det = a11 * a22 - a12 * a21;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double r1 = fp - fq, r2 = fp - fs;
      cur = cur - PlanarPoint{(a22 * r1 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det};
      const double res = vertex_residual(pair, p, q, s, cur);
      if (!(res < best_res)) break;
      best = cur;
      best_res = res;
    }
  } catch (const DomainError&) {
    // Newton step left the domain; keep the best point so far.
  }
  return best;
}

VertexSolve three_site_vertex(const FunctionPair& pair, PlanarPoint p, PlanarPoint q,
                              PlanarPoint s, std::optional<Rect> window) {
  if (p == q || q == s || p == s) throw InputError("three_site_vertex needs distinct sites");
  const Bisector bpq = classify_bisector(pair, p, q);
  const Bisector bps = classify_bisector(pair, p, s);
  if (bpq.kind != BisectorKind::MonotoneCurve && bpq.kind == bps.kind) {
    return {std::nullopt, true};
  }
  const std::array<PlanarPoint, 3> sites{p, q, s};
  const Rect win = window ? *window : default_window(sites);
  const Polyline poly = trace_bisector(bpq, win, 512);
  auto F = [&](PlanarPoint v) { return pair.value_or_inf(v - p) - pair.value_or_inf(v - s); };
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const double f0 = F(poly[i]);
    const double f1 = F(poly[i + 1]);
    if (!std::isfinite(f0) || !std::isfinite(f1)) continue;
    if (f0 == 0.0) return {polish_vertex(pair, p, q, s, poly[i]), false};
    if ((f0 > 0.0) != (f1 > 0.0)) {
      const auto v = solve_on_bisector_arc(bpq, poly[i], poly[i + 1], F);
      if (!v) continue;
      return {polish_vertex(pair, p, q, s, *v), false};
    }
  }
  return {};
}

int count_bisector_intersections(const FunctionPair& pair, PlanarPoint p, PlanarPoint q,
                                 PlanarPoint s, const Rect& window) {
  if (q == s || p == q || p == s) throw InputError("bisector intersection needs distinct sites");
  const Bisector bpq = classify_bisector(pair, p, q);
  const Polyline poly = trace_bisector(bpq, window, 1024);
  const int n = static_cast<int>(poly.size());
  if (n < 2) return 0;
  auto F = [&](PlanarPoint v) { return pair.value_or_inf(v - q) - pair.value_or_inf(v - s); };
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = F(poly[i]);

  int count = 0;
  for (int i = 0; i + 1 < n; ++i) {
    if (positive(vals[i]) != positive(vals[i + 1])) {
      count += sub_sign_changes(
          [&](double t) { return F(bisector_arc_point(bpq, poly[i], poly[i + 1], t)); }, 0.0, 1.0,
          8);
    }
  }
  for (int i = 1; i + 1 < n; ++i) {
    const bool same = positive(vals[i - 1]) == positive(vals[i]) &&
                      positive(vals[i]) == positive(vals[i + 1]);
    const double ai = std::abs(vals[i]);
    if (!same || ai > std::abs(vals[i - 1]) || ai > std::abs(vals[i + 1])) continue;
    const double sgn = positive(vals[i]) ? 1.0 : -1.0;
    // Parameterize the two neighbouring arcs as one: u in [-1, 0] then [0, 1].
    auto G = [&](double u) {
      const PlanarPoint v = u < 0.0 ? bisector_arc_point(bpq, poly[i], poly[i - 1], -u)
                                    : bisector_arc_point(bpq, poly[i], poly[i + 1], u);
      return sgn * F(v);
    };
    const auto [u, v] = golden_min(G, -1.0, 1.0, 50);
    (void)u;
    if (v < -kTangencyResidual) count += 2;
  }
  return count;
}

}  // namespace mindiag
