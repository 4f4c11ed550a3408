#pragma once

#include <cmath>

namespace mindiag {

// Cartesian point in the original plane.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
  friend PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
  friend PlanarPoint operator*(double s, PlanarPoint a) { return {s * a.x, s * a.y}; }
};

inline double norm(PlanarPoint p) { return std::hypot(p.x, p.y); }
inline double distance(PlanarPoint a, PlanarPoint b) { return norm(a - b); }

// Point of the log plane: u = ln r, v = angle in (-pi, pi].
struct TransformedPoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const TransformedPoint&, const TransformedPoint&) = default;
  friend TransformedPoint operator+(TransformedPoint a, TransformedPoint b) {
    return {a.u + b.u, a.v + b.v};
  }
};

// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

// Smoothed distance d_o(p, q) = 2 d(p,q) / (d(p,o) + d(q,o) + d(p,q)) and the
// quantities derived from it, all anchored at a fixed hub o.
class OriginAnchoredMetric {
 public:
  explicit OriginAnchoredMetric(PlanarPoint origin = {});

  PlanarPoint origin() const { return origin_; }

  // In [0, 1]; exactly 0 when p == q. Throws DomainError if p or q is o.
  double smoothed_distance(PlanarPoint p, PlanarPoint q) const;

  // (d(p,o) + d(o,q)) / d(p,q) = 2 / d_o(p,q) - 1. Throws InfiniteDilationError
  // when p == q.
  double dilation(PlanarPoint p, PlanarPoint q) const;

  // (ln |p - o|, arg(p - o)). Throws DomainError at o.
  TransformedPoint log_transform(PlanarPoint p) const;
  PlanarPoint exp_transform(TransformedPoint t) const;

  // delta(s, t) = d_o(e^s, e^t); invariant under translations of the log plane.
  double delta_distance(TransformedPoint s, TransformedPoint t) const;

 private:
  PlanarPoint origin_;
};

// The monotone map d -> -ln(1/2 (1 - 1/(2/d - 1)^2)), taking smoothed distance
// in [0, 1] onto [ln 2, inf]; d = 0 maps to ln 2, d = 1 to +inf.
double smoothed_to_f(double d);
// Inverse of smoothed_to_f on [ln 2, inf].
double f_to_smoothed(double v);

}  // namespace mindiag
