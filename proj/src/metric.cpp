#include "mindiag/metric.hpp"

#include <numbers>
#include <sstream>
#include <string>

#include "mindiag/errors.hpp"

namespace mindiag {

namespace {

std::string describe(PlanarPoint p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

}  // namespace

double normalize_angle(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

OriginAnchoredMetric::OriginAnchoredMetric(PlanarPoint origin) : origin_(origin) {
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw InputError("hub coordinates must be finite");
  }
}

double OriginAnchoredMetric::smoothed_distance(PlanarPoint p, PlanarPoint q) const {
  if (p == origin_ || q == origin_) {
    throw DomainError("smoothed distance is undefined at the hub " + describe(origin_));
  }
  if (p == q) return 0.0;
  const double dp = distance(p, origin_);
  const double dq = distance(q, origin_);
  const double dpq = distance(p, q);
  return 2.0 * dpq / (dp + dq + dpq);
}

double OriginAnchoredMetric::dilation(PlanarPoint p, PlanarPoint q) const {
  if (p == q) throw InfiniteDilationError("dilation of coincident points " + describe(p));
  return (distance(p, origin_) + distance(origin_, q)) / distance(p, q);
}

TransformedPoint OriginAnchoredMetric::log_transform(PlanarPoint p) const {
  if (p == origin_) throw DomainError("log transform is undefined at the hub");
  const PlanarPoint rel = p - origin_;
  return {std::log(norm(rel)), normalize_angle(std::atan2(rel.y, rel.x))};
}

PlanarPoint OriginAnchoredMetric::exp_transform(TransformedPoint t) const {
  const double r = std::exp(t.u);
  return origin_ + PlanarPoint{r * std::cos(t.v), r * std::sin(t.v)};
}

double OriginAnchoredMetric::delta_distance(TransformedPoint s, TransformedPoint t) const {
  if (s == t) return 0.0;
  return smoothed_distance(exp_transform(s), exp_transform(t));
}

// -ln(1/2 (1 - 1/(2/d - 1)^2)) simplifies to 2 ln(2 - d) - ln 2 - ln(1 - d),
// which stays accurate at both ends of [0, 1].
double smoothed_to_f(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw DomainError("smoothed distance must lie in [0, 1], got " + std::to_string(d));
  }
  return 2.0 * std::log(2.0 - d) - std::numbers::ln2 - std::log1p(-d);
}

// Solving the quadratic above for d with t = 2e^v - 4 gives
// d = 2 sqrt(t) / (sqrt(t + 4) + sqrt(t)).
double f_to_smoothed(double v) {
  if (std::isnan(v) || v < std::numbers::ln2) {
    throw DomainError("transformed value must be >= ln 2, got " + std::to_string(v));
  }
  const double t = 4.0 * std::expm1(v - std::numbers::ln2);
  if (std::isinf(t)) return 1.0;
  const double st = std::sqrt(t);
  return 2.0 * st / (std::sqrt(t + 4.0) + st);
}

}  // namespace mindiag
