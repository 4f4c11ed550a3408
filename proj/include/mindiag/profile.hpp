#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mindiag {

// Open real interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded() const;
};

// A univariate convex function together with its first three derivatives.
//
// Profiles are the building blocks of f(x, y) = g(x) + h(y). They are
// immutable after construction and cheap to copy.
class Profile1D {
 public:
  // eval(x, order) for order in {0, 1, 2, 3}. Called only for x in domain.
  using Evaluator = std::function<double(double x, int order)>;

  Profile1D(std::string name, Interval domain, Evaluator eval, bool symmetric,
            bool strictly_convex = true, double minimizer = 0.0,
            std::vector<double> non_smooth_points = {});

  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }
  bool symmetric() const { return symmetric_; }
  bool strictly_convex() const { return strictly_convex_; }
  // Location of the global minimum.
  double minimizer() const { return minimizer_; }
  // Points where some derivative jumps or diverges.
  std::span<const double> non_smooth_points() const { return non_smooth_; }

  // Throws DomainError outside the domain or for an order outside 0..3.
  double eval(double x, int order = 0) const;
  double operator()(double x) const { return eval(x, 0); }
  // Value, or +inf outside the domain (the convex extension by +inf).
  double value_or_inf(double x) const;

 private:
  std::string name_;
  Interval domain_;
  Evaluator eval_;
  bool symmetric_;
  bool strictly_convex_;
  double minimizer_;
  std::vector<double> non_smooth_;
};

// Distance from a non-smooth point inside which derivatives are replaced by
// their value at this offset on the side of larger |x - kink|.
inline constexpr double kKinkGuard = 1e-6;

// Built-in profiles:
//   quadratic     x^2
//   power         |x|^c, c > 1        (params: {c}; textual form "power:c")
//   smoothed-g    ln(e^x + 2 + e^-x)
//   smoothed-h    -ln(1 + cos y) on (-pi, pi)
//   extended-h    smoothed-h on [-pi/2, pi/2], C^2 quadratic continuation outside
//   exp-square    e^(x^2)
Profile1D make_builtin(std::string_view name, std::span<const double> params = {});

// Plain value functions of two built-ins, for inner loops that cannot afford
// the Profile1D indirection.
double smoothed_g_value(double x);
double extended_h_value(double y);

// Parses "name" or "name:p1,p2" (e.g. "power:3").
Profile1D parse_profile(std::string_view spec);

std::vector<std::string> builtin_profile_names();

// g''(x)^2 - g'(x) g'''(x). Positive means the growth condition holds at x.
double admissibility_margin(const Profile1D& profile, double x);

struct AdmissibilityReport {
  std::string profile;
  Interval interval;
  int samples = 0;
  double min_margin = 0.0;
  // Smallest x in the interval where the margin drops below zero, refined
  // by root bracketing between grid samples.
  std::optional<double> first_violation;

  // Zero margin counts as not admissible.
  bool admissible() const { return min_margin > 0.0; }
};

// Samples the margin on a uniform grid over the closed interval [lo, hi],
// which must lie inside the profile's domain.
AdmissibilityReport check_admissible_on(const Profile1D& profile, Interval interval,
                                        int samples);

// All sign changes of the margin on [lo, hi], each refined to ~1e-12.
std::vector<double> admissibility_sign_changes(const Profile1D& profile, Interval interval,
                                               int samples);

}  // namespace mindiag
