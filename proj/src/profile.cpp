#include "mindiag/profile.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "mindiag/errors.hpp"
#include "mindiag/root_find.hpp"

namespace mindiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

double quadratic_eval(double x, int order) {
  switch (order) {
    case 0: return x * x;
    case 1: return 2.0 * x;
    case 2: return 2.0;
    default: return 0.0;
  }
}

Profile1D make_quadratic() { return Profile1D("quadratic", Interval{}, quadratic_eval, true); }

Profile1D make_power(double c) {
  if (!(c > 1.0) || !std::isfinite(c)) {
    throw InputError("power profile requires exponent c > 1, got " + format_double(c));
  }
  if (c == 2.0) return Profile1D("power:2", Interval{}, quadratic_eval, true);
  // Derivatives of order >= 1 are taken just off zero when c <= 3, where some
  // derivative jumps or diverges.
  const bool kinked = c <= 3.0;
  auto eval = [c, kinked](double x, int order) {
    if (order == 0) return std::pow(std::abs(x), c);
    if (kinked && std::abs(x) < kKinkGuard) x = x < 0.0 ? -kKinkGuard : kKinkGuard;
    const double ax = std::abs(x);
    switch (order) {
      case 1: return c * sign_of(x) * std::pow(ax, c - 1.0);
      case 2: return c * (c - 1.0) * std::pow(ax, c - 2.0);
      default: return c * (c - 1.0) * (c - 2.0) * sign_of(x) * std::pow(ax, c - 3.0);
    }
  };
  std::vector<double> kinks;
  if (kinked) kinks.push_back(0.0);
  return Profile1D("power:" + format_double(c), Interval{}, eval, true, true, 0.0,
                   std::move(kinks));
}

// g(x) = ln(e^x + 2 + e^-x) = ln((1 + e^x)^2 / e^x), written in overflow-free
// form. g' = tanh(x/2), g'' = 2e^x/(1+e^x)^2, g''' = -g' g''.
Profile1D make_smoothed_g() {
  auto eval = [](double x, int order) {
    const double ax = std::abs(x);
    switch (order) {
      case 0: return smoothed_g_value(x);
      case 1: return std::tanh(0.5 * x);
      case 2: {
        const double e = std::exp(-ax);
        return 2.0 * e / ((1.0 + e) * (1.0 + e));
      }
      default: {
        const double e = std::exp(-ax);
        const double g2 = 2.0 * e / ((1.0 + e) * (1.0 + e));
        return -std::tanh(0.5 * x) * g2;
      }
    }
  };
  return Profile1D("smoothed-g", Interval{}, eval, true);
}

// h(y) = -ln(1 + cos y), using 1 + cos y = 2 cos^2(y/2) to keep precision
// near the poles at +-pi.
double smoothed_h_eval(double y, int order) {
  const double c = std::cos(0.5 * y);
  const double one_plus_cos = 2.0 * c * c;
  switch (order) {
    case 0: return -std::log(one_plus_cos);
    case 1: return std::tan(0.5 * y);
    case 2: return 1.0 / one_plus_cos;
    default: return std::sin(y) / (one_plus_cos * one_plus_cos);
  }
}

Profile1D make_smoothed_h() {
  return Profile1D("smoothed-h", Interval{-kPi, kPi}, smoothed_h_eval, true);
}

// Quadratic continuation beyond +-pi/2 matching h, h', h'' there:
// h(pi/2) = 0, h'(pi/2) = 1, h''(pi/2) = 1.
Profile1D make_extended_h() {
  auto eval = [](double y, int order) {
    const double ay = std::abs(y);
    const bool outer = order == 3 ? ay >= kHalfPi - kKinkGuard : ay > kHalfPi;
    if (!outer) return smoothed_h_eval(y, order);
    const double s = sign_of(y);
    const double d = ay - kHalfPi;
    switch (order) {
      case 0: return d + 0.5 * d * d;
      case 1: return s * (1.0 + d);
      case 2: return 1.0;
      default: return 0.0;
    }
  };
  return Profile1D("extended-h", Interval{}, eval, true, true, 0.0, {-kHalfPi, kHalfPi});
}

Profile1D make_exp_square() {
  auto eval = [](double x, int order) {
    const double e = std::exp(x * x);
    switch (order) {
      case 0: return e;
      case 1: return 2.0 * x * e;
      case 2: return (4.0 * x * x + 2.0) * e;
      default: return (8.0 * x * x * x + 12.0 * x) * e;
    }
  };
  return Profile1D("exp-square", Interval{}, eval, true);
}

}  // namespace

double smoothed_g_value(double x) {
  const double ax = std::abs(x);
  return ax + 2.0 * std::log1p(std::exp(-ax));
}

double extended_h_value(double y) {
  const double ay = std::abs(y);
  if (ay <= kHalfPi) return smoothed_h_eval(y, 0);
  const double d = ay - kHalfPi;
  return d + 0.5 * d * d;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

Profile1D::Profile1D(std::string name, Interval domain, Evaluator eval, bool symmetric,
                     bool strictly_convex, double minimizer,
                     std::vector<double> non_smooth_points)
    : name_(std::move(name)),
      domain_(domain),
      eval_(std::move(eval)),
      symmetric_(symmetric),
      strictly_convex_(strictly_convex),
      minimizer_(minimizer),
      non_smooth_(std::move(non_smooth_points)) {}

double Profile1D::eval(double x, int order) const {
  if (order < 0 || order > 3) {
    throw InputError("derivative order must be in 0..3, got " + std::to_string(order));
  }
  if (!domain_.contains(x)) {
    throw DomainError("profile " + name_ + ": x = " + format_double(x) +
                      " outside domain (" + format_double(domain_.lo) + ", " +
                      format_double(domain_.hi) + ")");
  }
  return eval_(x, order);
}

double Profile1D::value_or_inf(double x) const {
  if (!domain_.contains(x)) return std::numeric_limits<double>::infinity();
  return eval_(x, 0);
}

Profile1D make_builtin(std::string_view name, std::span<const double> params) {
  auto no_params = [&] {
    if (!params.empty()) {
      throw InputError("profile " + std::string(name) + " takes no parameters");
    }
  };
  if (name == "quadratic") {
    no_params();
    return make_quadratic();
  }
  if (name == "power") {
    if (params.size() != 1) throw InputError("profile power needs one parameter c (power:c)");
    return make_power(params[0]);
  }
  if (name == "smoothed-g") {
    no_params();
    return make_smoothed_g();
  }
  if (name == "smoothed-h") {
    no_params();
    return make_smoothed_h();
  }
  if (name == "extended-h") {
    no_params();
    return make_extended_h();
  }
  if (name == "exp-square") {
    no_params();
    return make_exp_square();
  }
  throw InputError("unknown profile '" + std::string(name) + "'");
}

Profile1D parse_profile(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return make_builtin(spec);
  std::vector<double> params;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string token(rest.substr(0, comma));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size()) {
      throw InputError("bad profile parameter '" + token + "' in '" + std::string(spec) + "'");
    }
    params.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return make_builtin(spec.substr(0, colon), params);
}

std::vector<std::string> builtin_profile_names() {
  return {"quadratic", "power", "smoothed-g", "smoothed-h", "extended-h", "exp-square"};
}

double admissibility_margin(const Profile1D& profile, double x) {
  const double d1 = profile.eval(x, 1);
  const double d2 = profile.eval(x, 2);
  const double d3 = profile.eval(x, 3);
  return d2 * d2 - d1 * d3;
}

namespace {

std::vector<double> sample_grid(const Profile1D& profile, Interval interval, int samples) {
  if (samples < 2) throw InputError("admissibility check needs at least 2 samples");
  if (!(interval.lo < interval.hi) || !interval.bounded()) {
    throw InputError("admissibility interval must be finite with lo < hi");
  }
  const Interval& dom = profile.domain();
  if (!dom.contains(interval.lo) || !dom.contains(interval.hi)) {
    throw DomainError("interval [" + format_double(interval.lo) + ", " +
                      format_double(interval.hi) + "] not inside the domain of " +
                      profile.name());
  }
  std::vector<double> xs(samples);
  const double step = (interval.hi - interval.lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) xs[i] = interval.lo + step * i;
  xs.back() = interval.hi;
  return xs;
}

}  // namespace

AdmissibilityReport check_admissible_on(const Profile1D& profile, Interval interval,
                                        int samples) {
  const std::vector<double> xs = sample_grid(profile, interval, samples);
  AdmissibilityReport report;
  report.profile = profile.name();
  report.interval = interval;
  report.samples = samples;
  report.min_margin = std::numeric_limits<double>::infinity();
  auto margin = [&](double x) { return admissibility_margin(profile, x); };
  double prev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double m = margin(xs[i]);
    report.min_margin = std::min(report.min_margin, m);
    if (m < 0.0 && !report.first_violation) {
      if (i == 0) {
        report.first_violation = xs[0];
      } else if (prev == 0.0) {
        report.first_violation = xs[i - 1];
      } else {
        report.first_violation = find_root(margin, xs[i - 1], xs[i]);
      }
    }
    prev = m;
  }
  return report;
}

std::vector<double> admissibility_sign_changes(const Profile1D& profile, Interval interval,
                                               int samples) {
  const std::vector<double> xs = sample_grid(profile, interval, samples);
  auto margin = [&](double x) { return admissibility_margin(profile, x); };
  std::vector<double> roots;
  double prev = margin(xs[0]);
  for (int i = 1; i < samples; ++i) {
    const double cur = margin(xs[i]);
    if ((prev > 0.0) != (cur > 0.0)) roots.push_back(find_root(margin, xs[i - 1], xs[i]));
    prev = cur;
  }
  return roots;
}

}  // namespace mindiag
