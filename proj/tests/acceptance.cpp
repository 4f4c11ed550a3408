// Acceptance runner: one PASS/FAIL line per criterion, each timed against its
// budget. Exits nonzero if any criterion fails or runs over time.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "checks.hpp"

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<checks::Verdict()> run;
};

checks::Verdict both(const checks::Verdict& a, const checks::Verdict& b) {
  return {a.ok && b.ok, a.detail + "; " + b.detail};
}

}  // namespace

int main() {
  constexpr std::uint64_t kSeed = 20240611;
  const std::vector<Criterion> criteria{
      {1, "admissibility boundary", 1, [] { return checks::admissibility_roots(); }},
      {2, "pseudocircle suite", 60,
       [] { return both(checks::pseudocircles(1000, kSeed), checks::exp_square_four_crossings()); }},
      {3, "bisector suite", 60, [] { return checks::bisector_suite(1000, 1000, kSeed); }},
      {4, "euclidean regression", 120,
       [] { return checks::euclidean_regression(100, 32, 512, kSeed); }},
      {5, "connectivity and complexity", 120,
       [] { return checks::connectivity_complexity(50, 128, 256, kSeed); }},
      {6, "smoothed distance agreement", 60,
       [] { return checks::smoothed_diagram_agreement(10000, 50, 256, kSeed); }},
      {7, "max dilation via adjacency", 60,
       [] { return checks::dilation_adjacency(100, 256, kSeed); }},
      {8, "metric and transform identities", 10,
       [] { return checks::metric_identities(10000, kSeed); }},
      {9, "lloyd reproduction", 600,
       [] { return checks::lloyd_reproduction(128, 16, 512, kSeed); }},
      {10, "derivative fidelity", 5, [] { return checks::derivative_fidelity(1000, kSeed); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    checks::Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = v.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s  %2d  %-32s %8.2fs / %4.0fs  %s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs, c.budget_s, in_time ? "" : "[over budget] ",
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
