#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "checks.hpp"
#include "mindiag/errors.hpp"
#include "mindiag/lloyd.hpp"

using namespace mindiag;

namespace {

constexpr double kPi = std::numbers::pi;

AnnulusConfig annulus(double inner, double outer, int resolution) {
  AnnulusConfig c;
  c.inner = inner;
  c.outer = outer;
  c.resolution = resolution;
  return c;
}

std::vector<PlanarPoint> cell_pixels(const RasterDiagram& r, int label) {
  std::vector<PlanarPoint> out;
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      if (r.at(ix, iy) == label) out.push_back(r.pixel_center(ix, iy));
    }
  }
  return out;
}

}  // namespace

TEST(Sampling, RadiiStayInAnnulus) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 64);
  for (const PlanarPoint& p : sample_exponential(cfg, 2000, 4)) {
    EXPECT_GE(norm(p), 1.0);
    EXPECT_LE(norm(p), 18.0);
  }
  for (const PlanarPoint& p : sample_uniform_area(cfg, 2000, 4)) EXPECT_TRUE(cfg.contains(p));
}

TEST(Sampling, LogRadiusIsUniform) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 64);
  auto pts = sample_exponential(cfg, 10000, 99);
  std::vector<double> u;
  for (const PlanarPoint& p : pts) u.push_back(std::log(norm(p)) / std::log(18.0));
  std::sort(u.begin(), u.end());
  double ks = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    ks = std::max({ks, std::abs((i + 1) / n - u[i]), std::abs(u[i] - i / n)});
  }
  EXPECT_LT(ks, 0.02);
}

TEST(Sampling, SeedDeterminesSequence) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 64);
  EXPECT_EQ(sample_exponential(cfg, 50, 7), sample_exponential(cfg, 50, 7));
  EXPECT_NE(sample_exponential(cfg, 50, 7), sample_exponential(cfg, 50, 8));
}

TEST(Sampling, BadConfigRejected) {
  EXPECT_THROW(sample_exponential(annulus(0.0, 2.0, 64), 5, 1), InputError);
  EXPECT_THROW(sample_exponential(annulus(3.0, 2.0, 64), 5, 1), InputError);
  EXPECT_THROW(sample_exponential(annulus(1.0, 2.0, 64), 0, 1), InputError);
}

TEST(Weights, InverseSquareRadius) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 256);
  auto rng = checks::trial_rng(3, 0);
  for (int k = 0; k < 100; ++k) {
    const PlanarPoint q{checks::uniform(rng, -18, 18), checks::uniform(rng, -18, 18)};
    if (norm(q) < 1.0) continue;
    EXPECT_DOUBLE_EQ(pixel_weight(cfg, q), 1.0 / (q.x * q.x + q.y * q.y));
  }
}

TEST(Weights, AssignmentObjectiveIsSumOfCellObjectives) {
  const AnnulusConfig cfg = annulus(1.0, 6.0, 128);
  const auto sites = sample_exponential(cfg, 10, 5);
  const RasterDiagram r = smoothed_assignment(cfg, sites);
  double sum = 0.0;
  for (int i = 0; i < 10; ++i) sum += cell_objective(cfg, cell_pixels(r, i), sites[i]);
  EXPECT_NEAR(assignment_objective(cfg, r), sum, 1e-12 * sum);
}

TEST(Centroid, SinglePixelIsItsCenter) {
  const AnnulusConfig cfg = annulus(1.0, 4.0, 64);
  const std::vector<PlanarPoint> px{{2.03125, 0.96875}};
  EXPECT_EQ(weighted_centroid(cfg, px, {2.5, 1.0}), px[0]);
}

TEST(Centroid, EmptyCellRejected) {
  EXPECT_THROW(weighted_centroid(annulus(1, 4, 64), {}, {2, 0}), InputError);
}

TEST(Centroid, SymmetricSectorStaysOnAxis) {
  // Pixels of the sector |angle| <= 0.4 rad, mirror-symmetric about the x axis.
  const AnnulusConfig cfg = annulus(1.0, 4.0, 256);
  RasterDiagram r;
  r.window = cfg.window();
  r.nx = r.ny = cfg.resolution;
  std::vector<PlanarPoint> px;
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const PlanarPoint c = r.pixel_center(ix, iy);
      if (cfg.contains(c) && std::abs(std::atan2(c.y, c.x)) <= 0.4) px.push_back(c);
    }
  }
  const PlanarPoint c = weighted_centroid(cfg, px, {2.0, 0.0});
  EXPECT_LT(std::abs(c.y), cfg.pixel_size());
  EXPECT_TRUE(cfg.contains(c));
}

TEST(Centroid, BeatsProbeGrid) {
  const AnnulusConfig cfg = annulus(1.0, 6.0, 256);
  for (int trial = 0; trial < 5; ++trial) {
    const auto sites = sample_exponential(cfg, 40, 100 + trial);
    const RasterDiagram r = smoothed_assignment(cfg, sites);
    // A cell with about 200 pixels.
    int pick = -1;
    std::size_t best_gap = SIZE_MAX;
    for (int i = 0; i < 40; ++i) {
      const std::size_t sz = cell_pixels(r, i).size();
      const std::size_t gap = sz > 200 ? sz - 200 : 200 - sz;
      if (gap < best_gap) {
        best_gap = gap;
        pick = i;
      }
    }
    const auto px = cell_pixels(r, pick);
    const PlanarPoint c = weighted_centroid(cfg, px, sites[pick]);
    const double got = cell_objective(cfg, px, c);
    EXPECT_LE(got, cell_objective(cfg, px, sites[pick]));
    double x0 = px[0].x, x1 = x0, y0 = px[0].y, y1 = y0;
    for (const PlanarPoint& p : px) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    for (int a = 0; a < 16; ++a) {
      for (int b = 0; b < 16; ++b) {
        const PlanarPoint q{x0 + (x1 - x0) * a / 15.0, y0 + (y1 - y0) * b / 15.0};
        if (!cfg.contains(q)) continue;
        EXPECT_LE(got, cell_objective(cfg, px, q) + 1e-12) << "trial " << trial;
      }
    }
  }
}

TEST(Step, SingleSiteObjectiveDoesNotRise) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 128);
  LloydState s = make_lloyd_state(cfg, {{10.0, 3.0}}, 1);
  for (int k = 0; k < 4; ++k) {
    const LloydState next = lloyd_step(s, cfg);
    EXPECT_LE(next.objective, s.objective + 1e-9);
    EXPECT_TRUE(cfg.contains(next.sites[0]));
    EXPECT_EQ(next.iteration, s.iteration + 1);
    s = next;
  }
}

TEST(Step, SymmetricRingSettles) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 200);
  std::vector<PlanarPoint> ring;
  for (int i = 0; i < 4; ++i) ring.push_back({5.0 * std::cos(i * kPi / 2), 5.0 * std::sin(i * kPi / 2)});
  LloydState s = make_lloyd_state(cfg, ring, 1);
  for (int k = 0; k < 25; ++k) s = lloyd_step(s, cfg);
  const LloydState next = lloyd_step(s, cfg);
  for (int i = 0; i < 4; ++i) {
    EXPECT_LT(distance(next.sites[i], s.sites[i]), 0.5 * cfg.pixel_size()) << i;
  }
}

TEST(Step, EmptyCellNamesTheSite) {
  // Eight sites on the pixel centers inside a coarse annulus take every
  // pixel; the ninth gets none.
  const AnnulusConfig cfg = annulus(1.0, 2.0, 4);
  std::vector<PlanarPoint> sites{{1.5, 0.5},  {0.5, 1.5},  {-0.5, 1.5}, {-1.5, 0.5},
                                 {-1.5, -0.5}, {-0.5, -1.5}, {0.5, -1.5}, {1.5, -0.5},
                                 {0.99, 0.2}};
  const LloydState s = make_lloyd_state(cfg, sites, 1);
  try {
    lloyd_step(s, cfg);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("site 8"), std::string::npos) << e.what();
  }
}

TEST(Step, CollisionsAreSeparated) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 64);
  const LloydState s = make_lloyd_state(cfg, {{5.0, 0.0}, {5.01, 0.0}}, 1);
  EXPECT_EQ(s.sites[0], (PlanarPoint{5.0, 0.0}));
  EXPECT_NEAR(s.sites[1].x, 5.01 + cfg.pixel_size(), 1e-12);
  EXPECT_THROW(make_lloyd_state(cfg, {{20.0, 0.0}}, 1), InputError);
}

TEST(Run, ZeroIterationsIsInitialSample) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 64);
  const auto frames = run_lloyd(cfg, 12, 0, 3);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].iteration, 0);
  EXPECT_EQ(frames[0].sites, sample_exponential(cfg, 12, 3));
}

TEST(Run, SmallReproduction) {
  const auto v = checks::lloyd_reproduction(32, 6, 160, 21);
  EXPECT_TRUE(v.ok) << v.detail;
}

TEST(Run, ExponentialStartEvensOutFaster) {
  const auto v = checks::lloyd_initialization_control(64, 4, 200, 2024);
  EXPECT_TRUE(v.ok) << v.detail;
}

TEST(Run, SpacingMetric) {
  const AnnulusConfig cfg = annulus(1.0, 18.0, 64);
  std::vector<PlanarPoint> ring;
  for (int i = 0; i < 6; ++i) ring.push_back({3.0 * std::cos(i * kPi / 3), 3.0 * std::sin(i * kPi / 3)});
  EXPECT_NEAR(spacing_cv(cfg, ring), 0.0, 1e-12);
  EXPECT_EQ(spacing_cv(cfg, std::vector<PlanarPoint>{{2, 0}}), 0.0);
  ring.push_back({3.05, 0.0});
  EXPECT_GT(spacing_cv(cfg, ring), 0.1);
}
