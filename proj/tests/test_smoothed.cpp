#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "checks.hpp"
#include "mindiag/errors.hpp"
#include "mindiag/profile.hpp"
#include "mindiag/smoothed.hpp"

using namespace mindiag;

namespace {

constexpr double kPi = std::numbers::pi;

StarNetwork star(std::vector<PlanarPoint> leaves, PlanarPoint hub = {0, 0}) {
  return StarNetwork{hub, std::move(leaves)};
}

StarNetwork ring(int n, double radius) {
  StarNetwork net;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n;
    net.leaves.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return net;
}

}  // namespace

TEST(ModifiedDistance, CoincidentPointsGiveLn2) {
  EXPECT_NEAR(modified_distance(PlanarPoint{0, 0}, {1, 0}, {1, 0}), std::log(2.0), 1e-15);
}

TEST(ModifiedDistance, RadialPairMatchesTransform) {
  const double d = modified_distance(PlanarPoint{0, 0}, {1, 0}, {2, 0});
  EXPECT_NEAR(d, smoothed_g_value(std::log(0.5)) + extended_h_value(0.0), 1e-15);
  EXPECT_NEAR(d, smoothed_to_f(0.5), 1e-12);
}

TEST(ModifiedDistance, RightAngleIsStillInAgreement) {
  const OriginAnchoredMetric m;
  const double d = modified_distance(PlanarPoint{0, 0}, {1, 0}, {0, 1});
  EXPECT_NEAR(d, smoothed_to_f(m.smoothed_distance({1, 0}, {0, 1})), 1e-10);
}

TEST(ModifiedDistance, DivergesFromTransformPastRightAngle) {
  // Beyond pi/2 the quadratic continuation of h takes over.
  const OriginAnchoredMetric m;
  const double d = modified_distance(PlanarPoint{0, 0}, {1, 0}, {-1, 0.2});
  EXPECT_GT(std::abs(d - smoothed_to_f(m.smoothed_distance({1, 0}, {-1, 0.2}))), 1e-3);
}

TEST(ModifiedDistance, HubIsRejected) {
  EXPECT_THROW(modified_distance(PlanarPoint{0, 0}, {0, 0}, {1, 0}), DomainError);
  EXPECT_THROW(modified_distance(PlanarPoint{0, 0}, {1, 0}, {0, 0}), DomainError);
}

TEST(ModifiedDistance, AgreementOnRandomPairs) {
  const auto v = checks::smoothed_diagram_agreement(2000, 4, 160, 3);
  EXPECT_TRUE(v.ok) << v.detail;
}

TEST(SmoothedVoronoi, AntipodalLeavesSplitAlongPerpendicular) {
  const SmoothedDiagram d = build_smoothed_voronoi(star({{1, 0}, {-1, 0}}), {0.5, 2.0}, 128);
  const RasterDiagram& r = d.raster;
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const int l = r.at(ix, iy);
      const PlanarPoint c = r.pixel_center(ix, iy);
      const double rad = norm(c);
      if (rad < 0.5 || rad > 2.0) {
        EXPECT_EQ(l, RasterDiagram::kOutside);
      } else {
        EXPECT_EQ(l, c.x > 0 ? 0 : 1);
      }
    }
  }
  ASSERT_EQ(d.adjacency.size(), 1u);
  EXPECT_EQ(d.adjacency[0], std::make_pair(0, 1));
}

TEST(SmoothedVoronoi, CommonRayCrossesOverAtRadiusTwo) {
  // g(ln r) = g(ln(r/4)) and g even give ln r = ln 4 - ln r.
  const SmoothedDiagram d = build_smoothed_voronoi(star({{1, 0}, {4, 0}}), {0.5, 5.0}, 400);
  const RasterDiagram& r = d.raster;
  const int row = r.pixel_of({2.0, 1e-9})->second;
  const double w = r.pixel_width();
  for (int ix = 0; ix < r.nx; ++ix) {
    const PlanarPoint c = r.pixel_center(ix, row);
    if (c.x < 0.5 || c.x > 5.0) continue;
    if (c.x < 2.0 - w) {
      EXPECT_EQ(r.at(ix, row), 0) << c.x;
    }
    if (c.x > 2.0 + w) {
      EXPECT_EQ(r.at(ix, row), 1) << c.x;
    }
  }
}

TEST(SmoothedVoronoi, LeafPixelCarriesOwnLabel) {
  auto rng = checks::trial_rng(5, 0);
  StarNetwork net;
  for (int i = 0; i < 30; ++i) {
    const double rad = checks::uniform(rng, 1.0, 3.0), a = checks::uniform(rng, -kPi, kPi);
    net.leaves.push_back({rad * std::cos(a), rad * std::sin(a)});
  }
  const SmoothedDiagram d = build_smoothed_voronoi(net, {1.0, 3.0}, 512);
  for (int i = 0; i < 30; ++i) {
    const auto px = d.raster.pixel_of(net.leaves[i]);
    ASSERT_TRUE(px);
    EXPECT_EQ(d.raster.at(px->first, px->second), i);
  }
}

TEST(SmoothedVoronoi, Errors) {
  EXPECT_THROW(build_smoothed_voronoi(star({{0, 0}, {1, 0}}), {0.5, 2}, 64), DomainError);
  EXPECT_THROW(build_smoothed_voronoi(star({{3, 0}}), {0.5, 2}, 64), InputError);
  EXPECT_THROW(build_smoothed_voronoi(star({{0.2, 0}}), {0.5, 2}, 64), InputError);
  EXPECT_THROW(build_smoothed_voronoi(star({{1, 0}, {1, 0}}), {0.5, 2}, 64), InputError);
  EXPECT_THROW(build_smoothed_voronoi(star({{1, 0}}), {0.0, 2}, 64), InputError);
  EXPECT_THROW(build_smoothed_voronoi(star({{1, 0}}), {2.0, 1.5}, 64), InputError);
}

TEST(SmoothedVoronoi, DeterministicAcrossRuns) {
  const StarNetwork net = ring(7, 1.3);
  const auto a = build_smoothed_voronoi(net, {0.5, 2.0}, 200);
  const auto b = build_smoothed_voronoi(net, {0.5, 2.0}, 200);
  EXPECT_EQ(a.raster.labels, b.raster.labels);
  EXPECT_EQ(a.adjacency, b.adjacency);
}

TEST(SmoothedVoronoi, ArgminMatchesDilationArgmaxInsideRightAngle) {
  // All leaves and queries inside one quadrant, so every angle is <= pi/2 and
  // the monotone transform chain applies.
  auto rng = checks::trial_rng(17, 0);
  StarNetwork net;
  for (int i = 0; i < 12; ++i) {
    const double rad = checks::uniform(rng, 1.0, 4.0), a = checks::uniform(rng, 0.0, kPi / 2);
    net.leaves.push_back({rad * std::cos(a), rad * std::sin(a)});
  }
  const OriginAnchoredMetric m;
  for (int k = 0; k < 300; ++k) {
    const double rad = checks::uniform(rng, 1.0, 4.0), a = checks::uniform(rng, 0.0, kPi / 2);
    const PlanarPoint q{rad * std::cos(a), rad * std::sin(a)};
    int by_d = 0, by_dil = 0;
    for (int i = 1; i < 12; ++i) {
      if (modified_distance(net, net.leaves[i], q) < modified_distance(net, net.leaves[by_d], q)) {
        by_d = i;
      }
      if (m.dilation(net.leaves[i], q) > m.dilation(net.leaves[by_dil], q)) by_dil = i;
    }
    EXPECT_EQ(by_d, by_dil);
  }
}

TEST(AngleCondition, DenseRingPasses) {
  const SmoothedDiagram d = build_smoothed_voronoi(ring(18, 1.5), {1.0, 2.0}, 256);
  EXPECT_TRUE(d.angle_ok);
  for (double a : d.angles.max_angle) EXPECT_NEAR(a, kPi / 18, 0.05);
}

TEST(AngleCondition, AntipodalPairSitsOnTheBoundary) {
  const SmoothedDiagram d = build_smoothed_voronoi(star({{1, 0}, {-1, 0}}), {0.5, 2.0}, 256);
  for (int i = 0; i < 2; ++i) {
    EXPECT_LE(d.angles.max_angle[i], kPi / 2 + d.angles.slack[i]);
    EXPECT_GT(d.angles.max_angle[i], kPi / 2 - 2 * d.angles.slack[i]);
  }
  EXPECT_TRUE(d.angle_ok);
}

TEST(AngleCondition, SingleLeafFails) {
  const SmoothedDiagram d = build_smoothed_voronoi(star({{1, 0}}), {0.5, 2.0}, 128);
  EXPECT_FALSE(d.angle_ok);
  EXPECT_NEAR(d.angles.max_angle[0], kPi, 0.05);
}

TEST(AngleCondition, ClusteredLeavesFail) {
  const SmoothedDiagram d =
      build_smoothed_voronoi(star({{1, 0}, {1, 0.2}, {1.2, -0.1}}), {0.5, 2.0}, 128);
  EXPECT_FALSE(d.angle_ok);
  EXPECT_GT(d.angles.worst_excess, 0.5);
}

TEST(Dilation, BruteForceSmallCases) {
  const DilationPair a = max_dilation_pair_bruteforce(star({{-1, 0}, {1, 0}}));
  EXPECT_EQ(a.i, 0);
  EXPECT_EQ(a.j, 1);
  EXPECT_DOUBLE_EQ(a.value, 1.0);

  const DilationPair b = max_dilation_pair_bruteforce(star({{1, 0}, {2, 0}, {0, 3}}));
  EXPECT_EQ(b.i, 0);
  EXPECT_EQ(b.j, 1);
  EXPECT_DOUBLE_EQ(b.value, 3.0);

  EXPECT_THROW(max_dilation_pair_bruteforce(star({{1, 0}})), InputError);
}

TEST(Dilation, BruteForceMatchesSmoothedDistanceMinimum) {
  auto rng = checks::trial_rng(23, 0);
  StarNetwork net;
  net.hub = {0.3, -0.2};
  for (int i = 0; i < 50; ++i) {
    net.leaves.push_back({checks::uniform(rng, -5, 5), checks::uniform(rng, -5, 5)});
  }
  const OriginAnchoredMetric m(net.hub);
  double best = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = i + 1; j < 50; ++j) {
      best = std::max(best, 2.0 / m.smoothed_distance(net.leaves[i], net.leaves[j]) - 1.0);
    }
  }
  EXPECT_NEAR(max_dilation_pair_bruteforce(net).value, best, 1e-9 * best);
}

TEST(Dilation, ViaDiagramMatchesOnSpreadExample) {
  // The 3-leaf example plus leaves at 180 and 270 degrees so that every cell
  // stays within a right angle of its leaf.
  const StarNetwork net = star({{1, 0}, {2, 0}, {0, 3}, {-2, 0}, {0, -2}});
  const SmoothedDiagram d = build_smoothed_voronoi(net, {0.5, 3.5}, 400);
  ASSERT_TRUE(d.angle_ok) << d.angles.worst_excess;
  const DilationPair a = max_dilation_pair_via_diagram(d);
  const DilationPair b = max_dilation_pair_bruteforce(net);
  EXPECT_EQ(a.i, b.i);
  EXPECT_EQ(a.j, b.j);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.i, 0);
  EXPECT_EQ(a.j, 1);
}

TEST(Dilation, TwoLeavesGiveTheOnlyPair) {
  const SmoothedDiagram d = build_smoothed_voronoi(star({{1, 0}, {-1, 0}}), {0.5, 2.0}, 256);
  const DilationPair p = max_dilation_pair_via_diagram(d);
  EXPECT_EQ(p.i, 0);
  EXPECT_EQ(p.j, 1);
}

TEST(Dilation, ViaDiagramRequiresAngleCondition) {
  const SmoothedDiagram d =
      build_smoothed_voronoi(star({{1, 0}, {1, 0.2}, {1.2, -0.1}}), {0.5, 2.0}, 128);
  EXPECT_THROW(max_dilation_pair_via_diagram(d), InputError);
}

TEST(Dilation, AdjacencySuiteSmall) {
  const auto v = checks::dilation_adjacency(10, 200, 8);
  EXPECT_TRUE(v.ok) << v.detail;
}
