#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "checks.hpp"
#include "mindiag/diagram.hpp"
#include "mindiag/errors.hpp"
#include "mindiag/raster.hpp"

using namespace mindiag;

namespace {

const FunctionPair kQuad = checks::make_pair("quadratic", "quadratic");
const FunctionPair kSmoothExt = checks::make_pair("smoothed-g", "extended-h");
const FunctionPair kPower3 = checks::make_pair("power:3", "power:3");

bool point_in_polygon(const Polyline& poly, PlanarPoint p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const PlanarPoint a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      in = !in;
    }
  }
  return in;
}

std::vector<PlanarPoint> sites_for(std::uint64_t trial, int n) {
  auto rng = checks::trial_rng(77, trial);
  return checks::random_sites(rng, n, 2.0, 1.0, 0.05);
}

TEST(Raster, SingleSite) {
  const std::vector<PlanarPoint> s{{0.3, 0.1}};
  const RasterDiagram r = build_raster(kQuad, s, {-1, -1, 1, 1}, 64);
  EXPECT_TRUE(std::all_of(r.labels.begin(), r.labels.end(), [](int l) { return l == 0; }));
  const auto topo = raster_cell_topology(build_raster(kQuad, s, {-1, -1, 1, 1}, 128));
  EXPECT_EQ(topo[0].components, 1);
  EXPECT_EQ(topo[0].holes, 0);
}

TEST(Raster, SymmetricSplit) {
  const std::vector<PlanarPoint> s{{-1, 0}, {1, 0}};
  const RasterDiagram r = build_raster(kQuad, s, {-2, -2, 2, 2}, 256);
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      EXPECT_EQ(r.at(ix, iy), r.pixel_center(ix, iy).x < 0 ? 0 : 1);
    }
  }
}

TEST(Raster, QuadraticIsEuclideanNearestSite) {
  const auto sites = sites_for(1, 20);
  const RasterDiagram r = build_raster(kQuad, sites, {-3, -2, 3, 2}, 200);
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const PlanarPoint c = r.pixel_center(ix, iy);
      int best = 0;
      for (int s = 1; s < 20; ++s) {
        if (distance(c, sites[s]) < distance(c, sites[best])) best = s;
      }
      EXPECT_EQ(r.at(ix, iy), best);
    }
  }
}

TEST(Raster, SitesLabelTheirOwnPixels) {
  const auto sites = sites_for(2, 16);
  const RasterDiagram r = build_raster(kSmoothExt, sites, {-3, -2, 3, 2}, 256);
  for (int s = 0; s < 16; ++s) {
    const auto px = r.pixel_of(sites[s]);
    ASSERT_TRUE(px);
    EXPECT_EQ(r.at(px->first, px->second), s);
  }
}

TEST(Raster, UndefinedPixelsAreMarked) {
  const FunctionPair bounded = checks::make_pair("smoothed-g", "smoothed-h");
  const std::vector<PlanarPoint> s{{0, 0}, {1, 0.5}};
  const RasterDiagram r = build_raster(bounded, s, {-4, -4, 4, 4}, 128);
  EXPECT_EQ(r.at(64, 127), RasterDiagram::kOutside);
  EXPECT_NE(r.at(64, 64), RasterDiagram::kOutside);
}

TEST(Raster, Errors) {
  const std::vector<PlanarPoint> dup{{0, 0}, {0, 0}};
  EXPECT_THROW(build_raster(kQuad, dup, {-1, -1, 1, 1}, 16), InputError);
  EXPECT_THROW(build_raster(kQuad, std::vector<PlanarPoint>{}, {-1, -1, 1, 1}, 16), InputError);
  const std::vector<PlanarPoint> one{{0, 0}};
  EXPECT_THROW(raster_cell_topology(build_raster(kQuad, one, {-1, -1, 1, 1}, 64)), InputError);
}

TEST(Topology, DetectsSplitAndHoledCells) {
  // Hand-made labeling: label 0 in two separate blocks, label 1 a ring
  // around a block of label 2.
  RasterDiagram r;
  r.window = {0, 0, 1, 1};
  r.nx = r.ny = 128;
  r.sites = {{0.1, 0.1}, {0.5, 0.5}, {0.52, 0.52}};
  r.labels.assign(128 * 128, 1);
  for (int iy = 0; iy < 128; ++iy) {
    for (int ix = 0; ix < 128; ++ix) {
      int& l = r.labels[iy * 128 + ix];
      if (ix < 10 && (iy < 10 || iy > 100)) l = 0;
      if (ix >= 60 && ix < 70 && iy >= 60 && iy < 70) l = 2;
    }
  }
  const auto topo = raster_cell_topology(r);
  EXPECT_EQ(topo[0].components, 2);
  EXPECT_EQ(topo[0].holes, 0);
  EXPECT_EQ(topo[1].components, 1);
  EXPECT_EQ(topo[1].holes, 1);
  EXPECT_TRUE(topo[2].simply_connected());
}

TEST(Topology, DiagonalTouchIsTwoComponents) {
  RasterDiagram r;
  r.window = {0, 0, 1, 1};
  r.nx = r.ny = 128;
  r.sites = {{0.1, 0.1}, {0.9, 0.9}};
  r.labels.assign(128 * 128, 1);
  r.labels[10 * 128 + 10] = 0;
  r.labels[11 * 128 + 11] = 0;
  EXPECT_EQ(raster_cell_topology(r)[0].components, 2);
  const auto pieces = raster_cell_pieces(r, 0);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(pieces[0], std::vector<int>{10 * 128 + 10});
  EXPECT_EQ(pieces[1], std::vector<int>{11 * 128 + 11});
}

TEST(Pgm, HeaderAndSize) {
  const std::vector<PlanarPoint> s{{0, 0}, {0.5, 0.5}};
  const RasterDiagram r = build_raster(kQuad, s, {-1, -1, 1, 1}, 32);
  const std::string pgm = raster_to_pgm(r);
  EXPECT_EQ(pgm.rfind("P5\n32 32\n255\n", 0), 0u);
  EXPECT_EQ(pgm.size(), std::string("P5\n32 32\n255\n").size() + 32 * 32);
}

TEST(Incremental, SingleSite) {
  const std::vector<PlanarPoint> s{{0, 0}};
  const MinDiagram d = build_incremental(kQuad, s, 1);
  const FeatureCounts c = feature_counts(d);
  EXPECT_EQ(c.cells, 1);
  EXPECT_EQ(c.arcs, 0);
  EXPECT_EQ(c.vertices, 0);
  EXPECT_EQ(d.cells[0].boundary.size(), 4u);
}

TEST(Incremental, Circumcenter) {
  const std::vector<PlanarPoint> s{{0, 0}, {2, 0}, {0, 2}};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const MinDiagram d = build_incremental(kQuad, s, seed);
    ASSERT_EQ(d.vertices.size(), 1u);
    EXPECT_NEAR(d.vertices[0].point.x, 1.0, 1e-10);
    EXPECT_NEAR(d.vertices[0].point.y, 1.0, 1e-10);
    EXPECT_EQ(d.vertices[0].sites, (std::array<int, 3>{0, 1, 2}));
    const std::vector<std::pair<int, int>> adj{{0, 1}, {0, 2}, {1, 2}};
    EXPECT_EQ(d.adjacency, adj);
    const FeatureCounts c = feature_counts(d);
    EXPECT_EQ(c.cells, 3);
    EXPECT_EQ(c.arcs, 3);
    EXPECT_EQ(c.vertices, 1);
  }
}

TEST(Incremental, Errors) {
  const std::vector<PlanarPoint> dup{{0, 0}, {1, 1}, {0, 0}};
  EXPECT_THROW(build_incremental(kQuad, dup, 1), InputError);
  const std::vector<PlanarPoint> s{{0, 0}, {1, 1}};
  EXPECT_THROW(build_incremental(kQuad, s, 1, Rect{0.5, 0.5, 2, 2}), InputError);
  EXPECT_THROW(build_incremental(checks::make_pair("smoothed-g", "smoothed-h"), s, 1),
               InputError);
  EXPECT_THROW(build_incremental(kQuad, std::vector<PlanarPoint>{}, 1), InputError);
}

TEST(Incremental, CocircularSitesAreReported) {
  // Four sites on a circle: the fourth lands exactly on a vertex.
  const std::vector<PlanarPoint> s{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  EXPECT_THROW(build_incremental(kQuad, s, 3), DegeneracyError);
}

TEST(Incremental, MatchesDelaunayOracle) {
  const auto v = checks::euclidean_regression(6, 20, 256, 78);
  EXPECT_TRUE(v.ok) << v.detail;
}

TEST(Incremental, SeedIndependence) {
  for (const FunctionPair& pair : {kQuad, kSmoothExt, kPower3}) {
    const auto sites = sites_for(3, 16);
    const MinDiagram base = build_incremental(pair, sites, 0);
    for (std::uint64_t seed = 1; seed < 5; ++seed) {
      const MinDiagram other = build_incremental(pair, sites, seed);
      ASSERT_EQ(base.vertices.size(), other.vertices.size());
      for (std::size_t i = 0; i < base.vertices.size(); ++i) {
        EXPECT_EQ(base.vertices[i].sites, other.vertices[i].sites);
        EXPECT_LE(distance(base.vertices[i].point, other.vertices[i].point), 1e-8);
      }
      EXPECT_EQ(base.adjacency, other.adjacency);
    }
  }
}

TEST(Incremental, InvariantsOnAdmissiblePairs) {
  for (const FunctionPair& pair : {kQuad, kSmoothExt, kPower3}) {
    const auto sites = sites_for(4, 24);
    const MinDiagram d = build_incremental(pair, sites, 9);
    ASSERT_EQ(d.cells.size(), sites.size());
    for (const DiagramVertex& v : d.vertices) {
      const auto [a, b, c] = v.sites;
      EXPECT_LE(vertex_residual(pair, sites[a], sites[b], sites[c], v.point), 1e-8);
    }
    for (std::size_t i = 0; i < sites.size(); ++i) {
      EXPECT_TRUE(point_in_polygon(cell_polygon(d, static_cast<int>(i), 0.05), sites[i]));
    }
    // Connected adjacency graph.
    std::vector<int> comp(sites.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (auto [a, b] : d.adjacency) comp[find(a)] = find(b);
    std::set<int> roots;
    for (std::size_t i = 0; i < sites.size(); ++i) roots.insert(find(static_cast<int>(i)));
    EXPECT_EQ(roots.size(), 1u);
    // Every bisector piece has its twin in the neighbouring cell.
    for (const DiagramCell& cell : d.cells) {
      for (const BoundaryPiece& piece : cell.boundary) {
        if (piece.neighbor < 0) continue;
        const auto& other = d.cells[piece.neighbor].boundary;
        EXPECT_TRUE(std::any_of(other.begin(), other.end(), [&](const BoundaryPiece& q) {
          return q.neighbor == cell.site && q.from == piece.to && q.to == piece.from;
        }));
      }
    }
  }
}

TEST(Incremental, SmoothedPairAgreesWithRaster) {
  const auto sites = sites_for(5, 16);
  const Rect win{-2.5, -1.5, 2.5, 1.5};
  const MinDiagram d = build_incremental(kSmoothExt, sites, 4, win);
  const RasterDiagram r = build_raster(kSmoothExt, sites, win, 384);
  EXPECT_EQ(verify_against_raster(d, r), 0.0);
}

TEST(Incremental, VerifyRejectsOtherSites) {
  const std::vector<PlanarPoint> a{{0, 0}, {1, 0}}, b{{0, 0}, {1, 1}};
  const MinDiagram d = build_incremental(kQuad, a, 1, Rect{-2, -2, 2, 2});
  EXPECT_THROW(verify_against_raster(d, build_raster(kQuad, b, {-2, -2, 2, 2}, 32)), InputError);
  EXPECT_EQ(verify_against_raster(build_incremental(kQuad, std::vector<PlanarPoint>{{0, 0}}, 1,
                                                    Rect{-2, -2, 2, 2}),
                                  build_raster(kQuad, std::vector<PlanarPoint>{{0, 0}},
                                               {-2, -2, 2, 2}, 64)),
            0.0);
}

TEST(Complexity, ConnectivityAndLinearBounds) {
  const auto v = checks::connectivity_complexity(9, 32, 200, 79);
  EXPECT_TRUE(v.ok) << v.detail;
}

}  // namespace
