#include "mindiag/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "mindiag/errors.hpp"
#include "mindiag/root_find.hpp"

namespace mindiag {

namespace {

constexpr double kNodeSeparation = 1e-9;
constexpr double kVertexResidual = 1e-8;

// Frame sides in counterclockwise order, each running from corner k to k + 1.
enum Side { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

struct Node {
  PlanarPoint p;
  // Sorted site triple for vertices; {-1, -1, -1} otherwise.
  std::array<int, 3> triple{-1, -1, -1};
};

struct Edge {
  int from;
  int to;
  int neighbor;  // BoundaryPiece::kFrame on the window border
  int side;      // frame side, or -1
};

std::string triple_name(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

class IncrementalBuilder {
 public:
  IncrementalBuilder(const FunctionPair& pair, std::span<const PlanarPoint> sites,
                     const Rect& window)
      : pair_(pair), window_(window), sites_(sites.begin(), sites.end()), cycles_(sites.size()) {
    const std::array<PlanarPoint, 4> corners{{{window.x0, window.y0},
                                              {window.x1, window.y0},
                                              {window.x1, window.y1},
                                              {window.x0, window.y1}}};
    for (PlanarPoint c : corners) nodes_.push_back({c});
  }

  void insert(int p) {
    if (inserted_.empty()) {
      cycles_[p] = {{0, 1, BoundaryPiece::kFrame, kBottom},
                    {1, 2, BoundaryPiece::kFrame, kRight},
                    {2, 3, BoundaryPiece::kFrame, kTop},
                    {3, 0, BoundaryPiece::kFrame, kLeft}};
      inserted_.push_back(p);
      return;
    }
    const std::vector<Plan> plans = find_conflicts(p);
    std::vector<Edge> pieces;
    for (const Plan& plan : plans) cut(p, plan, pieces);
    cycles_[p] = link(p, pieces);
    inserted_.push_back(p);
  }

  MinDiagram finish(std::vector<int> order) const {
    MinDiagram d{pair_, window_, {}, {}, {}, {}, {}};
    d.sites = sites_;
    d.insertion_order = std::move(order);
    std::set<int> used_vertices;
    std::set<std::pair<int, int>> adjacency;
    for (std::size_t s = 0; s < cycles_.size(); ++s) {
      DiagramCell cell;
      cell.site = static_cast<int>(s);
      for (const Edge& e : cycles_[s]) {
        cell.boundary.push_back({nodes_[e.from].p, nodes_[e.to].p, e.neighbor});
        for (int id : {e.from, e.to}) {
          if (nodes_[id].triple[0] >= 0) used_vertices.insert(id);
        }
        if (e.neighbor >= 0) {
          adjacency.insert({std::min<int>(s, e.neighbor), std::max<int>(s, e.neighbor)});
        }
      }
      d.cells.push_back(std::move(cell));
    }
    for (int id : used_vertices) d.vertices.push_back({nodes_[id].p, nodes_[id].triple});
    std::sort(d.vertices.begin(), d.vertices.end(),
              [](const DiagramVertex& a, const DiagramVertex& b) { return a.sites < b.sites; });
    d.adjacency.assign(adjacency.begin(), adjacency.end());
    return d;
  }

 private:
  // Cell q loses the nodes run_begin..run_end (cyclic indices into its edge
  // list) to the new site.
  struct Plan {
    int q;
    int run_begin;
    int run_end;
  };

  double f(int site, PlanarPoint x) const { return pair_.at(sites_[site], x); }

  std::vector<Plan> find_conflicts(int p) {
    int q0 = inserted_.front();
    for (int s : inserted_) {
      if (f(s, sites_[p]) < f(q0, sites_[p])) q0 = s;
    }
    std::vector<Plan> plans;
    std::deque<int> queue{q0};
    std::set<int> seen{q0};
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      const std::vector<Edge>& cyc = cycles_[q];
      const int m = static_cast<int>(cyc.size());
      std::vector<double> s(m);
      int negatives = 0;
      for (int k = 0; k < m; ++k) {
        const PlanarPoint v = nodes_[cyc[k].from].p;
        const double fq = f(q, v);
        s[k] = f(p, v) - fq;
        if (std::abs(s[k]) < 1e-12 * (1.0 + std::abs(fq))) {
          throw DegeneracyError("site " + std::to_string(p) +
                                " is equidistant with an existing diagram vertex of cell " +
                                std::to_string(q) + "; perturb the input");
        }
        if (s[k] < 0.0) ++negatives;
      }
      if (negatives == 0) {
        if (q == q0) {
          throw NumericError("site " + std::to_string(p) + " is not closer to any node of cell " +
                             std::to_string(q) + " that contains it");
        }
        continue;
      }
      if (negatives == m) {
        throw NumericError("site " + std::to_string(p) + " claims the whole boundary of cell " +
                           std::to_string(q));
      }
      int run_begin = -1, entries = 0;
      for (int k = 0; k < m; ++k) {
        if (s[k] < 0.0 && s[(k + m - 1) % m] > 0.0) {
          run_begin = k;
          ++entries;
        }
      }
      if (entries != 1) {
        throw DegeneracyError("site " + std::to_string(p) + " cuts cell " + std::to_string(q) +
                              " in " + std::to_string(entries) + " places; perturb the input");
      }
      const int run_end = (run_begin + negatives - 1) % m;
      plans.push_back({q, run_begin, run_end});
      for (int j = 0; j < negatives; ++j) {
        const int k = (run_begin + j) % m;
        for (const Edge& e : {cyc[k], cyc[(k + m - 1) % m]}) {
          if (e.neighbor >= 0 && seen.insert(e.neighbor).second) queue.push_back(e.neighbor);
        }
      }
    }
    return plans;
  }

  void check_separation(PlanarPoint c, const Edge& e, const std::string& what) const {
    for (int id : {e.from, e.to}) {
      if (distance(c, nodes_[id].p) < kNodeSeparation) {
        throw DegeneracyError(what + " falls within 1e-9 of an existing vertex; perturb the input");
      }
    }
  }

  // Node where B(p, q) crosses edge e of cell q.
  int crossing(int p, int q, const Edge& e) {
    const PlanarPoint u = nodes_[e.from].p;
    const PlanarPoint w = nodes_[e.to].p;
    auto diff = [&](PlanarPoint x) { return f(p, x) - f(q, x); };
    if (e.neighbor == BoundaryPiece::kFrame) {
      const std::array<int, 3> key{std::min(p, q), std::max(p, q), e.side};
      if (auto it = frame_ids_.find(key); it != frame_ids_.end()) return it->second;
      auto along = [&](double t) { return u + t * (w - u); };
      const double t = find_root([&](double t) { return diff(along(t)); }, 0.0, 1.0, {1e-15, 200});
      PlanarPoint c = along(t);
      // Keep the point exactly on its side.
      if (e.side == kBottom) c.y = window_.y0;
      if (e.side == kTop) c.y = window_.y1;
      if (e.side == kRight) c.x = window_.x1;
      if (e.side == kLeft) c.x = window_.x0;
      check_separation(c, e, "bisector of sites " + std::to_string(p) + " and " +
                                 std::to_string(q) + " meets the window frame where it");
      nodes_.push_back({c});
      return frame_ids_[key] = static_cast<int>(nodes_.size()) - 1;
    }
    const int r = e.neighbor;
    std::array<int, 3> key{p, q, r};
    std::sort(key.begin(), key.end());
    if (auto it = vertex_ids_.find(key); it != vertex_ids_.end()) return it->second;
    const Bisector b = classify_bisector(pair_, sites_[q], sites_[r]);
    const auto c = solve_on_bisector_arc(b, u, w, diff);
    if (!c) {
      throw NumericError("no vertex found for sites " + triple_name(p, q, r) +
                         " on the shared arc");
    }
    const PlanarPoint v = polish_vertex(pair_, sites_[p], sites_[q], sites_[r], *c);
    const double res = vertex_residual(pair_, sites_[p], sites_[q], sites_[r], v);
    if (!(res <= kVertexResidual)) {
      throw NumericError("vertex solve for sites " + triple_name(p, q, r) +
                         " did not converge (residual " + std::to_string(res) + ")");
    }
    check_separation(v, e, "vertex of sites " + triple_name(p, q, r));
    nodes_.push_back({v, key});
    return vertex_ids_[key] = static_cast<int>(nodes_.size()) - 1;
  }

  void cut(int p, const Plan& plan, std::vector<Edge>& p_pieces) {
    const std::vector<Edge> cyc = cycles_[plan.q];
    const int m = static_cast<int>(cyc.size());
    const Edge e_in = cyc[(plan.run_begin + m - 1) % m];
    const Edge e_out = cyc[plan.run_end];
    const int c_in = crossing(p, plan.q, e_in);
    const int c_out = crossing(p, plan.q, e_out);
    if (distance(nodes_[c_in].p, nodes_[c_out].p) < kNodeSeparation) {
      throw DegeneracyError("site " + std::to_string(p) + " touches cell " +
                            std::to_string(plan.q) + " in a single point; perturb the input");
    }

    std::vector<Edge> kept;
    kept.push_back({c_out, e_out.to, e_out.neighbor, e_out.side});
    for (int k = (plan.run_end + 1) % m; k != (plan.run_begin + m - 1) % m; k = (k + 1) % m) {
      kept.push_back(cyc[k]);
    }
    kept.push_back({e_in.from, c_in, e_in.neighbor, e_in.side});
    kept.push_back({c_in, c_out, p, -1});
    cycles_[plan.q] = std::move(kept);

    p_pieces.push_back({c_out, c_in, plan.q, -1});
    if (e_in.neighbor == BoundaryPiece::kFrame) {
      p_pieces.push_back({c_in, e_in.to, BoundaryPiece::kFrame, e_in.side});
    }
    for (int k = plan.run_begin; k != plan.run_end; k = (k + 1) % m) {
      if (cyc[k].neighbor == BoundaryPiece::kFrame) p_pieces.push_back(cyc[k]);
    }
    if (e_out.neighbor == BoundaryPiece::kFrame) {
      p_pieces.push_back({e_out.from, c_out, BoundaryPiece::kFrame, e_out.side});
    }
  }

  std::vector<Edge> link(int p, const std::vector<Edge>& pieces) const {
    std::map<int, std::size_t> by_start;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (!by_start.emplace(pieces[i].from, i).second) {
        throw NumericError("boundary of new cell " + std::to_string(p) + " branches");
      }
    }
    std::vector<Edge> cycle;
    std::size_t cur = 0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      cycle.push_back(pieces[cur]);
      const auto next = by_start.find(pieces[cur].to);
      if (next == by_start.end()) {
        throw NumericError("boundary of new cell " + std::to_string(p) + " is not closed");
      }
      cur = next->second;
    }
    if (cur != 0) {
      throw NumericError("boundary of new cell " + std::to_string(p) + " splits into loops");
    }
    return cycle;
  }

  FunctionPair pair_;
  Rect window_;
  std::vector<PlanarPoint> sites_;
  std::vector<Node> nodes_;
  std::map<std::array<int, 3>, int> vertex_ids_;
  std::map<std::array<int, 3>, int> frame_ids_;
  std::vector<std::vector<Edge>> cycles_;
  std::vector<int> inserted_;
};

}  // namespace

MinDiagram build_incremental(const FunctionPair& pair, std::span<const PlanarPoint> sites,
                             std::uint64_t seed, std::optional<Rect> window) {
  if (sites.empty()) throw InputError("diagram needs at least one site");
  if (!pair.strictly_convex()) throw InputError("diagram construction needs strictly convex profiles");
  for (const Profile1D* prof : {&pair.gx, &pair.hy}) {
    if (std::isfinite(prof->domain().lo) || std::isfinite(prof->domain().hi)) {
      throw InputError("analytic diagrams need profiles defined on the whole line; " +
                       prof->name() + " is not (extended-h is the unbounded variant)");
    }
  }
  const Rect win = window ? *window : default_window(sites);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const PlanarPoint s = sites[i];
    if (!(s.x > win.x0 && s.x < win.x1 && s.y > win.y0 && s.y < win.y1)) {
      throw InputError("site " + std::to_string(i) + " is not strictly inside the window");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (sites[j] == s) {
        throw InputError("duplicate site " + std::to_string(i) + " (same as " +
                         std::to_string(j) + ")");
      }
    }
  }
  std::vector<int> order(sites.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  IncrementalBuilder builder(pair, sites, win);
  for (int p : order) builder.insert(p);
  return builder.finish(std::move(order));
}

FeatureCounts feature_counts(const MinDiagram& d) {
  FeatureCounts c;
  c.cells = static_cast<int>(d.cells.size());
  c.vertices = static_cast<int>(d.vertices.size());
  for (const DiagramCell& cell : d.cells) {
    for (const BoundaryPiece& piece : cell.boundary) {
      if (piece.neighbor > cell.site) ++c.arcs;
    }
  }
  return c;
}

Polyline cell_polygon(const MinDiagram& d, int site, double max_step) {
  if (site < 0 || site >= static_cast<int>(d.cells.size())) {
    throw InputError("no cell for site " + std::to_string(site));
  }
  if (!(max_step > 0.0)) throw InputError("polygon step must be positive");
  Polyline out;
  for (const BoundaryPiece& piece : d.cells[site].boundary) {
    out.push_back(piece.from);
    if (piece.neighbor == BoundaryPiece::kFrame) continue;
    const Bisector b = classify_bisector(d.pair, d.sites[site], d.sites[piece.neighbor]);
    // Split parameter intervals until the points they join are close enough.
    std::vector<std::pair<double, PlanarPoint>> stack{{1.0, piece.to}};
    double t0 = 0.0;
    PlanarPoint p0 = piece.from;
    while (!stack.empty()) {
      const auto [t1, p1] = stack.back();
      if (distance(p0, p1) > max_step && t1 - t0 > 1e-9) {
        const double tm = 0.5 * (t0 + t1);
        stack.push_back({tm, bisector_arc_point(b, piece.from, piece.to, tm)});
        continue;
      }
      stack.pop_back();
      if (!stack.empty()) out.push_back(p1);
      t0 = t1;
      p0 = p1;
    }
  }
  return out;
}

double verify_against_raster(const MinDiagram& d, const RasterDiagram& r) {
  if (d.sites != r.sites) throw InputError("diagram and raster have different sites");
  const double pw = r.pixel_width(), ph = r.pixel_height();
  const double step = 0.25 * std::min(pw, ph);
  const std::size_t total = static_cast<std::size_t>(r.nx) * r.ny;
  std::vector<int> analytic(total, -2);
  std::vector<char> masked(total, 0);

  // Pixel coordinates with pixel centers at integers.
  auto px = [&](PlanarPoint p) { return PlanarPoint{(p.x - r.window.x0) / pw - 0.5,
                                                    (p.y - r.window.y0) / ph - 0.5}; };
  for (const DiagramCell& cell : d.cells) {
    const Polyline poly = cell_polygon(d, cell.site, step);
    const int m = static_cast<int>(poly.size());
    std::vector<double> xs;
    for (int iy = 0; iy < r.ny; ++iy) {
      xs.clear();
      for (int i = 0; i < m; ++i) {
        const PlanarPoint a = px(poly[i]), b = px(poly[(i + 1) % m]);
        if ((a.y > iy) != (b.y > iy)) xs.push_back(a.x + (iy - a.y) * (b.x - a.x) / (b.y - a.y));
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        const int lo = std::max(0, static_cast<int>(std::ceil(xs[k])));
        const int hi = std::min(r.nx - 1, static_cast<int>(std::floor(xs[k + 1])));
        for (int ix = lo; ix <= hi; ++ix) analytic[static_cast<std::size_t>(iy) * r.nx + ix] = cell.site;
      }
    }
  }
  for (const DiagramCell& cell : d.cells) {
    for (const BoundaryPiece& piece : cell.boundary) {
      if (piece.neighbor < cell.site) continue;  // frame pieces and the other copy
      const Bisector b = classify_bisector(d.pair, d.sites[cell.site], d.sites[piece.neighbor]);
      Polyline pts{piece.from};
      const int pieces_n =
          std::max(1, static_cast<int>(std::ceil(distance(piece.from, piece.to) / step)));
      for (int k = 1; k <= pieces_n; ++k) {
        pts.push_back(bisector_arc_point(b, piece.from, piece.to, static_cast<double>(k) / pieces_n));
      }
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const PlanarPoint a = px(pts[k]), c = px(pts[k + 1]);
        const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, c.x) - 2)));
        const int x1 = std::min(r.nx - 1, static_cast<int>(std::ceil(std::max(a.x, c.x) + 2)));
        const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, c.y) - 2)));
        const int y1 = std::min(r.ny - 1, static_cast<int>(std::ceil(std::max(a.y, c.y) + 2)));
        const PlanarPoint ac = c - a;
        const double len2 = ac.x * ac.x + ac.y * ac.y;
        for (int iy = y0; iy <= y1; ++iy) {
          for (int ix = x0; ix <= x1; ++ix) {
            const PlanarPoint q{static_cast<double>(ix), static_cast<double>(iy)};
            double t = len2 > 0 ? ((q.x - a.x) * ac.x + (q.y - a.y) * ac.y) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            if (distance(q, a + t * ac) <= 2.0) masked[static_cast<std::size_t>(iy) * r.nx + ix] = 1;
          }
        }
      }
    }
  }
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (!masked[i] && analytic[i] != r.labels[i]) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(total);
}

}  // namespace mindiag
