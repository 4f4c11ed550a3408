#include "mindiag/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mindiag/errors.hpp"

namespace mindiag {

namespace {

void check_grid(std::span<const PlanarPoint> sites, const Rect& window, int nx, int ny) {
  if (sites.empty()) throw InputError("raster diagram needs at least one site");
  if (nx < 1 || ny < 1) throw InputError("raster resolution must be positive");
  if (!(window.width() > 0.0) || !(window.height() > 0.0)) {
    throw InputError("raster window must have positive width and height");
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[i] == sites[j]) {
        throw InputError("duplicate site " + std::to_string(j) + " (same as " +
                         std::to_string(i) + ")");
      }
    }
  }
}

RasterDiagram empty_raster(std::span<const PlanarPoint> sites, const Rect& window, int nx,
                           int ny) {
  RasterDiagram r;
  r.window = window;
  r.nx = nx;
  r.ny = ny;
  r.labels.assign(static_cast<std::size_t>(nx) * ny, RasterDiagram::kOutside);
  r.sites.assign(sites.begin(), sites.end());
  return r;
}

// Labels connected components of pixels for which `member` holds, over an
// (nx x ny) grid. Returns the component count; comp receives ids or -1.
template <class Member>
int label_components(int nx, int ny, Member&& member, bool eight, std::vector<int>& comp) {
  comp.assign(static_cast<std::size_t>(nx) * ny, -1);
  std::vector<int> stack;
  int count = 0;
  for (int start = 0; start < nx * ny; ++start) {
    if (comp[start] >= 0 || !member(start % nx, start / nx)) continue;
    comp[start] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int cx = cur % nx, cy = cur / nx;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
          const int x = cx + dx, y = cy + dy;
          if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
          const int idx = y * nx + x;
          if (comp[idx] >= 0 || !member(x, y)) continue;
          comp[idx] = count;
          stack.push_back(idx);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

std::optional<std::pair<int, int>> RasterDiagram::pixel_of(PlanarPoint p) const {
  if (!window.contains(p)) return std::nullopt;
  const int ix = std::min(nx - 1, static_cast<int>((p.x - window.x0) / pixel_width()));
  const int iy = std::min(ny - 1, static_cast<int>((p.y - window.y0) / pixel_height()));
  return std::pair{ix, iy};
}

RasterDiagram build_raster_by(std::span<const PlanarPoint> sites, const Rect& window, int nx,
                              int ny,
                              const std::function<double(int, PlanarPoint)>& cost) {
  check_grid(sites, window, nx, ny);
  RasterDiagram r = empty_raster(sites, window, nx, ny);
  const int n = static_cast<int>(sites.size());
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const PlanarPoint c = r.pixel_center(ix, iy);
      int best = RasterDiagram::kOutside;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int s = 0; s < n; ++s) {
        const double v = cost(s, c);
        if (!std::isfinite(v)) {
          best = RasterDiagram::kOutside;
          break;
        }
        if (v < best_cost) {
          best_cost = v;
          best = s;
        }
      }
      r.labels[static_cast<std::size_t>(iy) * nx + ix] = best;
    }
  }
  return r;
}

RasterDiagram build_raster(const FunctionPair& pair, std::span<const PlanarPoint> sites,
                           const Rect& window, int resolution) {
  check_grid(sites, window, resolution, resolution);
  RasterDiagram r = empty_raster(sites, window, resolution, resolution);
  const int n = static_cast<int>(sites.size());
  const int res = resolution;
  // gx_table[s * res + ix] = g(x_ix - s.x); likewise for h over rows.
  std::vector<double> gt(static_cast<std::size_t>(n) * res), ht(static_cast<std::size_t>(n) * res);
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < res; ++i) {
      const PlanarPoint c = r.pixel_center(i, i);
      gt[static_cast<std::size_t>(s) * res + i] = pair.gx.value_or_inf(c.x - sites[s].x);
      ht[static_cast<std::size_t>(s) * res + i] = pair.hy.value_or_inf(c.y - sites[s].y);
    }
  }
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      int best = RasterDiagram::kOutside;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int s = 0; s < n; ++s) {
        const double v = gt[static_cast<std::size_t>(s) * res + ix] +
                         ht[static_cast<std::size_t>(s) * res + iy];
        if (!std::isfinite(v)) {
          best = RasterDiagram::kOutside;
          break;
        }
        if (v < best_cost) {
          best_cost = v;
          best = s;
        }
      }
      r.labels[static_cast<std::size_t>(iy) * res + ix] = best;
    }
  }
  return r;
}

std::vector<CellTopology> raster_cell_topology(const RasterDiagram& r) {
  if (r.nx < 128 || r.ny < 128) throw InputError("cell topology needs resolution >= 128");
  const int n = static_cast<int>(r.sites.size());
  std::vector<CellTopology> out(n);
  // Bounding box of every label.
  std::vector<int> x0(n, r.nx), y0(n, r.ny), x1(n, -1), y1(n, -1);
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const int l = r.at(ix, iy);
      if (l < 0) continue;
      ++out[l].pixels;
      x0[l] = std::min(x0[l], ix);
      y0[l] = std::min(y0[l], iy);
      x1[l] = std::max(x1[l], ix);
      y1[l] = std::max(y1[l], iy);
    }
  }
  std::vector<int> comp;
  for (int l = 0; l < n; ++l) {
    if (out[l].pixels == 0) continue;
    // Box padded by one pixel on every side; the padding ring belongs to the
    // complement, so complement regions touching it are not holes.
    const int bx = x0[l] - 1, by = y0[l] - 1;
    const int w = x1[l] - x0[l] + 3, h = y1[l] - y0[l] + 3;
    auto in_cell = [&](int x, int y) {
      const int gx = bx + x, gy = by + y;
      if (gx < 0 || gy < 0 || gx >= r.nx || gy >= r.ny) return false;
      return r.at(gx, gy) == l;
    };
    out[l].components = label_components(w, h, in_cell, false, comp);
    const int complement = label_components(
        w, h, [&](int x, int y) { return !in_cell(x, y); }, true, comp);
    // Component 0 contains the corner of the padding ring, which the whole
    // ring joins.
    out[l].holes = complement - 1;
  }
  return out;
}

std::vector<std::vector<int>> raster_cell_pieces(const RasterDiagram& r, int label) {
  std::vector<int> comp;
  const int count = label_components(
      r.nx, r.ny, [&](int x, int y) { return r.at(x, y) == label; }, false, comp);
  std::vector<std::vector<int>> pieces(count);
  for (int i = 0; i < r.nx * r.ny; ++i) {
    if (comp[i] >= 0 && r.labels[i] == label) pieces[comp[i]].push_back(i);
  }
  return pieces;
}

std::string raster_to_pgm(const RasterDiagram& r) {
  const int n = static_cast<int>(r.sites.size());
  std::string out = "P5\n" + std::to_string(r.nx) + " " + std::to_string(r.ny) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(r.nx) * r.ny);
  for (int iy = r.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      const int l = r.at(ix, iy);
      // Spread labels over 32..255, scrambling neighbours apart.
      const int level = l < 0 ? 0 : 32 + static_cast<int>((l * 97L) % std::max(n, 1) * 223L /
                                                          std::max(n, 1));
      out.push_back(static_cast<char>(level));
    }
  }
  return out;
}

}  // namespace mindiag
