#include "mindiag/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mindiag/errors.hpp"

namespace mindiag {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000".
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

// Liang-Barsky: parameter range of segment a-b inside the window, if any.
bool clip_segment(PlanarPoint a, PlanarPoint b, const Rect& w, double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - w.x0, w.x1 - a.x, a.y - w.y0, w.y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

struct Mapper {
  Rect w;
  double sx, sy;
  double x(double v) const { return (v - w.x0) * sx; }
  double y(double v) const { return (w.y1 - v) * sy; }
};

}  // namespace

void Scene::add_polyline(Polyline points, bool closed, Style style) {
  elements.emplace_back(PolylineElement{std::move(points), closed, std::move(style)});
}

void Scene::add_marker(PlanarPoint at, double radius, Style style) {
  elements.emplace_back(MarkerElement{at, radius, std::move(style)});
}

void Scene::add_raster(RasterDiagram raster) {
  elements.emplace_back(RasterUnderlay{std::move(raster)});
}

std::vector<Polyline> clip_polyline(const Polyline& points, bool closed, const Rect& window) {
  std::vector<Polyline> parts;
  if (points.empty()) return parts;
  if (points.size() == 1) {
    if (window.contains(points[0])) parts.push_back(points);
    return parts;
  }
  Polyline pts = points;
  if (closed) pts.push_back(points.front());
  Polyline current;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const PlanarPoint a = pts[i], b = pts[i + 1];
    double t0, t1;
    if (!clip_segment(a, b, window, t0, t1)) {
      if (current.size() > 1) parts.push_back(std::move(current));
      current.clear();
      continue;
    }
    const PlanarPoint ca = t0 == 0.0 ? a : a + t0 * (b - a);
    const PlanarPoint cb = t1 == 1.0 ? b : a + t1 * (b - a);
    if (current.empty()) current.push_back(ca);
    current.push_back(cb);
    if (t1 < 1.0) {
      if (current.size() > 1) parts.push_back(std::move(current));
      current.clear();
    }
  }
  if (current.size() > 1) parts.push_back(std::move(current));
  return parts;
}

std::string label_color(int label) {
  // Golden-angle hue walk in HSV with fixed saturation and value.
  const double hue = std::fmod(label * 137.50776405, 360.0) / 60.0;
  const double s = 0.45, v = 0.95;
  const double c = v * s;
  const double x = c * (1.0 - std::abs(std::fmod(hue, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hue)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = v - c;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                static_cast<int>(std::lround((g + m) * 255)),
                static_cast<int>(std::lround((b + m) * 255)));
  return buf;
}

std::string render_svg(const Scene& scene, int width, int height) {
  if (width <= 0 || height <= 0) throw InputError("SVG dimensions must be positive");
  const Rect& w = scene.window;
  if (!(w.width() > 0.0 && w.height() > 0.0)) throw InputError("scene window is empty");
  const Mapper map{w, width / w.width(), height / w.height()};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\""
      << scene.background << "\"/>\n";

  for (const SceneElement& el : scene.elements) {
    if (const auto* r = std::get_if<RasterUnderlay>(&el)) {
      const RasterDiagram& d = r->raster;
      out << "<g shape-rendering=\"crispEdges\">\n";
      for (int iy = 0; iy < d.ny; ++iy) {
        const double top = map.y(d.window.y0 + (iy + 1) * d.pixel_height());
        const double bottom = map.y(d.window.y0 + iy * d.pixel_height());
        for (int ix = 0; ix < d.nx;) {
          const int label = d.at(ix, iy);
          int end = ix + 1;
          while (end < d.nx && d.at(end, iy) == label) ++end;
          if (label != RasterDiagram::kOutside) {
            const double left = map.x(d.window.x0 + ix * d.pixel_width());
            const double right = map.x(d.window.x0 + end * d.pixel_width());
            out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
                << num(right - left) << "\" height=\"" << num(bottom - top) << "\" fill=\""
                << label_color(label) << "\"/>\n";
          }
          ix = end;
        }
      }
      out << "</g>\n";
    } else if (const auto* p = std::get_if<PolylineElement>(&el)) {
      const auto parts = clip_polyline(p->points, p->closed, w);
      const bool whole = parts.size() == 1 && parts[0].size() == p->points.size() + (p->closed ? 1 : 0);
      for (const Polyline& part : parts) {
        if (part.size() < 2) continue;
        out << "<path d=\"";
        const std::size_t count = whole && p->closed ? part.size() - 1 : part.size();
        for (std::size_t i = 0; i < count; ++i) {
          out << (i == 0 ? "M" : " L") << num(map.x(part[i].x)) << " " << num(map.y(part[i].y));
        }
        if (whole && p->closed) out << " Z";
        out << "\" fill=\"" << (whole ? p->style.fill : "none") << "\" stroke=\""
            << p->style.stroke << "\" stroke-width=\"" << num(p->style.stroke_width) << "\"/>\n";
      }
    } else if (const auto* m = std::get_if<MarkerElement>(&el)) {
      if (!w.contains(m->at)) continue;
      out << "<circle cx=\"" << num(map.x(m->at.x)) << "\" cy=\"" << num(map.y(m->at.y))
          << "\" r=\"" << num(m->radius) << "\" fill=\"" << m->style.fill << "\" stroke=\""
          << m->style.stroke << "\" stroke-width=\"" << num(m->style.stroke_width) << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace mindiag
