#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mindiag/diagram.hpp"
#include "mindiag/errors.hpp"
#include "mindiag/figures.hpp"
#include "mindiag/io.hpp"
#include "mindiag/lloyd.hpp"
#include "mindiag/raster.hpp"
#include "mindiag/render.hpp"
#include "mindiag/smoothed.hpp"

namespace mindiag::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || field.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
      throw InputError(std::string(flag) + ": '" + field + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.size() != count) {
    throw InputError(std::string(flag) + " expects " + std::to_string(count) +
                     " comma-separated numbers, got '" + text + "'");
  }
  return out;
}

PlanarPoint parse_point(const std::string& text, const char* flag) {
  const auto v = parse_numbers(text, 2, flag);
  return {v[0], v[1]};
}

struct Globals {
  std::string gx = "quadratic";
  std::string hy = "quadratic";
  std::uint64_t seed = 1;
  std::string out;
  std::optional<int> resolution;
  std::string window;
  std::string origin = "0,0";

  FunctionPair pair() const { return {parse_profile(gx), parse_profile(hy)}; }
  PlanarPoint hub() const { return parse_point(origin, "--origin"); }
  int resolution_or(int fallback) const {
    const int r = resolution.value_or(fallback);
    if (r < 1) throw InputError("--resolution must be positive");
    return r;
  }
  std::optional<Rect> rect() const {
    if (window.empty()) return std::nullopt;
    const auto v = parse_numbers(window, 4, "--window");
    if (!(v[2] > v[0] && v[3] > v[1])) throw InputError("--window needs x0 < x1 and y0 < y1");
    return Rect{v[0], v[1], v[2], v[3]};
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << content;
  if (!f) throw InputError("failed writing " + path);
}

void emit(const Globals& g, std::ostream& out, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    out << text;
  } else {
    write_file(g.out, text);
  }
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create directory " + dir);
  return fs::path(dir);
}

Rect padded_bounds(const std::vector<Polyline>& curves) {
  Rect r{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const Polyline& c : curves) {
    for (const PlanarPoint& p : c) {
      r.x0 = std::min(r.x0, p.x);
      r.y0 = std::min(r.y0, p.y);
      r.x1 = std::max(r.x1, p.x);
      r.y1 = std::max(r.y1, p.y);
    }
  }
  return r.inflated(0.05 * std::max({r.width(), r.height(), 1e-9}));
}

// Annulus covering the leaves' distances from the hub.
Annulus leaf_annulus(const StarNetwork& net) {
  double lo = INFINITY, hi = 0.0;
  for (const PlanarPoint& p : net.leaves) {
    lo = std::min(lo, distance(p, net.hub));
    hi = std::max(hi, distance(p, net.hub));
  }
  if (!(lo > 0.0)) throw InputError("a leaf coincides with the hub");
  if (hi <= lo * (1.0 + 1e-9)) return {0.5 * lo, 2.0 * hi};
  return {lo, hi};
}

StarNetwork load_network(const Globals& g, const std::string& points) {
  StarNetwork net{g.hub(), read_points_file(points)};
  net.validate();
  return net;
}

Annulus annulus_or(const std::string& text, const StarNetwork& net) {
  if (text.empty()) return leaf_annulus(net);
  const auto v = parse_numbers(text, 2, "--annulus");
  return {v[0], v[1]};
}

json admissibility_entry(const Profile1D& p, Interval iv, int samples) {
  json j = admissibility_json(check_admissible_on(p, iv, samples));
  j["sign_changes"] = admissibility_sign_changes(p, iv, samples);
  return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Minimization diagrams for f(x, y) = g(x) + h(y)", "mindiag");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--gx", g.gx, "profile g of x (quadratic, power:C, smoothed-g, smoothed-h, "
                               "extended-h, exp-square)")
      ->capture_default_str();
  app.add_option("--hy", g.hy, "profile h of y")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out", g.out, "write the JSON result to this file instead of stdout");
  app.add_option("--resolution", g.resolution, "raster resolution in pixels per side");
  app.add_option("--window", g.window, "drawing/search window x0,y0,x1,y1");
  app.add_option("--origin", g.origin, "hub x,y")->capture_default_str();
  app.fallthrough();

  // check-admissible
  std::string interval = "-3,3";
  int samples = 20001;
  auto* adm = app.add_subcommand("check-admissible", "sample the growth margin of both profiles");
  adm->add_option("--interval", interval, "lo,hi")->capture_default_str();
  adm->add_option("--samples", samples)->capture_default_str();

  // levelsets
  std::string levels, center = "0,0", svg;
  int curve_samples = 256;
  auto* ls = app.add_subcommand("levelsets", "level sets of f around a center");
  ls->add_option("--levels", levels, "comma-separated levels")->required();
  ls->add_option("--center", center)->capture_default_str();
  ls->add_option("--samples", curve_samples)->capture_default_str();
  ls->add_option("--svg", svg, "also write an SVG drawing");

  // bisector
  std::string bp, bq;
  auto* bis = app.add_subcommand("bisector", "trace the bisector of two sites");
  bis->add_option("--p", bp, "x,y")->required();
  bis->add_option("--q", bq, "x,y")->required();
  bis->add_option("--samples", curve_samples)->capture_default_str();
  bis->add_option("--svg", svg);

  // diagram
  std::string points, pgm;
  double max_step = 0.0;
  auto* dia = app.add_subcommand("diagram", "incremental minimization diagram of a point file");
  dia->add_option("--points", points)->required();
  dia->add_option("--max-step", max_step, "cell boundary subdivision (default window/512)");
  dia->add_option("--svg", svg);
  dia->add_option("--pgm", pgm, "debug raster of the brute-force labels");

  // smoothed
  std::string annulus;
  auto* smo = app.add_subcommand("smoothed", "smoothed-distance Voronoi diagram of star leaves");
  smo->add_option("--points", points)->required();
  smo->add_option("--annulus", annulus, "r,R (default: range of leaf distances)");
  smo->add_option("--svg", svg);

  // dilation
  bool via_diagram = false;
  auto* dil = app.add_subcommand("dilation", "leaf pair of maximum dilation");
  dil->add_option("--points", points)->required();
  dil->add_flag("--via-diagram", via_diagram, "only test pairs adjacent in the smoothed diagram");
  dil->add_option("--annulus", annulus, "r,R for --via-diagram");

  // lloyd
  std::string out_dir;
  int n_sites = 128, iterations = 16, svg_size = 800;
  std::string init = "exponential";
  auto* llo = app.add_subcommand("lloyd", "smoothed-distance Lloyd iterations in an annulus");
  std::string lloyd_annulus = "1,18";
  llo->add_option("--annulus", lloyd_annulus, "r,R")->capture_default_str();
  llo->add_option("--n", n_sites)->capture_default_str();
  llo->add_option("--iters", iterations)->capture_default_str();
  llo->add_option("--init", init, "exponential or uniform")
      ->check(CLI::IsMember({"exponential", "uniform"}))
      ->capture_default_str();
  llo->add_option("--svg-size", svg_size)->capture_default_str();
  llo->add_option("--out-dir", out_dir)->required();

  // figure
  std::string figure_name, figure_dir = ".";
  auto* fig = app.add_subcommand("figure", "write one of fig1, fig2, fig3, fig6");
  fig->add_option("name", figure_name)->required();
  fig->add_option("--out-dir", figure_dir)->capture_default_str();
  fig->add_option("--n", n_sites)->capture_default_str();
  fig->add_option("--iters", iterations)->capture_default_str();
  fig->add_option("--svg-size", svg_size)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (adm->parsed()) {
      const auto v = parse_numbers(interval, 2, "--interval");
      if (!(v[1] > v[0])) throw InputError("--interval needs lo < hi");
      if (samples < 2) throw InputError("--samples must be at least 2");
      const FunctionPair pair = g.pair();
      emit(g, out, {{"gx", admissibility_entry(pair.gx, {v[0], v[1]}, samples)},
                    {"hy", admissibility_entry(pair.hy, {v[0], v[1]}, samples)}});
    } else if (ls->parsed()) {
      const FunctionPair pair = g.pair();
      const PlanarPoint c = parse_point(center, "--center");
      json arr = json::array();
      std::vector<Polyline> curves;
      std::stringstream ss(levels);
      std::string field;
      while (std::getline(ss, field, ',')) {
        const double level = parse_numbers(field, 1, "--levels")[0];
        curves.push_back(sample_level_set({pair, c, level}, curve_samples));
        arr.push_back({{"level", level}, {"curve", polyline_json(curves.back())}});
      }
      if (!svg.empty()) {
        Scene s;
        s.window = g.rect().value_or(padded_bounds(curves));
        for (const Polyline& p : curves) s.add_polyline(p, true);
        s.add_marker(c);
        write_file(svg, render_svg(s, 800, 800));
      }
      emit(g, out, {{"center", point_json(c)}, {"levels", arr}});
    } else if (bis->parsed()) {
      const FunctionPair pair = g.pair();
      const PlanarPoint p = parse_point(bp, "--p"), q = parse_point(bq, "--q");
      const Bisector b = classify_bisector(pair, p, q);
      const std::vector<PlanarPoint> both{p, q};
      const Rect window = g.rect().value_or(default_window(both));
      const Polyline line = trace_bisector(b, window, curve_samples);
      if (!svg.empty()) {
        Scene s;
        s.window = window;
        s.add_polyline(line);
        s.add_marker(p);
        s.add_marker(q);
        write_file(svg, render_svg(s, 800, 800));
      }
      emit(g, out, {{"kind", to_string(b.kind)}, {"polyline", polyline_json(line)}});
    } else if (dia->parsed()) {
      const FunctionPair pair = g.pair();
      const auto sites = read_points_file(points);
      const MinDiagram d = build_incremental(pair, sites, g.seed, g.rect());
      const double step = max_step > 0.0 ? max_step : std::max(d.window.width(), d.window.height()) / 512;
      if (!svg.empty()) {
        Scene s;
        s.window = d.window;
        for (const DiagramCell& c : d.cells) {
          s.add_polyline(cell_polygon(d, c.site, step), true);
        }
        for (const PlanarPoint& p : d.sites) s.add_marker(p);
        write_file(svg, render_svg(s, 800, 800));
      }
      if (!pgm.empty()) {
        write_file(pgm, raster_to_pgm(build_raster(pair, sites, d.window, g.resolution_or(256))));
      }
      json j = diagram_json(d, step);
      j["window"] = {d.window.x0, d.window.y0, d.window.x1, d.window.y1};
      emit(g, out, j);
    } else if (smo->parsed()) {
      const StarNetwork net = load_network(g, points);
      const SmoothedDiagram d =
          build_smoothed_voronoi(net, annulus_or(annulus, net), g.resolution_or(256));
      if (!svg.empty()) {
        Scene s;
        s.window = d.raster.window;
        s.add_raster(d.raster);
        for (const PlanarPoint& p : net.leaves) s.add_marker(p);
        s.add_marker(net.hub, 4.0, {"black", 1.5, "white"});
        write_file(svg, render_svg(s, 800, 800));
      }
      emit(g, out, smoothed_json(d));
    } else if (dil->parsed()) {
      const StarNetwork net = load_network(g, points);
      if (via_diagram) {
        const SmoothedDiagram d =
            build_smoothed_voronoi(net, annulus_or(annulus, net), g.resolution_or(256));
        emit(g, out, dilation_json(max_dilation_pair_via_diagram(d), "via-diagram"));
      } else {
        emit(g, out, dilation_json(max_dilation_pair_bruteforce(net), "bruteforce"));
      }
    } else if (llo->parsed()) {
      const auto radii = parse_numbers(lloyd_annulus, 2, "--annulus");
      AnnulusConfig cfg;
      cfg.hub = g.hub();
      cfg.inner = radii[0];
      cfg.outer = radii[1];
      cfg.resolution = g.resolution_or(512);
      cfg.validate();
      const auto frames =
          run_lloyd(cfg, n_sites, iterations, g.seed,
                    init == "uniform" ? InitialSampling::UniformArea : InitialSampling::Exponential);
      const fs::path dir = prepare_dir(out_dir);
      for (std::size_t k = 0; k < frames.size(); ++k) {
        std::span<const PlanarPoint> next;
        if (k + 1 < frames.size()) next = frames[k + 1].sites;
        char name[32];
        std::snprintf(name, sizeof name, "frame_%02zu.svg", k);
        write_file((dir / name).string(),
                   render_svg(lloyd_frame_scene(cfg, frames[k].sites, next), svg_size, svg_size));
      }
      const json metrics = lloyd_metrics_json(frames);
      write_file((dir / "metrics.json").string(), metrics.dump(2) + "\n");
      emit(g, out, metrics);
    } else if (fig->parsed()) {
      FigureParams params;
      params.seed = g.seed;
      params.resolution = g.resolution_or(512);
      params.lloyd_sites = n_sites;
      params.lloyd_iterations = iterations;
      params.svg_size = svg_size;
      const auto files = figure_files(figure_name, params);
      const fs::path dir = prepare_dir(figure_dir);
      json written = json::array();
      for (const FigureFile& f : files) {
        write_file((dir / f.name).string(), f.content);
        written.push_back(f.name);
      }
      emit(g, out, {{"figure", figure_name}, {"files", written}});
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace mindiag::cli
