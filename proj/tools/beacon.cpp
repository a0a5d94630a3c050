// Command-line workbench: validation, simulation, shortest paths, regions,
// generators, rendering and benchmarks. Exit 0 on success, 1 on domain
// errors, 2 on usage errors.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "beacon/bench.hpp"
#include "beacon/generators.hpp"
#include "beacon/io.hpp"
#include "beacon/oracle.hpp"
#include "beacon/svg.hpp"

namespace {

using namespace beacon;

struct Globals {
  std::optional<double> eps_geom, eps_dist;
  std::uint64_t seed = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Point2 point_arg(const std::string& s, const char* flag) {
  try {
    return parse_point(s);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + " expects X,Y, got '" + s + "'");
  }
}

SimplePolygon polygon_arg(const std::string& path, const Globals& g) {
  SimplePolygon poly = load_polygon(path);
  if (g.eps_geom || g.eps_dist) {
    Tolerance t{poly.eps(), poly.eps()};
    if (g.eps_geom) t.eps_geom = *g.eps_geom;
    if (g.eps_dist) t.eps_dist = *g.eps_dist;
    if (!t.valid()) throw UsageError("tolerances must be positive with eps_dist >= eps_geom");
    poly.set_tolerance(t);
  }
  return poly;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

const char* kind_name(MoveKind k) { return k == MoveKind::Pull ? "PULL" : "SLIDE"; }

void print_trajectory(const Trajectory& t) {
  for (const auto& e : t.edges) std::cout << kind_name(e.kind) << ' ' << format_point(e.from) << ' ' << format_point(e.to) << '\n';
  std::cout << (t.outcome == Outcome::ReachedBeacon ? "REACHED " : "DEAD ") << format_point(t.end) << '\n';
}

void print_perturbation(const IarResult& r) {
  if (r.perturbed) std::cout << "# point moved to " << format_point(r.effective_point) << '\n';
}

std::vector<LineSpec> read_lines_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::vector<LineSpec> out;
  for (auto t = detail::next_tokens(in); !t.empty(); t = detail::next_tokens(in)) {
    if (t.size() != 2) throw Error(ErrorCode::ParseError, "line file rows need: slope intercept");
    out.push_back({parse_double(t[0]), parse_double(t[1])});
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--sizes expects comma-separated positive integers, got '" + s + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Beacon attraction workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  Globals g;
  app.add_option("--tolerance-geom", g.eps_geom, "absolute geometric tolerance (default 1e-9 * diameter)");
  app.add_option("--tolerance-dist", g.eps_dist, "termination distance (default 1e-9 * diameter)");
  app.add_option("--seed", g.seed, "seed for generators and benchmarks");

  std::string poly_path, point_s, beacon_s, start_s, svg_path, out_path;

  auto* validate = app.add_subcommand("validate", "check that a polygon file is a simple CCW polygon");
  validate->add_option("--polygon", poly_path, "polygon file")->required();

  auto* trajectory = app.add_subcommand("trajectory", "simulate a point moving toward a beacon");
  trajectory->add_option("--polygon", poly_path, "polygon file")->required();
  trajectory->add_option("--start", start_s, "start point X,Y")->required();
  trajectory->add_option("--beacon", beacon_s, "beacon X,Y")->required();
  trajectory->add_option("--svg", svg_path, "also write an SVG figure");

  auto* attracts_cmd = app.add_subcommand("attracts", "does the beacon attract the point");
  attracts_cmd->add_option("--polygon", poly_path, "polygon file")->required();
  attracts_cmd->add_option("--beacon", beacon_s, "beacon X,Y")->required();
  attracts_cmd->add_option("--point", point_s, "point X,Y")->required();

  auto* spt = app.add_subcommand("spt", "pruned shortest path tree edges from a point");
  spt->add_option("--polygon", poly_path, "polygon file")->required();
  spt->add_option("--point", point_s, "root X,Y")->required();

  auto* spm = app.add_subcommand("spm", "shortest path map regions from a point");
  spm->add_option("--polygon", poly_path, "polygon file")->required();
  spm->add_option("--point", point_s, "root X,Y")->required();

  bool naive = false, optimal = false, stats = false;
  auto* iar = app.add_subcommand("iar", "inverse attraction region of a point");
  iar->add_option("--polygon", poly_path, "polygon file")->required();
  iar->add_option("--point", point_s, "point X,Y")->required();
  auto* naive_flag = iar->add_flag("--naive", naive, "per-region half-plane intersection");
  iar->add_flag("--optimal", optimal, "segment-tree construction (default)")->excludes(naive_flag);
  iar->add_flag("--stats", stats, "print GROUP1/GROUP2 vertex counts");
  iar->add_option("--svg", svg_path, "also write an SVG figure");

  double grid_res = 0.25, margin = 1e-6;
  auto* oracle = app.add_subcommand("oracle-compare", "compare the region with simulation on a grid");
  oracle->add_option("--polygon", poly_path, "polygon file")->required();
  oracle->add_option("--point", point_s, "point X,Y")->required();
  oracle->add_option("--grid", grid_res, "grid spacing")->check(CLI::PositiveNumber);
  oracle->add_option("--margin", margin, "skip samples this close to the region boundary")->check(CLI::NonNegativeNumber);
  oracle->add_flag("--naive", naive, "check the naive construction instead");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  std::string lines_path;
  std::size_t gen_k = 0, gen_n = 0;
  auto* gen_zigzag = gen->add_subcommand("zigzag", "lower-bound zigzag corridor");
  auto* lines_opt = gen_zigzag->add_option("--lines", lines_path, "file of 'slope intercept' rows");
  gen_zigzag->add_option("--k", gen_k, "number of generated lines")->check(CLI::PositiveNumber)->excludes(lines_opt);
  auto* gen_random = gen->add_subcommand("random", "random simple polygon");
  gen_random->add_option("--n", gen_n, "vertex count")->required();
  auto* gen_comb = gen->add_subcommand("comb", "polygon whose region has at least k components");
  gen_comb->add_option("--k", gen_k, "component count")->required()->check(CLI::PositiveNumber);

  bool show_iar = false, show_spm = false;
  auto* render = app.add_subcommand("render", "draw a polygon with overlays as SVG");
  render->add_option("--polygon", poly_path, "polygon file")->required();
  render->add_option("--point", point_s, "point X,Y");
  render->add_flag("--iar", show_iar, "shade the region of --point");
  render->add_flag("--spm", show_spm, "outline shortest path map cells of --point");
  render->add_option("--start", start_s, "trajectory start X,Y (with --beacon)");
  render->add_option("--beacon", beacon_s, "trajectory beacon X,Y (with --start)");
  render->add_option("--out", out_path, "output file (default stdout)");

  std::string family, sizes_s;
  std::size_t reps = 1;
  auto* bench_cmd = app.add_subcommand("bench", "time the region construction, CSV on stdout");
  bench_cmd->add_option("--family", family, "zigzag, random or comb")
      ->required()
      ->check(CLI::IsMember({"zigzag", "random", "comb"}));
  bench_cmd->add_option("--sizes", sizes_s, "comma-separated vertex counts")->required();
  bench_cmd->add_option("--repetitions", reps, "runs per size, best kept");
  bench_cmd->add_flag("--naive", naive, "time the naive construction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::cout.precision(17);
  if (*validate) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    std::cout << "VALID " << poly.size() << " vertices, area " << format_double(poly.area()) << '\n';
  } else if (*trajectory) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    const Trajectory t = simulate(poly, point_arg(start_s, "--start"), point_arg(beacon_s, "--beacon"));
    print_trajectory(t);
    if (!svg_path.empty()) write_file(svg_path, render_svg(poly, {nullptr, {t}, {}, {}, t.start}));
  } else if (*attracts_cmd) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    std::cout << (attracts(poly, point_arg(beacon_s, "--beacon"), point_arg(point_s, "--point")) ? "true" : "false")
              << '\n';
  } else if (*spt) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    const Point2 p = point_arg(point_s, "--point");
    if (contains(poly, p) == Containment::Exterior) throw Error(ErrorCode::PointOutsidePolygon, "point outside polygon");
    const PrunedSpt tree = pruned_spt(poly, p);
    for (std::size_t v : tree.nodes) {
      std::cout << "EDGE " << v << '\n';
      write_polygon(std::cout, std::vector<Point2>{tree.parent_point(poly, v), poly.vertex(v)});
    }
  } else if (*spm) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    const Point2 p = point_arg(point_s, "--point");
    if (contains(poly, p) == Containment::Exterior) throw Error(ErrorCode::PointOutsidePolygon, "point outside polygon");
    for (const auto& r : shortest_path_map(poly, triangulate(poly), p).regions) {
      std::cout << "BASE " << format_point(r.base == kSource ? p : poly.vertex(r.base)) << '\n';
      write_polygon(std::cout, r.cell);
    }
  } else if (*iar) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    const IarResult r =
        inverse_attraction_region(poly, point_arg(point_s, "--point"), naive ? IarMethod::Naive : IarMethod::Optimal);
    print_perturbation(r);
    write_components(std::cout, r);
    if (stats) std::cout << "GROUP1 " << r.stats.group1 << " GROUP2 " << r.stats.group2 << '\n';
    if (!svg_path.empty()) write_file(svg_path, render_svg(poly, {&r, {}, {}, {}, r.point}));
  } else if (*oracle) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    const IarResult r =
        inverse_attraction_region(poly, point_arg(point_s, "--point"), naive ? IarMethod::Naive : IarMethod::Optimal);
    const OracleReport rep = oracle_compare(poly, r, {grid_res, 0.0}, margin);
    print_perturbation(r);
    for (const auto& d : rep.disagreements)
      std::cout << "DISAGREE " << format_point(d.q) << " simulated " << d.simulated << " region " << d.in_region
                << '\n';
    std::cout << (rep.pass() ? "PASS" : "FAIL") << " checked " << rep.checked << " skipped " << rep.skipped
              << " disagreements " << rep.disagreements.size() << '\n';
    if (!rep.pass()) return 1;
  } else if (*gen) {
    if (*gen_zigzag) {
      if (lines_path.empty() && gen_k == 0) throw UsageError("gen zigzag needs --lines FILE or --k K");
      const ZigzagInstance z = zigzag_polygon(lines_path.empty() ? zigzag_lines(gen_k, g.seed) : read_lines_file(lines_path));
      write_polygon(std::cout, z.polygon);
      write_point_line(std::cout, z.p);
    } else if (*gen_random) {
      const SimplePolygon poly = random_polygon(gen_n, g.seed);
      const Triangulation tri = triangulate(poly);
      const auto& t = tri.triangles.front();
      write_polygon(std::cout, poly);
      write_point_line(std::cout, (1.0 / 3.0) * (poly.vertex(t[0]) + poly.vertex(t[1]) + poly.vertex(t[2])));
    } else {
      const CombInstance c = comb_polygon(gen_k);
      write_polygon(std::cout, c.polygon);
      write_point_line(std::cout, c.p);
    }
  } else if (*render) {
    const SimplePolygon poly = polygon_arg(poly_path, g);
    if ((show_iar || show_spm) && point_s.empty()) throw UsageError("--iar and --spm need --point");
    if (start_s.empty() != beacon_s.empty()) throw UsageError("--start and --beacon go together");
    SvgOverlays ov;
    std::optional<IarResult> r;
    if (!point_s.empty()) ov.point = point_arg(point_s, "--point");
    if (show_iar) {
      r = iar_optimal(poly, *ov.point);
      ov.iar = &*r;
    }
    if (show_spm)
      for (const auto& reg : shortest_path_map(poly, triangulate(poly), *ov.point).regions) ov.cells.push_back(reg.cell);
    if (!start_s.empty())
      ov.trajectories.push_back(simulate(poly, point_arg(start_s, "--start"), point_arg(beacon_s, "--beacon")));
    const std::string svg = render_svg(poly, ov);
    if (out_path.empty())
      std::cout << svg;
    else
      write_file(out_path, svg);
  } else if (*bench_cmd) {
    write_bench_csv(std::cout,
                    bench(family, parse_sizes(sizes_s), reps, g.seed, naive ? IarMethod::Naive : IarMethod::Optimal));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help to list the valid flags.\n";
    return 2;
  } catch (const beacon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
