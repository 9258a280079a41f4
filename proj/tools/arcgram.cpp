// arcgram: command-line driver for circular-arc cartograms.
//
//   arcgram build map.json [--weights w.csv] [--out-svg out.svg] [--out-report r.json]
//   arcgram skeleton map.json --face NAME [--out-svg s.svg]
//   arcgram gadget formula.txt --out instance.json
//
// Exit codes: 0 success, 2 bad input (parse, topology, formula, layout), 3 internal failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arcgram/hardness.hpp"
#include "arcgram/io.hpp"
#include "arcgram/pipeline.hpp"
#include "json.hpp"

using namespace arcgram;

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string mode = "weak";
  double snap_eps = 0.0;  // 0 = automatic
  double geom_eps = 1e-9;
  double max_sagitta_ratio = 1.0;
  bool merge_degree2 = false;
  bool sea_slack = false;
  std::string out_svg;
  std::string out_report;
  std::string dump_network;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  if (path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) throw InputError("cannot write " + path);
}

struct LoadedMap {
  std::vector<PolygonInput> polygons;
  bool allow_zero = false;
};

/// Topological documents and polygon soups are told apart by their keys.
LoadedMap load_map(const std::string& path) {
  const std::string text = read_file(path);
  const auto probe = nlohmann::json::parse(text, nullptr, false);
  if (probe.is_object() && probe.contains("polygons")) return {parse_polygon_soup(text), false};
  const SubdivisionDocument doc = parse_subdivision(text);
  return {doc.polygons(), doc.allow_zero_weights};
}

GeomConfig geom_of(const RunConfig& rc) {
  GeomConfig g;
  g.geom_eps = rc.geom_eps;
  g.max_sagitta_ratio = rc.max_sagitta_ratio;
  return g;
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int cmd_build(const RunConfig& rc, const std::string& input, const std::string& weights_path) {
  const LoadedMap m = load_map(input);
  Subdivision map = build_from_polygons(m.polygons, rc.snap_eps);
  if (const auto problems = validate(map, rc.geom_eps); !problems.empty()) {
    for (const auto& v : problems) std::cerr << v.entity << ": " << v.rule << ": " << v.message << "\n";
    throw TopologyError("input map is not a valid subdivision");
  }
  std::optional<std::vector<std::optional<double>>> weights;
  if (!weights_path.empty()) weights = weights_for(map, parse_weights(read_file(weights_path)));

  PipelineOptions opt;
  opt.mode = rc.mode == "strong" ? Mode::strong : Mode::weak;
  opt.geom = geom_of(rc);
  opt.merge_degree2 = rc.merge_degree2;
  opt.sea_slack = rc.sea_slack;
  opt.allow_zero_targets = m.allow_zero;
  const PipelineResult r = run_pipeline(std::move(map), opt, weights);

  if (!rc.out_svg.empty()) write_file(rc.out_svg, render_svg(r.map, r.bends, r.report));
  if (!rc.out_report.empty()) write_file(rc.out_report, write_report(r.report));
  if (!rc.dump_network.empty()) write_file(rc.dump_network, network_json(r.network, r.flow, r.map));

  const Summary& s = r.report.summary;
  std::cout << "avg success rate " << (s.average_success_rate ? fmt(*s.average_success_rate) : "n/a")
            << ", avg error " << fmt(s.average_error) << ", total error " << fmt(s.total_error) << ", flow "
            << fmt(s.flow_value) << "/" << fmt(s.demand) << "\n";

  if (!r.violations.empty()) {
    for (const auto& v : r.violations) std::cerr << v.entity << ": " << v.rule << ": " << v.message << "\n";
    throw InternalError(std::to_string(r.violations.size()) + " violations in the bending configuration");
  }
  return 0;
}

int cmd_skeleton(const RunConfig& rc, const std::string& input, const std::string& selector) {
  const Subdivision map = build_from_polygons(load_map(input).polygons, rc.snap_eps);
  int face = -1;
  for (int f = 0; f < map.face_count(); ++f) {
    if (map.face(f).name == selector) face = f;
  }
  if (face < 0 && !selector.empty() && selector.find_first_not_of("0123456789") == std::string::npos) {
    face = std::stoi(selector);
    if (face >= map.face_count()) face = -1;
  }
  if (face < 0) throw InputError("unknown face '" + selector + "'");
  const SkeletonRegionSet sk = straight_skeleton(map.polygon(face));
  write_file(rc.out_svg.empty() ? "-" : rc.out_svg, render_skeleton_svg(sk, geom_of(rc)));
  return 0;
}

int cmd_gadget(const std::string& formula_path, const std::string& out, std::string weights_out) {
  const GadgetInstance g = compile(MonotoneFormula::parse(read_file(formula_path)));
  write_file(out, serialize(document_of(g)));
  if (weights_out.empty()) {
    const auto dot = out.rfind(".json");
    weights_out = (dot == std::string::npos ? out : out.substr(0, dot)) + ".weights.json";
  }
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const GadgetFace& f : g.faces) w[f.name] = f.target;
  write_file(weights_out, w.dump(2) + "\n");
  std::cout << g.faces.size() << " faces, c1 " << fmt(g.c1) << ", c2 " << fmt(g.c2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular-arc cartograms"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_geometry_flags = [&rc](CLI::App* sub) {
    sub->add_option("--snap-eps", rc.snap_eps, "vertex snapping tolerance (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--geom-eps", rc.geom_eps, "geometric tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-sagitta-ratio", rc.max_sagitta_ratio, "sagitta cap as a multiple of half the chord")
        ->check(CLI::PositiveNumber);
  };

  std::string input, weights, face, formula, gadget_out, gadget_weights;
  CLI::App* build = app.add_subcommand("build", "compute a cartogram");
  build->add_option("input", input, "subdivision document or polygon soup (JSON)")->required();
  build->add_option("--weights", weights, "weights file (JSON object or CSV name,weight)");
  build->add_option("--mode", rc.mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  add_geometry_flags(build);
  build->add_flag("--merge-degree2", rc.merge_degree2, "merge chains of degree-2 vertices first");
  build->add_flag("--sea-slack", rc.sea_slack, "let the sea absorb or hand out area");
  build->add_option("--out-svg", rc.out_svg, "SVG output");
  build->add_option("--out-report", rc.out_report, "JSON report output");
  build->add_option("--dump-network", rc.dump_network, "flow network JSON output");

  CLI::App* skel = app.add_subcommand("skeleton", "render a face's straight skeleton and maximal arcs");
  skel->add_option("input", input, "subdivision document or polygon soup (JSON)")->required();
  skel->add_option("--face", face, "face name or index")->required();
  add_geometry_flags(skel);
  skel->add_option("--out-svg", rc.out_svg, "SVG output (default stdout)");

  CLI::App* gadget = app.add_subcommand("gadget", "compile a planar monotone 3-SAT formula into an instance");
  gadget->add_option("formula", formula, "formula file")->required();
  gadget->add_option("--out", gadget_out, "instance document output")->required();
  gadget->add_option("--out-weights", gadget_weights, "weights output (default next to --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*build) return cmd_build(rc, input, weights);
    if (*skel) return cmd_skeleton(rc, input, face);
    if (*gadget) return cmd_gadget(formula, gadget_out, gadget_weights);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const TopologyError& e) {
    std::cerr << "topology error: " << e.what() << "\n";
    return kInputError;
  } catch (const FormulaError& e) {
    std::cerr << "formula error: " << e.what() << "\n";
    return kInputError;
  } catch (const LayoutError& e) {
    std::cerr << "layout error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
