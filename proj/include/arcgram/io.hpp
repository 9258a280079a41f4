#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arcgram/bend.hpp"
#include "arcgram/flow.hpp"
#include "arcgram/hardness.hpp"
#include "arcgram/metrics.hpp"
#include "arcgram/skeleton.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram {

/// Input error carrying the JSON path (or line) of the offending value.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct DocumentFace {
  std::string name;
  std::vector<int> ring;
  std::optional<double> weight;
};

/// Topological map document: shared vertices referenced by index.
struct SubdivisionDocument {
  int format_version = 1;
  std::vector<Point> vertices;
  std::vector<DocumentFace> faces;
  std::optional<int> sea;
  /// Zero weights are legal (generated gadget instances).
  bool allow_zero_weights = false;

  std::vector<PolygonInput> polygons() const;
};

SubdivisionDocument parse_subdivision(std::string_view json_text);
std::string serialize(const SubdivisionDocument& doc);

/// Document of a built map; weights are taken from the faces.
SubdivisionDocument document_of(const Subdivision& s);
/// Document of a polygon list; equal coordinates share one vertex.
SubdivisionDocument document_of(const std::vector<PolygonInput>& polygons);
SubdivisionDocument document_of(const GadgetInstance& g);

/// {"polygons": [{"name", "ring": [[x, y], ...], "weight"}], "sea": name}
/// with each border repeated in every polygon that owns it.
std::vector<PolygonInput> parse_polygon_soup(std::string_view json_text);

/// JSON object {"name": weight} or CSV lines "name,weight" (optional header).
std::map<std::string, double> parse_weights(std::string_view text);

/// Applies named weights to the faces; every non-sea face must be covered.
std::vector<std::optional<double>> weights_for(const Subdivision& s, const std::map<std::string, double>& w);

struct SvgOptions {
  double width = 800.0;
  double margin = 20.0;
  bool labels = true;
};

std::string render_svg(const Subdivision& s, const BendingConfiguration& cfg, const CartogramReport& report,
                       const SvgOptions& opt = {});

/// One polygon with its skeleton ridges (class "ridge") and the largest
/// admissible arc of every edge (class "max-arc").
std::string render_skeleton_svg(const SkeletonRegionSet& skeleton, const GeomConfig& cfg = {},
                                const SvgOptions& opt = {});

/// Stable key order; numbers rounded to 12 significant digits.
std::string write_report(const CartogramReport& report);

std::string network_json(const FlowNetwork& n, const FlowSolution& sol, const Subdivision& s);

struct SvgArc {
  Point from;
  Point to;
  double radius;
  bool large_arc;
  bool sweep;
};

/// Arc commands of the cartogram layer of an SVG produced by render_svg.
std::vector<SvgArc> parse_svg_arcs(std::string_view svg);

}  // namespace arcgram
