#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "arcgram/io.hpp"
#include "arcgram/pipeline.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace arcgram;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ARCGRAM_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error_path(const std::string& text) {
  try {
    parse_subdivision(text);
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<none>";
}

bool same(const SubdivisionDocument& a, const SubdivisionDocument& b) {
  if (a.format_version != b.format_version || a.sea != b.sea || a.allow_zero_weights != b.allow_zero_weights)
    return false;
  if (a.vertices.size() != b.vertices.size() || a.faces.size() != b.faces.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    if (a.vertices[i].x != b.vertices[i].x || a.vertices[i].y != b.vertices[i].y) return false;
  }
  for (std::size_t i = 0; i < a.faces.size(); ++i) {
    if (a.faces[i].name != b.faces[i].name || a.faces[i].ring != b.faces[i].ring ||
        a.faces[i].weight != b.faces[i].weight)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("two-square document parses") {
  const auto doc = parse_subdivision(slurp("two_squares.json"));
  CHECK(doc.faces.size() == 2);
  CHECK(doc.vertices.size() == 6);
  CHECK_FALSE(doc.sea);
  const Subdivision s = build_from_polygons(doc.polygons());
  CHECK(s.face_count() == 2);
}

TEST_CASE("schema errors carry a JSON path") {
  CHECK(parse_error_path("{") == "$");
  CHECK(parse_error_path("[]") == "$");
  CHECK(parse_error_path(R"({"faces": []})") == "$");
  CHECK(parse_error_path(R"({"vertices": [[0, 0], [1]], "faces": []})") == "$.vertices[1]");
  CHECK(parse_error_path(R"({"vertices": [[0, 0], [1, "x"]], "faces": []})") == "$.vertices[1][1]");
  CHECK(parse_error_path(R"({"vertices": [[0,0],[1,0],[0,1]], "faces": [{"name": "a", "ring": [0, 1, 3], "weight": 1}]})") ==
        "$.faces[0].ring[2]");
  CHECK(parse_error_path(R"({"vertices": [[0,0],[1,0],[0,1]], "faces": [{"ring": [0, 1, 2]}]})") == "$.faces[0]");
  CHECK(parse_error_path(R"({"vertices": [[0,0],[1,0],[0,1]], "faces": [{"name": "a", "ring": [0, 1, 2], "weight": -1}]})") ==
        "$.faces[0].weight");
}

TEST_CASE("weight on the sea face is an error naming the face") {
  const std::string text =
      R"({"vertices": [[0,0],[1,0],[1,1],[0,1],[2,0],[2,1]],
          "faces": [{"name": "land", "ring": [0,1,2,3], "weight": 1},
                    {"name": "ocean", "ring": [1,4,5,2], "weight": 2}],
          "sea": 1})";
  try {
    parse_subdivision(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("ocean") != std::string::npos);
    CHECK(e.path() == "$.faces[1].weight");
  }
}

TEST_CASE("two null-weight faces are rejected") {
  const std::string text =
      R"({"vertices": [[0,0],[1,0],[1,1],[0,1],[2,0],[2,1]],
          "faces": [{"name": "a", "ring": [0,1,2,3], "weight": null},
                    {"name": "b", "ring": [1,4,5,2]}]})";
  CHECK(parse_error_path(text) == "$.faces[1].weight");
}

TEST_CASE("3x3 fixture round-trips through serialize") {
  const std::string text = slurp("grid3x3.json");
  const auto doc = parse_subdivision(text);
  CHECK(doc.faces.size() == 9);
  const std::string out = serialize(doc);
  CHECK(nlohmann::json::parse(out) == nlohmann::json::parse(text));
  const auto again = parse_subdivision(out);
  CHECK(same(doc, again));
  CHECK(serialize(again) == out);
}

TEST_CASE("parse . serialize is identity on random documents") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-1e3, 1e3);
  for (int trial = 0; trial < 50; ++trial) {
    SubdivisionDocument doc;
    const int nv = 3 + trial % 9;
    for (int i = 0; i < nv; ++i) doc.vertices.push_back({coord(rng), coord(rng)});
    for (int f = 0; f < 1 + trial % 4; ++f) {
      DocumentFace face;
      face.name = "f" + std::to_string(f);
      for (int k = 0; k < 3; ++k) face.ring.push_back((f + k) % nv);
      face.weight = std::uniform_real_distribution<double>(0.1, 10)(rng);
      doc.faces.push_back(face);
    }
    if (trial % 3 == 0) {
      doc.faces[0].weight.reset();
      doc.sea = 0;
    }
    CHECK(same(parse_subdivision(serialize(doc)), doc));
  }
}

TEST_CASE("document of a built map rebuilds the same map") {
  const Subdivision s = build_from_polygons(testing::grid_map(2, 3, 1.5));
  const auto doc = document_of(s);
  const Subdivision t = build_from_polygons(parse_subdivision(serialize(doc)).polygons());
  REQUIRE(t.face_count() == s.face_count());
  for (int f = 0; f < s.face_count(); ++f) {
    CHECK(t.face(f).name == s.face(f).name);
    CHECK(t.face(f).area == doctest::Approx(s.face(f).area).epsilon(1e-12));
  }
}

TEST_CASE("polygon soup importer snaps duplicated borders") {
  const std::string text = R"({"polygons": [
      {"name": "A", "ring": [[0,0],[1,0],[1,1],[0,1],[0,0]], "weight": 2},
      {"name": "B", "ring": [[1.0000000001,0],[2,0],[2,1],[1,1.0000000001]], "weight": 1},
      {"name": "water", "ring": [[0,1],[2,1],[2,2],[0,2]]}],
      "sea": "water"})";
  const auto polys = parse_polygon_soup(text);
  REQUIRE(polys.size() == 3);
  CHECK(polys[0].ring.size() == 4);
  CHECK(polys[2].sea);
  const Subdivision s = build_from_polygons(polys);
  CHECK(s.face_count() == 3);
  CHECK(s.explicit_sea() == 2);
  CHECK(validate(s).empty());
}

TEST_CASE("weights from JSON and CSV") {
  const auto j = parse_weights(R"({"a": 1.5, "b": 2})");
  CHECK(j.at("a") == 1.5);
  CHECK(j.at("b") == 2.0);
  const auto c = parse_weights("name,weight\na, 1.5\n# comment\n\"b\";2\n");
  CHECK(c.at("a") == 1.5);
  CHECK(c.at("b") == 2.0);
  CHECK_THROWS_AS(parse_weights("a,1\nb,x\n"), ParseError);
  CHECK_THROWS_AS(parse_weights("a,-1\n"), ParseError);

  const Subdivision s = build_from_polygons(testing::grid_map(1, 2, 1.0));
  const auto w = weights_for(s, parse_weights("r0c1,5\n"));
  CHECK(w[0] == 1.0);
  CHECK(w[1] == 5.0);
  CHECK_THROWS_AS(weights_for(s, {{"nope", 1.0}}), ParseError);
}

TEST_CASE("straight configuration renders only line commands") {
  const Subdivision s = build_from_polygons(testing::grid_map(2, 2, 1.0));
  const std::string svg = render_svg(s, straight_configuration(s), {});
  CHECK(svg.find(" A ") == std::string::npos);
  CHECK(svg.find("id=\"underlay\"") != std::string::npos);
  CHECK(svg.find("scale(") != std::string::npos);
  CHECK(parse_svg_arcs(svg).empty());
}

TEST_CASE("half-circle bend renders one arc of radius 2") {
  const Subdivision s = build_from_polygons({{"A", {{0, 0}, {4, 0}, {4, 4}, {0, 4}}, 1.0, false}});
  BendingConfiguration cfg = straight_configuration(s);
  const int h = s.edges().front();
  cfg.sagitta[static_cast<std::size_t>(h)] = 2.0;
  cfg.sagitta[static_cast<std::size_t>(s.half_edge(h).twin)] = -2.0;
  const auto arcs = parse_svg_arcs(render_svg(s, cfg, {}));
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0].radius == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(arcs[0].large_arc);
}

TEST_CASE("SVG arcs reconstruct the configuration") {
  const auto doc = parse_subdivision(slurp("grid3x3.json"));
  const auto r = run_pipeline(build_from_polygons(doc.polygons()), {});
  const std::string svg = render_svg(r.map, r.bends, r.report);
  const auto arcs = parse_svg_arcs(svg);
  int bent = 0;
  for (int h : r.map.edges()) bent += r.bends.sagitta[static_cast<std::size_t>(h)] != 0;
  REQUIRE(static_cast<int>(arcs.size()) == bent);
  REQUIRE(bent > 0);
  std::size_t i = 0;
  for (int h : r.map.edges()) {
    const ChordArc arc = r.bends.arc(r.map, h);
    if (arc.straight()) continue;
    const SvgArc& a = arcs[i++];
    CHECK(distance(a.from, arc.a) <= 1e-6);
    CHECK(distance(a.to, arc.b) <= 1e-6);
    CHECK(std::abs(a.radius - arc_radius(arc.chord_length(), arc.sagitta)) <= 1e-6 * std::max(1.0, a.radius));
    // Rebuild the signed sagitta from radius and flags.
    const double L = distance(a.from, a.to);
    const double k = std::sqrt(std::max(0.0, a.radius * a.radius - 0.25 * L * L));
    const double mag = a.large_arc ? a.radius + k : a.radius - k;
    const double h2 = a.sweep ? -mag : mag;
    CHECK(std::abs(h2 - arc.sagitta) <= 1e-6);
  }
  // one label per face, two decimals
  std::size_t labels = 0;
  for (auto p = svg.find("<text"); p != std::string::npos; p = svg.find("<text", p + 1)) ++labels;
  CHECK(labels == 9);
  CHECK(svg.find(">(") != std::string::npos);
}

TEST_CASE("report JSON") {
  CHECK(nlohmann::json::parse(write_report({}))["faces"].empty());
  CartogramReport rep;
  rep.faces.push_back({"A", 1.0, 1.1, 1.1, 0.1, 1.0, 0.0});
  rep.faces.push_back({"B", 1.0, 0.9, 0.95, -0.1, 0.5, 1.0 / 18});
  rep.summary = summarize(rep.faces);
  const std::string out = write_report(rep);
  const auto j = nlohmann::json::parse(out);
  REQUIRE(j["faces"].size() == 2);
  for (const char* key : {"name", "a", "t", "b", "success", "error"}) CHECK(j["faces"][0].contains(key));
  CHECK(j["faces"][1]["error"].get<double>() == 0.0555555555556);
  CHECK(out.find("\"faces\"") < out.find("\"summary\""));
  CHECK(out == write_report(rep));
}

TEST_CASE("network dump lists every arc with its flow") {
  const auto doc = parse_subdivision(slurp("two_squares.json"));
  const auto r = run_pipeline(build_from_polygons(doc.polygons()), {});
  const auto j = nlohmann::json::parse(network_json(r.network, r.flow, r.map));
  CHECK(j["arcs"].size() == r.network.arcs.size());
  CHECK(j["nodes"].size() == static_cast<std::size_t>(r.network.node_count));
  CHECK(j["value"].get<double>() == doctest::Approx(r.flow.value));
}
