#include "arcgram/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace arcgram {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
}

double finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(path, "number is not finite");
  return d;
}

Point point_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ParseError(path, "expected [x, y]");
  return {finite_number(v[0], at(path, 0)), finite_number(v[1], at(path, 1))};
}

int integer_of(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<int>();
}

std::optional<double> weight_of(const json& obj, const std::string& path) {
  auto it = obj.find("weight");
  if (it == obj.end() || it->is_null()) return std::nullopt;
  const double w = finite_number(*it, at(path, "weight"));
  if (w < 0) throw ParseError(at(path, "weight"), "weight must not be negative");
  return w;
}

const json& required(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, std::string("missing \"") + key + "\"");
  return *it;
}

/// Shortest decimal form of x after rounding to `digits` significant digits.
double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string face_name(const Subdivision& s, int f) {
  const auto& n = s.face(f).name;
  return n.empty() ? "face " + std::to_string(f) : n;
}

struct Frame {
  double k = 1.0;
  double height = 0.0;
  std::string transform;
};

/// Map y points up; the group transform flips it for SVG.
Frame frame_for(double x0, double y0, double x1, double y1, const SvgOptions& opt) {
  Frame f;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  f.k = (opt.width - 2 * opt.margin) / span;
  f.height = (y1 - y0) * f.k + 2 * opt.margin;
  f.transform = "translate(" + num(opt.margin - x0 * f.k) + " " + num(opt.margin + y1 * f.k) + ") scale(" +
                num(f.k) + " " + num(-f.k) + ")";
  return f;
}

std::string svg_open(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
}

std::string arc_command(const ChordArc& arc) {
  if (arc.straight()) return "L " + num(arc.b.x) + " " + num(arc.b.y);
  const double r = arc_radius(arc.chord_length(), arc.sagitta);
  const bool large = std::abs(arc.sagitta) > 0.5 * arc.chord_length();
  // Positive sagitta bulges left of a->b: a clockwise turn in map coordinates.
  const bool sweep = arc.sagitta < 0;
  return "A " + num(r) + " " + num(r) + " 0 " + (large ? "1 " : "0 ") + (sweep ? "1 " : "0 ") + num(arc.b.x) +
         " " + num(arc.b.y);
}

}  // namespace

std::vector<PolygonInput> SubdivisionDocument::polygons() const {
  std::vector<PolygonInput> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    PolygonInput p;
    p.name = faces[i].name;
    p.weight = faces[i].weight;
    for (int v : faces[i].ring) p.ring.push_back(vertices.at(static_cast<std::size_t>(v)));
    p.sea = sea ? *sea == static_cast<int>(i) : !p.weight.has_value();
    out.push_back(std::move(p));
  }
  return out;
}

SubdivisionDocument parse_subdivision(std::string_view json_text) {
  const json root = parse_json(json_text);
  if (!root.is_object()) throw ParseError("$", "expected an object");
  SubdivisionDocument doc;
  if (auto it = root.find("format_version"); it != root.end()) {
    doc.format_version = integer_of(*it, "$.format_version");
    if (doc.format_version != 1) throw ParseError("$.format_version", "unsupported version");
  }
  if (auto it = root.find("allow_zero_weights"); it != root.end()) {
    if (!it->is_boolean()) throw ParseError("$.allow_zero_weights", "expected a boolean");
    doc.allow_zero_weights = it->get<bool>();
  }

  const json& verts = required(root, "vertices", "$");
  if (!verts.is_array()) throw ParseError("$.vertices", "expected an array");
  for (std::size_t i = 0; i < verts.size(); ++i) doc.vertices.push_back(point_of(verts[i], at("$.vertices", i)));

  const json& faces = required(root, "faces", "$");
  if (!faces.is_array()) throw ParseError("$.faces", "expected an array");
  const int nv = static_cast<int>(doc.vertices.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string path = at("$.faces", i);
    const json& f = faces[i];
    if (!f.is_object()) throw ParseError(path, "expected an object");
    DocumentFace face;
    const json& name = required(f, "name", path);
    if (!name.is_string()) throw ParseError(at(path, "name"), "expected a string");
    face.name = name.get<std::string>();
    const json& ring = required(f, "ring", path);
    const std::string rpath = at(path, "ring");
    if (!ring.is_array()) throw ParseError(rpath, "expected an array");
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const int v = integer_of(ring[k], at(rpath, k));
      if (v < 0 || v >= nv) {
        throw ParseError(at(rpath, k), "vertex index " + std::to_string(v) + " out of range in face '" +
                                           face.name + "'");
      }
      face.ring.push_back(v);
    }
    if (face.ring.size() < 3) throw ParseError(rpath, "face '" + face.name + "' has fewer than 3 vertices");
    for (std::size_t k = 0; k < face.ring.size(); ++k) {
      if (face.ring[k] == face.ring[(k + 1) % face.ring.size()]) {
        throw ParseError(at(rpath, k), "face '" + face.name + "' repeats a vertex");
      }
    }
    face.weight = weight_of(f, path);
    if (face.weight && *face.weight == 0 && !doc.allow_zero_weights) {
      throw ParseError(at(path, "weight"), "face '" + face.name + "' has zero weight");
    }
    doc.faces.push_back(std::move(face));
  }

  if (auto it = root.find("sea"); it != root.end() && !it->is_null()) {
    const int sea = integer_of(*it, "$.sea");
    if (sea < 0 || sea >= static_cast<int>(doc.faces.size())) throw ParseError("$.sea", "face index out of range");
    if (doc.faces[static_cast<std::size_t>(sea)].weight) {
      throw ParseError(at(at("$.faces", static_cast<std::size_t>(sea)), "weight"),
                       "sea face '" + doc.faces[static_cast<std::size_t>(sea)].name + "' must not carry a weight");
    }
    doc.sea = sea;
  }
  int nulls = 0;
  for (std::size_t i = 0; i < doc.faces.size(); ++i) {
    if (doc.faces[i].weight) continue;
    if (++nulls > 1) {
      throw ParseError(at(at("$.faces", i), "weight"),
                       "face '" + doc.faces[i].name + "' is a second face without a weight");
    }
  }
  return doc;
}

std::string serialize(const SubdivisionDocument& doc) {
  ordered_json root;
  root["format_version"] = doc.format_version;
  ordered_json verts = ordered_json::array();
  for (Point p : doc.vertices) verts.push_back({p.x, p.y});
  root["vertices"] = std::move(verts);
  ordered_json faces = ordered_json::array();
  for (const DocumentFace& f : doc.faces) {
    ordered_json jf;
    jf["name"] = f.name;
    jf["ring"] = f.ring;
    jf["weight"] = f.weight ? ordered_json(*f.weight) : ordered_json(nullptr);
    faces.push_back(std::move(jf));
  }
  root["faces"] = std::move(faces);
  if (doc.sea) root["sea"] = *doc.sea;
  if (doc.allow_zero_weights) root["allow_zero_weights"] = true;
  return root.dump(2) + "\n";
}

SubdivisionDocument document_of(const std::vector<PolygonInput>& polygons) {
  SubdivisionDocument doc;
  std::map<std::pair<double, double>, int> ids;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const PolygonInput& p = polygons[i];
    DocumentFace f;
    f.name = p.name;
    f.weight = p.sea ? std::nullopt : p.weight;
    for (Point q : p.ring) {
      auto [it, fresh] = ids.try_emplace({q.x, q.y}, static_cast<int>(doc.vertices.size()));
      if (fresh) doc.vertices.push_back(q);
      f.ring.push_back(it->second);
    }
    if (p.sea) doc.sea = static_cast<int>(i);
    if (f.weight && *f.weight == 0) doc.allow_zero_weights = true;
    doc.faces.push_back(std::move(f));
  }
  return doc;
}

SubdivisionDocument document_of(const Subdivision& s) {
  SubdivisionDocument doc;
  doc.vertices = s.vertices();
  for (int f = 0; f < s.face_count(); ++f) {
    DocumentFace df;
    df.name = s.face(f).name;
    df.weight = s.face(f).weight;
    for (int h : s.boundary(f)) df.ring.push_back(s.half_edge(h).origin);
    if (df.weight && *df.weight == 0) doc.allow_zero_weights = true;
    doc.faces.push_back(std::move(df));
  }
  if (s.explicit_sea()) doc.sea = *s.explicit_sea();
  return doc;
}

SubdivisionDocument document_of(const GadgetInstance& g) { return document_of(g.polygons()); }

std::vector<PolygonInput> parse_polygon_soup(std::string_view json_text) {
  const json root = parse_json(json_text);
  if (!root.is_object()) throw ParseError("$", "expected an object");
  const json& polys = required(root, "polygons", "$");
  if (!polys.is_array()) throw ParseError("$.polygons", "expected an array");
  std::optional<std::string> sea_name;
  if (auto it = root.find("sea"); it != root.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("$.sea", "expected a face name");
    sea_name = it->get<std::string>();
  }
  std::vector<PolygonInput> out;
  bool sea_found = false;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const std::string path = at("$.polygons", i);
    const json& p = polys[i];
    if (!p.is_object()) throw ParseError(path, "expected an object");
    PolygonInput in;
    const json& name = required(p, "name", path);
    if (!name.is_string()) throw ParseError(at(path, "name"), "expected a string");
    in.name = name.get<std::string>();
    const json& ring = required(p, "ring", path);
    if (!ring.is_array() || ring.size() < 3) throw ParseError(at(path, "ring"), "expected at least 3 points");
    for (std::size_t k = 0; k < ring.size(); ++k) in.ring.push_back(point_of(ring[k], at(at(path, "ring"), k)));
    // A closing point equal to the first one is dropped.
    if (in.ring.size() > 3 && in.ring.front().x == in.ring.back().x && in.ring.front().y == in.ring.back().y) {
      in.ring.pop_back();
    }
    in.weight = weight_of(p, path);
    in.sea = sea_name && *sea_name == in.name;
    if (in.sea) {
      if (in.weight) throw ParseError(at(path, "weight"), "sea face '" + in.name + "' must not carry a weight");
      sea_found = true;
    }
    out.push_back(std::move(in));
  }
  if (sea_name && !sea_found) throw ParseError("$.sea", "no polygon named '" + *sea_name + "'");
  return out;
}

std::map<std::string, double> parse_weights(std::string_view text) {
  std::map<std::string, double> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    const json root = parse_json(text);
    for (const auto& [name, v] : root.items()) {
      const double w = finite_number(v, "$." + name);
      if (w < 0) throw ParseError("$." + name, "weight must not be negative");
      out[name] = w;
    }
    return out;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    const auto e = s.find_last_not_of(" \t\r\"");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string path = "line " + std::to_string(lineno);
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto comma = t.find_last_of(",;\t");
    if (comma == std::string::npos) throw ParseError(path, "expected name,weight");
    const std::string name = trim(t.substr(0, comma));
    const std::string value = trim(t.substr(comma + 1));
    double w = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(w)) {
      if (!seen_row) {  // header
        seen_row = true;
        continue;
      }
      throw ParseError(path, "weight '" + value + "' is not a number");
    }
    if (w < 0) throw ParseError(path, "weight must not be negative");
    seen_row = true;
    out[name] = w;
  }
  return out;
}

std::vector<std::optional<double>> weights_for(const Subdivision& s, const std::map<std::string, double>& w) {
  std::vector<std::optional<double>> out = face_weights(s);
  std::map<std::string, int> by_name;
  for (int f = 0; f < s.face_count(); ++f) by_name[s.face(f).name] = f;
  for (const auto& [name, value] : w) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw ParseError(name, "no face with this name");
    if (s.is_sea_node(it->second)) throw ParseError(name, "sea face '" + name + "' must not carry a weight");
    out[static_cast<std::size_t>(it->second)] = value;
  }
  return out;
}

std::string render_svg(const Subdivision& s, const BendingConfiguration& cfg, const CartogramReport& report,
                       const SvgOptions& opt) {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  auto grow = [&](double xa, double ya, double xb, double yb) {
    if (first) {
      x0 = xa, y0 = ya, x1 = xb, y1 = yb;
      first = false;
      return;
    }
    x0 = std::min(x0, xa), y0 = std::min(y0, ya), x1 = std::max(x1, xb), y1 = std::max(y1, yb);
  };
  for (Point p : s.vertices()) grow(p.x, p.y, p.x, p.y);
  const auto edges = s.edges();
  for (int h : edges) {
    const ChordArc arc = cfg.arc(s, h);
    if (arc.straight()) continue;
    const ArcShape sh = shape_of(arc);
    const double r = std::min(sh.radius, std::abs(arc.sagitta));
    const Point m = (arc.a + arc.b) * 0.5;
    grow(m.x - r, m.y - r, m.x + r, m.y + r);
    if (std::abs(arc.sagitta) > 0.5 * arc.chord_length()) {
      grow(sh.center.x - sh.radius, sh.center.y - sh.radius, sh.center.x + sh.radius, sh.center.y + sh.radius);
    }
  }
  const Frame fr = frame_for(x0, y0, x1, y1, opt);
  const double k = fr.k;
  const double width = opt.width;
  const double height = fr.height;
  const std::string& transform = fr.transform;

  std::ostringstream out;
  out << svg_open(width, height);
  out << "<g id=\"underlay\" transform=\"" << transform
      << "\" fill=\"#d9d9d9\" stroke=\"#a0a0a0\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\">\n";
  for (int f = 0; f < s.face_count(); ++f) {
    if (s.is_sea_node(f)) continue;
    out << "<path d=\"";
    const SimplePolygon poly = s.polygon(f);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      out << (i == 0 ? "M " : " L ") << num(poly.vertices[i].x) << " " << num(poly.vertices[i].y);
    }
    out << " Z\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"cartogram\" transform=\"" << transform
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">\n<path vector-effect=\"non-scaling-stroke\" d=\"";
  bool lead = true;
  for (int h : edges) {
    const ChordArc arc = cfg.arc(s, h);
    out << (lead ? "" : " ") << "M " << num(arc.a.x) << " " << num(arc.a.y);
    lead = false;
    out << " " << arc_command(arc);
  }
  out << "\"/>\n</g>\n";

  if (opt.labels) {
    out << "<g id=\"labels\" font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"middle\">\n";
    std::map<std::string, const FaceRow*> rows;
    for (const FaceRow& r : report.faces) rows.emplace(r.name, &r);
    std::size_t index = 0;
    for (int f = 0; f < s.face_count(); ++f) {
      if (s.is_sea_node(f)) continue;
      const FaceRow* row = nullptr;
      if (report.faces.size() == static_cast<std::size_t>(s.face_count() - (s.explicit_sea() ? 1 : 0))) {
        row = &report.faces[index];
      } else if (auto it = rows.find(s.face(f).name); it != rows.end()) {
        row = it->second;
      }
      ++index;
      if (!row) continue;
      const SimplePolygon poly = s.polygon(f);
      const Point c = centroid(poly);
      const double inradius = 2 * std::abs(signed_area(poly)) / std::max(perimeter(poly), 1e-300);
      const double size = std::max(4.0, 0.6 * inradius * k);
      char label[96];
      if (row->success_rate) {
        std::snprintf(label, sizeof label, "(%.2f, %.2f)", *row->success_rate, row->cartographic_error);
      } else {
        std::snprintf(label, sizeof label, "(n/a, %.2f)", row->cartographic_error);
      }
      out << "<text x=\"" << num(opt.margin + (c.x - x0) * k) << "\" y=\"" << num(opt.margin + (y1 - c.y) * k)
          << "\" font-size=\"" << num(size) << "\">" << label << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<SvgArc> parse_svg_arcs(std::string_view svg) {
  std::vector<SvgArc> out;
  const auto g = svg.find("id=\"cartogram\"");
  if (g == std::string_view::npos) return out;
  const auto d = svg.find(" d=\"", g);
  if (d == std::string_view::npos) return out;
  const auto end = svg.find('"', d + 4);
  std::istringstream in{std::string(svg.substr(d + 4, end - d - 4))};
  std::string tok;
  Point cur{};
  while (in >> tok) {
    if (tok == "M" || tok == "L") {
      in >> cur.x >> cur.y;
    } else if (tok == "A") {
      SvgArc a;
      double ry = 0, rot = 0;
      int large = 0, sweep = 0;
      in >> a.radius >> ry >> rot >> large >> sweep >> a.to.x >> a.to.y;
      a.from = cur;
      a.large_arc = large != 0;
      a.sweep = sweep != 0;
      out.push_back(a);
      cur = a.to;
    }
  }
  return out;
}

std::string render_skeleton_svg(const SkeletonRegionSet& skeleton, const GeomConfig& cfg, const SvgOptions& opt) {
  const SimplePolygon& poly = skeleton.polygon;
  std::vector<ChordArc> arcs;
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly.vertices[i];
    if (i == 0) x0 = x1 = p.x, y0 = y1 = p.y;
    x0 = std::min(x0, p.x), y0 = std::min(y0, p.y), x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
    const Point a = poly.edge_start(i), b = poly.edge_end(i);
    arcs.push_back({a, b, i < skeleton.regions.size() ? max_sagitta(a, b, skeleton.regions[i], cfg) : 0.0});
  }
  const Frame fr = frame_for(x0, y0, x1, y1, opt);
  std::ostringstream out;
  out << svg_open(opt.width, fr.height);
  out << "<g transform=\"" << fr.transform << "\">\n";
  out << "<path class=\"polygon\" fill=\"#d9d9d9\" stroke=\"#000000\" vector-effect=\"non-scaling-stroke\" d=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out << (i == 0 ? "M " : " L ") << num(poly.vertices[i].x) << " " << num(poly.vertices[i].y);
  }
  out << " Z\"/>\n";
  for (const Segment& r : skeleton.ridges) {
    out << "<line class=\"ridge\" stroke=\"#1f5fbf\" vector-effect=\"non-scaling-stroke\" x1=\"" << num(r.a.x)
        << "\" y1=\"" << num(r.a.y) << "\" x2=\"" << num(r.b.x) << "\" y2=\"" << num(r.b.y) << "\"/>\n";
  }
  for (const ChordArc& arc : arcs) {
    if (arc.straight()) continue;
    out << "<path class=\"max-arc\" fill=\"none\" stroke=\"#c0392b\" vector-effect=\"non-scaling-stroke\" d=\"M "
        << num(arc.a.x) << " " << num(arc.a.y) << " " << arc_command(arc) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string write_report(const CartogramReport& report) {
  auto number = [](double x) { return ordered_json(round_sig(x, 12)); };
  auto optional_number = [&](const std::optional<double>& x) {
    return x ? number(*x) : ordered_json(nullptr);
  };
  ordered_json root;
  ordered_json faces = ordered_json::array();
  for (const FaceRow& r : report.faces) {
    ordered_json f;
    f["name"] = r.name;
    f["a"] = number(r.initial);
    f["t"] = number(r.target);
    f["b"] = number(r.result);
    f["delta"] = number(r.delta);
    f["success"] = optional_number(r.success_rate);
    f["error"] = number(r.cartographic_error);
    faces.push_back(std::move(f));
  }
  root["faces"] = std::move(faces);
  const Summary& s = report.summary;
  ordered_json sum;
  sum["average_success_rate"] = optional_number(s.average_success_rate);
  sum["average_error"] = number(s.average_error);
  sum["total_error"] = number(s.total_error);
  sum["zero_error_faces"] = s.zero_error_faces;
  sum["flow"] = number(s.flow_value);
  sum["demand"] = number(s.demand);
  root["summary"] = std::move(sum);
  return root.dump(2) + "\n";
}

std::string network_json(const FlowNetwork& n, const FlowSolution& sol, const Subdivision& s) {
  ordered_json root;
  ordered_json nodes = ordered_json::array();
  for (int v = 0; v < n.node_count; ++v) {
    ordered_json node;
    node["id"] = v;
    if (v == n.source) {
      node["kind"] = "source";
    } else if (v == n.sink) {
      node["kind"] = "sink";
    } else if (v == n.sea) {
      node["kind"] = "sea";
      node["name"] = v < s.face_count() ? face_name(s, v) : "exterior";
    } else {
      node["kind"] = "face";
      node["name"] = face_name(s, v);
    }
    nodes.push_back(std::move(node));
  }
  root["nodes"] = std::move(nodes);
  ordered_json arcs = ordered_json::array();
  for (std::size_t i = 0; i < n.arcs.size(); ++i) {
    const FlowArc& a = n.arcs[i];
    ordered_json j;
    j["from"] = a.from;
    j["to"] = a.to;
    j["kind"] = a.kind == ArcKind::dual ? "dual" : a.kind == ArcKind::supply ? "supply" : "demand";
    j["capacity"] = std::isfinite(a.capacity) ? ordered_json(a.capacity) : ordered_json("inf");
    j["flow"] = i < sol.flow.size() ? sol.flow[i] : 0.0;
    if (a.dual_edge >= 0) j["dual_edge"] = a.dual_edge;
    arcs.push_back(std::move(j));
  }
  root["arcs"] = std::move(arcs);
  root["value"] = sol.value;
  root["demand"] = n.demand;
  root["supply"] = n.supply;
  root["sea_slack"] = n.sea_slack;
  if (n.sea_slack) {
    root["from_sea"] = sol.from_sea;
    root["into_sea"] = sol.into_sea;
  }
  return root.dump(2) + "\n";
}

}  // namespace arcgram
