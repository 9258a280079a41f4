#include "arcgram/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace arcgram {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    // Lower index wins so the representative is deterministic.
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

struct Box {
  double x0, y0, x1, y1;
  bool contains(Point p, double eps) const {
    return p.x >= x0 - eps && p.x <= x1 + eps && p.y >= y0 - eps && p.y <= y1 + eps;
  }
};

Box box_of(std::span<const Point> pts) {
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (Point p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

bool strictly_inside(Point p, const SimplePolygon& poly, double eps) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (point_segment_distance(p, poly.edge_start(i), poly.edge_end(i)) <= eps) return false;
  }
  return point_in_polygon(p, poly, 0.0);
}

// Segments that share an endpoint may only meet there.
bool edges_conflict(Point a, Point b, Point c, Point d, double eps) {
  const bool shares = distance(a, c) <= eps || distance(a, d) <= eps || distance(b, c) <= eps ||
                      distance(b, d) <= eps;
  if (!shares) return segments_intersect(a, b, c, d, eps);
  ChordArc u{a, b, 0.0};
  ChordArc v{c, d, 0.0};
  return arcs_intersect(u, v, eps);
}

std::string face_label(const Subdivision& s, int f) {
  if (f == s.exterior()) return "exterior";
  const auto& name = s.face(f).name;
  return name.empty() ? "face#" + std::to_string(f) : name;
}

}  // namespace

Subdivision Subdivision::from_parts(std::vector<Point> vertices, std::vector<HalfEdge> half_edges,
                                    std::vector<Face> faces, std::optional<int> explicit_sea) {
  Subdivision s;
  s.vertices_ = std::move(vertices);
  s.half_edges_ = std::move(half_edges);
  s.faces_ = std::move(faces);
  s.explicit_sea_ = explicit_sea;
  return s;
}

std::vector<int> Subdivision::boundary(int face) const {
  std::vector<int> out;
  const int start = this->face(face).boundary;
  int h = start;
  const std::size_t limit = half_edges_.size() + 1;
  do {
    if (h < 0 || static_cast<std::size_t>(h) >= half_edges_.size()) {
      throw TopologyError("broken next pointer on boundary of " + face_label(*this, face));
    }
    out.push_back(h);
    h = half_edge(h).next;
    if (out.size() > limit) {
      throw TopologyError("boundary of " + face_label(*this, face) + " does not close");
    }
  } while (h != start);
  return out;
}

SimplePolygon Subdivision::polygon(int face) const {
  SimplePolygon p;
  for (int h : boundary(face)) p.vertices.push_back(from(h));
  return p;
}

int Subdivision::canonical(int h) const {
  const int t = half_edge(h).twin;
  const int fh = half_edge(h).face;
  const int ft = half_edge(t).face;
  if (fh != ft) return fh < ft ? h : t;
  return std::min(h, t);
}

std::vector<int> Subdivision::edges() const {
  std::vector<int> out;
  for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h) {
    if (canonical(h) == h) out.push_back(h);
  }
  return out;
}

int Subdivision::component_count() const {
  DisjointSets ds(vertices_.size());
  for (const HalfEdge& e : half_edges_) {
    ds.unite(e.origin, half_edges_[static_cast<std::size_t>(e.twin)].origin);
  }
  std::set<int> roots;
  std::vector<bool> used(vertices_.size(), false);
  for (const HalfEdge& e : half_edges_) used[static_cast<std::size_t>(e.origin)] = true;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (used[v]) roots.insert(ds.find(static_cast<int>(v)));
  }
  return static_cast<int>(roots.size());
}

std::vector<PolygonInput> Subdivision::to_polygons() const {
  std::vector<PolygonInput> out;
  for (int f = 0; f < face_count(); ++f) {
    out.push_back({face(f).name, polygon(f).vertices, face(f).weight, explicit_sea_ == f});
  }
  return out;
}

double default_snap_eps(const std::vector<PolygonInput>& polygons) {
  std::vector<Point> all;
  for (const auto& p : polygons) all.insert(all.end(), p.ring.begin(), p.ring.end());
  if (all.empty()) return 1e-9;
  const Box b = box_of(all);
  const double diag = std::hypot(b.x1 - b.x0, b.y1 - b.y0);
  return diag > 0 ? 1e-6 * diag : 1e-9;
}

namespace {

// With `gaps` set, enclosed gaps are collected instead of rejected and the
// build stops after the exterior has been traced.
Subdivision build_impl(const std::vector<PolygonInput>& polygons, double snap_eps,
                       std::vector<std::vector<Point>>* gaps) {
  if (!(snap_eps > 0.0)) snap_eps = default_snap_eps(polygons);

  std::optional<int> sea;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    if (!polygons[i].sea) continue;
    if (sea) throw TopologyError("more than one sea face (" + polygons[static_cast<std::size_t>(*sea)].name +
                                 ", " + polygons[i].name + ")");
    sea = static_cast<int>(i);
  }

  // Snap coincident coordinates.
  std::vector<Point> raw;
  for (const auto& p : polygons) {
    for (Point q : p.ring) {
      if (!is_finite(q)) throw TopologyError("non-finite coordinate in " + p.name);
      raw.push_back(q);
    }
  }
  DisjointSets ds(raw.size());
  std::vector<int> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return raw[a].x < raw[b].x || (raw[a].x == raw[b].x && a < b);
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (raw[order[j]].x - raw[order[i]].x > snap_eps) break;
      if (distance(raw[order[i]], raw[order[j]]) <= snap_eps) ds.unite(order[i], order[j]);
    }
  }
  std::vector<int> vertex_of(raw.size(), -1);
  std::vector<Point> vertices;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const int root = ds.find(static_cast<int>(i));
    if (vertex_of[root] < 0) {
      vertex_of[root] = static_cast<int>(vertices.size());
      vertices.push_back(raw[root]);
    }
    vertex_of[i] = vertex_of[root];
  }

  // Rings as vertex ids, counterclockwise, with T-junction vertices inserted.
  std::vector<std::vector<int>> rings;
  std::size_t cursor = 0;
  for (const auto& p : polygons) {
    std::vector<int> ring;
    for (std::size_t k = 0; k < p.ring.size(); ++k) {
      const int v = vertex_of[cursor++];
      if (ring.empty() || ring.back() != v) ring.push_back(v);
    }
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    if (ring.size() < 3) throw TopologyError("face " + p.name + " has fewer than 3 distinct vertices");
    std::vector<Point> pts;
    for (int v : ring) pts.push_back(vertices[static_cast<std::size_t>(v)]);
    if (signed_area(pts) < 0) std::reverse(ring.begin(), ring.end());
    rings.push_back(std::move(ring));
  }
  for (auto& ring : rings) {
    std::vector<int> refined;
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const int u = ring[k];
      const int w = ring[(k + 1) % ring.size()];
      const Point a = vertices[static_cast<std::size_t>(u)];
      const Point b = vertices[static_cast<std::size_t>(w)];
      const Point ab = b - a;
      const double l2 = dot(ab, ab);
      refined.push_back(u);
      std::vector<std::pair<double, int>> inner;
      for (std::size_t v = 0; v < vertices.size(); ++v) {
        const int vi = static_cast<int>(v);
        if (vi == u || vi == w) continue;
        const Point p = vertices[v];
        const double t = dot(p - a, ab) / l2;
        if (t <= 0.0 || t >= 1.0) continue;
        if (point_segment_distance(p, a, b) <= snap_eps) inner.emplace_back(t, vi);
      }
      std::sort(inner.begin(), inner.end());
      for (const auto& [t, v] : inner) refined.push_back(v);
    }
    ring = std::move(refined);
  }

  std::vector<Face> faces;
  std::vector<HalfEdge> hes;
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t f = 0; f < rings.size(); ++f) {
    const auto& ring = rings[f];
    Face face;
    face.name = polygons[f].name;
    face.weight = polygons[f].weight;
    face.boundary = static_cast<int>(hes.size());
    const int base = static_cast<int>(hes.size());
    const int n = static_cast<int>(ring.size());
    for (int k = 0; k < n; ++k) {
      const std::pair<int, int> key{ring[static_cast<std::size_t>(k)], ring[static_cast<std::size_t>((k + 1) % n)]};
      if (auto it = directed.find(key); it != directed.end()) {
        const int other = hes[static_cast<std::size_t>(it->second)].face;
        throw TopologyError("faces " + polygons[static_cast<std::size_t>(other)].name + " and " +
                            face.name + " overlap along a border");
      }
      directed[key] = base + k;
      hes.push_back({key.first, -1, base + (k + 1) % n, static_cast<int>(f)});
    }
    std::vector<Point> pts;
    for (int v : ring) pts.push_back(vertices[static_cast<std::size_t>(v)]);
    face.area = signed_area(pts);
    faces.push_back(std::move(face));
  }
  const int exterior = static_cast<int>(faces.size());
  const int land_count = static_cast<int>(hes.size());
  for (int h = 0; h < land_count; ++h) {
    const int u = hes[static_cast<std::size_t>(h)].origin;
    const int v = hes[static_cast<std::size_t>(hes[static_cast<std::size_t>(h)].next)].origin;
    if (auto it = directed.find({v, u}); it != directed.end()) {
      hes[static_cast<std::size_t>(h)].twin = it->second;
    } else {
      const int t = static_cast<int>(hes.size());
      hes.push_back({v, h, -1, exterior});
      hes[static_cast<std::size_t>(h)].twin = t;
    }
  }

  // Exterior next pointers: around the destination, take the first outgoing
  // half-edge clockwise from the twin.
  std::vector<std::vector<int>> outgoing(vertices.size());
  for (int h = 0; h < static_cast<int>(hes.size()); ++h) {
    outgoing[static_cast<std::size_t>(hes[static_cast<std::size_t>(h)].origin)].push_back(h);
  }
  auto dest = [&](int h) { return hes[static_cast<std::size_t>(hes[static_cast<std::size_t>(h)].twin)].origin; };
  auto angle = [&](int h) {
    const Point d = vertices[static_cast<std::size_t>(dest(h))] - vertices[static_cast<std::size_t>(hes[static_cast<std::size_t>(h)].origin)];
    return std::atan2(d.y, d.x);
  };
  for (auto& out : outgoing) {
    std::sort(out.begin(), out.end(), [&](int a, int b) { return angle(a) < angle(b); });
  }
  for (int h = land_count; h < static_cast<int>(hes.size()); ++h) {
    const int t = hes[static_cast<std::size_t>(h)].twin;
    const auto& around = outgoing[static_cast<std::size_t>(dest(h))];
    const auto pos = std::find(around.begin(), around.end(), t) - around.begin();
    const int nxt = around[static_cast<std::size_t>((pos + static_cast<long>(around.size()) - 1) % static_cast<long>(around.size()))];
    if (hes[static_cast<std::size_t>(nxt)].face != exterior) {
      throw TopologyError("inconsistent border around vertex " + std::to_string(dest(h)));
    }
    hes[static_cast<std::size_t>(h)].next = nxt;
  }

  Subdivision s = Subdivision::from_parts(vertices, hes, faces, sea);

  // Exterior cycles: clockwise ones are outer boundaries, counterclockwise
  // ones enclose an unassigned gap.
  std::vector<bool> seen(hes.size(), false);
  for (int h = land_count; h < static_cast<int>(hes.size()); ++h) {
    if (seen[static_cast<std::size_t>(h)]) continue;
    std::vector<Point> cycle;
    int e = h;
    do {
      seen[static_cast<std::size_t>(e)] = true;
      cycle.push_back(vertices[static_cast<std::size_t>(hes[static_cast<std::size_t>(e)].origin)]);
      e = hes[static_cast<std::size_t>(e)].next;
    } while (e != h && cycle.size() <= hes.size());
    if (signed_area(cycle) > 0) {
      if (gaps) {
        gaps->push_back(cycle);
        continue;
      }
      const int owner = hes[static_cast<std::size_t>(hes[static_cast<std::size_t>(h)].twin)].face;
      throw TopologyError("dangling border: face " + face_label(s, owner) +
                          " borders a gap that is neither a face nor the sea");
    }
  }

  if (gaps) return s;

  for (int f = 0; f < s.face_count(); ++f) {
    if (auto problem = polygon_problem(s.polygon(f), 0.0)) {
      throw TopologyError("face " + face_label(s, f) + " is not a simple polygon: " + *problem);
    }
  }
  const auto edges = s.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const int a = edges[i], b = edges[j];
      if (edges_conflict(s.from(a), s.to(a), s.from(b), s.to(b), 0.0)) {
        throw TopologyError("borders of " + face_label(s, s.half_edge(a).face) + " and " +
                            face_label(s, s.half_edge(b).face) + " cross");
      }
    }
  }
  std::vector<SimplePolygon> polys;
  std::vector<Box> boxes;
  for (int f = 0; f < s.face_count(); ++f) {
    polys.push_back(s.polygon(f));
    boxes.push_back(box_of(polys.back().vertices));
  }
  for (int f = 0; f < s.face_count(); ++f) {
    for (int g = 0; g < s.face_count(); ++g) {
      if (f == g) continue;
      // Centroid of a triangle fan piece lies inside g's interior.
      const auto& pg = polys[static_cast<std::size_t>(g)];
      for (Point p : pg.vertices) {
        if (boxes[static_cast<std::size_t>(f)].contains(p, 0) && strictly_inside(p, polys[static_cast<std::size_t>(f)], snap_eps)) {
          throw TopologyError("faces " + face_label(s, f) + " and " + face_label(s, g) + " overlap");
        }
      }
      const Point c = centroid(pg);
      if (point_in_polygon(c, pg, 0.0) && boxes[static_cast<std::size_t>(f)].contains(c, 0) &&
          strictly_inside(c, polys[static_cast<std::size_t>(f)], snap_eps)) {
        throw TopologyError("faces " + face_label(s, f) + " and " + face_label(s, g) + " overlap");
      }
    }
  }
  return s;
}

}  // namespace

Subdivision build_from_polygons(const std::vector<PolygonInput>& polygons, double snap_eps) {
  return build_impl(polygons, snap_eps, nullptr);
}

std::vector<std::vector<Point>> enclosed_gaps(const std::vector<PolygonInput>& polygons, double snap_eps) {
  std::vector<std::vector<Point>> gaps;
  (void)build_impl(polygons, snap_eps, &gaps);
  return gaps;
}

std::vector<Violation> validate(const Subdivision& s, double eps) {
  std::vector<Violation> out;
  const auto& hes = s.half_edges();
  const int nh = static_cast<int>(hes.size());
  const int nv = static_cast<int>(s.vertices().size());
  bool pointers_ok = true;
  for (int h = 0; h < nh; ++h) {
    const HalfEdge& e = hes[static_cast<std::size_t>(h)];
    const std::string ent = "half-edge " + std::to_string(h);
    if (e.twin < 0 || e.twin >= nh || e.next < 0 || e.next >= nh || e.origin < 0 || e.origin >= nv ||
        e.face < 0 || e.face > s.face_count()) {
      out.push_back({ent, "index", "pointer out of range"});
      pointers_ok = false;
      continue;
    }
    if (hes[static_cast<std::size_t>(e.twin)].twin != h) out.push_back({ent, "twin", "twin(twin(e)) != e"});
    if (hes[static_cast<std::size_t>(e.twin)].face == e.face) out.push_back({ent, "twin", "both sides belong to the same face"});
    if (hes[static_cast<std::size_t>(e.next)].origin != hes[static_cast<std::size_t>(e.twin)].origin) {
      out.push_back({ent, "next", "next does not start where the edge ends"});
    }
    if (hes[static_cast<std::size_t>(e.next)].face != e.face) out.push_back({ent, "next", "next leaves the face"});
  }
  if (!pointers_ok) return out;

  for (int f = 0; f < s.face_count(); ++f) {
    const std::string ent = "face " + face_label(s, f);
    SimplePolygon poly;
    try {
      poly = s.polygon(f);
    } catch (const TopologyError& err) {
      out.push_back({ent, "boundary", err.what()});
      continue;
    }
    const double area = signed_area(poly);
    if (area <= 0.0) {
      out.push_back({ent, "orientation", "boundary is not counterclockwise"});
      continue;
    }
    if (std::abs(area - s.face(f).area) > 1e-9 * std::max(1.0, area)) {
      out.push_back({ent, "area", "stored area differs from the shoelace area"});
    }
    if (auto problem = polygon_problem(poly, 0.0)) out.push_back({ent, "simple", *problem});
  }
  if (auto sea = s.explicit_sea(); sea && (*sea < 0 || *sea >= s.face_count())) {
    out.push_back({"sea", "index", "sea face id out of range"});
  }

  const auto edges = s.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const int a = edges[i], b = edges[j];
      if (edges_conflict(s.from(a), s.to(a), s.from(b), s.to(b), eps)) {
        out.push_back({"edges " + std::to_string(a) + "/" + std::to_string(b), "crossing",
                       "borders of " + face_label(s, s.half_edge(a).face) + " and " +
                           face_label(s, s.half_edge(b).face) + " cross"});
      }
    }
  }
  std::set<int> used;
  for (const HalfEdge& e : hes) used.insert(e.origin);
  const int v = static_cast<int>(used.size());
  const int e = static_cast<int>(edges.size());
  const int f = s.face_count() + 1;
  if (v - e + f != 1 + s.component_count()) {
    out.push_back({"subdivision", "euler", "V - E + F = " + std::to_string(v - e + f) +
                                               ", expected " + std::to_string(1 + s.component_count())});
  }
  return out;
}

std::vector<std::optional<double>> face_weights(const Subdivision& s) {
  std::vector<std::optional<double>> w;
  for (const Face& f : s.faces()) w.push_back(f.weight);
  return w;
}

WeightTargets normalize_weights(const Subdivision& s, std::span<const std::optional<double>> raw,
                                bool allow_zero) {
  const int n = s.face_count();
  if (static_cast<int>(raw.size()) != n) throw DomainError("one weight entry per face required");
  const auto sea = s.explicit_sea();
  double total_area = 0.0;
  double total_weight = 0.0;
  for (int f = 0; f < n; ++f) {
    const auto& w = raw[static_cast<std::size_t>(f)];
    if (sea == f) {
      if (w) throw DomainError("weight supplied for sea face " + face_label(s, f));
      continue;
    }
    if (!w) throw DomainError("missing weight for face " + face_label(s, f));
    if (!std::isfinite(*w) || *w < 0.0 || (*w == 0.0 && !allow_zero)) {
      throw DomainError("non-positive weight for face " + face_label(s, f));
    }
    total_area += s.face(f).area;
    total_weight += *w;
  }
  WeightTargets out;
  out.target.assign(static_cast<std::size_t>(n), std::nan(""));
  out.delta.assign(static_cast<std::size_t>(n), 0.0);
  if (total_weight <= 0.0) {
    if (total_area > 0.0 && n > (sea ? 1 : 0)) throw DomainError("all weights are zero");
    return out;
  }
  const double scale = total_area / total_weight;
  for (int f = 0; f < n; ++f) {
    if (sea == f) continue;
    const double t = *raw[static_cast<std::size_t>(f)] * scale;
    out.target[static_cast<std::size_t>(f)] = t;
    const double d = t - s.face(f).area;
    // Rounding residue of the rescaling is not a requested change.
    out.delta[static_cast<std::size_t>(f)] = std::abs(d) <= 1e-13 * total_area ? 0.0 : d;
  }
  return out;
}

DualGraph dual_graph(const Subdivision& s) {
  DualGraph g;
  g.node_count = s.node_count();
  g.sea = s.sea_node();
  std::map<std::pair<int, int>, std::vector<int>> acc;
  for (int h = 0; h < static_cast<int>(s.half_edges().size()); ++h) {
    const int u = s.node_of(s.half_edge(h).face);
    const int v = s.node_of(s.half_edge(s.half_edge(h).twin).face);
    if (u == v) continue;
    acc[{u, v}].push_back(h);
  }
  for (auto& [key, list] : acc) {
    g.index[key] = static_cast<int>(g.edges.size());
    g.edges.push_back({key.first, key.second, std::move(list)});
  }
  return g;
}

Subdivision merge_degree2_vertices(const Subdivision& s, double eps) {
  std::vector<PolygonInput> polys = s.to_polygons();
  bool changed = true;
  while (changed) {
    changed = false;
    Subdivision cur = build_from_polygons(polys, eps);
    // Count undirected incident edges per vertex.
    std::vector<std::vector<int>> incident(cur.vertices().size());
    for (int e : cur.edges()) {
      incident[static_cast<std::size_t>(cur.half_edge(e).origin)].push_back(e);
      incident[static_cast<std::size_t>(cur.destination(e))].push_back(e);
    }
    const auto edges = cur.edges();
    for (std::size_t v = 0; v < incident.size() && !changed; ++v) {
      if (incident[v].size() != 2) continue;
      const Point p = cur.vertices()[v];
      std::vector<PolygonInput> trial = polys;
      bool ok = true;
      int touched = 0;
      for (auto& poly : trial) {
        auto it = std::find(poly.ring.begin(), poly.ring.end(), p);
        if (it == poly.ring.end()) continue;
        // Only chains between junctions are merged; a ring without any
        // junction keeps its shape.
        const bool has_junction = std::any_of(poly.ring.begin(), poly.ring.end(), [&](Point q) {
          for (std::size_t u = 0; u < incident.size(); ++u) {
            if (cur.vertices()[u] == q) return incident[u].size() >= 3;
          }
          return false;
        });
        if (!has_junction) ok = false;
        poly.ring.erase(it);
        ++touched;
        SimplePolygon sp{poly.ring};
        if (signed_area(sp) < 0) std::reverse(sp.vertices.begin(), sp.vertices.end());
        if (sp.size() < 3 || polygon_problem(sp, eps)) ok = false;
      }
      if (!ok || touched == 0) continue;
      // The new chord must not cross any other edge.
      const int e0 = incident[v][0], e1 = incident[v][1];
      const int a = cur.half_edge(e0).origin == static_cast<int>(v) ? cur.destination(e0) : cur.half_edge(e0).origin;
      const int b = cur.half_edge(e1).origin == static_cast<int>(v) ? cur.destination(e1) : cur.half_edge(e1).origin;
      const Point pa = cur.vertices()[static_cast<std::size_t>(a)];
      const Point pb = cur.vertices()[static_cast<std::size_t>(b)];
      for (int e : edges) {
        if (e == e0 || e == e1) continue;
        if (edges_conflict(pa, pb, cur.from(e), cur.to(e), eps)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      try {
        (void)build_from_polygons(trial, eps);
      } catch (const TopologyError&) {
        continue;
      }
      polys = std::move(trial);
      changed = true;
    }
  }
  return build_from_polygons(polys, eps);
}

}  // namespace arcgram
