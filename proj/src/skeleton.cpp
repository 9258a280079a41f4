#include "arcgram/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace arcgram {

namespace {

constexpr double kPi = std::numbers::pi;

struct Line {
  Point dir;     // unit direction of the original edge
  Point normal;  // inward unit normal
  double offset; // normal . x = offset + t  at time t
};

struct WaveVertex {
  Point pos;
  Point vel;
  Point birth;
  int left = -1;   // edge arriving at this vertex
  int right = -1;  // edge leaving this vertex
  bool frozen = false;  // lines antiparallel: velocity undefined
};

struct Trace {
  Point a;
  Point b;
  int e1;
  int e2;
};

class Wavefront {
 public:
  explicit Wavefront(const SimplePolygon& poly) : poly_(poly) {
    const std::size_t n = poly.size();
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) diag = std::max(diag, distance(poly[i], poly[j]));
    }
    scale_ = std::max(diag, 1e-300);
    eps_ = 1e-9 * scale_;
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = poly.edge_start(i);
      const Point b = poly.edge_end(i);
      const double len = distance(a, b);
      if (len <= eps_) throw SkeletonError("near-zero edge " + std::to_string(i));
      const Point d = (b - a) * (1.0 / len);
      const Point nrm = perp(d);
      lines_.push_back({d, nrm, dot(nrm, a)});
    }
    std::vector<WaveVertex> ring;
    for (std::size_t i = 0; i < n; ++i) {
      WaveVertex v;
      v.pos = poly[i];
      v.birth = v.pos;
      v.left = static_cast<int>((i + n - 1) % n);
      v.right = static_cast<int>(i);
      set_velocity(v);
      if (norm(v.vel) > 1e6) throw SkeletonError("spike at vertex " + std::to_string(i));
      ring.push_back(v);
    }
    rings_.push_back(std::move(ring));
  }

  void run() {
    cleanup_all();
    const std::size_t max_steps = 50 * poly_.size() + 100;
    for (std::size_t step = 0; !rings_.empty(); ++step) {
      if (step > max_steps) throw SkeletonError("wavefront did not terminate");
      Event ev = next_event();
      if (!ev.valid) {
        // Nothing moves towards collapse; only degenerate leftovers remain.
        for (auto& r : rings_) collapse_ridge(r);
        rings_.clear();
        break;
      }
      advance(ev.time - now_);
      apply(ev);
      cleanup_all();
    }
  }

  SkeletonRegionSet result() const {
    SkeletonRegionSet out;
    out.polygon = poly_;
    const double join = 1e-7 * scale_;
    for (const Trace& t : traces_) {
      if (distance(t.a, t.b) > join) out.ridges.push_back({t.a, t.b});
    }
    for (std::size_t e = 0; e < poly_.size(); ++e) {
      out.regions.push_back(assemble(static_cast<int>(e), join));
    }
    return out;
  }

 private:
  struct Event {
    bool valid = false;
    double time = 0.0;
    bool split = false;
    std::size_t ring = 0;
    std::size_t index = 0;   // edge start (edge event) or reflex vertex (split)
    std::size_t target = 0;  // split: start of the hit edge
    int key = 0;
  };

  void set_velocity(WaveVertex& v) const {
    const Point nl = lines_[static_cast<std::size_t>(v.left)].normal;
    const Point nr = lines_[static_cast<std::size_t>(v.right)].normal;
    const double det = cross(nl, nr);
    v.frozen = false;
    if (std::abs(det) > 1e-12) {
      v.vel = {(nr.y - nl.y) / det, (nl.x - nr.x) / det};
    } else if (dot(nl, nr) > 0) {
      v.vel = nl;
    } else {
      v.vel = {0, 0};
      v.frozen = true;
    }
  }

  void finish(const WaveVertex& v) { traces_.push_back({v.birth, v.pos, v.left, v.right}); }

  WaveVertex spawn(Point at, int left, int right) const {
    WaveVertex v;
    v.pos = at;
    v.birth = at;
    v.left = left;
    v.right = right;
    set_velocity(v);
    return v;
  }

  void advance(double dt) {
    if (dt <= 0) return;
    for (auto& r : rings_) {
      for (auto& v : r) v.pos = v.pos + v.vel * dt;
    }
    now_ += dt;
  }

  Event next_event() const {
    Event best;
    const double tie = eps_;
    auto offer = [&](const Event& e) {
      if (!best.valid || e.time < best.time - tie ||
          (std::abs(e.time - best.time) <= tie && e.key < best.key)) {
        best = e;
      }
    };
    for (std::size_t r = 0; r < rings_.size(); ++r) {
      const auto& ring = rings_[r];
      const std::size_t n = ring.size();
      for (std::size_t i = 0; i < n; ++i) {
        const WaveVertex& a = ring[i];
        const WaveVertex& b = ring[(i + 1) % n];
        const Point d = lines_[static_cast<std::size_t>(a.right)].dir;
        const double len = dot(b.pos - a.pos, d);
        const double rate = dot(b.vel - a.vel, d);
        if (rate < -1e-12) {
          Event e;
          e.valid = true;
          e.time = now_ + std::max(0.0, len / -rate);
          e.ring = r;
          e.index = i;
          e.key = a.right;
          offer(e);
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        const WaveVertex& v = ring[i];
        if (cross(lines_[static_cast<std::size_t>(v.left)].dir, lines_[static_cast<std::size_t>(v.right)].dir) >= -1e-12) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || (j + 1) % n == i) continue;
          const WaveVertex& a = ring[j];
          const WaveVertex& b = ring[(j + 1) % n];
          const Line& ln = lines_[static_cast<std::size_t>(a.right)];
          const double denom = dot(ln.normal, v.vel) - 1.0;
          if (denom >= -1e-12) continue;
          const double dist = dot(ln.normal, v.pos) - (ln.offset + now_);
          if (dist < -eps_) continue;
          const double dt = std::max(0.0, dist / -denom);
          const Point p = v.pos + v.vel * dt;
          const Point pa = a.pos + a.vel * dt;
          const Point pb = b.pos + b.vel * dt;
          const double s = dot(p - pa, ln.dir);
          const double s_end = dot(pb - pa, ln.dir);
          if (s_end <= 0 || s < -eps_ || s > s_end + eps_) continue;
          Event e;
          e.valid = true;
          e.time = now_ + dt;
          e.split = true;
          e.ring = r;
          e.index = i;
          e.target = j;
          e.key = std::min(v.right, a.right);
          offer(e);
        }
      }
    }
    return best;
  }

  void apply(const Event& ev) {
    auto& ring = rings_[ev.ring];
    const std::size_t n = ring.size();
    if (!ev.split) {
      const std::size_t i = ev.index;
      const std::size_t j = (i + 1) % n;
      const Point m = (ring[i].pos + ring[j].pos) * 0.5;
      ring[i].pos = m;
      ring[j].pos = m;
      merge_pair(ring, i);
      return;
    }
    const std::size_t vi = ev.index;
    const std::size_t ai = ev.target;
    const std::size_t bi = (ai + 1) % n;
    WaveVertex v = ring[vi];
    const int hit = ring[ai].right;
    finish(v);
    WaveVertex v1 = spawn(v.pos, v.left, hit);
    WaveVertex v2 = spawn(v.pos, hit, v.right);
    // X: v1, b, ..., prev(v);  Y: v2, next(v), ..., a
    std::vector<WaveVertex> x{v1};
    for (std::size_t k = bi; k != vi; k = (k + 1) % n) x.push_back(ring[k]);
    std::vector<WaveVertex> y{v2};
    for (std::size_t k = (vi + 1) % n; k != bi; k = (k + 1) % n) y.push_back(ring[k]);
    rings_.erase(rings_.begin() + static_cast<long>(ev.ring));
    rings_.push_back(std::move(x));
    rings_.push_back(std::move(y));
  }

  // Replaces ring[i] and ring[i+1] (already coincident) by one vertex.
  void merge_pair(std::vector<WaveVertex>& ring, std::size_t i) {
    const std::size_t n = ring.size();
    const std::size_t j = (i + 1) % n;
    finish(ring[i]);
    finish(ring[j]);
    WaveVertex merged = spawn(ring[i].pos, ring[i].left, ring[j].right);
    ring[i] = merged;
    ring.erase(ring.begin() + static_cast<long>(j));
  }

  void collapse_ridge(std::vector<WaveVertex>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const WaveVertex& a = ring[i];
      const WaveVertex& b = ring[(i + 1) % n];
      if (distance(a.pos, b.pos) > 0) traces_.push_back({a.pos, b.pos, a.right, -1});
      finish(a);
    }
    ring.clear();
  }

  // Removes a zero-width antenna whose tip is ring[i].
  void split_antenna(std::vector<WaveVertex>& ring, std::size_t i) {
    const std::size_t n = ring.size();
    const std::size_t p = (i + n - 1) % n;
    const std::size_t q = (i + 1) % n;
    WaveVertex tip = ring[i];
    finish(tip);
    if (distance(tip.pos, ring[p].pos) <= distance(tip.pos, ring[q].pos)) {
      traces_.push_back({tip.pos, ring[p].pos, tip.left, tip.right});
      finish(ring[p]);
      ring[p] = spawn(ring[p].pos, ring[p].left, tip.right);
    } else {
      traces_.push_back({tip.pos, ring[q].pos, tip.left, tip.right});
      finish(ring[q]);
      ring[q] = spawn(ring[q].pos, tip.left, ring[q].right);
    }
    ring.erase(ring.begin() + static_cast<long>(i));
  }

  void cleanup_all() {
    std::vector<std::vector<WaveVertex>> keep;
    for (auto& ring : rings_) {
      if (cleanup(ring)) keep.push_back(std::move(ring));
    }
    rings_ = std::move(keep);
  }

  // Returns false when the ring is gone.
  bool cleanup(std::vector<WaveVertex>& ring) {
    for (std::size_t guard = 0; guard < 4 * poly_.size() + 8; ++guard) {
      const std::size_t n = ring.size();
      if (n <= 1) {
        for (auto& v : ring) finish(v);
        return false;
      }
      if (n == 2) {
        if (distance(ring[0].pos, ring[1].pos) > 0) {
          traces_.push_back({ring[0].pos, ring[1].pos, ring[0].right, ring[1].right});
        }
        finish(ring[0]);
        finish(ring[1]);
        return false;
      }
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if (distance(ring[i].pos, ring[j].pos) <= eps_) {
          const Point m = (ring[i].pos + ring[j].pos) * 0.5;
          ring[i].pos = m;
          ring[j].pos = m;
          merge_pair(ring, i);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      std::vector<Point> pts;
      double per = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(ring[i].pos);
        per += distance(ring[i].pos, ring[(i + 1) % n].pos);
      }
      if (std::abs(signed_area(pts)) <= eps_ * per) {
        collapse_ridge(ring);
        return false;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (ring[i].frozen) {
          split_antenna(ring, i);
          changed = true;
          break;
        }
      }
      if (!changed) return true;
    }
    throw SkeletonError("wavefront cleanup did not converge");
  }

  struct Node {
    Point p;
    std::vector<std::size_t> segs;
  };

  SimplePolygon assemble(int edge, double join) const {
    std::vector<Segment> segs;
    const Point a = poly_.edge_start(static_cast<std::size_t>(edge));
    const Point b = poly_.edge_end(static_cast<std::size_t>(edge));
    for (const Trace& t : traces_) {
      if ((t.e1 == edge || t.e2 == edge) && distance(t.a, t.b) > join) segs.push_back({t.a, t.b});
    }
    std::vector<Node> nodes;
    auto node_of = [&](Point p) {
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (distance(nodes[k].p, p) <= 100 * join) return k;
      }
      nodes.push_back({p, {}});
      return nodes.size() - 1;
    };
    const std::size_t na = node_of(a);
    const std::size_t nb = node_of(b);
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::size_t u = node_of(segs[k].a);
      const std::size_t v = node_of(segs[k].b);
      ends.emplace_back(u, v);
      if (u == v) continue;
      nodes[u].segs.push_back(k);
      nodes[v].segs.push_back(k);
    }
    SimplePolygon region;
    region.vertices.push_back(a);
    std::vector<bool> used(segs.size(), false);
    std::size_t cur = nb;
    Point incoming = b - a;
    for (std::size_t steps = 0; cur != na; ++steps) {
      if (steps > segs.size()) {
        throw SkeletonError("could not assemble skeleton region of edge " + std::to_string(edge));
      }
      region.vertices.push_back(nodes[cur].p);
      // Face on the left: first candidate clockwise from the reversed incoming direction.
      const double back = std::atan2(-incoming.y, -incoming.x);
      std::optional<std::size_t> pick;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k : nodes[cur].segs) {
        if (used[k]) continue;
        const std::size_t other = ends[k].first == cur ? ends[k].second : ends[k].first;
        const Point d = nodes[other].p - nodes[cur].p;
        double turn = back - std::atan2(d.y, d.x);
        while (turn <= 1e-12) turn += 2 * kPi;
        while (turn > 2 * kPi + 1e-12) turn -= 2 * kPi;
        if (turn < best) {
          best = turn;
          pick = k;
        }
      }
      if (!pick) throw SkeletonError("open skeleton region for edge " + std::to_string(edge));
      used[*pick] = true;
      const std::size_t next = ends[*pick].first == cur ? ends[*pick].second : ends[*pick].first;
      incoming = nodes[next].p - nodes[cur].p;
      cur = next;
    }
    return region;
  }

  SimplePolygon poly_;
  std::vector<Line> lines_;
  std::vector<std::vector<WaveVertex>> rings_;
  std::vector<Trace> traces_;
  double now_ = 0.0;
  double scale_ = 1.0;
  double eps_ = 1e-9;
};

}  // namespace

SkeletonRegionSet straight_skeleton(const SimplePolygon& polygon) {
  if (auto problem = polygon_problem(polygon, 0.0)) {
    throw SkeletonError("invalid polygon: " + *problem);
  }
  Wavefront wf(polygon);
  wf.run();
  return wf.result();
}

namespace {

// Interior angle of the face on the left at the vertex between in-edge p->v and out-edge v->q.
double wedge_angle(Point p, Point v, Point q) {
  const Point out = q - v;
  const Point back = p - v;
  double ang = std::atan2(cross(out, back), dot(out, back));
  if (ang <= 0) ang += 2 * kPi;
  return ang;
}

}  // namespace

double max_sagitta(Point a, Point b, const SimplePolygon& region, const GeomConfig& cfg) {
  const double len = distance(a, b);
  // The arc leaves its endpoints at the tangent angle, which may not exceed
  // the region's corner angles there.
  double alpha = 2.0 * std::atan(cfg.max_sagitta_ratio);
  if (region.size() >= 3) {
    alpha = std::min({alpha, wedge_angle(region.vertices.back(), a, b), wedge_angle(a, b, region[2])});
  }
  const double cap = std::min(cfg.max_sagitta_ratio * 0.5 * len, 0.5 * len * std::tan(0.5 * alpha));
  auto fits = [&](double h) { return arc_in_polygon({a, b, h}, region, cfg.geom_eps); };
  if (fits(cap)) return cap;
  double lo = 0.0;
  double hi = cap;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo < cfg.geom_eps ? 0.0 : lo;
}

double sea_max_sagitta(const Subdivision& s, int h, const GeomConfig& cfg) {
  const Point a = s.from(h);
  const Point b = s.to(h);
  const double len = distance(a, b);
  int prev = h;
  while (s.half_edge(prev).next != h) prev = s.half_edge(prev).next;
  const double beta_a = wedge_angle(s.from(prev), a, b);
  const double beta_b = wedge_angle(a, b, s.to(s.half_edge(h).next));
  const double alpha = std::min({0.5 * beta_a, 0.5 * beta_b, 2.0 * std::atan(cfg.max_sagitta_ratio)});
  const double h_angle = 0.5 * len * std::tan(0.5 * alpha);

  const int va = s.half_edge(h).origin;
  const int vb = s.destination(h);
  double clearance = std::numeric_limits<double>::infinity();
  const auto edges = s.edges();
  for (int e : edges) {
    const int u = s.half_edge(e).origin;
    const int w = s.destination(e);
    if (u == va || u == vb || w == va || w == vb) continue;
    clearance = std::min(clearance, segment_segment_distance(a, b, s.from(e), s.to(e)));
  }
  auto reach = [&](double hh) { return hh <= 0.5 * len ? hh : 2.0 * arc_radius(len, hh); };
  auto fits = [&](double hh) {
    if (reach(hh) > 0.5 * clearance) return false;
    const ChordArc arc{a, b, hh};
    for (int e : edges) {
      if (e == h || s.half_edge(e).twin == h) continue;
      if (arcs_intersect(arc, {s.from(e), s.to(e), 0.0}, cfg.geom_eps)) return false;
    }
    return true;
  };
  if (fits(h_angle)) return h_angle;
  double lo = 0.0;
  double hi = h_angle;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo < cfg.geom_eps ? 0.0 : lo;
}

bool strong_transfer_allowed(const Subdivision& s, int u, int v, const std::vector<double>& deltas) {
  const bool u_gives = s.is_sea_node(u) || deltas.at(static_cast<std::size_t>(u)) < 0;
  const bool v_takes = s.is_sea_node(v) || deltas.at(static_cast<std::size_t>(v)) > 0;
  return u_gives && v_takes;
}

CapacityTable edge_capacities(const Subdivision& s, const DualGraph& g, Mode mode,
                              const std::vector<double>& deltas, const GeomConfig& cfg) {
  CapacityTable table;
  table.half_edge_limit.assign(s.half_edges().size(), 0.0);
  for (int f = 0; f < s.face_count(); ++f) {
    table.skeletons.push_back(straight_skeleton(s.polygon(f)));
    const auto cycle = s.boundary(f);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int h = cycle[k];
      table.half_edge_limit[static_cast<std::size_t>(h)] =
          max_sagitta(s.from(h), s.to(h), table.skeletons.back().regions[k], cfg);
    }
  }
  for (int h = 0; h < static_cast<int>(s.half_edges().size()); ++h) {
    if (s.half_edge(h).face == s.exterior()) {
      table.half_edge_limit[static_cast<std::size_t>(h)] = sea_max_sagitta(s, h, cfg);
    }
  }
  for (const DualEdge& de : g.edges) {
    EdgeCapacity cap;
    cap.from = de.from;
    cap.to = de.to;
    cap.half_edges = de.half_edges;
    const bool zeroed = mode == Mode::strong && !strong_transfer_allowed(s, de.from, de.to, deltas);
    for (int h : de.half_edges) {
      const double hmax = zeroed ? 0.0 : table.half_edge_limit[static_cast<std::size_t>(h)];
      const double c = hmax > 0 ? segment_area(s.length(h), hmax) : 0.0;
      cap.max_sagitta.push_back(hmax);
      cap.capacity.push_back(c);
      cap.total += c;
    }
    table.edges.push_back(std::move(cap));
  }
  return table;
}

}  // namespace arcgram
