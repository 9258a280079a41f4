#include "arcgram/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace arcgram {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// x - sin(x), accurate for small x where the subtraction cancels.
double x_minus_sin(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return x - std::sin(x);
}

struct Hit {
  Point p;
  bool tangent;
};

// Intersections of two supporting curves (line or circle), without span tests.
std::vector<Hit> line_line_hits(const ArcShape& u, const ArcShape& v, double eps,
                                bool& overlap) {
  overlap = false;
  const Point r = u.b - u.a;
  const Point s = v.b - v.a;
  const double denom = cross(r, s);
  const double scale = norm(r) * norm(s);
  if (std::abs(denom) <= 1e-14 * scale) {
    const double lu = norm(r);
    if (std::abs(cross(r, v.a - u.a)) / lu <= eps) {
      overlap = true;
    }
    return {};
  }
  const double t = cross(v.a - u.a, s) / denom;
  return {{u.a + r * t, false}};
}

std::vector<Hit> circle_line_hits(const ArcShape& circ, Point c, Point d, double eps) {
  const Point w = d - c;
  const double len = norm(w);
  const Point dir = w * (1.0 / len);
  const Point rel = circ.center - c;
  const double along = dot(rel, dir);
  const Point foot = c + dir * along;
  const double dist = std::abs(cross(dir, rel));
  const double gap = circ.radius - dist;
  if (gap < -eps) return {};
  if (gap <= eps) return {{foot, true}};
  const double half = std::sqrt(std::max(0.0, circ.radius * circ.radius - dist * dist));
  return {{foot - dir * half, false}, {foot + dir * half, false}};
}

std::vector<Hit> circle_circle_hits(const ArcShape& u, const ArcShape& v, double eps,
                                    bool& same_circle) {
  same_circle = false;
  const Point dc = v.center - u.center;
  const double d = norm(dc);
  if (d <= eps && std::abs(u.radius - v.radius) <= eps) {
    same_circle = true;
    return {};
  }
  const double r1 = u.radius;
  const double r2 = v.radius;
  if (d > r1 + r2 + eps || d < std::abs(r1 - r2) - eps || d == 0.0) return {};
  const Point ex = dc * (1.0 / d);
  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const Point mid = u.center + ex * a;
  if (std::abs(d - (r1 + r2)) <= eps || std::abs(d - std::abs(r1 - r2)) <= eps) {
    return {{mid, true}};
  }
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point off = perp(ex) * h;
  return {{mid + off, false}, {mid - off, false}};
}

double slack_for(const ArcShape& s, double eps) {
  if (s.straight) return eps / std::max(distance(s.a, s.b), eps);
  return eps / std::max(s.radius * std::abs(s.sweep), eps);
}

}  // namespace

// --- ArcShape ------------------------------------------------------------------

Point ArcShape::at(double t) const {
  if (straight) return a + (b - a) * t;
  const double ang = start_angle + t * sweep;
  return {center.x + radius * std::cos(ang), center.y + radius * std::sin(ang)};
}

std::optional<double> ArcShape::param_of(Point p, double slack) const {
  double t = 0.0;
  if (straight) {
    const Point ab = b - a;
    t = dot(p - a, ab) / dot(ab, ab);
  } else {
    const double phi = std::atan2(p.y - center.y, p.x - center.x);
    double rel = sweep > 0 ? phi - start_angle : start_angle - phi;
    rel = std::fmod(rel, kTwoPi);
    if (rel < 0) rel += kTwoPi;
    const double span = std::abs(sweep);
    if (rel > span + 0.5 * (kTwoPi - span)) rel -= kTwoPi;
    t = rel / span;
  }
  if (t < -slack || t > 1.0 + slack) return std::nullopt;
  return t;
}

ArcShape shape_of(const ChordArc& arc) {
  ArcShape s;
  s.a = arc.a;
  s.b = arc.b;
  if (arc.sagitta == 0.0) return s;
  const double len = arc.chord_length();
  if (!(len > 0.0)) throw DomainError("bent arc with zero-length chord");
  const double h = std::abs(arc.sagitta);
  const double sign = arc.sagitta > 0 ? 1.0 : -1.0;
  const Point n = perp(arc.b - arc.a) * (1.0 / len);
  const Point mid = (arc.a + arc.b) * 0.5;
  s.straight = false;
  s.radius = arc_radius(len, h);
  s.center = mid + n * (sign * (h - s.radius));
  s.start_angle = std::atan2(arc.a.y - s.center.y, arc.a.x - s.center.x);
  s.sweep = -sign * 2.0 * arc_tangent_angle(len, h);
  return s;
}

// --- polygons ------------------------------------------------------------------

double signed_area(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  // Shift to the first vertex to limit cancellation on far-from-origin maps.
  const Point o = ring[0];
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    acc += cross(ring[i] - o, ring[i + 1] - o);
  }
  return 0.5 * acc;
}

double signed_area(const SimplePolygon& p) { return signed_area(std::span<const Point>(p.vertices)); }

double perimeter(const SimplePolygon& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += distance(p.edge_start(i), p.edge_end(i));
  return acc;
}

Point centroid(const SimplePolygon& p) {
  const Point o = p.vertices.at(0);
  double a = 0.0;
  Point c{0, 0};
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const Point u = p.vertices[i] - o;
    const Point v = p.vertices[i + 1] - o;
    const double w = cross(u, v);
    a += w;
    c = c + (u + v) * w;
  }
  if (a == 0.0) return o;
  return o + c * (1.0 / (3.0 * a));
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double l2 = dot(ab, ab);
  if (l2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

bool segments_intersect(Point a, Point b, Point c, Point d, double eps) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return point_segment_distance(c, a, b) <= eps || point_segment_distance(d, a, b) <= eps ||
         point_segment_distance(a, c, d) <= eps || point_segment_distance(b, c, d) <= eps;
}

double segment_segment_distance(Point a, Point b, Point c, Point d) {
  if (segments_intersect(a, b, c, d, 0.0)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

bool point_in_polygon(Point p, const SimplePolygon& poly, double eps) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.edge_start(i);
    const Point b = poly.edge_end(i);
    if (point_segment_distance(p, a, b) <= eps) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

std::optional<std::string> polygon_problem(const SimplePolygon& poly, double eps) {
  const std::size_t n = poly.size();
  if (n < 3) return "fewer than 3 vertices";
  for (const Point& p : poly.vertices) {
    if (!is_finite(p)) return "non-finite coordinate";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(poly.edge_start(i), poly.edge_end(i)) <= eps) {
      return "zero-length edge at vertex " + std::to_string(i);
    }
  }
  if (signed_area(poly) <= 0.0) return "not counterclockwise (signed area <= 0)";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Point a = poly.edge_start(i), b = poly.edge_end(i);
      const Point c = poly.edge_start(j), d = poly.edge_end(j);
      if (adjacent) {
        // Adjacent edges may only share their common vertex.
        const Point shared = (j == i + 1) ? b : a;
        const Point other_i = (j == i + 1) ? a : b;
        const Point other_j = (j == i + 1) ? d : c;
        if (point_segment_distance(other_j, a, b) <= eps ||
            point_segment_distance(other_i, c, d) <= eps) {
          return "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
        }
        (void)shared;
        continue;
      }
      if (segments_intersect(a, b, c, d, eps)) {
        return "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
      }
    }
  }
  return std::nullopt;
}

// --- circular segments -------------------------------------------------------

double arc_tangent_angle(double chord_length, double sagitta) {
  return 2.0 * std::atan(2.0 * std::abs(sagitta) / chord_length);
}

double segment_area(double chord_length, double sagitta) {
  if (!std::isfinite(chord_length) || !std::isfinite(sagitta) || chord_length <= 0.0 ||
      sagitta < 0.0) {
    throw DomainError("segment_area: need finite chord > 0 and sagitta >= 0");
  }
  if (sagitta == 0.0) return 0.0;
  const double r = arc_radius(chord_length, sagitta);
  const double theta = arc_tangent_angle(chord_length, sagitta);
  // r^2 (theta - sin(theta) cos(theta)) = r^2 (2 theta - sin(2 theta)) / 2
  return 0.5 * r * r * x_minus_sin(2.0 * theta);
}

double arc_radius(double chord_length, double sagitta) {
  if (!std::isfinite(chord_length) || chord_length <= 0.0 || !std::isfinite(sagitta)) {
    throw DomainError("arc_radius: need finite chord > 0");
  }
  if (sagitta == 0.0) return std::numeric_limits<double>::infinity();
  const double h = std::abs(sagitta);
  return (0.25 * chord_length * chord_length + h * h) / (2.0 * h);
}

double sagitta_for_area(double chord_length, double area, double tol, const GeomConfig& cfg) {
  if (!std::isfinite(chord_length) || !std::isfinite(area) || chord_length <= 0.0 || area < 0.0 ||
      !(tol > 0.0)) {
    throw DomainError("sagitta_for_area: need chord > 0, area >= 0, tol > 0");
  }
  if (area == 0.0) return 0.0;
  const double h_cap = cfg.max_sagitta_ratio * 0.5 * chord_length;
  const double a_cap = segment_area(chord_length, h_cap);
  if (area > a_cap + tol) {
    throw CapacityError("requested segment area exceeds the sagitta cap", a_cap);
  }
  if (area >= a_cap) return h_cap;
  double lo = 0.0;
  double hi = h_cap;
  double best = hi;
  double best_err = std::abs(a_cap - area);
  for (int i = 0; i < cfg.max_bisection_iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double got = segment_area(chord_length, mid);
    const double err = std::abs(got - area);
    if (err < best_err) {
      best = mid;
      best_err = err;
    }
    if (err <= tol) return mid;
    (got < area ? lo : hi) = mid;
  }
  return best;
}

double face_area_with_arcs(const SimplePolygon& polygon, std::span<const double> bends) {
  if (auto problem = polygon_problem(polygon, 0.0)) {
    throw DomainError("face_area_with_arcs: invalid polygon: " + *problem);
  }
  if (bends.size() != polygon.size()) {
    throw DomainError("face_area_with_arcs: one bend per edge required");
  }
  double area = signed_area(polygon);
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const double s = bends[i];
    if (s == 0.0) continue;
    const double seg = segment_area(distance(polygon.edge_start(i), polygon.edge_end(i)), std::abs(s));
    area += s > 0 ? -seg : seg;
  }
  return area;
}

// --- predicates --------------------------------------------------------------

std::vector<double> arc_segment_hits(const ArcShape& arc, Point c, Point d, double eps) {
  std::vector<double> out;
  const double seg_len = distance(c, d);
  if (seg_len == 0.0) return out;
  const double arc_slack = slack_for(arc, eps);
  const double seg_slack = eps / seg_len;
  auto on_segment = [&](Point p) {
    const double u = dot(p - c, d - c) / (seg_len * seg_len);
    return u >= -seg_slack && u <= 1.0 + seg_slack;
  };
  std::vector<Hit> hits;
  if (arc.straight) {
    bool overlap = false;
    ArcShape seg;
    seg.a = c;
    seg.b = d;
    hits = line_line_hits(arc, seg, eps, overlap);
    if (overlap) {
      for (Point p : {c, d}) {
        if (auto t = arc.param_of(p, arc_slack)) out.push_back(std::clamp(*t, 0.0, 1.0));
      }
      for (Point p : {arc.a, arc.b}) {
        if (on_segment(p)) out.push_back(p == arc.a ? 0.0 : 1.0);
      }
      return out;
    }
  } else {
    hits = circle_line_hits(arc, c, d, eps);
  }
  for (const Hit& h : hits) {
    if (!on_segment(h.p)) continue;
    if (auto t = arc.param_of(h.p, arc_slack)) out.push_back(std::clamp(*t, 0.0, 1.0));
  }
  return out;
}

bool arcs_intersect(const ChordArc& u, const ChordArc& v, double eps) {
  const ArcShape su = shape_of(u);
  const ArcShape sv = shape_of(v);
  std::vector<Point> shared;
  for (Point p : {u.a, u.b}) {
    for (Point q : {v.a, v.b}) {
      if (distance(p, q) <= eps) shared.push_back(p);
    }
  }
  const double exclusion = std::max(eps, 1e-6 * (u.chord_length() + v.chord_length()));
  auto near_shared = [&](Point p) {
    return std::any_of(shared.begin(), shared.end(),
                       [&](Point s) { return distance(p, s) <= exclusion; });
  };
  const double slack_u = slack_for(su, eps);
  const double slack_v = slack_for(sv, eps);
  auto interior_of = [&](const ArcShape& s, double slack, Point p) {
    auto t = s.param_of(p, -slack);
    return t.has_value();
  };

  std::vector<Hit> hits;
  if (su.straight && sv.straight) {
    bool overlap = false;
    hits = line_line_hits(su, sv, eps, overlap);
    if (overlap) {
      // Collinear: overlap beyond a shared endpoint means a common interior point.
      for (Point p : {sv.a, sv.b, (sv.a + sv.b) * 0.5}) {
        if (interior_of(su, slack_u, p) && !near_shared(p)) return true;
      }
      for (Point p : {su.a, su.b, (su.a + su.b) * 0.5}) {
        if (interior_of(sv, slack_v, p) && !near_shared(p)) return true;
      }
      return false;
    }
  } else if (su.straight || sv.straight) {
    const ArcShape& circ = su.straight ? sv : su;
    const ArcShape& line = su.straight ? su : sv;
    hits = circle_line_hits(circ, line.a, line.b, eps);
  } else {
    bool same = false;
    hits = circle_circle_hits(su, sv, eps, same);
    if (same) {
      for (Point p : {sv.a, sv.b, sv.apex()}) {
        if (interior_of(su, slack_u, p) && !near_shared(p)) return true;
      }
      for (Point p : {su.a, su.b, su.apex()}) {
        if (interior_of(sv, slack_v, p) && !near_shared(p)) return true;
      }
      return false;
    }
  }
  for (const Hit& h : hits) {
    if (h.tangent) continue;
    if (near_shared(h.p)) continue;
    if (su.param_of(h.p, slack_u) && sv.param_of(h.p, slack_v)) return true;
  }
  return false;
}

bool arc_in_polygon(const ChordArc& arc, const SimplePolygon& region, double eps) {
  const ArcShape s = shape_of(arc);
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t i = 0; i < region.size(); ++i) {
    for (double t : arc_segment_hits(s, region.edge_start(i), region.edge_end(i), eps)) {
      ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  if (!point_in_polygon(s.apex(), region, eps)) return false;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] - ts[k] <= 1e-15) continue;
    if (!point_in_polygon(s.at(0.5 * (ts[k] + ts[k + 1])), region, eps)) return false;
  }
  return true;
}

Circle circumcircle(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = dot(ab, ab) + dot(ac, ac);
  if (std::abs(d) <= 1e-14 * scale) throw DomainError("circumcircle: collinear points");
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point rel{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + rel, norm(rel)};
}

}  // namespace arcgram
