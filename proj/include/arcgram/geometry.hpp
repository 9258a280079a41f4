#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcgram {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
/// Counterclockwise rotation by 90 degrees.
inline Point perp(Point a) { return {-a.y, a.x}; }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a requested segment area exceeds what the sagitta cap allows.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double max_area)
      : std::runtime_error(what), max_area_(max_area) {}
  double max_area() const { return max_area_; }

 private:
  double max_area_;
};

struct GeomConfig {
  double geom_eps = 1e-9;
  /// Maximum sagitta as a multiple of half the chord (1.0 = half-circle).
  double max_sagitta_ratio = 1.0;
  double area_tol = 1e-12;
  int max_bisection_iterations = 200;
};

/// A map edge a->b replaced by a circular arc. Positive sagitta bulges to the
/// left of the directed chord, negative to the right, zero is straight.
struct ChordArc {
  Point a;
  Point b;
  double sagitta = 0.0;

  double chord_length() const { return distance(a, b); }
  bool straight() const { return sagitta == 0.0; }
  ChordArc reversed() const { return {b, a, -sagitta}; }
};

/// Resolved circle geometry of a ChordArc. For straight arcs only the
/// endpoints are meaningful.
struct ArcShape {
  bool straight = true;
  Point a;
  Point b;
  Point center;
  double radius = std::numeric_limits<double>::infinity();
  double start_angle = 0.0;
  /// Signed sweep in radians; negative is clockwise.
  double sweep = 0.0;

  Point at(double t) const;
  /// Parameter in [0, 1] of a point known to lie on the supporting circle
  /// (or line), or nullopt if it is outside the arc span by more than
  /// `slack` (in parameter units).
  std::optional<double> param_of(Point p, double slack = 0.0) const;
  Point apex() const { return at(0.5); }
};

ArcShape shape_of(const ChordArc& arc);

struct SimplePolygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  Point operator[](std::size_t i) const { return vertices[i % vertices.size()]; }
  Point edge_start(std::size_t i) const { return vertices[i]; }
  Point edge_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
};

double signed_area(std::span<const Point> ring);
double signed_area(const SimplePolygon& p);
double perimeter(const SimplePolygon& p);
Point centroid(const SimplePolygon& p);

double point_segment_distance(Point p, Point a, Point b);
double segment_segment_distance(Point a, Point b, Point c, Point d);

/// Proper or touching intersection of closed segments.
bool segments_intersect(Point a, Point b, Point c, Point d, double eps);

/// Boundary counts as inside when within eps.
bool point_in_polygon(Point p, const SimplePolygon& poly, double eps);

/// Empty when valid; otherwise a human readable reason.
std::optional<std::string> polygon_problem(const SimplePolygon& poly, double eps);

// --- circular segments -------------------------------------------------------

/// Area between a chord of length `chord_length` and an arc of height
/// `sagitta` (minor or major segment).
double segment_area(double chord_length, double sagitta);

/// Inverse of segment_area on [0, max_sagitta_ratio * L / 2] by bisection.
double sagitta_for_area(double chord_length, double area, double tol = 1e-12,
                        const GeomConfig& cfg = {});

/// Circle radius of the arc; +infinity for a straight edge.
double arc_radius(double chord_length, double sagitta);

/// Tangent angle between chord and arc at either endpoint, in [0, pi).
double arc_tangent_angle(double chord_length, double sagitta);

/// Shoelace area plus the effect of the bends. `bends[i]` is the signed
/// sagitta of edge i (vertex i to i+1) in ChordArc convention, so for a
/// counterclockwise polygon positive bends bulge inward and remove area.
double face_area_with_arcs(const SimplePolygon& polygon, std::span<const double> bends);

// --- predicates --------------------------------------------------------------

/// Parameters (on `arc`) of points where it meets the closed segment c-d.
/// Tangential contacts are reported once.
std::vector<double> arc_segment_hits(const ArcShape& arc, Point c, Point d, double eps);

/// True iff the arcs share a point other than a common endpoint. Tangential
/// contact (within eps) counts as touching, not intersecting.
bool arcs_intersect(const ChordArc& u, const ChordArc& v, double eps = 1e-9);

/// True iff no point of the arc leaves the closed region.
bool arc_in_polygon(const ChordArc& arc, const SimplePolygon& region, double eps = 1e-9);

struct Circle {
  Point center;
  double radius;
};

/// Circumcircle of a triangle; throws DomainError for collinear input.
Circle circumcircle(Point a, Point b, Point c);

}  // namespace arcgram
