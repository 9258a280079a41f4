#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arcgram/geometry.hpp"

namespace arcgram {

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HalfEdge {
  int origin = -1;
  int twin = -1;
  int next = -1;
  int face = -1;
};

struct Face {
  std::string name;
  int boundary = -1;  // any half-edge of the boundary cycle
  double area = 0.0;
  std::optional<double> weight;
};

/// One input region for build_from_polygons.
struct PolygonInput {
  std::string name;
  std::vector<Point> ring;
  std::optional<double> weight;
  bool sea = false;
};

/// Half-edge planar map. Bounded faces are 0..n-1; face id n is the
/// unbounded exterior. The sea node is either the exterior or one bounded
/// face without a weight; in the latter case the exterior is folded into it.
class Subdivision {
 public:
  Subdivision() = default;
  /// Assemble from raw parts without checks (see validate()).
  static Subdivision from_parts(std::vector<Point> vertices, std::vector<HalfEdge> half_edges,
                                std::vector<Face> faces, std::optional<int> explicit_sea);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  const HalfEdge& half_edge(int h) const { return half_edges_.at(static_cast<std::size_t>(h)); }
  const Face& face(int f) const { return faces_.at(static_cast<std::size_t>(f)); }

  int face_count() const { return static_cast<int>(faces_.size()); }
  int exterior() const { return face_count(); }
  std::optional<int> explicit_sea() const { return explicit_sea_; }
  /// Dual node id of the sea.
  int sea_node() const { return explicit_sea_ ? *explicit_sea_ : exterior(); }
  int node_count() const { return face_count() + (explicit_sea_ ? 0 : 1); }
  int node_of(int face) const { return face == exterior() ? sea_node() : face; }
  bool is_sea_node(int node) const { return node == sea_node(); }

  int destination(int h) const { return half_edge(half_edge(h).next).origin; }
  Point from(int h) const { return vertices_[static_cast<std::size_t>(half_edge(h).origin)]; }
  Point to(int h) const { return vertices_[static_cast<std::size_t>(destination(h))]; }
  double length(int h) const { return distance(from(h), to(h)); }

  /// Boundary cycle of a face, starting at face.boundary. Throws
  /// TopologyError if the cycle does not close.
  std::vector<int> boundary(int face) const;
  SimplePolygon polygon(int face) const;
  /// Undirected edges, each given by its canonical half-edge: the one whose
  /// face id is lower (ties by half-edge id).
  std::vector<int> edges() const;
  int canonical(int h) const;
  int component_count() const;
  std::vector<PolygonInput> to_polygons() const;

 private:
  std::vector<Point> vertices_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Face> faces_;
  std::optional<int> explicit_sea_;
};

/// Snaps, inserts T-junction vertices, pairs shared borders as twins and
/// closes the exterior. snap_eps <= 0 selects 1e-6 of the bounding-box
/// diagonal.
Subdivision build_from_polygons(const std::vector<PolygonInput>& polygons, double snap_eps = 0.0);

/// Counterclockwise rings of bounded regions that no input polygon covers.
std::vector<std::vector<Point>> enclosed_gaps(const std::vector<PolygonInput>& polygons, double snap_eps = 0.0);

double default_snap_eps(const std::vector<PolygonInput>& polygons);

struct Violation {
  std::string entity;
  std::string rule;
  std::string message;
};

std::vector<Violation> validate(const Subdivision& s, double eps = 1e-9);

struct WeightTargets {
  /// Per bounded face; NaN for the sea face.
  std::vector<double> target;
  std::vector<double> delta;
};

/// Rescales weights so the targets sum to the total non-sea area.
/// `raw` has one entry per bounded face; the sea entry must be empty.
WeightTargets normalize_weights(const Subdivision& s, std::span<const std::optional<double>> raw,
                                bool allow_zero = false);
std::vector<std::optional<double>> face_weights(const Subdivision& s);

struct DualEdge {
  int from = -1;
  int to = -1;
  /// Half-edges with face(from) on their left and face(to) on the right.
  std::vector<int> half_edges;
};

struct DualGraph {
  int node_count = 0;
  int sea = -1;
  std::vector<DualEdge> edges;
  std::map<std::pair<int, int>, int> index;

  std::optional<int> find(int from, int to) const {
    auto it = index.find({from, to});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

DualGraph dual_graph(const Subdivision& s);

/// Removes degree-2 vertices whose removal keeps every face a simple polygon
/// and introduces no crossing. Face areas change accordingly.
Subdivision merge_degree2_vertices(const Subdivision& s, double eps = 1e-9);

}  // namespace arcgram
