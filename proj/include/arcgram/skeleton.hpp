#pragma once

#include <stdexcept>
#include <vector>

#include "arcgram/geometry.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram {

class SkeletonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Segment {
  Point a;
  Point b;
};

/// Straight skeleton of one simple polygon: region i belongs to edge i
/// (vertex i to i+1) and starts with that edge.
struct SkeletonRegionSet {
  SimplePolygon polygon;
  std::vector<SimplePolygon> regions;
  std::vector<Segment> ridges;
};

/// Wavefront simulation with edge and split events.
SkeletonRegionSet straight_skeleton(const SimplePolygon& polygon);

/// Largest sagitta (up to the configured cap) of an arc on chord a->b,
/// bulging left into `region`, that stays inside the region.
double max_sagitta(Point a, Point b, const SimplePolygon& region, const GeomConfig& cfg = {});

/// Bending limit for an arc bulging from the map into the unbounded
/// exterior along exterior half-edge `h`.
double sea_max_sagitta(const Subdivision& s, int h, const GeomConfig& cfg = {});

enum class Mode { weak, strong };

struct EdgeCapacity {
  int from = -1;
  int to = -1;
  std::vector<int> half_edges;
  std::vector<double> max_sagitta;
  std::vector<double> capacity;
  double total = 0.0;
};

struct CapacityTable {
  /// Parallel to DualGraph::edges.
  std::vector<EdgeCapacity> edges;
  /// Per half-edge: bending limit when bulging into its own face.
  std::vector<double> half_edge_limit;
  /// Per bounded face.
  std::vector<SkeletonRegionSet> skeletons;
};

/// `deltas` holds one desired change per bounded face.
CapacityTable edge_capacities(const Subdivision& s, const DualGraph& g, Mode mode,
                              const std::vector<double>& deltas, const GeomConfig& cfg = {});

/// Strong-mode admissibility of area moving from node u to node v.
bool strong_transfer_allowed(const Subdivision& s, int u, int v, const std::vector<double>& deltas);

}  // namespace arcgram
