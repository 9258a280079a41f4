#pragma once

#include <vector>

#include "arcgram/flow.hpp"
#include "arcgram/skeleton.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram {

/// Signed sagitta per half-edge in ChordArc convention: positive bulges into
/// the half-edge's own face. Twins always hold negated values, so each
/// undirected edge carries one arc.
struct BendingConfiguration {
  std::vector<double> sagitta;
  /// Resulting area per bounded face.
  std::vector<double> area;

  /// Sagitta relative to the canonical half-edge of the edge.
  double edge_sagitta(const Subdivision& s, int h) const {
    return sagitta.at(static_cast<std::size_t>(s.canonical(h)));
  }
  ChordArc arc(const Subdivision& s, int h) const {
    return {s.from(h), s.to(h), sagitta.at(static_cast<std::size_t>(h))};
  }
};

BendingConfiguration straight_configuration(const Subdivision& s);

/// Splits each transfer over the shared edges in proportion to their
/// capacities and bends every edge into the losing face.
BendingConfiguration realize(const Subdivision& s, const DualGraph& g, const TransferPlan& plan,
                             const CapacityTable& caps, const GeomConfig& cfg = {});

/// b_i for every bounded face, from the configuration's sagittas.
std::vector<double> resulting_areas(const Subdivision& s, const BendingConfiguration& cfg);

/// Area change of every dual node (sea included) implied by the bends.
std::vector<double> node_area_changes(const Subdivision& s, const BendingConfiguration& cfg);

/// Crossing and containment checks, plus the strong-mode rules when
/// `strong` is set. `deltas` has one entry per bounded face.
std::vector<Violation> verify(const Subdivision& s, const BendingConfiguration& cfg, bool strong,
                              const std::vector<double>& deltas, const CapacityTable& caps,
                              double eps = 1e-9);

}  // namespace arcgram
