#pragma once

#include <stdexcept>
#include <vector>

#include "arcgram/skeleton.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram {

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ArcKind { dual, supply, demand };

struct FlowArc {
  int from = -1;
  int to = -1;
  double capacity = 0.0;
  ArcKind kind = ArcKind::dual;
  /// Index into DualGraph::edges for dual arcs, -1 otherwise.
  int dual_edge = -1;
};

/// Dual nodes keep their ids; the super source and super sink follow. A
/// supply arc source->i carries -delta_i, a demand arc i->sink carries delta_i.
struct FlowNetwork {
  int node_count = 0;
  int source = -1;
  int sink = -1;
  int sea = -1;
  std::vector<FlowArc> arcs;
  double demand = 0.0;  // D
  double supply = 0.0;
  bool sea_slack = false;
};

/// `deltas` has one entry per bounded face; the sea entry is ignored.
FlowNetwork build_network(const Subdivision& s, const DualGraph& g, const std::vector<double>& deltas,
                          const CapacityTable& caps, bool sea_slack = false);

struct FlowSolution {
  std::vector<double> flow;  // parallel to FlowNetwork::arcs
  double value = 0.0;        // total flow into the sink
  double from_sea = 0.0;     // sea-slack only: area handed out by the sea
  double into_sea = 0.0;     // sea-slack only: area absorbed by the sea
};

/// Dinic blocking flows on real capacities. With sea_slack a second phase
/// routes leftover demand from the sea and leftover supply into it.
FlowSolution max_flow(const FlowNetwork& n);

struct Transfer {
  int from = -1;
  int to = -1;
  double amount = 0.0;
  int dual_edge = -1;  // the from->to dual edge
};

struct TransferPlan {
  std::vector<Transfer> transfers;
};

/// Cancels antiparallel flow on each dual pair.
TransferPlan extract_transfers(const FlowNetwork& n, const FlowSolution& sol, double eps = 1e-15);

}  // namespace arcgram
