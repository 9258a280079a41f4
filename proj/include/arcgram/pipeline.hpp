#pragma once

#include <optional>
#include <vector>

#include "arcgram/bend.hpp"
#include "arcgram/flow.hpp"
#include "arcgram/metrics.hpp"
#include "arcgram/skeleton.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram {

struct PipelineOptions {
  Mode mode = Mode::weak;
  GeomConfig geom;
  bool merge_degree2 = false;
  bool sea_slack = false;
  /// Zero weights are legal (gadget instances); such faces report absolute error.
  bool allow_zero_targets = false;
};

struct PipelineResult {
  Subdivision map;
  WeightTargets targets;
  DualGraph dual;
  CapacityTable capacities;
  FlowNetwork network;
  FlowSolution flow;
  TransferPlan plan;
  BendingConfiguration bends;
  CartogramReport report;
  std::vector<Violation> violations;
};

/// build -> skeleton -> flow -> bend -> metrics. Weights default to the
/// faces' own weights.
PipelineResult run_pipeline(Subdivision map, const PipelineOptions& opt,
                            std::optional<std::vector<std::optional<double>>> weights = std::nullopt);

}  // namespace arcgram
