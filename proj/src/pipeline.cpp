#include "arcgram/pipeline.hpp"

namespace arcgram {

PipelineResult run_pipeline(Subdivision map, const PipelineOptions& opt,
                            std::optional<std::vector<std::optional<double>>> weights) {
  PipelineResult r;
  if (opt.merge_degree2) {
    const auto original = face_weights(map);
    map = merge_degree2_vertices(map, opt.geom.geom_eps);
    if (!weights) weights = original;
  }
  r.map = std::move(map);
  const auto w = weights ? *weights : face_weights(r.map);
  r.targets = normalize_weights(r.map, w, opt.allow_zero_targets);
  r.dual = dual_graph(r.map);
  r.capacities = edge_capacities(r.map, r.dual, opt.mode, r.targets.delta, opt.geom);
  r.network = build_network(r.map, r.dual, r.targets.delta, r.capacities, opt.sea_slack);
  r.flow = max_flow(r.network);
  r.plan = extract_transfers(r.network, r.flow);
  r.bends = realize(r.map, r.dual, r.plan, r.capacities, opt.geom);
  r.violations = verify(r.map, r.bends, opt.mode == Mode::strong, r.targets.delta, r.capacities,
                        opt.geom.geom_eps);

  for (int f = 0; f < r.map.face_count(); ++f) {
    if (r.map.is_sea_node(f)) continue;
    FaceRow row;
    row.name = r.map.face(f).name;
    row.initial = r.map.face(f).area;
    row.target = r.targets.target[static_cast<std::size_t>(f)];
    row.result = r.bends.area[static_cast<std::size_t>(f)];
    row.delta = r.targets.delta[static_cast<std::size_t>(f)];
    const FaceMetrics m = face_metrics(row.initial, row.target, row.result, opt.allow_zero_targets);
    row.success_rate = m.success_rate;
    row.cartographic_error = m.cartographic_error;
    r.report.faces.push_back(row);
  }
  r.report.summary = summarize(r.report.faces);
  r.report.summary.flow_value = r.flow.value;
  r.report.summary.demand = r.network.demand;
  return r;
}

}  // namespace arcgram
