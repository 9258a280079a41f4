#include "arcgram/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace arcgram {

FlowNetwork build_network(const Subdivision& s, const DualGraph& g, const std::vector<double>& deltas,
                          const CapacityTable& caps, bool sea_slack) {
  FlowNetwork n;
  n.node_count = g.node_count + 2;
  n.source = g.node_count;
  n.sink = g.node_count + 1;
  n.sea = g.sea;
  n.sea_slack = sea_slack;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const double c = caps.edges.at(e).total;
    if (!(c >= 0) || !std::isfinite(c)) throw ConfigurationError("invalid capacity on dual edge");
    n.arcs.push_back({g.edges[e].from, g.edges[e].to, c, ArcKind::dual, static_cast<int>(e)});
  }
  for (int f = 0; f < s.face_count(); ++f) {
    if (s.is_sea_node(f)) continue;
    const double d = deltas.at(static_cast<std::size_t>(f));
    if (d < 0) {
      n.arcs.push_back({n.source, f, -d, ArcKind::supply, -1});
      n.supply += -d;
    } else if (d > 0) {
      n.arcs.push_back({f, n.sink, d, ArcKind::demand, -1});
      n.demand += d;
    }
  }
  const double scale = std::max({1.0, n.demand, n.supply});
  if (std::abs(n.demand - n.supply) > 1e-9 * scale) {
    throw ConfigurationError("supply " + std::to_string(n.supply) + " does not match demand " +
                             std::to_string(n.demand));
  }
  return n;
}

namespace {

constexpr double kResidualEps = 1e-12;

class Dinic {
 public:
  explicit Dinic(const FlowNetwork& n) : adj_(static_cast<std::size_t>(n.node_count)) {
    for (const FlowArc& a : n.arcs) {
      add(a.from, a.to, a.capacity);
    }
  }

  double run(int s, int t, int blocked) {
    double total = 0.0;
    while (bfs(s, t, blocked)) {
      it_.assign(adj_.size(), 0);
      while (true) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kResidualEps) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Net flow on original arc k.
  double flow(std::size_t k) const {
    const Edge& e = edges_[2 * k];
    return std::max(0.0, e.cap0 - e.cap);
  }

 private:
  struct Edge {
    int to;
    double cap;
    double cap0;
  };

  void add(int u, int v, double c) {
    adj_[static_cast<std::size_t>(u)].push_back(edges_.size());
    edges_.push_back({v, c, c});
    adj_[static_cast<std::size_t>(v)].push_back(edges_.size());
    edges_.push_back({u, 0.0, 0.0});
  }

  bool bfs(int s, int t, int blocked) {
    level_.assign(adj_.size(), -1);
    level_[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (std::size_t id : adj_[static_cast<std::size_t>(u)]) {
        const Edge& e = edges_[id];
        if (e.cap > kResidualEps && e.to != blocked && level_[static_cast<std::size_t>(e.to)] < 0) {
          level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  double dfs(int u, int t, double limit) {
    if (u == t) return limit;
    auto& list = adj_[static_cast<std::size_t>(u)];
    for (std::size_t& i = it_[static_cast<std::size_t>(u)]; i < list.size(); ++i) {
      const std::size_t id = list[i];
      Edge& e = edges_[id];
      if (e.cap <= kResidualEps ||
          level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1) {
        continue;
      }
      const double got = dfs(e.to, t, std::min(limit, e.cap));
      if (got > kResidualEps) {
        e.cap -= got;
        edges_[id ^ 1].cap += got;
        return got;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace

FlowSolution max_flow(const FlowNetwork& n) {
  Dinic d(n);
  FlowSolution sol;
  sol.value = d.run(n.source, n.sink, -1);
  if (n.sea_slack && n.sea >= 0) {
    sol.from_sea = d.run(n.sea, n.sink, n.source);
    sol.into_sea = d.run(n.source, n.sea, n.sink);
    sol.value += sol.from_sea;
  }
  for (std::size_t k = 0; k < n.arcs.size(); ++k) sol.flow.push_back(d.flow(k));
  return sol;
}

TransferPlan extract_transfers(const FlowNetwork& n, const FlowSolution& sol, double eps) {
  std::map<std::pair<int, int>, std::pair<double, int>> directed;
  for (std::size_t k = 0; k < n.arcs.size(); ++k) {
    const FlowArc& a = n.arcs[k];
    if (a.kind != ArcKind::dual) continue;
    auto& slot = directed[{a.from, a.to}];
    slot.first += sol.flow[k];
    slot.second = a.dual_edge;
  }
  TransferPlan plan;
  for (const auto& [key, val] : directed) {
    const auto [u, v] = key;
    if (u > v && directed.count({v, u})) continue;  // handled from the other side
    double net = val.first;
    int edge = val.second;
    int from = u;
    int to = v;
    if (auto it = directed.find({v, u}); it != directed.end()) {
      net -= it->second.first;
      if (net < 0) {
        net = -net;
        edge = it->second.second;
        std::swap(from, to);
      }
    }
    if (net > eps) plan.transfers.push_back({from, to, net, edge});
  }
  return plan;
}

}  // namespace arcgram
