#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "arcgram/flow.hpp"
#include "support.hpp"

using namespace arcgram;

namespace {

FlowNetwork raw_network(int faces, const std::vector<FlowArc>& arcs) {
  FlowNetwork n;
  n.node_count = faces + 2;
  n.source = faces;
  n.sink = faces + 1;
  n.arcs = arcs;
  for (const auto& a : arcs) {
    if (a.kind == ArcKind::supply) n.supply += a.capacity;
    if (a.kind == ArcKind::demand) n.demand += a.capacity;
  }
  return n;
}

// Minimum s-t cut by enumerating every side assignment of the inner nodes.
double brute_force_min_cut(const FlowNetwork& n) {
  std::vector<int> inner;
  for (int v = 0; v < n.node_count; ++v) {
    if (v != n.source && v != n.sink) inner.push_back(v);
  }
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << inner.size()); ++mask) {
    std::vector<bool> source_side(static_cast<std::size_t>(n.node_count), false);
    source_side[static_cast<std::size_t>(n.source)] = true;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      if (mask & (1u << k)) source_side[static_cast<std::size_t>(inner[k])] = true;
    }
    double cut = 0;
    for (const auto& a : n.arcs) {
      if (source_side[static_cast<std::size_t>(a.from)] && !source_side[static_cast<std::size_t>(a.to)]) {
        cut += a.capacity;
      }
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace

TEST_CASE("single supply and demand") {
  auto n = raw_network(2, {{2, 0, 1, ArcKind::supply, -1}, {1, 3, 1, ArcKind::demand, -1},
                           {0, 1, 5, ArcKind::dual, 0}});
  CHECK(max_flow(n).value == doctest::Approx(1.0));
  n.arcs[2].capacity = 0.3;
  CHECK(max_flow(n).value == doctest::Approx(0.3));
}

TEST_CASE("antiparallel flow cancels") {
  auto n = raw_network(2, {{0, 1, 1, ArcKind::dual, 0}, {1, 0, 1, ArcKind::dual, 1}});
  FlowSolution sol;
  sol.flow = {0.4, 0.1};
  auto plan = extract_transfers(n, sol);
  REQUIRE(plan.transfers.size() == 1);
  CHECK(plan.transfers[0].from == 0);
  CHECK(plan.transfers[0].to == 1);
  CHECK(plan.transfers[0].dual_edge == 0);
  CHECK(plan.transfers[0].amount == doctest::Approx(0.3));
  sol.flow = {0.0, 0.0};
  CHECK(extract_transfers(n, sol).transfers.empty());
}

TEST_CASE("chain through a middle face") {
  auto n = raw_network(3, {{3, 0, 1, ArcKind::supply, -1}, {2, 4, 1, ArcKind::demand, -1},
                           {0, 1, 2, ArcKind::dual, 0}, {1, 2, 2, ArcKind::dual, 1}});
  auto sol = max_flow(n);
  auto plan = extract_transfers(n, sol);
  REQUIRE(plan.transfers.size() == 2);
  double middle = 0;
  for (const auto& t : plan.transfers) {
    CHECK(t.amount == doctest::Approx(1.0));
    if (t.to == 1) middle += t.amount;
    if (t.from == 1) middle -= t.amount;
  }
  CHECK(middle == doctest::Approx(0.0));
}

TEST_CASE("build_network on a grid") {
  auto s = build_from_polygons(testing::grid_map(3, 3));
  auto g = dual_graph(s);
  SUBCASE("checkerboard deltas") {
    std::vector<double> d(9);
    int pos = 0;
    for (int i = 0; i < 9; ++i) d[i] = (i % 2 == 0) ? 0.1 * 4 / 5 : -0.1;
    // 5 growers share what 4 shrinkers give.
    for (double x : d) pos += x > 0;
    auto caps = edge_capacities(s, g, Mode::weak, d);
    auto n = build_network(s, g, d, caps);
    CHECK(pos == 5);
    CHECK(n.demand == doctest::Approx(0.4));
    int supplies = 0, demands = 0;
    for (const auto& a : n.arcs) {
      supplies += a.kind == ArcKind::supply;
      demands += a.kind == ArcKind::demand;
    }
    CHECK(supplies == 4);
    CHECK(demands == 5);
  }
  SUBCASE("zero deltas") {
    std::vector<double> d(9, 0.0);
    auto caps = edge_capacities(s, g, Mode::weak, d);
    auto n = build_network(s, g, d, caps);
    CHECK(n.demand == 0.0);
    CHECK(max_flow(n).value == 0.0);
  }
  SUBCASE("unbalanced deltas are rejected") {
    std::vector<double> d(9, 0.0);
    d[0] = 0.5;
    auto caps = edge_capacities(s, g, Mode::weak, d);
    CHECK_THROWS_AS(build_network(s, g, d, caps), ConfigurationError);
  }
}

TEST_CASE("max flow equals brute-force min cut") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cap(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int faces = 3 + trial % 8;
    std::vector<FlowArc> arcs;
    // Planar core: a path plus random chords of a triangulated fan.
    for (int i = 0; i + 1 < faces; ++i) {
      arcs.push_back({i, i + 1, cap(rng), ArcKind::dual, -1});
      arcs.push_back({i + 1, i, cap(rng), ArcKind::dual, -1});
    }
    for (int i = 2; i < faces; ++i) {
      if (rng() % 2) {
        arcs.push_back({0, i, cap(rng), ArcKind::dual, -1});
        arcs.push_back({i, 0, cap(rng), ArcKind::dual, -1});
      }
    }
    for (int i = 0; i < faces; ++i) {
      if (rng() % 2) {
        arcs.push_back({faces, i, cap(rng), ArcKind::supply, -1});
      } else {
        arcs.push_back({i, faces + 1, cap(rng), ArcKind::demand, -1});
      }
    }
    auto n = raw_network(faces, arcs);
    CAPTURE(trial);
    CHECK(std::abs(max_flow(n).value - brute_force_min_cut(n)) <= 1e-9);
  }
}
