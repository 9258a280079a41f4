#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "arcgram/bend.hpp"
#include "arcgram/pipeline.hpp"
#include "support.hpp"

using namespace arcgram;

namespace {

Subdivision two_squares(double w0 = 1, double w1 = 1) {
  std::vector<PolygonInput> polys{{"west", testing::rect(0, 0, 2, 2), w0, false},
                                  {"east", testing::rect(2, 0, 4, 2), w1, false}};
  return build_from_polygons(polys);
}

int shared_half_edge(const Subdivision& s, int from_face, int to_face) {
  for (int h = 0; h < static_cast<int>(s.half_edges().size()); ++h) {
    if (s.half_edge(h).face == from_face && s.half_edge(s.half_edge(h).twin).face == to_face) return h;
  }
  return -1;
}

// Monte-Carlo area of face f under the configuration: a sample lies in f if it
// is inside the straight polygon and not cut off by an inward bulge, or inside
// an outward bulge from a neighbour.
double sampled_area(const Subdivision& s, const BendingConfiguration& cfg, int f, std::mt19937_64& rng,
                    int samples) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (Point p : s.vertices()) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  x0 -= 1; y0 -= 1; x1 += 1; y1 += 1;
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  const auto poly = s.polygon(f);
  const auto cycle = s.boundary(f);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const Point p{ux(rng), uy(rng)};
    bool in = point_in_polygon(p, poly, 0.0);
    for (int h : cycle) {
      const double hh = cfg.sagitta[static_cast<std::size_t>(h)];
      if (hh == 0) continue;
      const ArcShape sh = shape_of(cfg.arc(s, h));
      // Inside the circular segment: inside the circle and on the bulge side of the chord.
      const double side = cross(s.to(h) - s.from(h), p - s.from(h));
      const bool in_disc = distance(p, sh.center) <= sh.radius;
      const bool in_segment = hh > 0 ? (side > 0 && in_disc) : (side < 0 && in_disc);
      if (in_segment) in = hh < 0;
    }
    hits += in;
  }
  return hits * (x1 - x0) * (y1 - y0) / samples;
}

}  // namespace

TEST_CASE("zero transfer leaves the map straight") {
  auto s = two_squares();
  auto g = dual_graph(s);
  std::vector<double> d{0, 0};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  auto cfg = realize(s, g, {}, caps);
  for (double h : cfg.sagitta) CHECK(h == 0.0);
  CHECK(cfg.area[0] == doctest::Approx(4.0));
  CHECK(cfg.area[1] == doctest::Approx(4.0));
}

TEST_CASE("single shared edge moves exactly the transfer") {
  auto s = two_squares();
  auto g = dual_graph(s);
  std::vector<double> d{-0.5, 0.5};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  const int e = *g.find(0, 1);
  TransferPlan plan{{{0, 1, 0.5, e}}};
  auto cfg = realize(s, g, plan, caps);
  CHECK(cfg.area[0] == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(cfg.area[1] == doctest::Approx(4.5).epsilon(1e-12));
  const int h = shared_half_edge(s, 0, 1);
  CHECK(cfg.sagitta[h] > 0);
  CHECK(cfg.sagitta[s.half_edge(h).twin] == -cfg.sagitta[h]);
  CHECK(verify(s, cfg, true, d, caps).empty());
}

TEST_CASE("transfer above capacity is an internal error") {
  auto s = two_squares();
  auto g = dual_graph(s);
  std::vector<double> d{-3, 3};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  const int e = *g.find(0, 1);
  TransferPlan plan{{{0, 1, caps.edges[e].total * 2, e}}};
  CHECK_THROWS_AS(realize(s, g, plan, caps), ConfigurationError);
}

TEST_CASE("proportional split over two shared edges") {
  // Face 0 is a 3x2 block; face 1 wraps it with an L so they share a long and a short edge.
  std::vector<PolygonInput> polys{
      {"a", testing::rect(0, 0, 3, 2), 1.0, false},
      {"b", {{3, 0}, {4, 0}, {4, 3}, {0, 3}, {0, 2}, {3, 2}}, 1.0, false}};
  auto s = build_from_polygons(polys);
  auto g = dual_graph(s);
  std::vector<double> d{-0.1, 0.1};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  const int e = *g.find(0, 1);
  const auto& c = caps.edges[e];
  REQUIRE(c.half_edges.size() == 2);
  const double amount = 0.5 * c.total;
  auto cfg = realize(s, g, {{{0, 1, amount, e}}}, caps);
  for (std::size_t k = 0; k < 2; ++k) {
    const int h = c.half_edges[k];
    const double got = segment_area(s.length(h), cfg.sagitta[h]);
    CHECK(got == doctest::Approx(0.5 * c.capacity[k]).epsilon(1e-10));
  }
  CHECK(cfg.area[0] == doctest::Approx(6 - amount).epsilon(1e-10));
}

TEST_CASE("oversized sagitta is reported") {
  auto s = two_squares();
  auto g = dual_graph(s);
  std::vector<double> d{0, 0};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  auto cfg = straight_configuration(s);
  const int h = shared_half_edge(s, 0, 1);
  cfg.sagitta[h] = 0.9;
  cfg.sagitta[s.half_edge(h).twin] = -0.9;
  auto v = verify(s, cfg, false, d, caps);
  REQUIRE(!v.empty());
  CHECK(v[0].rule == "containment");
}

TEST_CASE("weak routing through a growing face breaks strong rules") {
  // Chain a - b - c with deltas (+, +, -); a can only be fed through b.
  std::vector<PolygonInput> polys{{"a", testing::rect(0, 0, 2, 2), 1.0, false},
                                  {"b", testing::rect(2, 0, 4, 2), 1.0, false},
                                  {"c", testing::rect(4, 0, 6, 2), 1.0, false},
                                  {"sea", {{-1, -1}, {7, -1}, {7, 3}, {-1, 3}, {-1, 2.5}, {6.5, 2.5}, {6.5, -0.5}, {-0.5, -0.5}, {-0.5, 2.5}, {-1, 2.5}}, std::nullopt, true}};
  (void)polys;
  // Without an explicit sea the exterior would give a path, so remove it by
  // zero-capacity: use three faces and check with the sea ignored.
  std::vector<PolygonInput> chain{polys[0], polys[1], polys[2]};
  auto s = build_from_polygons(chain);
  auto g = dual_graph(s);
  std::vector<double> d{0.05, 0.05, -0.1};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  // Hand-made weak plan: c -> b -> a.
  TransferPlan plan{{{2, 1, 0.1, *g.find(2, 1)}, {1, 0, 0.05, *g.find(1, 0)}}};
  auto cfg = realize(s, g, plan, caps);
  CHECK(verify(s, cfg, false, d, caps).empty());
  auto strong = verify(s, cfg, true, d, caps);
  REQUIRE(!strong.empty());
  bool same_sign = false;
  for (const auto& v : strong) same_sign |= v.message.find("same-sign") != std::string::npos;
  CHECK(same_sign);
}

TEST_CASE("resulting areas match point sampling") {
  auto s = build_from_polygons(testing::grid_map(3, 3));
  auto g = dual_graph(s);
  std::vector<double> d(9, 0.0);
  auto caps = edge_capacities(s, g, Mode::weak, d);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto cfg = straight_configuration(s);
  for (int h : s.edges()) {
    const int f = s.half_edge(h).face;
    const int other = s.half_edge(s.half_edge(h).twin).face;
    if (f == s.exterior() || other == s.exterior()) continue;
    const double hh = u(rng) * caps.half_edge_limit[h];
    cfg.sagitta[h] = hh;
    cfg.sagitta[s.half_edge(h).twin] = -hh;
  }
  auto b = resulting_areas(s, cfg);
  for (int f = 0; f < 9; ++f) {
    CHECK(sampled_area(s, cfg, f, rng, 400000) == doctest::Approx(b[f]).epsilon(2e-2));
  }
  double total = 0;
  for (double x : b) total += x;
  CHECK(total == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("pipeline: feasible targets are met exactly") {
  auto s = two_squares();
  auto g = dual_graph(s);
  std::vector<double> d{0, 0};
  auto caps = edge_capacities(s, g, Mode::weak, d);
  const double A = 0.5 * caps.edges[*g.find(0, 1)].total;
  auto r = run_pipeline(two_squares(4 - A, 4 + A), {});
  CHECK(r.flow.value == doctest::Approx(A).epsilon(1e-12));
  for (const auto& row : r.report.faces) {
    CHECK(row.cartographic_error <= 1e-9);
    REQUIRE(row.success_rate);
    CHECK(*row.success_rate == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(r.violations.empty());
}

TEST_CASE("pipeline: error identity and conservation on grids") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 1 + trial % 4, cols = 2 + trial % 3;
    auto polys = testing::grid_map(rows, cols);
    for (auto& p : polys) p.weight = w(rng);
    for (Mode mode : {Mode::weak, Mode::strong}) {
      PipelineOptions opt;
      opt.mode = mode;
      auto r = run_pipeline(build_from_polygons(polys), opt);
      CAPTURE(trial);
      const double lhs = r.report.summary.total_error;
      const double rhs = 2 * (r.network.demand - r.flow.value);
      CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, lhs));
      CHECK(r.violations.empty());
      for (const auto& v : r.violations) MESSAGE(v.entity << " " << v.rule << " " << v.message);
      auto change = node_area_changes(r.map, r.bends);
      double sum = 0;
      for (double c : change) sum += c;
      CHECK(std::abs(sum) <= 1e-12);
      for (int f = 0; f < r.map.face_count(); ++f) {
        CHECK(r.bends.area[f] - r.map.face(f).area == doctest::Approx(change[f]).epsilon(1e-9));
      }
    }
  }
}
