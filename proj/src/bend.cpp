#include "arcgram/bend.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace arcgram {

namespace {

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o, double pad) const {
    return x0 <= o.x1 + pad && o.x0 <= x1 + pad && y0 <= o.y1 + pad && o.y0 <= y1 + pad;
  }
};

Box arc_box(const ChordArc& arc) {
  const double L = arc.chord_length();
  const double h = std::abs(arc.sagitta);
  if (h > 0.5 * L) {
    const ArcShape sh = shape_of(arc);
    return {sh.center.x - sh.radius, sh.center.y - sh.radius, sh.center.x + sh.radius,
            sh.center.y + sh.radius};
  }
  return {std::min(arc.a.x, arc.b.x) - h, std::min(arc.a.y, arc.b.y) - h, std::max(arc.a.x, arc.b.x) + h,
          std::max(arc.a.y, arc.b.y) + h};
}

std::string edge_label(const Subdivision& s, int h) {
  return "edge " + std::to_string(s.half_edge(h).origin) + "-" + std::to_string(s.destination(h));
}

std::string face_label(const Subdivision& s, int f) {
  if (f == s.exterior()) return "exterior";
  const auto& name = s.face(f).name;
  return name.empty() ? "face " + std::to_string(f) : name;
}

}  // namespace

BendingConfiguration straight_configuration(const Subdivision& s) {
  BendingConfiguration out;
  out.sagitta.assign(s.half_edges().size(), 0.0);
  for (const Face& f : s.faces()) out.area.push_back(f.area);
  return out;
}

BendingConfiguration realize(const Subdivision& s, const DualGraph& g, const TransferPlan& plan,
                             const CapacityTable& caps, const GeomConfig& cfg) {
  BendingConfiguration out = straight_configuration(s);
  for (const Transfer& t : plan.transfers) {
    const DualEdge& de = g.edges.at(static_cast<std::size_t>(t.dual_edge));
    const EdgeCapacity& cap = caps.edges.at(static_cast<std::size_t>(t.dual_edge));
    const double tol = 1e-9 * std::max(1.0, cap.total);
    if (t.amount > cap.total + tol) {
      throw ConfigurationError("transfer of " + std::to_string(t.amount) + " exceeds capacity " +
                               std::to_string(cap.total) + " between " + face_label(s, de.from) +
                               " and " + face_label(s, de.to));
    }
    const double share = cap.total > 0 ? std::min(1.0, t.amount / cap.total) : 0.0;
    for (std::size_t k = 0; k < de.half_edges.size(); ++k) {
      const int h = de.half_edges[k];
      const double area = share * cap.capacity[k];
      if (area <= 0) continue;
      const double len = s.length(h);
      double hh = sagitta_for_area(len, std::min(area, segment_area(len, cap.max_sagitta[k])), cfg.area_tol, cfg);
      hh = std::min(hh, cap.max_sagitta[k]);
      out.sagitta[static_cast<std::size_t>(h)] = hh;
      out.sagitta[static_cast<std::size_t>(s.half_edge(h).twin)] = -hh;
    }
  }
  out.area = resulting_areas(s, out);
  return out;
}

std::vector<double> resulting_areas(const Subdivision& s, const BendingConfiguration& cfg) {
  std::vector<double> b;
  for (int f = 0; f < s.face_count(); ++f) {
    const auto cycle = s.boundary(f);
    std::vector<double> bends;
    for (int h : cycle) bends.push_back(cfg.sagitta.at(static_cast<std::size_t>(h)));
    b.push_back(face_area_with_arcs(s.polygon(f), bends));
  }
  return b;
}

std::vector<double> node_area_changes(const Subdivision& s, const BendingConfiguration& cfg) {
  std::vector<double> change(static_cast<std::size_t>(s.node_count()), 0.0);
  for (int h = 0; h < static_cast<int>(s.half_edges().size()); ++h) {
    const double hh = cfg.sagitta[static_cast<std::size_t>(h)];
    if (hh <= 0) continue;
    const double a = segment_area(s.length(h), hh);
    change[static_cast<std::size_t>(s.node_of(s.half_edge(h).face))] -= a;
    change[static_cast<std::size_t>(s.node_of(s.half_edge(s.half_edge(h).twin).face))] += a;
  }
  return change;
}

std::vector<Violation> verify(const Subdivision& s, const BendingConfiguration& cfg, bool strong,
                              const std::vector<double>& deltas, const CapacityTable& caps, double eps) {
  std::vector<Violation> out;
  const auto edges = s.edges();
  std::vector<ChordArc> arcs;
  std::vector<Box> boxes;
  for (int h : edges) {
    arcs.push_back(cfg.arc(s, h));
    boxes.push_back(arc_box(arcs.back()));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (arcs[i].straight() && arcs[j].straight()) continue;
      if (!boxes[i].overlaps(boxes[j], eps)) continue;
      if (arcs_intersect(arcs[i], arcs[j], eps)) {
        out.push_back({edge_label(s, edges[i]), "crossing",
                       "arc crosses " + edge_label(s, edges[j])});
      }
    }
  }

  // Containment: a positive sagitta bulges into the half-edge's own face.
  for (int f = 0; f <= s.face_count(); ++f) {
    std::vector<int> cycle;
    if (f < s.face_count()) {
      cycle = s.boundary(f);
    } else {
      for (int h = 0; h < static_cast<int>(s.half_edges().size()); ++h) {
        if (s.half_edge(h).face == f) cycle.push_back(h);
      }
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int h = cycle[k];
      const double hh = cfg.sagitta[static_cast<std::size_t>(h)];
      if (hh <= 0) continue;
      const double limit = caps.half_edge_limit.at(static_cast<std::size_t>(h));
      bool ok = hh <= limit * (1 + 1e-9) + eps;
      if (ok && f < s.face_count() && static_cast<std::size_t>(f) < caps.skeletons.size()) {
        ok = arc_in_polygon(cfg.arc(s, h), caps.skeletons[static_cast<std::size_t>(f)].regions[k], eps);
      }
      if (!ok) {
        out.push_back({edge_label(s, h), "containment",
                       "arc leaves the safe region of " + face_label(s, f)});
      }
    }
  }

  if (strong) {
    auto delta_of = [&](int f) -> double {
      if (f == s.exterior() || s.is_sea_node(f)) return std::nan("");
      return deltas.at(static_cast<std::size_t>(f));
    };
    for (int h : edges) {
      const double hh = cfg.sagitta[static_cast<std::size_t>(h)];
      if (hh == 0) continue;
      // Loser: the face the arc bulges into.
      const int left = s.half_edge(h).face;
      const int right = s.half_edge(s.half_edge(h).twin).face;
      const int loser = hh > 0 ? left : right;
      const int gainer = hh > 0 ? right : left;
      const double dl = delta_of(loser);
      const double dg = delta_of(gainer);
      if (dl > 0) {
        out.push_back({edge_label(s, h), "strong", face_label(s, loser) + " grows but is bent inward"});
      }
      if (dg < 0) {
        out.push_back({edge_label(s, h), "strong", face_label(s, gainer) + " shrinks but is bent outward"});
      }
      if (dl * dg > 0) {
        out.push_back({edge_label(s, h), "strong", "border between same-sign faces is bent"});
      }
    }
  }
  return out;
}

}  // namespace arcgram
