#include "arcgram/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace arcgram {

std::array<TriangleBends, 3> zero_area_triangle_configs(Point a, Point b, Point c) {
  const Circle circ = circumcircle(a, b, c);
  const std::array<Point, 3> p{a, b, c};
  const double orient = cross(b - a, c - a) > 0 ? 1.0 : -1.0;
  // Signed distance of the centre from each chord, positive on the triangle side.
  std::array<double, 3> d{};
  for (int j = 0; j < 3; ++j) {
    const Point u = p[static_cast<std::size_t>(j)];
    const Point v = p[static_cast<std::size_t>((j + 1) % 3)];
    const Point n = perp(v - u) * (1.0 / distance(u, v));
    d[static_cast<std::size_t>(j)] = orient * dot(circ.center - (u + v) * 0.5, n);
  }
  std::array<TriangleBends, 3> out{};
  for (int k = 0; k < 3; ++k) {
    const int opposite = (k + 1) % 3;
    for (int j = 0; j < 3; ++j) {
      const double dj = d[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          j == opposite ? orient * (circ.radius + dj) : -orient * (circ.radius - dj);
    }
  }
  return out;
}

double skinny_segment_area() { return segment_area(2.0, 0.5); }
double small_skinny_segment_area() { return segment_area(1.0, 0.25); }

std::vector<PolygonInput> GadgetInstance::polygons() const {
  std::vector<PolygonInput> out;
  for (const GadgetFace& f : faces) out.push_back({f.name, f.ring, f.target, false});
  return out;
}

Subdivision GadgetInstance::subdivision() const { return build_from_polygons(polygons(), 1e-9); }

namespace {

constexpr double kPi = std::numbers::pi;

double ring_area(const std::vector<Point>& ring) { return std::abs(signed_area(ring)); }

class Builder {
 public:
  explicit Builder(GadgetInstance& inst) : inst_(inst) {}

  bool mirrored = false;  // reflect about y = 2 (negative side)

  void face(const std::string& name, std::vector<Point> ring, GadgetPart part, double extra = 0.0) {
    if (mirrored) {
      for (Point& p : ring) p.y = 4.0 - p.y;
      std::reverse(ring.begin(), ring.end());
    }
    const double target = part == GadgetPart::triangle ? 0.0 : ring_area(ring) + extra;
    inst_.faces.push_back({name, std::move(ring), target, part});
  }

  void triangle(const std::string& name, Point a, Point b, Point c) {
    face(name, {a, b, c}, GadgetPart::triangle);
  }

  void rect(const std::string& name, double x0, double y0, double x1, double y1, GadgetPart part,
            double extra = 0.0) {
    face(name, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, part, extra);
  }

  // Pipe of 2-wide cells from y0 to y1 (vertical) with cells of length <= 4.
  void vertical_pipe(const std::string& name, double x, double y0, double y1) {
    int k = 0;
    for (double y = y0; y < y1 - 1e-9; ++k) {
      const double next = std::min(y + 4.0, y1);
      rect(name + "." + std::to_string(k), x, y, x + 2, next, GadgetPart::pipe);
      y = next;
    }
  }

  void horizontal_pipe(const std::string& name, double x0, double x1, double y) {
    int k = 0;
    for (double x = x0; x < x1 - 1e-9; ++k) {
      const double next = std::min(x + 4.0, x1);
      rect(name + "." + std::to_string(k), x, y, next, y + 2, GadgetPart::pipe);
      x = next;
    }
  }

 private:
  GadgetInstance& inst_;
};

struct ConnectorSlot {
  bool positive = true;
  double x = 0.0;
};

// Emits the row and returns the width used. Connector x positions are written
// back into `slots`.
double variable_row(Builder& b, const std::string& name, double x0, std::vector<ConnectorSlot>& slots,
                    double c1, double c2) {
  std::vector<char> kinds{'P', 'D'};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    kinds.insert(kinds.end(), {'P', 'P', 'P', 'C'});
  }
  kinds.insert(kinds.end(), {'P', 'P'});
  double x = x0;
  int plain = 0;
  std::size_t conn = 0;
  for (char k : kinds) {
    if (k == 'C') {
      ConnectorSlot& slot = slots[conn];
      slot.x = x;
      const std::string cn = name + ".C" + std::to_string(conn);
      b.mirrored = !slot.positive;
      b.face(cn, {{x, 0}, {x + 2, 0}, {x + 2, 4}, {x + 2, 5}, {x, 5}, {x, 4}}, GadgetPart::connector,
             2 * c2);
      b.triangle(cn + ".tri.left", {x, 4}, {x, 5}, {x - 0.25, 4.5});
      b.triangle(cn + ".tri.right", {x + 2, 4}, {x + 2.25, 4.5}, {x + 2, 5});
      b.triangle(cn + ".tri.end", {x, 0}, {x + 1, -1}, {x + 2, 0});
      b.mirrored = false;
      ++conn;
    } else {
      const bool decision = k == 'D';
      const std::string rn = decision ? name + ".D" : name + ".P" + std::to_string(plain++);
      b.rect(rn, x, 0, x + 2, 4, decision ? GadgetPart::decision : GadgetPart::plain,
             decision ? 2 * c1 - 2 * kPi : 2 * c1);
      b.triangle(rn + ".tri.top", {x + 2, 4}, {x + 1, 4.5}, {x, 4});
      b.triangle(rn + ".tri.bottom", {x, 0}, {x + 1, -0.5}, {x + 2, 0});
    }
    x += 2;
  }
  return x - x0;
}

// Positive clause: pipes start at y = bottom from connector columns cl < cm < cr;
// the clause polygon's lower arm begins at y = Y.
void clause(Builder& b, const std::string& name, double cl, double cm, double cr, double Y, double bottom,
            double c2) {
  const double xm = cm;
  std::vector<Point> ring{{xm, Y}, {xm + 2, Y}, {xm + 2, Y + 4}};
  for (double x = xm + 3; x <= xm + 6; ++x) ring.push_back({x, Y + 4});
  for (double x = xm + 6; x >= xm + 2; --x) ring.push_back({x, Y + 6});
  ring.insert(ring.end(), {{xm + 2, Y + 8}, {xm, Y + 8}});
  for (double x = xm; x >= xm - 4; --x) ring.push_back({x, Y + 6});
  for (double x = xm - 4; x <= xm; ++x) ring.push_back({x, Y + 4});
  b.face(name, ring, GadgetPart::clause, 8 * c2);

  b.triangle(name + ".tri.left", {xm, Y + 6}, {xm, Y + 8}, {xm - 1, Y + 7});
  b.triangle(name + ".tri.top", {xm, Y + 8}, {xm + 2, Y + 8}, {xm + 1, Y + 9});
  b.triangle(name + ".tri.right", {xm + 2, Y + 6}, {xm + 3, Y + 7}, {xm + 2, Y + 8});
  int k = 0;
  for (double u : {xm - 3, xm - 2, xm + 3, xm + 4}) {
    b.triangle(name + ".skinny." + std::to_string(k++), {u, Y + 4}, {u + 0.5, Y + 3.75}, {u + 1, Y + 4});
    b.triangle(name + ".skinny." + std::to_string(k++), {u + 1, Y + 6}, {u + 0.5, Y + 6.25}, {u, Y + 6});
  }

  b.vertical_pipe(name + ".pipe.mid", cm, bottom, Y);

  b.vertical_pipe(name + ".pipe.left", cl, bottom, Y + 4);
  b.rect(name + ".turn.left", cl, Y + 4, cl + 2, Y + 6, GadgetPart::turn);
  b.triangle(name + ".turn.left.tri.top", {cl, Y + 6}, {cl + 2, Y + 6}, {cl + 1, Y + 7});
  b.triangle(name + ".turn.left.tri.side", {cl, Y + 4}, {cl, Y + 6}, {cl - 1, Y + 5});
  b.horizontal_pipe(name + ".pipe.left.h", cl + 2, xm - 4, Y + 4);

  b.vertical_pipe(name + ".pipe.right", cr, bottom, Y + 4);
  b.rect(name + ".turn.right", cr, Y + 4, cr + 2, Y + 6, GadgetPart::turn);
  b.triangle(name + ".turn.right.tri.top", {cr, Y + 6}, {cr + 2, Y + 6}, {cr + 1, Y + 7});
  b.triangle(name + ".turn.right.tri.side", {cr + 2, Y + 4}, {cr + 3, Y + 5}, {cr + 2, Y + 6});
  b.horizontal_pipe(name + ".pipe.right.h", xm + 6, cr, Y + 4);
}

GadgetInstance empty_instance() {
  GadgetInstance inst;
  inst.c1 = skinny_segment_area();
  inst.c2 = small_skinny_segment_area();
  return inst;
}

}  // namespace

GadgetInstance build_variable_gadget(int degree_pos, int degree_neg) {
  if (degree_pos < 0 || degree_neg < 0) throw DomainError("variable degrees must be >= 0");
  GadgetInstance inst = empty_instance();
  Builder b(inst);
  std::vector<ConnectorSlot> slots;
  for (int i = 0; i < degree_pos; ++i) slots.push_back({true, 0});
  for (int i = 0; i < degree_neg; ++i) slots.push_back({false, 0});
  variable_row(b, "x1", 0.0, slots, inst.c1, inst.c2);
  return inst;
}

GadgetInstance build_clause_gadget() {
  GadgetInstance inst = empty_instance();
  Builder b(inst);
  clause(b, "c1", 0, 8, 16, 4, 0, inst.c2);
  return inst;
}

MonotoneFormula MonotoneFormula::parse(std::string_view text) {
  MonotoneFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int declared = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (first == "c") continue;
    if (first == "p") {
      std::string fmt;
      int clauses = 0;
      if (!(ls >> fmt >> declared >> clauses) || fmt != "cnf" || declared < 0) {
        throw FormulaError(where + "malformed problem line");
      }
      continue;
    }
    if (first == "order") {
      int v;
      while (ls >> v) f.order.push_back(v);
      if (!ls.eof()) throw FormulaError(where + "order expects variable numbers");
      continue;
    }
    std::istringstream all(line);
    std::vector<int> lits;
    std::string tok;
    while (all >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw FormulaError(where + "not an integer: " + tok);
      if (v == 0) break;
      lits.push_back(v);
    }
    if (lits.empty()) continue;
    if (lits.size() != 3) throw FormulaError(where + "clauses need exactly three literals");
    const bool positive = lits[0] > 0;
    MonotoneClause c;
    c.positive = positive;
    for (std::size_t i = 0; i < 3; ++i) {
      if ((lits[i] > 0) != positive) throw FormulaError(where + "clause mixes positive and negative literals");
      c.vars[i] = std::abs(lits[i]);
      f.variables = std::max(f.variables, c.vars[i]);
    }
    f.clauses.push_back(c);
  }
  f.variables = std::max(f.variables, declared);
  for (int v : f.order) f.variables = std::max(f.variables, v);
  if (f.order.empty()) {
    for (int v = 1; v <= f.variables; ++v) f.order.push_back(v);
  } else {
    std::vector<int> sorted = f.order;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 1; v <= f.variables; ++v) {
      if (static_cast<int>(sorted.size()) != f.variables || sorted[static_cast<std::size_t>(v - 1)] != v) {
        throw FormulaError("order must list every variable exactly once");
      }
    }
  }
  return f;
}

namespace {

struct Occurrence {
  int clause = 0;
  int role = 0;  // 0 left, 1 middle, 2 right
  int group = 0;
  double key = 0.0;
};

struct Interval {
  double lo, mid, hi;
  bool inside_half_of(const Interval& o) const {
    return (lo >= o.lo && hi <= o.mid) || (lo >= o.mid && hi <= o.hi);
  }
  bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }
};

}  // namespace

GadgetInstance compile(const MonotoneFormula& f) {
  GadgetInstance inst = empty_instance();
  if (f.clauses.empty() && f.variables == 0) return inst;
  std::vector<int> pos(static_cast<std::size_t>(f.variables) + 1, -1);
  for (std::size_t i = 0; i < f.order.size(); ++i) pos[static_cast<std::size_t>(f.order[i])] = static_cast<int>(i);
  for (int v = 1; v <= f.variables; ++v) {
    if (pos[static_cast<std::size_t>(v)] < 0) throw FormulaError("variable " + std::to_string(v) + " missing from order");
  }

  // Literal roles per clause, left to right by variable position.
  std::vector<std::vector<Occurrence>> by_var(static_cast<std::size_t>(f.variables) + 1);
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& c = f.clauses[ci];
    std::array<int, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return pos[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(a)])] <
             pos[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(b)])];
    });
    const int lo = pos[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(idx[0])])];
    const int mid = pos[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(idx[1])])];
    const int hi = pos[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(idx[2])])];
    for (int role = 0; role < 3; ++role) {
      const int v = c.vars[static_cast<std::size_t>(idx[static_cast<std::size_t>(role)])];
      const int p = pos[static_cast<std::size_t>(v)];
      Occurrence o;
      o.clause = static_cast<int>(ci);
      o.role = role;
      if (p == hi && p > lo) {
        o.group = 0;  // clause lies to the left: innermost first
        o.key = -lo - 1e-3 * mid;
      } else if (p == lo && p < hi) {
        o.group = 2;  // clause lies to the right: outermost first
        o.key = -hi - 1e-3 * mid;
      } else {
        o.group = 1;
        o.key = 0.0;
      }
      by_var[static_cast<std::size_t>(v)].push_back(o);
    }
  }

  Builder b(inst);
  std::vector<std::array<double, 3>> column(f.clauses.size());
  double x = 0.0;
  for (int v : f.order) {
    auto& occ = by_var[static_cast<std::size_t>(v)];
    std::stable_sort(occ.begin(), occ.end(), [](const Occurrence& a, const Occurrence& c) {
      if (a.group != c.group) return a.group < c.group;
      if (a.key != c.key) return a.key < c.key;
      if (a.clause != c.clause) return a.clause < c.clause;
      return a.role < c.role;
    });
    std::vector<ConnectorSlot> slots;
    for (const auto& o : occ) slots.push_back({f.clauses[static_cast<std::size_t>(o.clause)].positive, 0});
    const double width = variable_row(b, "x" + std::to_string(v), x, slots, inst.c1, inst.c2);
    for (std::size_t k = 0; k < occ.size(); ++k) {
      column[static_cast<std::size_t>(occ[k].clause)][static_cast<std::size_t>(occ[k].role)] = slots[k].x;
    }
    x += width + 4.0;
  }

  // Nesting depth per clause among clauses on the same side.
  const std::size_t m = f.clauses.size();
  std::vector<Interval> iv(m);
  for (std::size_t i = 0; i < m; ++i) iv[i] = {column[i][0], column[i][1], column[i][2]};
  std::vector<std::vector<std::size_t>> inner(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || f.clauses[i].positive != f.clauses[j].positive) continue;
      if (iv[i].disjoint(iv[j])) continue;
      if (iv[j].inside_half_of(iv[i])) {
        inner[i].push_back(j);
      } else if (!iv[i].inside_half_of(iv[j])) {
        throw LayoutError("clauses " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                          " cannot be drawn without crossing");
      }
    }
  }
  std::vector<int> depth(m, 0);
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = 0; i < m; ++i) {
      int d = 1;
      for (std::size_t j : inner[i]) d = std::max(d, depth[j] + 1);
      depth[i] = d;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (depth[i] > 2) {
      throw LayoutError("clause " + std::to_string(i + 1) + " has nesting depth " + std::to_string(depth[i]) +
                        "; at most 2 is supported");
    }
    b.mirrored = !f.clauses[i].positive;
    const double Y = depth[i] == 1 ? 9.0 : 17.0;
    clause(b, "c" + std::to_string(i + 1), column[i][0], column[i][1], column[i][2], Y, 5.0, inst.c2);
    b.mirrored = false;
  }
  // Pipes, clauses and the variable row enclose pockets of sea; they become
  // ordinary faces that keep their area.
  int k = 0;
  for (auto& gap : enclosed_gaps(inst.polygons(), 1e-9)) {
    b.face("fill" + std::to_string(++k), std::move(gap), GadgetPart::filler);
  }
  return inst;
}

std::array<bool, 3> feasible_triangle_configs(const Subdivision& s, int face, double eps) {
  const auto cycle = s.boundary(face);
  if (cycle.size() != 3) throw DomainError("face is not a triangle");
  const SimplePolygon poly = s.polygon(face);
  const auto configs = zero_area_triangle_configs(poly[0], poly[1], poly[2]);
  std::set<int> own;
  for (int h : cycle) own.insert(s.canonical(h));
  std::array<bool, 3> ok{true, true, true};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t j = 0; j < 3 && ok[k]; ++j) {
      const ChordArc arc{poly.edge_start(j), poly.edge_end(j), configs[k][j]};
      for (int e : s.edges()) {
        if (own.count(e)) continue;
        if (arcs_intersect(arc, {s.from(e), s.to(e), 0.0}, eps)) {
          ok[k] = false;
          break;
        }
      }
    }
  }
  return ok;
}

}  // namespace arcgram
