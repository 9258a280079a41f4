#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arcgram/geometry.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram {

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sagittas of edges (a,b), (b,c), (c,a).
using TriangleBends = std::array<double, 3>;

/// The three bendings that put every edge on the circumcircle so the face
/// area vanishes. Configuration k bends the edge opposite vertex k through k.
std::array<TriangleBends, 3> zero_area_triangle_configs(Point a, Point b, Point c);

enum class GadgetPart { plain, decision, connector, triangle, pipe, turn, clause, filler };

struct GadgetFace {
  std::string name;
  std::vector<Point> ring;
  double target = 0.0;
  GadgetPart part = GadgetPart::plain;
};

struct GadgetInstance {
  std::vector<GadgetFace> faces;
  double c1 = 0.0;  // segment of a base-2 skinny triangle
  double c2 = 0.0;  // segment of a base-1 skinny triangle

  /// Weight of each face is its target area.
  std::vector<PolygonInput> polygons() const;
  Subdivision subdivision() const;
};

/// Skinny triangles have base 2 and apex height 1/2; the small ones are
/// scaled by 1/2.
double skinny_segment_area();
double small_skinny_segment_area();

/// Variable row with the given connectors (positive ones point up).
GadgetInstance build_variable_gadget(int degree_pos, int degree_neg);

/// One positive clause with its three literal pipes ending at y = 0.
GadgetInstance build_clause_gadget();

struct MonotoneClause {
  std::array<int, 3> vars{};  // 1-based
  bool positive = true;
};

struct MonotoneFormula {
  int variables = 0;
  std::vector<MonotoneClause> clauses;
  /// Left-to-right variable order (1-based ids).
  std::vector<int> order;

  /// One clause per line as signed integers. DIMACS "c"/"p" lines and a
  /// trailing 0 are accepted; "order v1 v2 ..." fixes the variable order.
  static MonotoneFormula parse(std::string_view text);
};

/// Variable gadgets on a line, literal pipes, and clause gadgets above
/// (positive) or below (negative). Supports clause nesting depth <= 2.
GadgetInstance compile(const MonotoneFormula& f);

/// For a triangular face: which of its zero-area configurations keep every
/// arc clear of all edges not on the triangle.
std::array<bool, 3> feasible_triangle_configs(const Subdivision& s, int face, double eps = 1e-9);

}  // namespace arcgram
