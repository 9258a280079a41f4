#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "arcgram/geometry.hpp"
#include "arcgram/subdivision.hpp"

namespace arcgram::testing {

/// Star-shaped polygon around the origin with random radii; reflex corners
/// appear whenever neighbouring radii differ enough.
inline SimplePolygon random_star_polygon(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> radius(0.3, 1.0);
  std::uniform_real_distribution<double> jitter(-0.35, 0.35);
  SimplePolygon p;
  for (int i = 0; i < n; ++i) {
    const double ang = 2 * std::numbers::pi * (i + 0.5 + jitter(rng)) / n;
    const double r = radius(rng);
    p.vertices.push_back({r * std::cos(ang), r * std::sin(ang)});
  }
  return p;
}

inline std::vector<Point> rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

/// rows x cols grid of unit-size `cell` squares, named "r<row>c<col>".
inline std::vector<PolygonInput> grid_map(int rows, int cols, double cell = 1.0) {
  std::vector<PolygonInput> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      PolygonInput p;
      p.name = "r" + std::to_string(r) + "c" + std::to_string(c);
      p.ring = rect(c * cell, r * cell, (c + 1) * cell, (r + 1) * cell);
      p.weight = 1.0;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace arcgram::testing
