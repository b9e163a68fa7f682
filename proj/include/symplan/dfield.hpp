#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symplan/circle.hpp"
#include "symplan/planners.hpp"

namespace symplan {

// Grid vertices whose planning margin is at most this count as out of domain.
inline constexpr double kLineTol = 1e-12;
// A planned displacement may miss its integer by at most this much.
inline constexpr double kIntegerTol = 1e-9;

// Net winding of the planned path beyond the change of square coordinate:
// displacement - (t' - t). Planning wraps the coordinates onto the circle;
// the subtraction uses t and t' as given.
double d_raw(Rule rule, double t, double tp);

// d_raw rounded to the nearest integer. Throws IntegralityError when the raw
// value is farther than kIntegerTol from every integer, which would mean the
// planner itself is broken.
int d_value(Rule rule, double t, double tp);

// d as a table over the open cells cut out by the rule's excluded lines,
// without planning a path. For (t, t') in the closed unit square. Throws
// OnBoundaryError within tol of an excluded line.
int closed_form_d(Rule rule, double t, double tp, double tol = kLineTol);

// d sampled at the (n+1) x (n+1) vertices (i/n, j/n) of the closed square.
// A vertex is absent exactly when its planning margin is <= kLineTol.
struct DMap {
  Rule rule = Rule::Geodesic;
  int n = 0;
  // Row-major by i (first coordinate), then j.
  std::vector<int> values;
  std::vector<std::uint8_t> present;

  bool has(int i, int j) const;
  int at(int i, int j) const;
};

DMap d_map(Rule rule, int n);

// Counts of vertex checks failing the defining identities of d. Membership
// mismatches (one side of a compared pair absent, the other present) count
// against the identity that compares them. All zero for a sound planner.
struct IdentityViolations {
  int column = 0;    // d(t,1) - d(t,0) != -1
  int row = 0;       // d(1,t) - d(0,t) != 1
  int symmetry = 0;  // d(t',t) != -d(t,t')

  int total() const { return column + row + symmetry; }
};

IdentityViolations check_identities(const DMap& map);

// Maximal 4-connected sets of present vertices with their common value.
struct Region {
  int id = 0;
  int d = 0;
  int size = 0;
  int i = 0;  // representative vertex: first discovered, scanning i then j
  int j = 0;
};

// Flood fill in discovery order. Two adjacent present vertices with
// different values mean the grid straddles an excluded line without
// resolving it; that raises AdjacentValueJumpError.
std::vector<Region> regions(const DMap& map);

// Plain-text dump: header "n rule", then n+1 rows (i = 0..n) of n+1
// space-separated tokens, the value or "." when absent.
std::string dump_text(const DMap& map);

// ASCII PPM (P3) image, one pixel per vertex, one "r g b" triple per line.
// Pixel rows run j = n down to 0 so the second coordinate increases upward;
// columns run i = 0..n. Palette: absent white, 0 gray, +1 red, -1 blue,
// anything else a gray level from the value mod 3.
std::string render_ppm(const DMap& map);

// Worst vertex of the (n+1) x (n+1) grid under the best margin any rule
// offers there. A positive minimum means the three rule domains jointly
// cover the whole square at this resolution.
struct CoverageReport {
  double min_margin = 0.0;
  int i = 0;
  int j = 0;
  SquarePoint argmin{0.0, 0.0};
};

CoverageReport coverage_check(int n);

}  // namespace symplan
