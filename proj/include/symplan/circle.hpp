#pragma once

#include <vector>

#include "symplan/errors.hpp"

namespace symplan {

// Default tolerance for endpoint and antipodal coincidence checks. Inputs of
// interest are dyadic fractions of a turn, so 1e-9 cleanly separates "same
// grid point" from "different grid point" for every grid used here.
inline constexpr double kDefaultTol = 1e-9;

// Reduces u modulo 1 into [0, 1). Throws NonFiniteError on NaN/inf.
double wrap_turn(double u);

// A point of the unit circle, stored as a fraction of a full revolution
// ("turns") normalized to [0, 1). Dyadic positions stay exact in binary
// floating point, which keeps the worked examples reproducible bit for bit.
class Turn {
 public:
  Turn() = default;
  explicit Turn(double turns) : t_(wrap_turn(turns)) {}

  double t() const { return t_; }

  friend bool operator==(Turn a, Turn b) { return a.t_ == b.t_; }
  friend bool operator!=(Turn a, Turn b) { return a.t_ != b.t_; }

 private:
  double t_ = 0.0;
};

// A point of the parameter square [0,1]^2; first coordinate is the start
// point, second the end point of a query pair.
struct SquarePoint {
  double t = 0.0;
  double tp = 0.0;
};

// Shorter arc distance between two circle points, in [0, 1/2]. Exactly
// symmetric in its arguments.
double circle_dist(Turn a, Turn b);

// Signed displacement of the shorter arc from a to b, in (-1/2, 1/2):
// wrap_turn(a + short_diff(a, b)) recovers b. Throws AntipodalError when
// circle_dist(a, b) >= 1/2 - tol, where the shorter arc is ambiguous.
double short_diff(Turn a, Turn b, double tol = kDefaultTol);

struct Breakpoint {
  double s = 0.0;  // time in [0, 1]
  double u = 0.0;  // lift value in R

  friend bool operator==(Breakpoint a, Breakpoint b) {
    return a.s == b.s && a.u == b.u;
  }
};

// A circle path stored as a piecewise-linear lift to the real line, so the
// net winding of the path is plain subtraction of endpoint lifts. Breakpoint
// times start at 0, end at 1, and are strictly increasing.
class LiftedPath {
 public:
  explicit LiftedPath(std::vector<Breakpoint> pts);

  static LiftedPath constant(double u);
  static LiftedPath segment(double u0, double u1);

  const std::vector<Breakpoint>& breakpoints() const { return pts_; }

  // Lift value at time s in [0, 1]; exact at breakpoints, linear between.
  double eval_lift(double s) const;

  // Circle point at time s.
  Turn eval(double s) const { return Turn(eval_lift(s)); }

  // Lift of the end minus lift of the start; integer for loops.
  double displacement() const { return pts_.back().u - pts_.front().u; }

 private:
  std::vector<Breakpoint> pts_;
};

// Time-reversed path: breakpoint (s, u) maps to (1 - s, u). An involution on
// breakpoint lists whenever each stored time's complement is exactly
// representable, which holds for every path this library builds.
LiftedPath reverse(const LiftedPath& p);

// Concatenation of p and q with q's start aligned to p's end by an exact
// integer lift shift; throws EndpointMismatchError when the circle endpoints
// differ by more than tol. p occupies [0, cut], q occupies [cut, 1].
LiftedPath concat_at(const LiftedPath& p, const LiftedPath& q, double cut,
                     double tol = kDefaultTol);

// concat_at with the standard midpoint cut.
LiftedPath concat(const LiftedPath& p, const LiftedPath& q,
                  double tol = kDefaultTol);

}  // namespace symplan
