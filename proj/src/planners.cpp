#include "symplan/planners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "symplan/errors.hpp"

namespace symplan {

namespace {

// Distance (mod 1) from u to the line value `line`, computed so the result
// is bitwise identical when u is replaced by any representative of u mod 1.
double line_dist(double u, double line) {
  return circle_dist(Turn(u), Turn(line));
}

// Shorter-arc path from a to b as a single segment. Requires the pair to be
// non-antipodal; tol 0 because callers have already checked a margin.
LiftedPath short_arc(Turn a, Turn b) {
  const double d = short_diff(a, b, 0.0);
  return LiftedPath::segment(a.t(), a.t() + d);
}

}  // namespace

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::Geodesic:
      return "geodesic";
    case Rule::ThroughOne:
      return "through1";
    case Rule::ThroughI:
      return "throughi";
  }
  return "unknown";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  if (name == "geodesic") return Rule::Geodesic;
  if (name == "through1") return Rule::ThroughOne;
  if (name == "throughi") return Rule::ThroughI;
  return std::nullopt;
}

double domain_margin(Rule rule, Turn z, Turn zp) {
  // Canonical ordering keeps the two line distances bitwise symmetric in
  // (z, z'): diff uses the ordered pair (both line sets are symmetric under
  // negating the difference), sum is order-free.
  const double lo = std::min(z.t(), zp.t());
  const double hi = std::max(z.t(), zp.t());
  const double diff = wrap_turn(hi - lo);
  const double sum = wrap_turn(lo + hi);
  switch (rule) {
    case Rule::Geodesic:
      return line_dist(diff, 0.5);
    case Rule::ThroughOne:
      return std::min(line_dist(diff, 0.0), line_dist(sum, 0.5));
    case Rule::ThroughI:
      return std::min(line_dist(diff, 0.0), line_dist(sum, 0.0));
  }
  return 0.0;
}

Turn w_point(Turn z, Turn zp, double tol) {
  if (circle_dist(z, zp) <= tol) {
    throw EqualPointsError("w_point: points coincide");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;
  const double az = kTwoPi * z.t();
  const double azp = kTwoPi * zp.t();
  const double re = std::cos(az) - std::cos(azp);
  const double im = std::sin(az) - std::sin(azp);
  return Turn(std::atan2(im, re) / kTwoPi);
}

LiftedPath plan(Rule rule, Turn z, Turn zp) {
  if (domain_margin(rule, z, zp) <= 0.0) {
    throw DomainError("plan: pair lies on an excluded line for the rule");
  }
  if (rule == Rule::Geodesic) {
    return short_arc(z, zp);
  }
  const double target = rule == Rule::ThroughOne ? 0.0 : 0.25;
  const Turn w = w_point(z, zp, 0.0);
  // Half turn from w choosing the direction whose open interior crosses the
  // target point.
  const double delta = wrap_turn(target - w.t());
  const double half = (delta > 0.0 && delta < 0.5) ? 0.5 : -0.5;

  const double u0 = z.t();
  const double u1 = u0 + short_diff(z, w, 0.0);
  const double u2 = u1 + half;
  const double u3 = u2 + short_diff(Turn(u2), zp, 0.0);
  return LiftedPath({{0.0, u0},
                     {kOneThirdTime, u1},
                     {kTwoThirdsTime, u2},
                     {1.0, u3}});
}

double reversal_gap(Rule rule, Turn z, Turn zp, int samples) {
  const LiftedPath forward = plan(rule, zp, z);
  const LiftedPath flipped = reverse(plan(rule, z, zp));
  double gap = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double s = samples == 1 ? 0.0 : static_cast<double>(k) / (samples - 1);
    gap = std::max(gap, circle_dist(forward.eval(s), flipped.eval(s)));
  }
  return gap;
}

}  // namespace symplan
