#pragma once

#include <optional>
#include <string_view>

#include "symplan/circle.hpp"

namespace symplan {

// The three symmetric planning rules. Geodesic runs the shorter arc and is
// defined away from antipodal pairs. ThroughOne and ThroughI route from z to
// the unit direction w of z - z' (as complex numbers), take the half turn
// from w to -w whose interior passes through 1 (respectively i), and run the
// shorter arc from -w to z'. They are defined away from pairs at the same
// horizontal (respectively vertical) level.
enum class Rule { Geodesic, ThroughOne, ThroughI };

// Stable command-line / file tokens for the rules.
const char* rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);

// Interior breakpoint times of the three-segment rules. Dyadic neighbors of
// 1/3 and 2/3 chosen so that 1 - t is exact in double arithmetic and
// reversal round-trips breakpoint lists bit for bit.
inline constexpr double kOneThirdTime = 0x1.5555555555554p-2;
inline constexpr double kTwoThirdsTime = 1.0 - kOneThirdTime;

// Distance (mod 1) from the pair (z, z') to the rule's excluded lines:
//   Geodesic:   t' - t = 1/2
//   ThroughOne: t' - t = 0  and  t + t' = 1/2
//   ThroughI:   t' - t = 0  and  t + t' = 0
// Positive margin means the rule can plan for the pair. Exactly symmetric
// under swapping z and z'.
double domain_margin(Rule rule, Turn z, Turn zp);

// Turn coordinate of (e(z) - e(z')) / |e(z) - e(z')| where e(t) is the point
// at t turns. Throws EqualPointsError when circle_dist(z, z') <= tol.
Turn w_point(Turn z, Turn zp, double tol = kDefaultTol);

// Plans the rule's path from z to z'. Geodesic paths have one segment; the
// other rules have three on [0, 1/3], [1/3, 2/3], [2/3, 1], the middle one a
// half turn through the rule's target point. Throws DomainError when
// domain_margin(rule, z, z') <= 0.
LiftedPath plan(Rule rule, Turn z, Turn zp);

// Sup over `samples` equispaced times of the circle distance between
// plan(rule, z', z) and reverse(plan(rule, z, z')). A symmetric rule keeps
// this at floating-point noise; callers pick the pass threshold.
double reversal_gap(Rule rule, Turn z, Turn zp, int samples);

}  // namespace symplan
