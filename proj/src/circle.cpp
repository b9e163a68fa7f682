#include "symplan/circle.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace symplan {

double wrap_turn(double u) {
  if (!std::isfinite(u)) {
    throw NonFiniteError("wrap_turn: non-finite input");
  }
  double r = u - std::floor(u);
  // u - floor(u) can round up to exactly 1.0 for tiny negative u.
  if (r >= 1.0) {
    r -= 1.0;
  }
  return r;
}

double circle_dist(Turn a, Turn b) {
  // |a - b| is negation-symmetric bit for bit, so the result is too.
  const double x = std::fabs(a.t() - b.t());
  return std::min(x, 1.0 - x);
}

double short_diff(Turn a, Turn b, double tol) {
  if (circle_dist(a, b) >= 0.5 - tol) {
    throw AntipodalError("short_diff: points are antipodal within tolerance");
  }
  const double d = wrap_turn(b.t() - a.t());
  return d <= 0.5 ? d : d - 1.0;
}

LiftedPath::LiftedPath(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {
  if (pts_.size() < 2) {
    throw Error("LiftedPath: need at least two breakpoints");
  }
  if (pts_.front().s != 0.0 || pts_.back().s != 1.0) {
    throw Error("LiftedPath: times must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    if (!std::isfinite(pts_[i].s) || !std::isfinite(pts_[i].u)) {
      throw NonFiniteError("LiftedPath: non-finite breakpoint");
    }
    if (i > 0 && !(pts_[i - 1].s < pts_[i].s)) {
      throw Error("LiftedPath: times must be strictly increasing");
    }
  }
}

LiftedPath LiftedPath::constant(double u) {
  return LiftedPath({{0.0, u}, {1.0, u}});
}

LiftedPath LiftedPath::segment(double u0, double u1) {
  return LiftedPath({{0.0, u0}, {1.0, u1}});
}

double LiftedPath::eval_lift(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("eval_lift: time outside [0, 1]");
  }
  auto it = std::upper_bound(
      pts_.begin(), pts_.end(), s,
      [](double v, const Breakpoint& b) { return v < b.s; });
  const Breakpoint& hi = (it == pts_.end()) ? pts_.back() : *it;
  const Breakpoint& lo = *(it - 1);
  // Exact hits return the stored lift so breakpoints stay bit-reproducible.
  if (s == lo.s) {
    return lo.u;
  }
  if (s == hi.s) {
    return hi.u;
  }
  const double w = (s - lo.s) / (hi.s - lo.s);
  return lo.u + w * (hi.u - lo.u);
}

LiftedPath reverse(const LiftedPath& p) {
  const auto& pts = p.breakpoints();
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    out.push_back({1.0 - it->s, it->u});
  }
  return LiftedPath(std::move(out));
}

LiftedPath concat_at(const LiftedPath& p, const LiftedPath& q, double cut,
                     double tol) {
  if (!(cut > 0.0 && cut < 1.0)) {
    throw Error("concat_at: cut must lie strictly inside (0, 1)");
  }
  const double pe = p.breakpoints().back().u;
  const double qs = q.breakpoints().front().u;
  if (circle_dist(Turn(pe), Turn(qs)) > tol) {
    throw EndpointMismatchError("concat_at: circle endpoints do not match");
  }
  // The endpoints agree on the circle, so the lifts differ by an integer.
  const double shift = std::round(pe - qs);

  std::vector<Breakpoint> out;
  out.reserve(p.breakpoints().size() + q.breakpoints().size() - 1);
  for (const Breakpoint& b : p.breakpoints()) {
    out.push_back({b.s * cut, b.u});
  }
  const auto& qb = q.breakpoints();
  for (std::size_t i = 1; i < qb.size(); ++i) {
    out.push_back({cut + qb[i].s * (1.0 - cut), qb[i].u + shift});
  }
  out.back().s = 1.0;
  return LiftedPath(std::move(out));
}

LiftedPath concat(const LiftedPath& p, const LiftedPath& q, double tol) {
  return concat_at(p, q, 0.5, tol);
}

}  // namespace symplan
