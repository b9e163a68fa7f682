#include "symplan/dfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "symplan/errors.hpp"

namespace symplan {

namespace {

double vertex_coord(int i, int n) { return static_cast<double>(i) / n; }

void require_grid(int n) {
  if (n < 2) throw BadGridError("grid order must be at least 2");
}

const char* palette_line(int d) {
  switch (d) {
    case 0:
      return "200 200 200";
    case 1:
      return "220 80 80";
    case -1:
      return "80 80 220";
    default:
      return nullptr;
  }
}

}  // namespace

double d_raw(Rule rule, double t, double tp) {
  const LiftedPath path = plan(rule, Turn(t), Turn(tp));
  return path.displacement() - (tp - t);
}

int d_value(Rule rule, double t, double tp) {
  const double raw = d_raw(rule, t, tp);
  const double rounded = std::round(raw);
  if (std::fabs(raw - rounded) > kIntegerTol) {
    throw IntegralityError("d_value: displacement defect is not an integer");
  }
  return static_cast<int>(rounded);
}

int closed_form_d(Rule rule, double t, double tp, double tol) {
  const double diff = tp - t;
  const double sum = t + tp;
  const Turn diff_mod{diff};
  const Turn sum_mod{sum};
  switch (rule) {
    case Rule::Geodesic: {
      if (circle_dist(diff_mod, Turn(0.5)) <= tol) {
        throw OnBoundaryError("closed_form_d: antipodal pair");
      }
      if (diff > 0.5) return -1;
      if (diff < -0.5) return 1;
      return 0;
    }
    case Rule::ThroughOne: {
      if (circle_dist(diff_mod, Turn(0.0)) <= tol ||
          circle_dist(sum_mod, Turn(0.5)) <= tol) {
        throw OnBoundaryError("closed_form_d: excluded line for through1");
      }
      if (sum > 0.5 && sum < 1.5) return t > tp ? 1 : -1;
      return 0;
    }
    case Rule::ThroughI: {
      if (circle_dist(diff_mod, Turn(0.0)) <= tol ||
          circle_dist(sum_mod, Turn(0.0)) <= tol) {
        throw OnBoundaryError("closed_form_d: excluded line for throughi");
      }
      if (sum > 1.0) return tp > t ? -1 : 1;
      return 0;
    }
  }
  throw DomainError("closed_form_d: unknown rule");
}

bool DMap::has(int i, int j) const {
  return present[static_cast<size_t>(i) * (n + 1) + j] != 0;
}

int DMap::at(int i, int j) const {
  return values[static_cast<size_t>(i) * (n + 1) + j];
}

DMap d_map(Rule rule, int n) {
  require_grid(n);
  DMap map;
  map.rule = rule;
  map.n = n;
  const size_t side = static_cast<size_t>(n) + 1;
  map.values.assign(side * side, 0);
  map.present.assign(side * side, 0);
  for (int i = 0; i <= n; ++i) {
    const double t = vertex_coord(i, n);
    for (int j = 0; j <= n; ++j) {
      const double tp = vertex_coord(j, n);
      if (domain_margin(rule, Turn(t), Turn(tp)) <= kLineTol) continue;
      const size_t idx = static_cast<size_t>(i) * side + j;
      map.values[idx] = d_value(rule, t, tp);
      map.present[idx] = 1;
    }
  }
  return map;
}

IdentityViolations check_identities(const DMap& map) {
  IdentityViolations v;
  const int n = map.n;
  for (int i = 0; i <= n; ++i) {
    if (map.has(i, n) != map.has(i, 0)) {
      ++v.column;
    } else if (map.has(i, n) && map.at(i, n) - map.at(i, 0) != -1) {
      ++v.column;
    }
  }
  for (int j = 0; j <= n; ++j) {
    if (map.has(n, j) != map.has(0, j)) {
      ++v.row;
    } else if (map.has(n, j) && map.at(n, j) - map.at(0, j) != 1) {
      ++v.row;
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      if (map.has(i, j) != map.has(j, i)) {
        ++v.symmetry;
      } else if (map.has(i, j) && map.at(j, i) != -map.at(i, j)) {
        ++v.symmetry;
      }
    }
  }
  return v;
}

std::vector<Region> regions(const DMap& map) {
  const int n = map.n;
  const size_t side = static_cast<size_t>(n) + 1;
  std::vector<int> label(side * side, -1);
  std::vector<Region> out;
  std::vector<std::pair<int, int>> stack;
  for (int i0 = 0; i0 <= n; ++i0) {
    for (int j0 = 0; j0 <= n; ++j0) {
      const size_t idx0 = static_cast<size_t>(i0) * side + j0;
      if (!map.has(i0, j0) || label[idx0] >= 0) continue;
      Region r;
      r.id = static_cast<int>(out.size());
      r.d = map.at(i0, j0);
      r.i = i0;
      r.j = j0;
      label[idx0] = r.id;
      stack.push_back({i0, j0});
      while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        ++r.size;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int ni = i + di[k];
          const int nj = j + dj[k];
          if (ni < 0 || ni > n || nj < 0 || nj > n || !map.has(ni, nj)) {
            continue;
          }
          if (map.at(ni, nj) != r.d) {
            throw AdjacentValueJumpError(
                "regions: adjacent vertices straddle an excluded line");
          }
          const size_t nidx = static_cast<size_t>(ni) * side + nj;
          if (label[nidx] < 0) {
            label[nidx] = r.id;
            stack.push_back({ni, nj});
          }
        }
      }
      out.push_back(r);
    }
  }
  return out;
}

std::string dump_text(const DMap& map) {
  std::string out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d %s\n", map.n, rule_name(map.rule));
  out += buf;
  for (int i = 0; i <= map.n; ++i) {
    for (int j = 0; j <= map.n; ++j) {
      if (j > 0) out += ' ';
      if (map.has(i, j)) {
        std::snprintf(buf, sizeof buf, "%d", map.at(i, j));
        out += buf;
      } else {
        out += '.';
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_ppm(const DMap& map) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "P3\n%d %d\n255\n", map.n + 1, map.n + 1);
  out += buf;
  for (int j = map.n; j >= 0; --j) {
    for (int i = 0; i <= map.n; ++i) {
      if (!map.has(i, j)) {
        out += "255 255 255\n";
        continue;
      }
      const int d = map.at(i, j);
      if (const char* line = palette_line(d)) {
        out += line;
        out += '\n';
      } else {
        // Euclidean remainder keeps the channel in range for negative d.
        const int m = ((d % 3) + 3) % 3;
        const int level = 80 * (m + 1);
        std::snprintf(buf, sizeof buf, "%d %d %d\n", level, level, level);
        out += buf;
      }
    }
  }
  return out;
}

CoverageReport coverage_check(int n) {
  require_grid(n);
  CoverageReport report;
  report.min_margin = 2.0;
  for (int i = 0; i <= n; ++i) {
    const double t = vertex_coord(i, n);
    for (int j = 0; j <= n; ++j) {
      const double tp = vertex_coord(j, n);
      double best = 0.0;
      for (Rule rule : {Rule::Geodesic, Rule::ThroughOne, Rule::ThroughI}) {
        best = std::max(best, domain_margin(rule, Turn(t), Turn(tp)));
      }
      if (best < report.min_margin) {
        report.min_margin = best;
        report.i = i;
        report.j = j;
        report.argmin = {t, tp};
      }
    }
  }
  return report;
}

}  // namespace symplan
