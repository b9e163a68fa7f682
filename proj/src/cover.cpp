#include "symplan/cover.hpp"

#include <charconv>
#include <cstdio>
#include <string_view>
#include <utility>

#include "symplan/errors.hpp"

namespace symplan {

namespace {

int flat(int i, int j, int n) { return i * n + j; }

void require_cover_shape(const DiscreteCover& cover) {
  if (cover.n < 2 || cover.k < 1) {
    throw BadGridError("cover: need n >= 2 and k >= 1");
  }
  if (static_cast<int>(cover.membership.size()) != cover.k) {
    throw BadGridError("cover: color count mismatch");
  }
  const std::size_t cells = static_cast<std::size_t>(cover.n) * cover.n;
  for (const auto& grid : cover.membership) {
    if (grid.size() != cells) {
      throw BadGridError("cover: grid size mismatch");
    }
  }
}

}  // namespace

ColorSystem build_system(const DiscreteCover& cover, int color) {
  require_cover_shape(cover);
  const int n = cover.n;
  ColorSystem cs;
  cs.var_of_vertex.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!cover.in(color, i, j)) continue;
      cs.var_of_vertex[static_cast<std::size_t>(flat(i, j, n))] =
          static_cast<int>(cs.vertex_of_var.size());
      cs.vertex_of_var.push_back(flat(i, j, n));
    }
  }
  cs.system.num_vars = static_cast<int>(cs.vertex_of_var.size());
  auto var = [&](int i, int j) {
    return cs.var_of_vertex[static_cast<std::size_t>(flat(i, j, n))];
  };
  auto relate = [&](int li, int lj, int ri, int rj, int sign, int offset) {
    cs.system.relations.push_back({var(li, lj), var(ri, rj), sign, offset});
  };
  // Local constancy across cut-square edges (no wraparound).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!cover.in(color, i, j)) continue;
      if (j + 1 < n && cover.in(color, i, j + 1)) relate(i, j, i, j + 1, 1, 0);
      if (i + 1 < n && cover.in(color, i + 1, j)) relate(i, j, i + 1, j, 1, 0);
    }
  }
  // Seam shifts: crossing the wrapped edge drops or raises the label.
  for (int i = 0; i < n; ++i) {
    if (cover.in(color, i, n - 1) && cover.in(color, i, 0)) {
      relate(i, n - 1, i, 0, 1, -1);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (cover.in(color, n - 1, j) && cover.in(color, 0, j)) {
      relate(n - 1, j, 0, j, 1, 1);
    }
  }
  // Antisymmetry under transposition; pins diagonal vertices to 0.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cover.in(color, i, j)) relate(j, i, i, j, -1, 0);
    }
  }
  return cs;
}

ValidationResult validate(const DiscreteCover& cover) {
  require_cover_shape(cover);
  const int n = cover.n;
  ValidationResult result;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool covered = false;
      for (int c = 0; c < cover.k; ++c) covered = covered || cover.in(c, i, j);
      if (!covered) {
        result.violations.push_back({ViolationKind::Uncovered, -1, i, j});
      }
    }
  }
  for (int c = 0; c < cover.k; ++c) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (cover.in(c, i, j) && !cover.in(c, j, i)) {
          result.violations.push_back({ViolationKind::TransposeBroken, c, i, j});
        }
      }
    }
  }
  // Membership problems make the relation set itself ill-defined, so solve
  // only when the cover invariants hold.
  if (!result.violations.empty()) return result;

  std::vector<ColorSystem> systems;
  std::vector<AffineSolveResult> solutions;
  systems.reserve(static_cast<std::size_t>(cover.k));
  solutions.reserve(static_cast<std::size_t>(cover.k));
  for (int c = 0; c < cover.k; ++c) {
    systems.push_back(build_system(cover, c));
    const ColorSystem& cs = systems.back();
    solutions.push_back(affine_solve(cs.system));
    const AffineSolveResult& solved = solutions.back();
    if (solved.ok()) continue;
    const AffineRelation& bad =
        cs.system.relations[static_cast<std::size_t>(
            solved.contradiction->relation_index)];
    const int vertex = cs.vertex_of_var[static_cast<std::size_t>(bad.lhs)];
    const ViolationKind kind =
        solved.contradiction->kind == ContradictionKind::Offset
            ? ViolationKind::OffsetContradiction
            : ViolationKind::ParityContradiction;
    result.violations.push_back({kind, c, vertex / n, vertex % n});
  }
  if (!result.violations.empty()) return result;

  result.labels.labels.assign(static_cast<std::size_t>(cover.k),
                              std::vector<int>(static_cast<std::size_t>(n) * n,
                                               0));
  for (int c = 0; c < cover.k; ++c) {
    const ColorSystem& cs = systems[static_cast<std::size_t>(c)];
    const AffineSolveResult& solved = solutions[static_cast<std::size_t>(c)];
    for (int v = 0; v < cs.system.num_vars; ++v) {
      const int vertex = cs.vertex_of_var[static_cast<std::size_t>(v)];
      result.labels.labels[static_cast<std::size_t>(c)]
                          [static_cast<std::size_t>(vertex)] =
          solved.values[static_cast<std::size_t>(v)];
    }
  }
  return result;
}

DiscreteCover reference_cover(int n) {
  if (n < 4 || n % 2 != 0) {
    throw BadGridError("reference_cover: need even n >= 4");
  }
  DiscreteCover cover;
  cover.n = n;
  cover.k = 3;
  cover.membership.assign(3, std::vector<std::uint8_t>(
                                 static_cast<std::size_t>(n) * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int diff = ((j - i) % n + n) % n;
      const int sum = (i + j) % n;
      const std::size_t f = static_cast<std::size_t>(flat(i, j, n));
      cover.membership[0][f] = diff != n / 2 ? 1 : 0;
      cover.membership[1][f] = (diff != 0 && sum != n / 2) ? 1 : 0;
      cover.membership[2][f] = (diff != 0 && sum != 0) ? 1 : 0;
    }
  }
  return cover;
}

namespace {

std::vector<std::pair<int, int>> upper_cells(int n) {
  std::vector<std::pair<int, int>> cells;
  cells.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cells.push_back({i, j});
    }
  }
  return cells;
}

DiscreteCover cover_from_masks(int n, int k,
                               const std::vector<std::pair<int, int>>& cells,
                               const std::vector<int>& masks) {
  DiscreteCover cover;
  cover.n = n;
  cover.k = k;
  cover.membership.assign(static_cast<std::size_t>(k),
                          std::vector<std::uint8_t>(
                              static_cast<std::size_t>(n) * n, 0));
  for (std::size_t idx = 0; idx < masks.size(); ++idx) {
    const auto [i, j] = cells[idx];
    for (int c = 0; c < k; ++c) {
      if (!(masks[idx] >> c & 1)) continue;
      cover.membership[static_cast<std::size_t>(c)]
                      [static_cast<std::size_t>(flat(i, j, n))] = 1;
      cover.membership[static_cast<std::size_t>(c)]
                      [static_cast<std::size_t>(flat(j, i, n))] = 1;
    }
  }
  return cover;
}

void require_search_args(int n, int k, long long budget) {
  if (n < 2) throw BadGridError("search: need n >= 2");
  if (k < 1 || k > 20) throw BadGridError("search: need 1 <= k <= 20");
  if (budget < 1) throw BadGridError("search: need a positive budget");
}

SearchOutcome sat_outcome(int n, int k,
                          const std::vector<std::pair<int, int>>& cells,
                          const std::vector<int>& masks, long long nodes) {
  SearchOutcome out;
  out.kind = OutcomeKind::Sat;
  out.nodes = nodes;
  out.witness = cover_from_masks(n, k, cells, masks);
  ValidationResult check = validate(out.witness);
  if (!check.ok()) {
    throw Error("search: satisfying assignment failed revalidation");
  }
  out.labels = std::move(check.labels);
  return out;
}

SearchOutcome search_exhaustive(int n, int k, long long budget) {
  const auto cells = upper_cells(n);
  const int full = (1 << k) - 1;
  std::vector<int> masks(cells.size(), 1);
  long long nodes = 0;
  while (true) {
    ++nodes;
    if (nodes > budget) {
      SearchOutcome out;
      out.kind = OutcomeKind::BudgetExceeded;
      out.nodes = nodes;
      out.frontier = masks;
      return out;
    }
    const DiscreteCover cover = cover_from_masks(n, k, cells, masks);
    bool ok = true;
    for (int c = 0; c < k && ok; ++c) {
      ok = affine_solve(build_system(cover, c).system).ok();
    }
    if (ok) {
      return sat_outcome(n, k, cells, masks, nodes);
    }
    // Odometer step in lexicographic order, last cell fastest.
    int pos = static_cast<int>(cells.size()) - 1;
    while (pos >= 0 && masks[static_cast<std::size_t>(pos)] == full) {
      masks[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) {
      SearchOutcome out;
      out.kind = OutcomeKind::Unsat;
      out.nodes = nodes;
      return out;
    }
    ++masks[static_cast<std::size_t>(pos)];
  }
}

// Incremental state for the backtracking search: per-color membership and
// union-find over all n*n vertex labels, with LIFO undo.
class Backtracker {
 public:
  Backtracker(int n, int k, long long budget)
      : n_(n), k_(k), budget_(budget), cells_(upper_cells(n)) {
    member_.assign(static_cast<std::size_t>(k),
                   std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n,
                                             0));
    uf_.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) uf_.emplace_back(n * n);
  }

  SearchOutcome run() {
    const int status = dfs(0);
    SearchOutcome out;
    out.nodes = nodes_;
    if (status == 1) {
      return sat_outcome(n_, k_, cells_, masks_, nodes_);
    }
    if (status == 2) {
      out.kind = OutcomeKind::BudgetExceeded;
      out.frontier = masks_;
      return out;
    }
    out.kind = OutcomeKind::Unsat;
    return out;
  }

 private:
  struct Applied {
    std::vector<std::pair<int, int>> marked;  // (color, vertex)
    std::vector<std::size_t> uf_marks;
  };

  bool in(int c, int i, int j) const {
    return member_[static_cast<std::size_t>(c)]
                  [static_cast<std::size_t>(flat(i, j, n_))] != 0;
  }

  bool relate(int c, int li, int lj, int ri, int rj, int sign, int offset) {
    return !uf_[static_cast<std::size_t>(c)]
                .relate(flat(li, lj, n_), flat(ri, rj, n_), sign, offset)
                .has_value();
  }

  // Marks (i, j) as color c and adds every relation whose second endpoint
  // just appeared. Returns false on contradiction.
  bool add_vertex(int c, int i, int j, Applied& ap) {
    member_[static_cast<std::size_t>(c)]
           [static_cast<std::size_t>(flat(i, j, n_))] = 1;
    ap.marked.push_back({c, flat(i, j, n_)});
    if (in(c, j, i) && !relate(c, j, i, i, j, -1, 0)) return false;
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int a = 0; a < 4; ++a) {
      const int ni = i + di[a];
      const int nj = j + dj[a];
      if (ni < 0 || ni >= n_ || nj < 0 || nj >= n_ || !in(c, ni, nj)) continue;
      if (!relate(c, i, j, ni, nj, 1, 0)) return false;
    }
    if (j == n_ - 1 && in(c, i, 0) && !relate(c, i, n_ - 1, i, 0, 1, -1)) {
      return false;
    }
    if (j == 0 && in(c, i, n_ - 1) && !relate(c, i, n_ - 1, i, 0, 1, -1)) {
      return false;
    }
    if (i == n_ - 1 && in(c, 0, j) && !relate(c, n_ - 1, j, 0, j, 1, 1)) {
      return false;
    }
    if (i == 0 && in(c, n_ - 1, j) && !relate(c, n_ - 1, j, 0, j, 1, 1)) {
      return false;
    }
    return true;
  }

  bool apply_cell(std::size_t idx, int mask, Applied& ap) {
    ap.uf_marks.resize(static_cast<std::size_t>(k_));
    for (int c = 0; c < k_; ++c) {
      ap.uf_marks[static_cast<std::size_t>(c)] =
          uf_[static_cast<std::size_t>(c)].mark();
    }
    const auto [i, j] = cells_[idx];
    for (int c = 0; c < k_; ++c) {
      if (!(mask >> c & 1)) continue;
      if (!add_vertex(c, i, j, ap)) return false;
      if (i != j && !add_vertex(c, j, i, ap)) return false;
    }
    return true;
  }

  void undo(const Applied& ap) {
    for (const auto& [c, v] : ap.marked) {
      member_[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)] = 0;
    }
    for (int c = 0; c < k_; ++c) {
      uf_[static_cast<std::size_t>(c)].rollback(
          ap.uf_marks[static_cast<std::size_t>(c)]);
    }
  }

  // 0 = subtree exhausted, 1 = satisfied, 2 = budget exceeded. On nonzero
  // returns masks_ is left holding the frontier/witness assignment.
  int dfs(std::size_t depth) {
    if (depth == cells_.size()) {
      ++nodes_;
      if (nodes_ > budget_) return 2;
      return 1;
    }
    const int full = (1 << k_) - 1;
    for (int m = 1; m <= full; ++m) {
      masks_.push_back(m);
      Applied ap;
      if (!apply_cell(depth, m, ap)) {
        ++nodes_;
        if (nodes_ > budget_) return 2;
        undo(ap);
        masks_.pop_back();
        continue;
      }
      const int status = dfs(depth + 1);
      if (status != 0) return status;
      undo(ap);
      masks_.pop_back();
    }
    return 0;
  }

  int n_;
  int k_;
  long long budget_;
  std::vector<std::pair<int, int>> cells_;
  std::vector<int> masks_;
  std::vector<std::vector<std::uint8_t>> member_;
  std::vector<AffineUnionFind> uf_;
  long long nodes_ = 0;
};

}  // namespace

SearchOutcome search(int n, int k, SearchMode mode, long long budget) {
  require_search_args(n, k, budget);
  if (mode == SearchMode::Exhaustive) {
    return search_exhaustive(n, k, budget);
  }
  Backtracker bt(n, k, budget);
  return bt.run();
}

MinKResult find_min_k(int n, int max_k, long long budget) {
  MinKResult result;
  for (int k = 1; k <= max_k; ++k) {
    MinKResult::PerK entry;
    entry.k = k;
    if (k == 3 && n >= 4 && n % 2 == 0) {
      const DiscreteCover cover = reference_cover(n);
      ValidationResult check = validate(cover);
      if (!check.ok()) {
        throw Error("find_min_k: reference cover failed validation");
      }
      entry.outcome.kind = OutcomeKind::Sat;
      entry.outcome.nodes = 0;
      entry.outcome.witness = cover;
      entry.outcome.labels = std::move(check.labels);
      entry.via_construction = true;
    } else {
      entry.outcome = search(n, k, SearchMode::Backtracking, budget);
    }
    const bool sat = entry.outcome.kind == OutcomeKind::Sat;
    result.outcomes.push_back(std::move(entry));
    if (sat) {
      result.min_k = k;
      break;
    }
  }
  return result;
}

std::string write_cover(const DiscreteCover& cover,
                        const LabelSolution* labels) {
  require_cover_shape(cover);
  const int n = cover.n;
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d %d\n", n, cover.k);
  out += buf;
  for (int c = 0; c < cover.k; ++c) {
    out += '\n';
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        out += cover.in(c, i, j) ? '1' : '0';
      }
      out += '\n';
    }
  }
  if (labels == nullptr) return out;
  out += "\nLABELS\n";
  for (int c = 0; c < cover.k; ++c) {
    out += '\n';
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j > 0) out += ' ';
        if (cover.in(c, i, j)) {
          std::snprintf(
              buf, sizeof buf, "%d",
              labels->labels[static_cast<std::size_t>(c)]
                            [static_cast<std::size_t>(flat(i, j, n))]);
          out += buf;
        } else {
          out += '.';
        }
      }
      out += '\n';
    }
  }
  return out;
}

namespace {

// Splits into lines, dropping trailing whitespace on each; keeps blank lines
// so the parser can skip them explicitly between blocks.
std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (const char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  for (std::string& line : lines) {
    while (!line.empty() &&
           (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.pop_back();
    }
  }
  return lines;
}

class LineReader {
 public:
  explicit LineReader(std::vector<std::string> lines)
      : lines_(std::move(lines)) {}

  // Next nonblank line; ParseError at end of input.
  const std::string& next(const char* what) {
    while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
    if (pos_ == lines_.size()) {
      throw ParseError(std::string("cover: missing ") + what);
    }
    return lines_[pos_++];
  }

  bool at_end() {
    while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
    return pos_ == lines_.size();
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

int parse_int(std::string_view token, const char* what) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(std::string("cover: bad integer in ") + what);
  }
  return value;
}

std::vector<std::string_view> split_tokens(const std::string& line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    tokens.push_back(std::string_view(line).substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

}  // namespace

ParsedCover parse_cover(const std::string& text) {
  LineReader reader(split_lines(text));
  const auto header = split_tokens(reader.next("header"));
  if (header.size() != 2) {
    throw ParseError("cover: header must be \"n k\"");
  }
  const int n = parse_int(header[0], "header");
  const int k = parse_int(header[1], "header");
  if (n < 2 || k < 1) {
    throw ParseError("cover: need n >= 2 and k >= 1");
  }
  ParsedCover parsed;
  parsed.cover.n = n;
  parsed.cover.k = k;
  parsed.cover.membership.assign(static_cast<std::size_t>(k),
                                 std::vector<std::uint8_t>(
                                     static_cast<std::size_t>(n) * n, 0));
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < n; ++i) {
      const std::string& line = reader.next("membership row");
      if (static_cast<int>(line.size()) != n) {
        throw ParseError("cover: membership row has wrong length");
      }
      for (int j = 0; j < n; ++j) {
        if (line[static_cast<std::size_t>(j)] != '0' &&
            line[static_cast<std::size_t>(j)] != '1') {
          throw ParseError("cover: membership rows are '0'/'1' only");
        }
        parsed.cover.membership[static_cast<std::size_t>(c)]
                               [static_cast<std::size_t>(flat(i, j, n))] =
            line[static_cast<std::size_t>(j)] == '1' ? 1 : 0;
      }
    }
  }
  if (reader.at_end()) return parsed;

  if (reader.next("LABELS sentinel") != "LABELS") {
    throw ParseError("cover: expected LABELS or end of file");
  }
  LabelSolution labels;
  labels.labels.assign(static_cast<std::size_t>(k),
                       std::vector<int>(static_cast<std::size_t>(n) * n, 0));
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < n; ++i) {
      const std::string& line = reader.next("label row");
      const auto tokens = split_tokens(line);
      if (static_cast<int>(tokens.size()) != n) {
        throw ParseError("cover: label row has wrong token count");
      }
      for (int j = 0; j < n; ++j) {
        const bool in_color = parsed.cover.in(c, i, j);
        const std::string_view token = tokens[static_cast<std::size_t>(j)];
        if (token == ".") {
          if (in_color) {
            throw ParseError("cover: missing label at an in-color vertex");
          }
          continue;
        }
        if (!in_color) {
          throw ParseError("cover: label present at an out-of-color vertex");
        }
        labels.labels[static_cast<std::size_t>(c)]
                     [static_cast<std::size_t>(flat(i, j, n))] =
            parse_int(token, "label row");
      }
    }
  }
  if (!reader.at_end()) {
    throw ParseError("cover: trailing content after label blocks");
  }
  parsed.labels = std::move(labels);
  return parsed;
}

}  // namespace symplan
