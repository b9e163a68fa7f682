#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symplan/affine.hpp"

namespace symplan {

// K boolean membership grids over the n x n torus vertices (i, j). A cover
// is well formed when every vertex carries at least one color and each color
// is closed under transposition.
struct DiscreteCover {
  int n = 0;
  int k = 0;
  // membership[c][i * n + j] != 0 means vertex (i, j) belongs to color c.
  std::vector<std::vector<std::uint8_t>> membership;

  bool in(int c, int i, int j) const {
    return membership[static_cast<std::size_t>(c)]
                     [static_cast<std::size_t>(i) * n + j] != 0;
  }
};

// Integer labels per color; meaningful only at in-color vertices.
struct LabelSolution {
  std::vector<std::vector<int>> labels;  // labels[c][i * n + j]
};

// The constraint system of one color, plus the vertex <-> variable maps
// needed to interpret solutions and contradictions.
struct ColorSystem {
  AffineSystem system;
  std::vector<int> var_of_vertex;  // -1 where not in color, by i * n + j
  std::vector<int> vertex_of_var;  // flat vertex index per variable
};

// Relations imposed on a color's labels x(i, j):
//   adjacency: 4-adjacent vertices inside the cut square (no wraparound),
//              both in color: equal labels.
//   vertical seam: (i, n-1) and (i, 0) both in color: x(i,n-1) = x(i,0) - 1.
//   horizontal seam: (n-1, j) and (0, j) both in color: x(n-1,j) = x(0,j) + 1.
//   transposition: (i, j) in color: x(j, i) = -x(i, j); diagonal vertices
//              are therefore pinned to 0.
// Requires the cover invariants (the transposition relation needs the
// mirror vertex to carry the color too).
ColorSystem build_system(const DiscreteCover& cover, int color);

enum class ViolationKind {
  Uncovered,            // vertex in no color
  TransposeBroken,      // (i, j) in color but (j, i) not
  OffsetContradiction,  // color's system forces x = x + c, c != 0
  ParityContradiction,  // color's system forces 2x = odd
};

struct CoverViolation {
  ViolationKind kind = ViolationKind::Uncovered;
  int color = -1;  // -1 for Uncovered
  int i = 0;       // vertex involved (for contradictions: the relation's lhs)
  int j = 0;
};

struct ValidationResult {
  std::vector<CoverViolation> violations;
  LabelSolution labels;  // meaningful only when violations is empty

  bool ok() const { return violations.empty(); }
};

// Total check: cover and transposition invariants first, then solvability of
// every color's system. On success the canonical labels come back.
ValidationResult validate(const DiscreteCover& cover);

// The reference 3-cover by the planning-rule domains, in torus residues:
//   color 0: (j - i) mod n != n/2
//   color 1: (j - i) mod n != 0 and (i + j) mod n != n/2
//   color 2: (j - i) mod n != 0 and (i + j) mod n != 0
// Valid for every even n >= 4; throws BadGridError otherwise.
DiscreteCover reference_cover(int n);

enum class SearchMode { Exhaustive, Backtracking };

enum class OutcomeKind { Sat, Unsat, BudgetExceeded };

// Search state over the n(n+1)/2 upper-triangle cells (i <= j), row-major.
// Each cell takes a nonempty color subset as a bitmask (bit c = color c);
// assignments are enumerated in ascending mask order, least cell last
// (lexicographic). Sat therefore carries the lexicographically least
// witness. Nodes count complete assignments examined plus, in backtracking
// mode, contradiction dead ends.
struct SearchOutcome {
  OutcomeKind kind = OutcomeKind::Unsat;
  long long nodes = 0;
  DiscreteCover witness;       // Sat only
  LabelSolution labels;        // Sat only
  std::vector<int> frontier;   // BudgetExceeded only: cell masks at the stop
};

SearchOutcome search(int n, int k, SearchMode mode, long long budget);

// Smallest color count admitting a valid cover, trying k = 1..max_k. At
// k = 3 with even n >= 4 the reference cover serves as the witness without
// searching. min_k is 0 when nothing up to max_k was satisfiable.
struct MinKResult {
  int min_k = 0;
  struct PerK {
    int k = 0;
    SearchOutcome outcome;
    bool via_construction = false;
  };
  std::vector<PerK> outcomes;
};

MinKResult find_min_k(int n, int max_k, long long budget);

// Line-oriented text format. Line 1: "n k"; then k blocks of n lines of n
// characters '0'/'1' (line index = first coordinate); optionally a "LABELS"
// line followed by k blocks of n lines of n tokens, an integer at in-color
// vertices and "." elsewhere. Blank lines between blocks are allowed.
std::string write_cover(const DiscreteCover& cover,
                        const LabelSolution* labels = nullptr);

struct ParsedCover {
  DiscreteCover cover;
  std::optional<LabelSolution> labels;
};

// Strict parser for the format above; malformed input throws ParseError.
ParsedCover parse_cover(const std::string& text);

}  // namespace symplan
