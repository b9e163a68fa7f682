#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace symplan {

// One constraint x_lhs = sign * x_rhs + offset over integer variables.
// lhs == rhs is allowed and encodes x = x + c (forcing c = 0) or
// x = -x + c (forcing x = c/2, with odd c unsatisfiable over the integers).
struct AffineRelation {
  int lhs = 0;
  int rhs = 0;
  int sign = 1;  // +1 or -1
  int offset = 0;
};

struct AffineSystem {
  int num_vars = 0;
  std::vector<AffineRelation> relations;
};

// Offset: a cycle of relations forces x = x + c with c != 0.
// Parity: a cycle forces 2x = c with c odd, which has no integer solution.
enum class ContradictionKind { Offset, Parity };

struct Contradiction {
  ContradictionKind kind = ContradictionKind::Offset;
  // Index into AffineSystem::relations of the relation that closed the
  // contradictory cycle (or -1 when raised by a direct pin).
  int relation_index = -1;
};

// Union-find over integer variables where every node stores its value as
// sign * value(parent) + offset. A virtual ground node (id = size) pins
// classes to concrete values. No path compression, so unions can be undone
// in LIFO order for backtracking searches.
class AffineUnionFind {
 public:
  explicit AffineUnionFind(int num_vars);

  int num_vars() const { return static_cast<int>(nodes_.size()) - 1; }

  // Imposes x_a = sign * x_b + offset. Returns the violated kind, if any;
  // on contradiction the structure is unchanged.
  std::optional<ContradictionKind> relate(int a, int b, int sign, int offset);

  // Imposes x_a = value by linking a's root to the ground node.
  std::optional<ContradictionKind> pin(int a, int value);

  // Position of a variable inside its class: value(a) = sign * value(root)
  // + offset. The root equals the ground node for pinned classes.
  struct Resolved {
    int root;
    int sign;
    int offset;
  };
  Resolved resolve(int a) const;
  bool is_ground(int root) const { return root == ground(); }

  // Value when the tree root of a free class is taken as 0; pinned classes
  // read through to the ground.
  int value_of(int a) const;
  bool pinned(int a) const;

  // Undo support: rollback unwinds every union made after the mark.
  std::size_t mark() const { return trail_.size(); }
  void rollback(std::size_t mark);

 private:
  struct Node {
    int parent;  // own index for roots
    int sign;    // value = sign * value(parent) + offset
    int offset;
    int rank;
  };

  struct Walk {
    int root;
    int sign;
    int offset;
  };

  struct TrailEntry {
    int child;         // root that gained a parent
    bool rank_bumped;  // whether the parent's rank was incremented
  };

  Walk find(int a) const;
  void link(int child_root, int parent_root, int sign, int offset);
  std::optional<ContradictionKind> pin_root(int root, int value);

  int ground() const { return static_cast<int>(nodes_.size()) - 1; }

  std::vector<Node> nodes_;
  std::vector<TrailEntry> trail_;  // unions in application order
};

struct AffineSolveResult {
  std::optional<Contradiction> contradiction;
  // One value per variable; meaningful only when there is no contradiction.
  std::vector<int> values;

  bool ok() const { return !contradiction.has_value(); }
};

// Decides the system exactly and returns the canonical solution or the
// first contradiction in relation order. Canonical means pinned variables
// take their forced values and each free component zeroes its least-index
// variable, so the result does not depend on union order.
AffineSolveResult affine_solve(const AffineSystem& sys);

}  // namespace symplan
