#include "symplan/affine.hpp"

#include <climits>

#include "symplan/errors.hpp"

namespace symplan {

AffineUnionFind::AffineUnionFind(int num_vars) {
  if (num_vars < 0) {
    throw Error("AffineUnionFind: negative variable count");
  }
  nodes_.resize(static_cast<std::size_t>(num_vars) + 1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    nodes_[i] = {static_cast<int>(i), 1, 0, 0};
  }
  // The ground node outranks everything so pinned classes stay rooted at it.
  nodes_.back().rank = INT_MAX;
}

AffineUnionFind::Walk AffineUnionFind::find(int a) const {
  int sign = 1;
  int offset = 0;
  while (nodes_[a].parent != a) {
    // value(a) = sign * value(cur) + offset, unfolding one link per step.
    offset = sign * nodes_[a].offset + offset;
    sign = sign * nodes_[a].sign;
    a = nodes_[a].parent;
  }
  return {a, sign, offset};
}

void AffineUnionFind::link(int child_root, int parent_root, int sign,
                           int offset) {
  nodes_[child_root].parent = parent_root;
  nodes_[child_root].sign = sign;
  nodes_[child_root].offset = offset;
  const bool bump = nodes_[parent_root].rank == nodes_[child_root].rank;
  if (bump) {
    ++nodes_[parent_root].rank;
  }
  trail_.push_back({child_root, bump});
}

std::optional<ContradictionKind> AffineUnionFind::relate(int a, int b,
                                                         int sign,
                                                         int offset) {
  const Walk wa = find(a);
  const Walk wb = find(b);
  if (wa.root == wb.root) {
    // wa.sign * r + wa.offset = sign * (wb.sign * r + wb.offset) + offset
    const int delta = sign * wb.offset + offset - wa.offset;
    if (wa.sign == sign * wb.sign) {
      if (delta != 0) return ContradictionKind::Offset;
      return std::nullopt;
    }
    // 2 * wa.sign * r = delta, so r is pinned when delta is even.
    if (delta % 2 != 0) return ContradictionKind::Parity;
    return pin_root(wa.root, wa.sign * delta / 2);
  }
  // Express one root through the other: from
  //   wa.sign * ra + wa.offset = sign * (wb.sign * rb + wb.offset) + offset
  // ra = (wa.sign * sign * wb.sign) * rb + wa.sign * (sign*wb.offset + offset - wa.offset).
  const int link_sign = wa.sign * sign * wb.sign;
  const int link_offset = wa.sign * (sign * wb.offset + offset - wa.offset);
  if (nodes_[wa.root].rank <= nodes_[wb.root].rank) {
    link(wa.root, wb.root, link_sign, link_offset);
  } else {
    // Inverted link: rb = link_sign * ra - link_sign * link_offset.
    link(wb.root, wa.root, link_sign, -link_sign * link_offset);
  }
  return std::nullopt;
}

std::optional<ContradictionKind> AffineUnionFind::pin_root(int root,
                                                           int value) {
  if (root == ground()) {
    if (value != 0) return ContradictionKind::Offset;
    return std::nullopt;
  }
  link(root, ground(), 1, value);
  return std::nullopt;
}

std::optional<ContradictionKind> AffineUnionFind::pin(int a, int value) {
  const Walk w = find(a);
  // value(a) = w.sign * r + w.offset = value, so r = w.sign * (value - w.offset).
  if (w.root == ground()) {
    if (w.offset != value) return ContradictionKind::Offset;
    return std::nullopt;
  }
  return pin_root(w.root, w.sign * (value - w.offset));
}

AffineUnionFind::Resolved AffineUnionFind::resolve(int a) const {
  const Walk w = find(a);
  return {w.root, w.sign, w.offset};
}

int AffineUnionFind::value_of(int a) const {
  // The tree root evaluates to 0 whether free or ground, so the accumulated
  // offset is the value either way.
  return find(a).offset;
}

bool AffineUnionFind::pinned(int a) const { return find(a).root == ground(); }

void AffineUnionFind::rollback(std::size_t mark) {
  while (trail_.size() > mark) {
    const TrailEntry entry = trail_.back();
    trail_.pop_back();
    const int child = entry.child;
    const int parent = nodes_[child].parent;
    if (entry.rank_bumped) {
      --nodes_[parent].rank;
    }
    nodes_[child].parent = child;
    nodes_[child].sign = 1;
    nodes_[child].offset = 0;
  }
}

AffineSolveResult affine_solve(const AffineSystem& sys) {
  AffineSolveResult result;
  AffineUnionFind uf(sys.num_vars);
  for (std::size_t i = 0; i < sys.relations.size(); ++i) {
    const AffineRelation& r = sys.relations[i];
    if (r.lhs < 0 || r.lhs >= sys.num_vars || r.rhs < 0 ||
        r.rhs >= sys.num_vars || (r.sign != 1 && r.sign != -1)) {
      throw Error("affine_solve: malformed relation");
    }
    if (auto kind = uf.relate(r.lhs, r.rhs, r.sign, r.offset)) {
      result.contradiction = Contradiction{*kind, static_cast<int>(i)};
      return result;
    }
  }
  // Free components are re-rooted at their least-index variable so the
  // canonical solution is independent of union order.
  std::vector<int> anchor(static_cast<std::size_t>(sys.num_vars), -1);
  for (int v = 0; v < sys.num_vars; ++v) {
    const AffineUnionFind::Resolved r = uf.resolve(v);
    if (uf.is_ground(r.root)) continue;
    if (anchor[static_cast<std::size_t>(r.root)] < 0) {
      anchor[static_cast<std::size_t>(r.root)] = v;
    }
  }
  result.values.resize(static_cast<std::size_t>(sys.num_vars));
  for (int v = 0; v < sys.num_vars; ++v) {
    const AffineUnionFind::Resolved r = uf.resolve(v);
    if (uf.is_ground(r.root)) {
      result.values[static_cast<std::size_t>(v)] = r.offset;
      continue;
    }
    // value(v) = sign * root + offset with root chosen to zero the anchor:
    // 0 = a.sign * root + a.offset, so root = -a.sign * a.offset.
    const AffineUnionFind::Resolved a =
        uf.resolve(anchor[static_cast<std::size_t>(r.root)]);
    result.values[static_cast<std::size_t>(v)] =
        -r.sign * a.sign * a.offset + r.offset;
  }
  return result;
}

}  // namespace symplan
