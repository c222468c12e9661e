#pragma once

#include "dmt/complex.hpp"

namespace dmt {

enum class CellClass : std::uint8_t { head, tail, critical };

// Discrete gradient vector field on a complex: a partition of the cells
// into heads H, tails T and criticals C, with the bijection r : T -> H
// pairing each tail with a codim-1 coface. Stored as per-level arrays
// aligned with the complex's storage, so it stays valid independently of
// any Hasse diagram's assignment marks.
struct Gvf {
  const SimplicialComplex* K = nullptr;
  std::vector<std::vector<CellClass>> cls;
  std::vector<std::vector<std::int32_t>> up;    // tail -> head index in level p+1, else -1
  std::vector<std::vector<std::int32_t>> down;  // head -> tail index in level p-1, else -1

  static Gvf all_critical(const SimplicialComplex& K);

  CellClass cls_of(Cell c) const { return cls[c.dim][c.idx]; }
  bool is_head(Cell c) const { return cls_of(c) == CellClass::head; }
  bool is_tail(Cell c) const { return cls_of(c) == CellClass::tail; }
  bool is_critical(Cell c) const { return cls_of(c) == CellClass::critical; }

  // r(tail); the tail must be matched.
  Cell r(Cell t) const {
    require(is_tail(t) && up[t.dim][t.idx] >= 0, errc::internal_error, "r on unmatched cell");
    return Cell{t.dim + 1, static_cast<std::uint32_t>(up[t.dim][t.idx])};
  }
  Cell tail_of(Cell h) const {
    require(is_head(h) && down[h.dim][h.idx] >= 0, errc::internal_error, "no tail for cell");
    return Cell{h.dim - 1, static_cast<std::uint32_t>(down[h.dim][h.idx])};
  }

  void set_critical(Cell c) {
    cls[c.dim][c.idx] = CellClass::critical;
    up[c.dim][c.idx] = -1;
    down[c.dim][c.idx] = -1;
  }

  // Matches tail t with head h (h must be one dimension up).
  void set_pair(Cell t, Cell h) {
    require(h.dim == t.dim + 1, errc::internal_error, "pair is not codim-1");
    cls[t.dim][t.idx] = CellClass::tail;
    cls[h.dim][h.idx] = CellClass::head;
    up[t.dim][t.idx] = static_cast<std::int32_t>(h.idx);
    down[h.dim][h.idx] = static_cast<std::int32_t>(t.idx);
  }

  std::vector<Cell> cells_of(CellClass c) const;
  std::vector<Cell> heads() const { return cells_of(CellClass::head); }
  std::vector<Cell> tails() const { return cells_of(CellClass::tail); }
  std::vector<Cell> criticals() const { return cells_of(CellClass::critical); }

  // Criticals of one dimension, in storage order.
  std::vector<Cell> criticals_at(int p) const;
};

// Exact equality of the partition and matching; both fields must be over
// the same complex object.
bool operator==(const Gvf& a, const Gvf& b);

}  // namespace dmt
