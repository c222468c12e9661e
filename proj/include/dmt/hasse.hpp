#pragma once

#include "dmt/complex.hpp"

namespace dmt {

enum class Mark : std::uint8_t { none, head, tail, critical };

// Hasse diagram of a complex plus per-node decorations. Nodes are the
// complex's cells; the edge lists are its codim-1 adjacency. Assignment
// marks are owned by extraction runs and reset at the start of each run;
// decoration adds a constant number of fields per node.
struct DecoratedHasse {
  const SimplicialComplex* K = nullptr;
  bool decorated = false;

  std::vector<std::vector<double>> maxh;
  std::vector<std::vector<std::int32_t>> rchild;   // index into level p-1; -1 for vertices
  std::vector<std::vector<std::int32_t>> lparent;  // index into level p+1; -1 when no coface
  std::vector<std::vector<Mark>> mark;

  std::uint64_t lex_comparisons = 0;  // counted during decoration

  std::uint64_t node_count() const {
    std::uint64_t n = 0;
    for (const auto& lv : maxh) n += lv.size();
    return n;
  }
  std::uint64_t edge_count() const { return K->hasse_edge_count(); }

  void reset_marks() {
    for (auto& lv : mark) std::fill(lv.begin(), lv.end(), Mark::none);
  }
};

DecoratedHasse build_hasse(const SimplicialComplex& K);

// Fills maxh (level by level, merging two distinct faces), rchild (lex-max
// face) and lparent (lex-min coface). Idempotent; lex comparisons are
// charged to lex_comparisons, at most a constant number per Hasse edge.
void decorate(DecoratedHasse& H);

// lparent(rchild(σ)) == σ. Requires dim(σ) ≥ 1; a vertex has no child.
bool is_left_right_parent(const DecoratedHasse& H, Cell c);

}  // namespace dmt
