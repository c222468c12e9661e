#include "dmt/hasse.hpp"

#include <algorithm>

namespace dmt {

DecoratedHasse build_hasse(const SimplicialComplex& K) {
  DecoratedHasse H;
  H.K = &K;
  int d = K.dim();
  H.maxh.resize(d + 1);
  H.rchild.resize(d + 1);
  H.lparent.resize(d + 1);
  H.mark.resize(d + 1);
  for (int p = 0; p <= d; ++p) {
    std::size_t n = K.level_size(p);
    H.maxh[p].assign(n, 0.0);
    H.rchild[p].assign(n, -1);
    H.lparent[p].assign(n, -1);
    H.mark[p].assign(n, Mark::none);
  }
  return H;
}

void decorate(DecoratedHasse& H) {
  if (H.decorated) return;
  const SimplicialComplex& K = *H.K;
  int d = K.dim();

  // maxh, level by level: a vertex carries its value; any two distinct
  // faces of σ jointly contain every vertex of σ, so their merged maxh
  // is maxh(σ).
  for (int p = 0; p <= d; ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      if (p == 0) {
        H.maxh[0][i] = K.cell(Cell{0, i}).key[0];
      } else {
        auto fs = K.faces(Cell{p, i});
        H.maxh[p][i] = std::max(H.maxh[p - 1][fs[0]], H.maxh[p - 1][fs[1]]);
      }
    }
  }

  auto lex = [&H, &K](Cell a, Cell b) {
    ++H.lex_comparisons;
    return lex_compare(K.cell(a), K.cell(b));
  };

  // rchild: lex-max face.
  for (int p = 1; p <= d; ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      auto fs = K.faces(Cell{p, i});
      std::uint32_t best = fs[0];
      for (std::size_t k = 1; k < fs.size(); ++k) {
        if (lex(Cell{p - 1, fs[k]}, Cell{p - 1, best}) == Ordering::greater) best = fs[k];
      }
      H.rchild[p][i] = static_cast<std::int32_t>(best);
    }
  }

  // lparent: lex-min coface.
  for (int p = 0; p < d; ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      auto cs = K.cofaces(Cell{p, i});
      if (cs.empty()) continue;
      std::uint32_t best = cs[0];
      for (std::size_t k = 1; k < cs.size(); ++k) {
        if (lex(Cell{p + 1, cs[k]}, Cell{p + 1, best}) == Ordering::less) best = cs[k];
      }
      H.lparent[p][i] = static_cast<std::int32_t>(best);
    }
  }

  H.decorated = true;
}

bool is_left_right_parent(const DecoratedHasse& H, Cell c) {
  if (c.dim == 0) fail(errc::vertex_has_no_child, "vertices have no right child");
  require(H.decorated, errc::internal_error, "diagram not decorated");
  std::int32_t rc = H.rchild[c.dim][c.idx];
  std::int32_t lp = H.lparent[c.dim - 1][rc];
  // rchild(σ) has σ as a coface, so it always has a parent.
  require(lp >= 0, errc::internal_error, "right child without a parent");
  return static_cast<std::uint32_t>(lp) == c.idx;
}

}  // namespace dmt
