#include "dmt/extract.hpp"

#include <chrono>

namespace dmt {

Gvf extract_right_child(DecoratedHasse& H, ExtractStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  decorate(H);
  H.reset_marks();

  const SimplicialComplex& K = *H.K;
  Gvf g = Gvf::all_critical(K);

  for (int p = K.dim(); p >= 1; --p) {
    const std::size_t n = K.level_size(p);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (H.mark[p][i] != Mark::none) continue;
      const Cell sigma{p, i};
      if (is_left_right_parent(H, sigma)) {
        const std::uint32_t rc = static_cast<std::uint32_t>(H.rchild[p][i]);
        // The right child cannot have been taken: any cell that claimed it
        // earlier would itself be its unique left parent.
        require(H.mark[p - 1][rc] == Mark::none, errc::internal_error,
                "right child already assigned");
        H.mark[p][i] = Mark::head;
        H.mark[p - 1][rc] = Mark::tail;
        g.set_pair(Cell{p - 1, rc}, sigma);
      } else {
        H.mark[p][i] = Mark::critical;
      }
    }
  }
  for (std::uint32_t i = 0; i < K.level_size(0); ++i)
    if (H.mark[0][i] == Mark::none) H.mark[0][i] = Mark::critical;

  if (stats) {
    stats->lex_comparisons = H.lex_comparisons;
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return g;
}

Gvf extract_right_child(const SimplicialComplex& K, ExtractStats* stats) {
  DecoratedHasse H = build_hasse(K);
  return extract_right_child(H, stats);
}

}  // namespace dmt
