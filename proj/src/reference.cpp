#include "dmt/reference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "dmt/morse.hpp"

namespace dmt {

namespace {

// Join of a lower-link simplex with its apex; ids are shared with the parent
// complex and the apex value exceeds every lower-link value, so appending
// keeps the canonical vertex order.
Cell join_with(const SimplicialComplex& K, const Simplex& s, VertexId v) {
  std::vector<VertexId> verts = s.verts;
  verts.push_back(v);
  const std::optional<Cell> c = K.find(std::move(verts));
  require(c.has_value(), errc::internal_error, "join of a lower link cell is missing");
  return *c;
}

void raw_into(const SimplicialComplex& K, const std::vector<VertexId>& order, Gvf& g,
              ExtractStats* stats) {
  for (VertexId v : order) {
    const SimplicialComplex L = lower_link(K, v);
    if (stats) ++stats->lower_link_calls;
    if (L.size() == 0) continue;  // v keeps its critical default

    Gvf inner = Gvf::all_critical(L);
    raw_into(L, L.vertex_order(), inner, stats);

    // The smallest critical vertex of the recursion absorbs v's downward edge.
    VertexId w0 = 0;
    bool found = false;
    for (VertexId w : L.vertex_order())
      if (inner.is_critical(*L.vertex_cell(w))) {
        w0 = w;
        found = true;
        break;
      }
    require(found, errc::internal_error, "recursive field has no critical vertex");
    g.set_pair(*K.vertex_cell(v), join_with(K, L.cell(*L.vertex_cell(w0)), v));

    // Remaining recursive criticals joined with v stay critical, which is
    // already the default.  Matched pairs are joined pairwise.
    for (int p = 0; p <= L.dim(); ++p)
      for (std::uint32_t i = 0; i < L.level_size(p); ++i) {
        const Cell t{p, i};
        if (!inner.is_tail(t)) continue;
        g.set_pair(join_with(K, L.cell(t), v), join_with(K, L.cell(inner.r(t)), v));
      }
  }
}

}  // namespace

Gvf extract_raw_ordered(const SimplicialComplex& K, const std::vector<VertexId>& order,
                        ExtractStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  {
    std::vector<VertexId> a = order;
    std::vector<VertexId> b = K.vertex_order();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    require(a == b, errc::invalid_argument, "order is not a permutation of the vertices");
  }
  Gvf g = Gvf::all_critical(K);
  raw_into(K, order, g, stats);
  if (stats)
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return g;
}

Gvf extract_raw(const SimplicialComplex& K, ExtractStats* stats) {
  return extract_raw_ordered(K, K.vertex_order(), stats);
}

std::vector<GradientPath> gradient_paths(const Gvf& g, Cell start, std::uint64_t max_paths) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  const SimplicialComplex& K = *g.K;
  require(start.dim >= 1 && start.idx < K.level_size(start.dim), errc::invalid_argument,
          "path start must be a stored cell of dimension at least 1");
  require(g.is_critical(start), errc::not_critical, "gradient paths start at a critical cell");

  std::vector<GradientPath> out;
  std::vector<std::pair<Cell, Cell>> pairs;
  std::unordered_set<Cell, CellHash> on_path;  // cyclic-input guard
  std::uint64_t budget = max_paths;

  // From a head, step to every face but the tail just climbed; a critical
  // face ends a path, a matched tail climbs again.  Heads below are dead
  // ends: flow never enters a head from above.
  auto dfs = [&](auto&& self, Cell head, Cell came) -> void {
    for (std::uint32_t j : K.faces(head)) {
      const Cell gamma{head.dim - 1, j};
      if (gamma == came) continue;
      if (g.is_critical(gamma)) {
        require(budget > 0, errc::path_limit_exceeded, "gradient path enumeration exceeded cap");
        --budget;
        out.push_back({start, pairs, gamma});
      } else if (g.is_tail(gamma)) {
        require(on_path.insert(gamma).second, errc::invalid_gvf,
                "gradient path revisits a matched cell; field is cyclic");
        const Cell h2 = g.r(gamma);
        pairs.emplace_back(gamma, h2);
        self(self, h2, gamma);
        pairs.pop_back();
        on_path.erase(gamma);
      }
    }
  };
  for (std::uint32_t j : K.faces(start)) {
    const Cell gamma{start.dim - 1, j};
    if (!g.is_tail(gamma)) continue;
    const Cell h = g.r(gamma);
    on_path.insert(gamma);
    pairs.emplace_back(gamma, h);
    dfs(dfs, h, gamma);
    pairs.pop_back();
    on_path.erase(gamma);
  }
  return out;
}

Gvf extract_cancel(const Gvf& g, const CancelConfig& cfg) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  require(!std::isnan(cfg.persistence) && cfg.persistence >= 0, errc::invalid_argument,
          "persistence threshold must be nonnegative");
  require(cfg.dim >= 1, errc::invalid_argument, "cancellation dimension must be at least 1");
  {
    const ValidationReport rep = validate_gvf(g);
    if (!rep.ok())
      fail(errc::invalid_gvf, "cancellation needs a valid field: " + rep.first_violation());
  }
  const SimplicialComplex& K = *g.K;
  Gvf out = g;
  if (cfg.dim > K.dim()) return out;

  // Criticals of the target dimension, cheapest first; ties broken by lex
  // order, which is total within a dimension.
  std::vector<Cell> snapshot = out.criticals_at(cfg.dim);
  std::sort(snapshot.begin(), snapshot.end(), [&K](Cell a, Cell b) {
    const Simplex& sa = K.cell(a);
    const Simplex& sb = K.cell(b);
    if (sa.maxh() != sb.maxh()) return sa.maxh() < sb.maxh();
    return lex_compare(sa, sb) == Ordering::less;
  });

  for (const Cell sigma : snapshot) {
    if (!out.is_critical(sigma)) continue;
    const double s = K.cell(sigma).maxh();

    std::vector<GradientPath> paths;
    try {
      paths = gradient_paths(out, sigma, cfg.max_paths);
    } catch (const error& e) {
      if (e.code() != errc::path_limit_exceeded) throw;
      std::fprintf(stderr, "extract_cancel: skipping a critical %d-cell: %s\n", sigma.dim,
                   e.what());
      continue;
    }
    std::erase_if(paths, [&](const GradientPath& P) {
      return !(s - K.cell(P.end).maxh() < cfg.persistence);
    });
    if (paths.empty()) continue;

    // Reversal is sound only when the path is the single flow connection
    // between the two cells, so a critical face of sigma counts against the
    // endpoint's multiplicity like a zero-pair path would.  All paths to one
    // endpoint share a persistence value; the window cannot split them.
    std::unordered_map<Cell, std::size_t, CellHash> ends;
    for (std::uint32_t j : K.faces(sigma)) {
      const Cell gamma{cfg.dim - 1, j};
      if (out.is_critical(gamma)) ++ends[gamma];
    }
    for (const GradientPath& P : paths) ++ends[P.end];

    const GradientPath* best = nullptr;
    double best_m = kInfinitePersistence;
    for (const GradientPath& P : paths) {
      if (ends.at(P.end) != 1) continue;
      const double m = K.cell(P.end).maxh();
      if (m < best_m) {
        best_m = m;
        best = &P;
      }
    }
    if (best == nullptr) continue;

    // Reverse the chosen path: the start turns head over the first tail,
    // every later tail re-pairs with the head before it, the end turns tail
    // of the last head.
    out.set_pair(best->pairs.front().first, best->start);
    for (std::size_t k = 1; k < best->pairs.size(); ++k)
      out.set_pair(best->pairs[k].first, best->pairs[k - 1].second);
    out.set_pair(best->end, best->pairs.back().second);
  }
  return out;
}

Gvf extract(const SimplicialComplex& K, double persistence, ExtractStats* stats,
            std::uint64_t max_paths) {
  require(!std::isnan(persistence) && persistence >= 0, errc::invalid_argument,
          "persistence threshold must be nonnegative");
  const auto t0 = std::chrono::steady_clock::now();
  Gvf g = extract_raw(K, stats);
  for (int j = 1; j <= K.dim(); ++j) g = extract_cancel(g, {persistence, j, max_paths});
  if (stats)
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return g;
}

std::uint64_t count_lower_link_calls(const SimplicialComplex& K) {
  std::uint64_t calls = 0;
  for (VertexId v : K.vertex_order()) {
    const SimplicialComplex L = lower_link(K, v);
    ++calls;
    if (L.size() > 0) calls += count_lower_link_calls(L);
  }
  return calls;
}

Gvf cancel_kid(const Gvf& g) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  {
    const ValidationReport rep = validate_gvf(g);
    if (!rep.ok())
      fail(errc::invalid_gvf, "cancellation needs a valid field: " + rep.first_violation());
  }
  const SimplicialComplex& K = *g.K;
  const int d = K.dim();
  Gvf out = g;
  if (d < 1) return out;

  // Right-child / left-parent decorations of the sub-diagram induced by the
  // critical cells alone.
  std::vector<std::vector<std::int32_t>> srchild(d + 1), slparent(d + 1);
  for (int p = 0; p <= d; ++p) {
    srchild[p].assign(K.level_size(p), -1);
    slparent[p].assign(K.level_size(p), -1);
  }
  for (int p = 1; p <= d; ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      if (!g.is_critical(Cell{p, i})) continue;
      std::int32_t best = -1;
      for (std::uint32_t j : K.faces(Cell{p, i})) {
        if (!g.is_critical(Cell{p - 1, j})) continue;
        if (best < 0 || lex_compare(K.cell(Cell{p - 1, j}), K.cell(Cell{p - 1, (std::uint32_t)best})) ==
                            Ordering::greater)
          best = static_cast<std::int32_t>(j);
      }
      srchild[p][i] = best;
    }
  for (int p = 0; p < d; ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      if (!g.is_critical(Cell{p, i})) continue;
      std::int32_t best = -1;
      for (std::uint32_t j : K.cofaces(Cell{p, i})) {
        if (!g.is_critical(Cell{p + 1, j})) continue;
        if (best < 0 || lex_compare(K.cell(Cell{p + 1, j}), K.cell(Cell{p + 1, (std::uint32_t)best})) ==
                            Ordering::less)
          best = static_cast<std::int32_t>(j);
      }
      slparent[p][i] = best;
    }

  for (int p = d; p >= 1; --p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell sigma{p, i};
      if (!g.is_critical(sigma) || !out.is_critical(sigma)) continue;
      const std::int32_t rc = srchild[p][i];
      if (rc < 0 || slparent[p - 1][rc] != static_cast<std::int32_t>(i)) continue;
      const Cell gamma{p - 1, static_cast<std::uint32_t>(rc)};
      require(out.is_critical(gamma), errc::internal_error, "sub-diagram child already taken");
      out.set_pair(gamma, sigma);
    }

  const ValidationReport rep = validate_gvf(out);
  if (!rep.ok())
    fail(errc::invalid_result,
         "conjectured cancellation produced an invalid field: " + rep.first_violation());
  return out;
}

}  // namespace dmt
