#pragma once

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dmt/complex.hpp"
#include "dmt/gvf.hpp"

namespace tst {

using namespace dmt;

inline std::string fixture_path(const std::string& name) {
  return std::string(DMT_FIXTURE_DIR) + "/" + name;
}

inline SimplicialComplex K_of(std::vector<std::pair<VertexId, double>> vals,
                              std::vector<std::vector<VertexId>> maximal) {
  return build_complex(VertexValues::from_pairs(vals), maximal);
}

// Identity values f0(i) = i for every id appearing in the maximal sets.
inline SimplicialComplex K_id(std::vector<std::vector<VertexId>> maximal) {
  std::set<VertexId> ids;
  for (const auto& m : maximal)
    for (VertexId v : m) ids.insert(v);
  std::vector<std::pair<VertexId, double>> vals;
  for (VertexId v : ids) vals.emplace_back(v, static_cast<double>(v));
  return build_complex(VertexValues::from_pairs(vals), maximal);
}

template <class F>
void expect_error(errc code, F&& f) {
  try {
    f();
    FAIL_CHECK("expected error ", to_string(code), ", nothing was thrown");
  } catch (const error& e) {
    CHECK_MESSAGE(e.code() == code, "expected ", to_string(code), ", got: ", e.what());
  }
}

// Cells as id-sorted vertex lists, independent of f0 and storage order.
inline std::vector<VertexId> ids_of(const SimplicialComplex& K, Cell c) {
  std::vector<VertexId> v = K.cell(c).verts;
  std::sort(v.begin(), v.end());
  return v;
}

inline std::set<std::vector<VertexId>> cell_set(const SimplicialComplex& K) {
  std::set<std::vector<VertexId>> out;
  for (int p = 0; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) out.insert(ids_of(K, Cell{p, i}));
  return out;
}

// Comparable form of a field across different complex objects.
struct CanonGvf {
  std::set<std::vector<VertexId>> criticals;
  std::set<std::pair<std::vector<VertexId>, std::vector<VertexId>>> pairs;

  bool operator==(const CanonGvf&) const = default;
};

inline CanonGvf canon(const Gvf& g) {
  CanonGvf c;
  const SimplicialComplex& K = *g.K;
  for (int p = 0; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell cell{p, i};
      if (g.is_critical(cell))
        c.criticals.insert(ids_of(K, cell));
      else if (g.is_tail(cell))
        c.pairs.emplace(ids_of(K, cell), ids_of(K, g.r(cell)));
    }
  return c;
}

inline bool subset_of(std::vector<VertexId> a, std::vector<VertexId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Link by its definition: cells not containing v whose join with v is a cell.
inline std::set<std::vector<VertexId>> link_oracle(const SimplicialComplex& K, VertexId v) {
  std::set<std::vector<VertexId>> out;
  for (int p = 0; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      std::vector<VertexId> verts = K.cell(Cell{p, i}).verts;
      if (std::find(verts.begin(), verts.end(), v) != verts.end()) continue;
      std::vector<VertexId> joined = verts;
      joined.push_back(v);
      if (K.find(joined).has_value()) out.insert(ids_of(K, Cell{p, i}));
    }
  return out;
}

// Lex-maximal codim-1 face by scanning the whole lower level with subset tests.
inline std::optional<Cell> rchild_oracle(const SimplicialComplex& K, Cell c) {
  if (c.dim == 0) return std::nullopt;
  std::optional<Cell> best;
  for (std::uint32_t i = 0; i < K.level_size(c.dim - 1); ++i) {
    const Cell f{c.dim - 1, i};
    if (!subset_of(K.cell(f).verts, K.cell(c).verts)) continue;
    if (!best || lex_compare(K.cell(f), K.cell(*best)) == Ordering::greater) best = f;
  }
  return best;
}

// Lex-minimal codim-1 coface, same brute-force style.
inline std::optional<Cell> lparent_oracle(const SimplicialComplex& K, Cell c) {
  if (c.dim == K.dim()) return std::nullopt;
  std::optional<Cell> best;
  for (std::uint32_t i = 0; i < K.level_size(c.dim + 1); ++i) {
    const Cell up{c.dim + 1, i};
    if (!subset_of(K.cell(c).verts, K.cell(up).verts)) continue;
    if (!best || lex_compare(K.cell(up), K.cell(*best)) == Ordering::less) best = up;
  }
  return best;
}

// Exhaustive-sequence path enumeration straight from the definition: at every
// position each cell of the fitting dimension is tried against the membership
// and incidence predicates.  Paths come out as cell sequences
// [start, t0, h0, t1, h1, ..., end].
inline std::vector<std::vector<Cell>> path_oracle(const Gvf& g, Cell start) {
  const SimplicialComplex& K = *g.K;
  const int p = start.dim - 1;
  std::vector<std::vector<Cell>> out;
  std::vector<Cell> seq{start};

  auto extend = [&](auto&& self, Cell head, Cell prev_tail) -> void {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell tau{p, i};
      if (tau == prev_tail) continue;
      if (!subset_of(K.cell(tau).verts, K.cell(head).verts)) continue;
      if (g.is_critical(tau)) {
        seq.push_back(tau);
        out.push_back(seq);
        seq.pop_back();
      } else if (g.is_tail(tau)) {
        const Cell h2 = g.r(tau);
        seq.push_back(tau);
        seq.push_back(h2);
        self(self, h2, tau);
        seq.pop_back();
        seq.pop_back();
      }
    }
  };
  for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
    const Cell tau{p, i};
    if (!g.is_tail(tau)) continue;
    if (!subset_of(K.cell(tau).verts, K.cell(start).verts)) continue;
    const Cell h = g.r(tau);
    seq.push_back(tau);
    seq.push_back(h);
    extend(extend, h, tau);
    seq.pop_back();
    seq.pop_back();
  }
  return out;
}

// Reachability closure over the flow digraph; sound for small complexes only.
inline bool acyclic_oracle(const Gvf& g) {
  const SimplicialComplex& K = *g.K;
  std::vector<Cell> cells;
  std::map<std::pair<int, std::uint32_t>, std::size_t> id;
  for (int p = 0; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      id[{p, i}] = cells.size();
      cells.push_back(Cell{p, i});
    }
  const std::size_t n = cells.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (const Cell c : cells) {
    if (g.is_tail(c)) {
      reach[id.at({c.dim, c.idx})][id.at({c.dim + 1, g.r(c).idx})] = 1;
    } else if (g.is_head(c)) {
      for (std::uint32_t j : K.faces(c))
        if (j != g.tail_of(c).idx) reach[id.at({c.dim, c.idx})][id.at({c.dim - 1, j})] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (reach[k][j]) reach[i][j] = 1;
    }
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) return false;
  return true;
}

// Connected components over vertices and edges.
inline std::map<VertexId, int> vertex_components(const SimplicialComplex& K) {
  std::map<VertexId, VertexId> parent;
  for (VertexId v : K.vertex_order()) parent[v] = v;
  auto find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::uint32_t i = 0; i < K.level_size(1); ++i) {
    const auto& e = K.cell(Cell{1, i}).verts;
    parent[find(e[0])] = find(e[1]);
  }
  std::map<VertexId, int> comp;
  std::map<VertexId, int> label;
  for (VertexId v : K.vertex_order()) {
    const VertexId root = find(v);
    comp[v] = label.emplace(root, static_cast<int>(label.size())).first->second;
  }
  return comp;
}

// Random downward-closed complex from a handful of random maximal vertex
// sets; ids are drawn from 1..max_vertices and f0 is a shuffled ranking.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int max_vertices = 5) {
  std::uniform_int_distribution<int> nset_dist(1, 4);
  std::uniform_int_distribution<int> nv_dist(1, max_vertices);
  const int nv = nv_dist(rng);
  const int nsets = nset_dist(rng);
  std::vector<std::vector<VertexId>> maximal;
  for (int s = 0; s < nsets; ++s) {
    std::vector<VertexId> set;
    for (VertexId v = 1; v <= nv; ++v)
      if (rng() % 2 == 0) set.push_back(v);
    if (set.empty()) set.push_back(static_cast<VertexId>(1 + rng() % nv));
    maximal.push_back(std::move(set));
  }
  std::vector<double> ranks(nv);
  for (int i = 0; i < nv; ++i) ranks[i] = i + 1;
  std::shuffle(ranks.begin(), ranks.end(), rng);
  std::vector<std::pair<VertexId, double>> vals;
  for (int i = 0; i < nv; ++i) vals.emplace_back(i + 1, ranks[i]);
  return build_complex(VertexValues::from_pairs(vals), maximal);
}

// Fresh injective values on the same cell structure.
inline SimplicialComplex reshuffle_values(const SimplicialComplex& K, std::mt19937_64& rng) {
  std::vector<VertexId> ids = K.vertex_order();
  std::vector<double> ranks(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ranks[i] = static_cast<double>(i + 1);
  std::shuffle(ranks.begin(), ranks.end(), rng);
  std::vector<std::pair<VertexId, double>> vals;
  for (std::size_t i = 0; i < ids.size(); ++i) vals.emplace_back(ids[i], ranks[i]);
  std::vector<std::vector<VertexId>> maximal;
  for (int p = 0; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell c{p, i};
      if (K.cofaces(c).empty()) maximal.push_back(K.cell(c).verts);
    }
  if (maximal.empty()) return SimplicialComplex{};
  return build_complex(VertexValues::from_pairs(vals), maximal);
}

// Structure signature ignoring values; used to count distinct complexes.
inline std::string structure_signature(const SimplicialComplex& K) {
  std::string sig;
  for (const auto& cell : cell_set(K)) {
    for (VertexId v : cell) sig += std::to_string(v) + ",";
    sig += ";";
  }
  return sig;
}

}  // namespace tst
