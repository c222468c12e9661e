#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dmt/error.hpp"

namespace dmt {

using VertexId = std::int64_t;

// Injective vertex map f0; the function being extended.
class VertexValues {
 public:
  VertexValues() = default;

  // Checks injectivity across all declared vertices.
  static VertexValues from_pairs(const std::vector<std::pair<VertexId, double>>& pairs);

  double at(VertexId v) const {
    auto it = map_.find(v);
    if (it == map_.end()) fail(errc::unknown_vertex, "no value for vertex " + std::to_string(v));
    return it->second;
  }

  bool contains(VertexId v) const { return map_.count(v) != 0; }
  std::size_t size() const { return map_.size(); }

  // Ids sorted ascending by value.
  std::vector<VertexId> ids_by_value() const;

  // Smallest gap between two distinct values; +inf when fewer than two vertices.
  double min_gap() const;

 private:
  std::unordered_map<VertexId, double> map_;
};

// Vertices sorted ascending by f0; the lex key (values descending) is the
// reversed value list, cached at construction.
struct Simplex {
  std::vector<VertexId> verts;
  std::vector<double> key;  // f0 values, descending

  int dim() const { return static_cast<int>(verts.size()) - 1; }
  double maxh() const { return key.front(); }  // top vertex value
};

enum class Ordering { less, equal, greater };

// Lexicographic order on the descending-value keys. Same dimension required;
// equality holds only for the same simplex (f0 is injective).
Ordering lex_compare(const Simplex& a, const Simplex& b);

// Reference to a simplex in a complex: (dimension, index within level).
struct Cell {
  int dim = -1;
  std::uint32_t idx = 0;

  bool operator==(const Cell&) const = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    return std::hash<std::uint64_t>()((std::uint64_t(std::uint32_t(c.dim)) << 32) | c.idx);
  }
};

struct VertexVecHash {
  std::size_t operator()(const std::vector<VertexId>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (VertexId x : v) {
      h ^= std::hash<VertexId>()(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Finite simplicial complex, downward closed, stored per dimension.
// Codim-1 adjacency is built once at construction by hashing each face of
// each simplex; faces of a p-simplex are stored in drop-vertex order
// (faces(σ)[k] omits the k-th smallest vertex).
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  int dim() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t size() const { return total_; }
  std::size_t level_size(int p) const {
    return (p >= 0 && p <= dim()) ? levels_[p].size() : 0;
  }

  const Simplex& cell(Cell c) const { return levels_[c.dim][c.idx]; }
  const std::vector<Simplex>& level(int p) const { return levels_[p]; }

  std::span<const std::uint32_t> faces(Cell c) const {
    return c.dim > 0 ? std::span<const std::uint32_t>(faces_[c.dim][c.idx])
                     : std::span<const std::uint32_t>();
  }
  std::span<const std::uint32_t> cofaces(Cell c) const {
    return c.dim < dim() ? std::span<const std::uint32_t>(cofaces_[c.dim][c.idx])
                         : std::span<const std::uint32_t>();
  }

  const VertexValues& values() const { return values_; }
  double f0(VertexId v) const { return values_.at(v); }

  // Vertex ids present in the complex, ascending by f0.
  const std::vector<VertexId>& vertex_order() const { return vertex_order_; }

  // Looks up a simplex by vertex set (any input order).
  std::optional<Cell> find(std::vector<VertexId> verts) const;

  // Cell of a vertex id.
  std::optional<Cell> vertex_cell(VertexId v) const;

  std::uint64_t hasse_edge_count() const;

 private:
  friend SimplicialComplex build_complex(const VertexValues&,
                                         const std::vector<std::vector<VertexId>>&);
  friend SimplicialComplex complex_from_closed_cells(const VertexValues&,
                                                     std::vector<std::vector<VertexId>>);
  friend SimplicialComplex permute_levels(const SimplicialComplex&,
                                          const std::vector<std::vector<std::uint32_t>>&);

  void finalize();

  VertexValues values_;
  std::vector<std::vector<Simplex>> levels_;
  std::vector<std::vector<std::vector<std::uint32_t>>> faces_;
  std::vector<std::vector<std::vector<std::uint32_t>>> cofaces_;
  std::unordered_map<std::vector<VertexId>, Cell, VertexVecHash> index_;
  std::vector<VertexId> vertex_order_;
  std::size_t total_ = 0;
};

// Downward closure of the given maximal simplices. Vertex ids must have
// values; a simplex must not repeat a vertex.
SimplicialComplex build_complex(const VertexValues& values,
                                const std::vector<std::vector<VertexId>>& maximal);

// Builds a complex from an already downward-closed cell list (used for links).
SimplicialComplex complex_from_closed_cells(const VertexValues& values,
                                            std::vector<std::vector<VertexId>> cells);

// Test helper: same complex with each level's storage order permuted.
// perm[p][new_index] = old_index.
SimplicialComplex permute_levels(const SimplicialComplex& K,
                                 const std::vector<std::vector<std::uint32_t>>& perm);

// Link of v via the two-color pass over the codim-1 adjacency: simplices
// containing v are colored, then their uncolored faces form the link.
std::vector<Cell> link(const SimplicialComplex& K, VertexId v);

// Subcomplex of the link induced by vertices with f0 below f0(v); keeps the
// original vertex ids and carries the restricted values.
SimplicialComplex lower_link(const SimplicialComplex& K, VertexId v);

}  // namespace dmt
