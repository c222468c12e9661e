#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "dmt/extract.hpp"
#include "dmt/gvf.hpp"

namespace dmt {

inline constexpr double kInfinitePersistence = std::numeric_limits<double>::infinity();
inline constexpr std::uint64_t kDefaultMaxPaths = 1u << 20;

// Alternating descending walk between two critical cells: the start (a
// critical cell one dimension up), at least one matched (tail, head) pair,
// and the critical end.  Consecutive heads share the tail between them;
// the end is a face of the last head distinct from its tail.
struct GradientPath {
  Cell start;
  std::vector<std::pair<Cell, Cell>> pairs;  // (tail, head = r(tail)), in walk order
  Cell end;

  std::size_t r() const { return pairs.size(); }
};

struct CancelConfig {
  double persistence = 0.0;  // threshold; nonnegative, +inf allowed
  int dim = 1;               // cancel criticals of this dimension against dim-1
  std::uint64_t max_paths = kDefaultMaxPaths;
};

// Per-vertex recursion on lower links.  An empty lower link leaves the vertex
// critical; otherwise the vertex becomes the tail of the edge toward the
// smallest recursive critical vertex, and the recursive output is joined with
// the vertex (criticals stay critical, matched pairs stay matched).
Gvf extract_raw(const SimplicialComplex& K, ExtractStats* stats = nullptr);

// Same, but processing vertices in the given order.  The result never depends
// on the order; this entry point exists so tests can prove that.
Gvf extract_raw_ordered(const SimplicialComplex& K, const std::vector<VertexId>& order,
                        ExtractStats* stats = nullptr);

// Every alternating path from the critical cell `start` down to a critical
// cell one dimension below, by depth-first traversal.  Deterministic order.
// Throws errc::path_limit_exceeded beyond max_paths.
std::vector<GradientPath> gradient_paths(const Gvf& g, Cell start,
                                         std::uint64_t max_paths = kDefaultMaxPaths);

// One cancellation sweep over the criticals of cfg.dim, lowest (maxh, lex)
// first: reverses the cheapest path whose endpoint is reachable exactly once,
// removing both endpoints from the critical set.  Returns the new field.
Gvf extract_cancel(const Gvf& g, const CancelConfig& cfg);

// extract_raw followed by a cancellation sweep per dimension 1..dim K.
Gvf extract(const SimplicialComplex& K, double persistence, ExtractStats* stats = nullptr,
            std::uint64_t max_paths = kDefaultMaxPaths);

// Replays the recursion structure of extract_raw, counting one call per
// vertex per level of nesting.
std::uint64_t count_lower_link_calls(const SimplicialComplex& K);

// Conjectured cancellation pass: repeats the right-child sweep on the
// sub-diagram induced by critical cells only.  The result is validated and
// rejected (errc::invalid_result) if the new matching is not a gradient
// field; the input is never modified.
Gvf cancel_kid(const Gvf& g);

}  // namespace dmt
