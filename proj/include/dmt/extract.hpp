#pragma once

#include "dmt/gvf.hpp"
#include "dmt/hasse.hpp"

namespace dmt {

struct ExtractStats {
  std::uint64_t lex_comparisons = 0;   // charged while decorating the diagram
  std::uint64_t lower_link_calls = 0;  // every lower-link computation, empty ones included
  double wall_ms = 0.0;
};

// Single sweep down the decorated diagram: an unassigned left-right parent
// is paired with its right child, every other unassigned cell is critical.
// Output does not depend on within-level iteration order.
Gvf extract_right_child(DecoratedHasse& H, ExtractStats* stats = nullptr);
Gvf extract_right_child(const SimplicialComplex& K, ExtractStats* stats = nullptr);

}  // namespace dmt
