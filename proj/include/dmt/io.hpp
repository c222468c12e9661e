#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dmt/extract.hpp"
#include "dmt/gvf.hpp"

namespace dmt {

// Text format: `v <id> <value>` declares a vertex, `s <id> <id> ...` a
// maximal simplex, `#` starts a comment, blank lines are skipped.  Every
// declared vertex is a cell of the complex even when no `s` line uses it.
SimplicialComplex parse_complex_text(std::istream& in, const std::string& name = "<input>");
SimplicialComplex parse_complex_file(const std::string& path);

// Inverse of the parser: emits one `v` line per vertex (ascending f0) and one
// `s` line per maximal simplex (by (dim, lex)).
std::string serialize_complex(const SimplicialComplex& K);

// JSON document with keys heads/tails/criticals/matching/critical_counts and,
// when stats are given, counters.  Cells appear as vertex-id arrays sorted by
// (dimension, lex key), so two equal partitions serialize identically.
nlohmann::ordered_json result_document(const Gvf& g, const ExtractStats* stats = nullptr);

// Strips the parts of a result document that legitimately differ between
// algorithms (operation counters, timings) for equality comparison.
nlohmann::ordered_json partition_content(nlohmann::ordered_json doc);

// DOT digraph layered by dimension, one rank per level: heads are boxes,
// tails pentagons, criticals hexagons; matched incidences point upward, all
// others downward.
std::string export_dot(const Gvf& g);

// Closure of a single d-simplex on vertices 0..d with f0(i) = i.
SimplicialComplex make_simplex_closure(int d);

// Boundary of a (d+1)-simplex: a triangulated d-sphere.
SimplicialComplex make_sphere(int d);

// Flag complex of a sampled graph: each edge kept with the given probability,
// cliques filled up to max_dim.  Deterministic for a fixed seed.
SimplicialComplex make_random_flag(int vertices, double edge_probability, int max_dim,
                                   std::uint64_t seed);

// Entry point behind the `dmt` binary.  Exit codes: 0 ok, 1 a validation or
// comparison check failed, 2 usage or input errors.
int run_cli(int argc, const char* const* argv);

}  // namespace dmt
