#pragma once

#include <string>
#include <vector>

#include "dmt/gvf.hpp"

namespace dmt {

// Cell values aligned with complex storage: f[p][i] is the value on cell {p,i}.
struct DiscreteMorseFunction {
  const SimplicialComplex* K = nullptr;
  std::vector<std::vector<double>> f;
  double eps = 0.0;    // requested bound on |f(sigma) - max f0 over sigma|
  double delta = 0.0;  // bound actually used, min(eps, smallest f0 gap)

  double at(Cell c) const { return f[static_cast<std::size_t>(c.dim)][c.idx]; }
};

// Each cell may have at most one face with a value >= its own and at most
// one coface with a value <= its own.
bool is_discrete_morse(const SimplicialComplex& K, const std::vector<std::vector<double>>& f);

// Pairs every cell with its exceptional face, everything else critical.
// Fails with errc::not_morse if some cell would be paired twice.
Gvf induced_gvf(const SimplicialComplex& K, const std::vector<std::vector<double>>& f);

inline bool is_discrete_morse(const DiscreteMorseFunction& f) {
  require(f.K != nullptr, errc::invalid_argument, "function has no complex attached");
  return is_discrete_morse(*f.K, f.f);
}
inline Gvf induced_gvf(const DiscreteMorseFunction& f) {
  require(f.K != nullptr, errc::invalid_argument, "function has no complex attached");
  return induced_gvf(*f.K, f.f);
}

struct ValidationReport {
  bool is_partition = true;  // every cell carries exactly one class, no stale pointers
  bool is_bijection = true;  // tail and head pointers agree one-to-one
  bool is_codim1 = true;     // every pair spans consecutive dimensions along a face
  bool is_acyclic = true;    // flow relation has no directed cycle
  std::vector<std::string> violations;
  std::size_t head_count = 0;
  std::size_t tail_count = 0;
  std::size_t critical_count = 0;
  std::vector<Cell> cycle;  // witness when the matching has a closed V-path

  bool ok() const { return is_partition && is_bijection && is_codim1 && is_acyclic; }
  std::string first_violation() const { return violations.empty() ? "" : violations.front(); }
};

// Checks the full gradient-field contract: classes partition the cells, the
// matching is a dimension-shifting bijection along face relations, and the
// induced relation has no directed cycle.
ValidationReport validate_gvf(const Gvf& g);

// Builds a discrete Morse function whose induced field is exactly g.  Values
// stay within min(eps, smallest f0 gap) of the largest vertex value of each
// cell.  Fails with errc::invalid_gvf when g is invalid or pairs cells with
// different top vertices, since no such function can then stay that close.
DiscreteMorseFunction realize_morse_function(const Gvf& g, double eps);

std::vector<std::size_t> critical_counts(const Gvf& g);

// Mod-2 Betti numbers via boundary-matrix rank over Z2.
std::vector<std::size_t> betti_z2(const SimplicialComplex& K);

// Alternating sum of critical counts equals the Euler characteristic.
bool euler_identity_holds(const Gvf& g);

// c_p >= b_p in every dimension.
bool morse_inequalities_hold(const Gvf& g, const std::vector<std::size_t>& betti);

}  // namespace dmt
