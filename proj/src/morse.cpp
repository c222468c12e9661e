#include "dmt/morse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <unordered_map>
#include <utility>

namespace dmt {

namespace {

// f must assign one finite value to every cell of K.
void check_shape(const SimplicialComplex& K, const std::vector<std::vector<double>>& f) {
  require(f.size() == static_cast<std::size_t>(K.dim() + 1), errc::missing_value,
          "cell value table does not cover every dimension");
  for (int p = 0; p <= K.dim(); ++p) {
    require(f[p].size() == K.level_size(p), errc::missing_value,
            "cell value table size mismatch");
    for (double x : f[p])
      require(std::isfinite(x), errc::missing_value, "cell value is not finite");
  }
}

}  // namespace

bool is_discrete_morse(const SimplicialComplex& K, const std::vector<std::vector<double>>& f) {
  check_shape(K, f);
  for (int p = 0; p <= K.dim(); ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const double fs = f[p][i];
      int low = 0, high = 0;
      if (p > 0)
        for (std::uint32_t j : K.faces(Cell{p, i}))
          if (f[p - 1][j] >= fs && ++low > 1) return false;
      if (p < K.dim())
        for (std::uint32_t j : K.cofaces(Cell{p, i}))
          if (f[p + 1][j] <= fs && ++high > 1) return false;
    }
  }
  return true;
}

Gvf induced_gvf(const SimplicialComplex& K, const std::vector<std::vector<double>>& f) {
  check_shape(K, f);
  Gvf g = Gvf::all_critical(K);
  for (int p = 1; p <= K.dim(); ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell sigma{p, i};
      std::int64_t exceptional = -1;
      for (std::uint32_t j : K.faces(sigma)) {
        if (f[p - 1][j] < f[p][i]) continue;
        require(exceptional < 0, errc::not_morse, "cell has two faces with larger values");
        exceptional = j;
      }
      if (exceptional < 0) continue;
      const Cell gamma{p - 1, static_cast<std::uint32_t>(exceptional)};
      require(g.is_critical(gamma) && g.is_critical(sigma), errc::not_morse,
              "cell participates in two pairs");
      g.set_pair(gamma, sigma);
    }
  }
  return g;
}

ValidationReport validate_gvf(const Gvf& g) {
  ValidationReport rep;
  enum class Rule { partition, bijection, codim1, acyclic };
  auto bad = [&rep](Rule rule, std::string msg) {
    switch (rule) {
      case Rule::partition: rep.is_partition = false; break;
      case Rule::bijection: rep.is_bijection = false; break;
      case Rule::codim1: rep.is_codim1 = false; break;
      case Rule::acyclic: rep.is_acyclic = false; break;
    }
    rep.violations.push_back(std::move(msg));
  };
  if (g.K == nullptr) {
    bad(Rule::partition, "field has no complex attached");
    return rep;
  }
  const SimplicialComplex& K = *g.K;
  const int d = K.dim();
  if (g.cls.size() != static_cast<std::size_t>(d + 1) ||
      g.up.size() != g.cls.size() || g.down.size() != g.cls.size()) {
    bad(Rule::partition, "class table does not cover every dimension");
    return rep;
  }
  for (int p = 0; p <= d; ++p)
    if (g.cls[p].size() != K.level_size(p) || g.up[p].size() != K.level_size(p) ||
        g.down[p].size() != K.level_size(p)) {
      bad(Rule::partition, "class table size mismatch at dimension " + std::to_string(p));
      return rep;
    }

  for (int p = 0; p <= d; ++p) {
    const std::size_t n = K.level_size(p);
    for (std::uint32_t i = 0; i < n; ++i) {
      const Cell c{p, i};
      switch (g.cls[p][i]) {
        case CellClass::critical: {
          ++rep.critical_count;
          if (g.up[p][i] >= 0 || g.down[p][i] >= 0)
            bad(Rule::partition, "critical cell keeps a stale pair pointer");
          break;
        }
        case CellClass::head: {
          ++rep.head_count;
          if (p == 0) {
            bad(Rule::codim1, "vertex classified as a head");
            break;
          }
          const std::int32_t t = g.down[p][i];
          if (t < 0 || static_cast<std::size_t>(t) >= K.level_size(p - 1)) {
            bad(Rule::bijection, "head pair pointer out of range");
            break;
          }
          if (g.cls[p - 1][t] != CellClass::tail || g.up[p - 1][t] != static_cast<std::int32_t>(i))
            bad(Rule::bijection, "head and tail pointers disagree");
          const auto fs = K.faces(c);
          if (std::find(fs.begin(), fs.end(), static_cast<std::uint32_t>(t)) == fs.end())
            bad(Rule::codim1, "matched tail is not a face of its head");
          break;
        }
        case CellClass::tail: {
          ++rep.tail_count;
          if (p == d) {
            bad(Rule::codim1, "top dimensional cell classified as a tail");
            break;
          }
          const std::int32_t h = g.up[p][i];
          if (h < 0 || static_cast<std::size_t>(h) >= K.level_size(p + 1)) {
            bad(Rule::bijection, "tail pair pointer out of range");
            break;
          }
          if (g.cls[p + 1][h] != CellClass::head || g.down[p + 1][h] != static_cast<std::int32_t>(i))
            bad(Rule::bijection, "tail and head pointers disagree");
          break;
        }
      }
    }
  }
  if (!rep.ok()) return rep;
  if (rep.head_count != rep.tail_count) {
    bad(Rule::bijection, "head and tail counts differ");
    return rep;
  }

  // Acyclicity of the flow relation: tails step up to their heads, heads step
  // down to every face except their own tail.  A closed V-path shows up as a
  // directed cycle here.
  std::vector<std::vector<std::uint8_t>> color(d + 1);
  for (int p = 0; p <= d; ++p) color[p].assign(K.level_size(p), 0);

  struct Frame {
    Cell c;
    std::uint32_t next = 0;
  };
  std::vector<Frame> stack;
  // Yields the frame's outgoing arcs one at a time: a tail has one arc to its
  // head, a head one arc to each face except its own tail.
  auto next_arc = [&](Frame& fr, bool& has) -> Cell {
    const Cell c = fr.c;
    has = false;
    if (g.cls[c.dim][c.idx] == CellClass::tail) {
      if (fr.next++ == 0) {
        has = true;
        return Cell{c.dim + 1, static_cast<std::uint32_t>(g.up[c.dim][c.idx])};
      }
      return {};
    }
    if (g.cls[c.dim][c.idx] == CellClass::head) {
      const auto fs = K.faces(c);
      while (fr.next < fs.size()) {
        const std::uint32_t j = fs[fr.next++];
        if (j != static_cast<std::uint32_t>(g.down[c.dim][c.idx])) {
          has = true;
          return Cell{c.dim - 1, j};
        }
      }
    }
    return {};
  };

  for (int p0 = 0; p0 <= d && rep.is_acyclic; ++p0) {
    for (std::uint32_t i0 = 0; i0 < K.level_size(p0) && rep.is_acyclic; ++i0) {
      if (color[p0][i0] != 0) continue;
      stack.push_back({Cell{p0, i0}, 0});
      color[p0][i0] = 1;
      while (!stack.empty()) {
        Frame& fr = stack.back();
        bool has = false;
        const Cell to = next_arc(fr, has);
        if (!has) {
          color[fr.c.dim][fr.c.idx] = 2;
          stack.pop_back();
          continue;
        }
        if (color[to.dim][to.idx] == 1) {
          bad(Rule::acyclic, "flow relation has a directed cycle");
          for (std::size_t k = 0; k < stack.size(); ++k)
            if (stack[k].c == to) {
              for (std::size_t m = k; m < stack.size(); ++m) rep.cycle.push_back(stack[m].c);
              break;
            }
          stack.clear();
          break;
        }
        if (color[to.dim][to.idx] == 0) {
          color[to.dim][to.idx] = 1;
          stack.push_back({to, 0});
        }
      }
    }
  }
  return rep;
}

DiscreteMorseFunction realize_morse_function(const Gvf& g, double eps) {
  require(eps > 0 && std::isfinite(eps), errc::invalid_argument, "eps must be positive and finite");
  {
    const ValidationReport rep = validate_gvf(g);
    if (!rep.ok())
      fail(errc::invalid_gvf, "cannot realize an invalid field: " + rep.first_violation());
  }
  const SimplicialComplex& K = *g.K;
  const int d = K.dim();

  DiscreteMorseFunction out;
  out.K = &K;
  out.eps = eps;
  out.f.assign(d + 1, {});
  double delta = eps;
  if (d >= 0) delta = std::min(delta, K.values().min_gap());
  out.delta = delta;
  if (d < 0) return out;
  for (int p = 0; p <= d; ++p) out.f[p].resize(K.level_size(p));

  const auto top = [&K](Cell c) { return K.cell(c).verts.back(); };

  // A pair whose cells have different top vertices forces some cell value at
  // least one full vertex gap away from its own top value, so no function
  // within delta of the vertex extension induces such a field.
  for (int p = 0; p < d; ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i)
      if (g.is_tail(Cell{p, i}) && top(Cell{p, i}) != top(g.r(Cell{p, i})))
        fail(errc::invalid_gvf, "matched pair crosses lower stars");

  std::unordered_map<VertexId, std::vector<Cell>> stars;
  for (int p = 0; p <= d; ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) stars[top(Cell{p, i})].push_back(Cell{p, i});

  for (VertexId v : K.vertex_order()) {
    const std::vector<Cell>& cells = stars.at(v);
    const std::size_t n = cells.size();
    std::unordered_map<Cell, std::size_t, CellHash> local;
    local.reserve(n);
    for (std::size_t k = 0; k < n; ++k) local.emplace(cells[k], k);

    // Order the star so values can follow positions: matched heads come
    // before their tails, unmatched faces before their cofaces.
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const Cell sigma : cells) {
      if (sigma.dim == 0) continue;
      const std::size_t b = local.at(sigma);
      for (std::uint32_t j : K.faces(sigma)) {
        const Cell gamma{sigma.dim - 1, j};
        if (top(gamma) != v) continue;
        const std::size_t a = local.at(gamma);
        if (g.is_tail(gamma) && g.r(gamma) == sigma) {
          succ[b].push_back(a);
          ++indeg[a];
        } else {
          succ[a].push_back(b);
          ++indeg[b];
        }
      }
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t k = 0; k < n; ++k)
      if (indeg[k] == 0) ready.push(k);
    std::vector<std::size_t> pos(n, 0);
    std::size_t done = 0;
    while (!ready.empty()) {
      const std::size_t k = ready.top();
      ready.pop();
      pos[k] = done++;
      for (std::size_t m : succ[k])
        if (--indeg[m] == 0) ready.push(m);
    }
    require(done == n, errc::internal_error, "star order has a cycle despite valid field");

    const double eta = delta / (2.0 * static_cast<double>(n));
    const double base = K.f0(v);
    const double vpos = static_cast<double>(pos[local.at(*K.vertex_cell(v))]);
    for (std::size_t k = 0; k < n; ++k) {
      const Cell c = cells[k];
      out.f[c.dim][c.idx] = base + eta * (static_cast<double>(pos[k]) - vpos);
    }
  }
  return out;
}

std::vector<std::size_t> critical_counts(const Gvf& g) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  std::vector<std::size_t> out(g.cls.size(), 0);
  for (std::size_t p = 0; p < g.cls.size(); ++p)
    for (CellClass c : g.cls[p])
      if (c == CellClass::critical) ++out[p];
  return out;
}

std::vector<std::size_t> betti_z2(const SimplicialComplex& K) {
  const int d = K.dim();
  if (d < 0) return {};
  // rank[p] is the Z2 rank of the boundary map from dimension p, p in 1..d.
  std::vector<std::size_t> rank(d + 2, 0);
  for (int p = 1; p <= d; ++p) {
    const std::size_t rows = K.level_size(p - 1);
    const std::size_t words = (rows + 63) / 64;
    std::vector<std::vector<std::uint64_t>> pivots;
    std::vector<std::int64_t> pivot_at(rows, -1);
    std::vector<std::uint64_t> col(words);
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      std::fill(col.begin(), col.end(), 0);
      for (std::uint32_t j : K.faces(Cell{p, i})) col[j / 64] ^= std::uint64_t{1} << (j % 64);
      for (;;) {
        std::size_t r = rows;
        for (std::size_t w = 0; w < words; ++w)
          if (col[w] != 0) {
            r = w * 64 + static_cast<std::size_t>(std::countr_zero(col[w]));
            break;
          }
        if (r == rows) break;  // column emptied, dependent
        if (pivot_at[r] < 0) {
          pivot_at[r] = static_cast<std::int64_t>(pivots.size());
          pivots.push_back(col);
          ++rank[p];
          break;
        }
        const auto& pv = pivots[static_cast<std::size_t>(pivot_at[r])];
        for (std::size_t w = 0; w < words; ++w) col[w] ^= pv[w];
      }
    }
  }
  std::vector<std::size_t> betti(d + 1, 0);
  for (int p = 0; p <= d; ++p) betti[p] = K.level_size(p) - rank[p] - rank[p + 1];
  return betti;
}

bool euler_identity_holds(const Gvf& g) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  long long lhs = 0, rhs = 0;
  const std::vector<std::size_t> c = critical_counts(g);
  for (std::size_t p = 0; p < c.size(); ++p) {
    const long long sign = (p % 2 == 0) ? 1 : -1;
    lhs += sign * static_cast<long long>(c[p]);
    rhs += sign * static_cast<long long>(g.K->level_size(static_cast<int>(p)));
  }
  return lhs == rhs;
}

bool morse_inequalities_hold(const Gvf& g, const std::vector<std::size_t>& betti) {
  const std::vector<std::size_t> c = critical_counts(g);
  require(betti.size() == c.size(), errc::dimension_mismatch,
          "betti vector does not match the complex dimension");
  for (std::size_t p = 0; p < c.size(); ++p)
    if (c[p] < betti[p]) return false;
  return true;
}

}  // namespace dmt
