#include "dmt/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dmt {

VertexValues VertexValues::from_pairs(const std::vector<std::pair<VertexId, double>>& pairs) {
  VertexValues vv;
  for (const auto& [id, val] : pairs) {
    if (!std::isfinite(val)) fail(errc::invalid_argument, "non-finite value for vertex " + std::to_string(id));
    auto [it, inserted] = vv.map_.emplace(id, val);
    if (!inserted) fail(errc::invalid_argument, "vertex " + std::to_string(id) + " declared twice");
  }
  std::vector<double> vals;
  vals.reserve(vv.map_.size());
  for (const auto& [id, val] : vv.map_) vals.push_back(val);
  std::sort(vals.begin(), vals.end());
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] == vals[i - 1])
      fail(errc::duplicate_value, "two vertices share the value " + std::to_string(vals[i]));
  }
  return vv;
}

std::vector<VertexId> VertexValues::ids_by_value() const {
  std::vector<VertexId> ids;
  ids.reserve(map_.size());
  for (const auto& [id, val] : map_) ids.push_back(id);
  std::sort(ids.begin(), ids.end(),
            [this](VertexId a, VertexId b) { return map_.at(a) < map_.at(b); });
  return ids;
}

double VertexValues::min_gap() const {
  std::vector<double> vals;
  vals.reserve(map_.size());
  for (const auto& [id, val] : map_) vals.push_back(val);
  std::sort(vals.begin(), vals.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < vals.size(); ++i) gap = std::min(gap, vals[i] - vals[i - 1]);
  return gap;
}

Ordering lex_compare(const Simplex& a, const Simplex& b) {
  if (a.dim() != b.dim())
    fail(errc::dimension_mismatch, "lex_compare requires equal dimensions");
  for (std::size_t i = 0; i < a.key.size(); ++i) {
    if (a.key[i] < b.key[i]) return Ordering::less;
    if (a.key[i] > b.key[i]) return Ordering::greater;
  }
  return Ordering::equal;
}

namespace {

Simplex make_simplex(std::vector<VertexId> verts, const VertexValues& values) {
  std::sort(verts.begin(), verts.end(),
            [&](VertexId a, VertexId b) { return values.at(a) < values.at(b); });
  Simplex s;
  s.key.reserve(verts.size());
  for (auto it = verts.rbegin(); it != verts.rend(); ++it) s.key.push_back(values.at(*it));
  s.verts = std::move(verts);
  return s;
}

}  // namespace

void SimplicialComplex::finalize() {
  cofaces_.assign(levels_.size(), {});
  for (std::size_t p = 0; p < levels_.size(); ++p) cofaces_[p].resize(levels_[p].size());
  for (std::size_t p = 1; p < levels_.size(); ++p) {
    for (std::uint32_t i = 0; i < levels_[p].size(); ++i) {
      for (std::uint32_t f : faces_[p][i]) cofaces_[p - 1][f].push_back(i);
    }
  }
  total_ = 0;
  for (const auto& lv : levels_) total_ += lv.size();
  vertex_order_.clear();
  if (!levels_.empty()) {
    for (const auto& s : levels_[0]) vertex_order_.push_back(s.verts[0]);
    std::sort(vertex_order_.begin(), vertex_order_.end(),
              [this](VertexId a, VertexId b) { return values_.at(a) < values_.at(b); });
  }
}

std::optional<Cell> SimplicialComplex::find(std::vector<VertexId> verts) const {
  for (VertexId v : verts)
    if (!values_.contains(v)) return std::nullopt;
  std::sort(verts.begin(), verts.end(),
            [this](VertexId a, VertexId b) { return values_.at(a) < values_.at(b); });
  auto it = index_.find(verts);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Cell> SimplicialComplex::vertex_cell(VertexId v) const {
  return find({v});
}

std::uint64_t SimplicialComplex::hasse_edge_count() const {
  std::uint64_t edges = 0;
  for (std::size_t p = 1; p < levels_.size(); ++p)
    edges += levels_[p].size() * (p + 1);
  return edges;
}

SimplicialComplex build_complex(const VertexValues& values,
                                const std::vector<std::vector<VertexId>>& maximal) {
  SimplicialComplex K;
  K.values_ = values;

  int maxd = -1;
  for (const auto& m : maximal) {
    if (m.empty()) fail(errc::invalid_complex, "empty simplex");
    maxd = std::max(maxd, static_cast<int>(m.size()) - 1);
  }
  if (maxd < 0) {
    K.finalize();
    return K;
  }
  K.levels_.resize(maxd + 1);
  K.faces_.resize(maxd + 1);

  auto insert = [&K](Simplex s) -> Cell {
    int p = s.dim();
    auto it = K.index_.find(s.verts);
    if (it != K.index_.end()) return it->second;
    Cell c{p, static_cast<std::uint32_t>(K.levels_[p].size())};
    K.index_.emplace(s.verts, c);
    K.levels_[p].push_back(std::move(s));
    K.faces_[p].emplace_back();
    return c;
  };

  for (const auto& m : maximal) {
    Simplex s = make_simplex(m, values);
    for (std::size_t i = 1; i < s.verts.size(); ++i) {
      if (s.verts[i] == s.verts[i - 1])
        fail(errc::invalid_complex, "simplex repeats vertex " + std::to_string(s.verts[i]));
    }
    insert(std::move(s));
  }

  for (int p = maxd; p >= 1; --p) {
    for (std::uint32_t i = 0; i < K.levels_[p].size(); ++i) {
      for (int k = 0; k <= p; ++k) {
        std::vector<VertexId> fv;
        fv.reserve(p);
        const auto& verts = K.levels_[p][i].verts;
        for (int j = 0; j <= p; ++j)
          if (j != k) fv.push_back(verts[j]);
        Cell f = insert(make_simplex(std::move(fv), values));
        K.faces_[p][i].push_back(f.idx);
      }
    }
  }

  K.finalize();
  return K;
}

SimplicialComplex complex_from_closed_cells(const VertexValues& values,
                                            std::vector<std::vector<VertexId>> cells) {
  SimplicialComplex K;
  K.values_ = values;
  int maxd = -1;
  for (const auto& c : cells) maxd = std::max(maxd, static_cast<int>(c.size()) - 1);
  if (maxd < 0) {
    K.finalize();
    return K;
  }
  K.levels_.resize(maxd + 1);
  K.faces_.resize(maxd + 1);
  for (auto& cv : cells) {
    Simplex s = make_simplex(std::move(cv), values);
    int p = s.dim();
    if (K.index_.count(s.verts)) continue;
    Cell c{p, static_cast<std::uint32_t>(K.levels_[p].size())};
    K.index_.emplace(s.verts, c);
    K.levels_[p].push_back(std::move(s));
    K.faces_[p].emplace_back();
  }
  for (int p = maxd; p >= 1; --p) {
    for (std::uint32_t i = 0; i < K.levels_[p].size(); ++i) {
      const auto& verts = K.levels_[p][i].verts;
      for (int k = 0; k <= p; ++k) {
        std::vector<VertexId> fv;
        fv.reserve(p);
        for (int j = 0; j <= p; ++j)
          if (j != k) fv.push_back(verts[j]);
        auto it = K.index_.find(fv);
        if (it == K.index_.end())
          fail(errc::invalid_complex, "cell list is not downward closed");
        K.faces_[p][i].push_back(it->second.idx);
      }
    }
  }
  K.finalize();
  return K;
}

SimplicialComplex permute_levels(const SimplicialComplex& K,
                                 const std::vector<std::vector<std::uint32_t>>& perm) {
  SimplicialComplex R;
  R.values_ = K.values_;
  int d = K.dim();
  if (d < 0) {
    R.finalize();
    return R;
  }
  R.levels_.resize(d + 1);
  R.faces_.resize(d + 1);
  // old index -> new index, per level
  std::vector<std::vector<std::uint32_t>> inv(d + 1);
  for (int p = 0; p <= d; ++p) {
    const auto& pr = perm[p];
    require(pr.size() == K.level_size(p), errc::invalid_argument, "bad permutation size");
    inv[p].resize(pr.size());
    for (std::uint32_t ni = 0; ni < pr.size(); ++ni) inv[p][pr[ni]] = ni;
    R.levels_[p].reserve(pr.size());
    for (std::uint32_t ni = 0; ni < pr.size(); ++ni) {
      Simplex s = K.levels_[p][pr[ni]];
      R.index_.emplace(s.verts, Cell{p, ni});
      R.levels_[p].push_back(std::move(s));
    }
  }
  for (int p = 1; p <= d; ++p) {
    R.faces_[p].resize(R.levels_[p].size());
    for (std::uint32_t ni = 0; ni < R.levels_[p].size(); ++ni) {
      for (std::uint32_t of : K.faces_[p][perm[p][ni]])
        R.faces_[p][ni].push_back(inv[p - 1][of]);
    }
  }
  R.finalize();
  return R;
}

std::vector<Cell> link(const SimplicialComplex& K, VertexId v) {
  auto vc = K.vertex_cell(v);
  if (!vc) fail(errc::unknown_vertex, "vertex " + std::to_string(v) + " not in complex");

  int d = K.dim();
  std::vector<std::vector<char>> colored(d + 1);
  for (int p = 0; p <= d; ++p) colored[p].assign(K.level_size(p), 0);

  // First pass: color everything containing v (the star).
  std::vector<Cell> stack{*vc};
  colored[0][vc->idx] = 1;
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    for (std::uint32_t up : K.cofaces(c)) {
      if (!colored[c.dim + 1][up]) {
        colored[c.dim + 1][up] = 1;
        stack.push_back(Cell{c.dim + 1, up});
      }
    }
  }

  // Second pass: uncolored faces of colored simplices form the link.
  std::vector<std::vector<char>> in_link(d + 1);
  for (int p = 0; p <= d; ++p) in_link[p].assign(K.level_size(p), 0);
  std::vector<Cell> out;
  for (int p = 1; p <= d; ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      if (!colored[p][i]) continue;
      for (std::uint32_t f : K.faces(Cell{p, i})) {
        if (!colored[p - 1][f] && !in_link[p - 1][f]) {
          in_link[p - 1][f] = 1;
          out.push_back(Cell{p - 1, f});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.idx < b.idx;
  });
  return out;
}

SimplicialComplex lower_link(const SimplicialComplex& K, VertexId v) {
  double cutoff = K.f0(v);
  std::vector<Cell> lk = link(K, v);
  std::vector<std::vector<VertexId>> cells;
  std::vector<std::pair<VertexId, double>> vals;
  for (Cell c : lk) {
    const Simplex& s = K.cell(c);
    if (s.maxh() >= cutoff) continue;
    cells.push_back(s.verts);
    if (c.dim == 0) vals.emplace_back(s.verts[0], K.f0(s.verts[0]));
  }
  return complex_from_closed_cells(VertexValues::from_pairs(vals), std::move(cells));
}

}  // namespace dmt
