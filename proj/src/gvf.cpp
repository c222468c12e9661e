#include "dmt/gvf.hpp"

namespace dmt {

Gvf Gvf::all_critical(const SimplicialComplex& K) {
  Gvf g;
  g.K = &K;
  int d = K.dim();
  g.cls.resize(d + 1);
  g.up.resize(d + 1);
  g.down.resize(d + 1);
  for (int p = 0; p <= d; ++p) {
    std::size_t n = K.level_size(p);
    g.cls[p].assign(n, CellClass::critical);
    g.up[p].assign(n, -1);
    g.down[p].assign(n, -1);
  }
  return g;
}

std::vector<Cell> Gvf::cells_of(CellClass c) const {
  std::vector<Cell> out;
  for (int p = 0; p < static_cast<int>(cls.size()); ++p) {
    for (std::uint32_t i = 0; i < cls[p].size(); ++i)
      if (cls[p][i] == c) out.push_back(Cell{p, i});
  }
  return out;
}

std::vector<Cell> Gvf::criticals_at(int p) const {
  std::vector<Cell> out;
  if (p < 0 || p >= static_cast<int>(cls.size())) return out;
  for (std::uint32_t i = 0; i < cls[p].size(); ++i)
    if (cls[p][i] == CellClass::critical) out.push_back(Cell{p, i});
  return out;
}

bool operator==(const Gvf& a, const Gvf& b) {
  return a.K == b.K && a.cls == b.cls && a.up == b.up && a.down == b.down;
}

}  // namespace dmt
