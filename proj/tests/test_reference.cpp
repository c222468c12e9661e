#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include <cmath>

#include "dmt/extract.hpp"
#include "dmt/io.hpp"
#include "dmt/morse.hpp"
#include "dmt/reference.hpp"

using namespace dmt;
using tst::expect_error;

namespace {

std::set<std::vector<VertexId>> names(const SimplicialComplex& K, const std::vector<Cell>& cs) {
  std::set<std::vector<VertexId>> out;
  for (Cell c : cs) out.insert(tst::ids_of(K, c));
  return out;
}

using CellSeq = std::vector<std::pair<int, std::uint32_t>>;

CellSeq as_seq(const GradientPath& P) {
  CellSeq s{{P.start.dim, P.start.idx}};
  for (const auto& [t, h] : P.pairs) {
    s.emplace_back(t.dim, t.idx);
    s.emplace_back(h.dim, h.idx);
  }
  s.emplace_back(P.end.dim, P.end.idx);
  return s;
}

CellSeq as_seq(const std::vector<Cell>& cells) {
  CellSeq s;
  for (Cell c : cells) s.emplace_back(c.dim, c.idx);
  return s;
}

std::vector<CellSeq> sorted_seqs(const std::vector<GradientPath>& ps) {
  std::vector<CellSeq> out;
  for (const auto& p : ps) out.push_back(as_seq(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellSeq> sorted_seqs(const std::vector<std::vector<Cell>>& ps) {
  std::vector<CellSeq> out;
  for (const auto& p : ps) out.push_back(as_seq(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lower-link recursion on small examples") {
  const auto V = tst::K_id({{1}});
  CHECK(names(V, extract_raw(V).criticals()) == std::set<std::vector<VertexId>>{{1}});

  const auto E = tst::K_id({{1, 2}});
  const Gvf ge = extract_raw(E);
  CHECK(names(E, ge.criticals()) == std::set<std::vector<VertexId>>{{1}});
  CHECK(ge.r(*E.find({2})) == *E.find({1, 2}));

  const auto T = tst::K_id({{1, 2, 3}});
  const Gvf gt = extract_raw(T);
  CHECK(names(T, gt.criticals()) == std::set<std::vector<VertexId>>{{1}});
  CHECK(gt.r(*T.find({2, 3})) == *T.find({1, 2, 3}));
  CHECK(gt.r(*T.find({2})) == *T.find({1, 2}));
  CHECK(gt.r(*T.find({3})) == *T.find({1, 3}));
}

TEST_CASE("lower-link recursion on the cat complex") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  const Gvf g = extract_raw(K);
  CHECK(names(K, g.criticals()) == std::set<std::vector<VertexId>>{{1}, {2}, {2, 5}});
  CHECK(g.r(*K.find({4, 6})) == *K.find({3, 4, 6}));
  CHECK(g.r(*K.find({5, 7})) == *K.find({2, 5, 7}));
  CHECK(g.r(*K.find({4})) == *K.find({3, 4}));
  CHECK(g.r(*K.find({5})) == *K.find({1, 5}));
}

TEST_CASE("chain with shuffled values") {
  // path graph 3 - 4 - 2 - 1 by adjacency; values are the ids
  const auto K = tst::K_id({{3, 4}, {2, 4}, {1, 2}});
  const Gvf g = extract_raw(K);
  CHECK(names(K, g.criticals()) == std::set<std::vector<VertexId>>{{1}, {3}, {3, 4}});
  CHECK(g.r(*K.find({2})) == *K.find({1, 2}));
  CHECK(g.r(*K.find({4})) == *K.find({2, 4}));
}

TEST_CASE("vertex order never changes the result") {
  const auto K = tst::K_id({{1, 2, 3}, {3, 4}, {2, 4}});
  const Gvf base = extract_raw(K);
  std::vector<VertexId> order = K.vertex_order();
  std::sort(order.begin(), order.end());
  do {
    CHECK(extract_raw_ordered(K, order) == base);
  } while (std::next_permutation(order.begin(), order.end()));

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const auto R = tst::random_complex(rng);
    const Gvf expect = extract_raw(R);
    std::vector<VertexId> shuffled = R.vertex_order();
    for (int k = 0; k < 4; ++k) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(extract_raw_ordered(R, shuffled) == expect);
    }
  }
}

TEST_CASE("order must be a permutation of the vertices") {
  const auto K = tst::K_id({{1, 2}});
  expect_error(errc::invalid_argument, [&] { extract_raw_ordered(K, {1}); });
  expect_error(errc::invalid_argument, [&] { extract_raw_ordered(K, {1, 2, 3}); });
  expect_error(errc::invalid_argument, [&] { extract_raw_ordered(K, {1, 1}); });
  expect_error(errc::invalid_argument, [&] { extract_raw_ordered(K, {2, 2}); });
}

TEST_CASE("recursion output is always a valid field") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const auto K = tst::random_complex(rng);
    const Gvf g = extract_raw(K);
    CAPTURE(tst::structure_signature(K));
    CHECK(validate_gvf(g).ok());
    CHECK(tst::acyclic_oracle(g));
    CHECK(euler_identity_holds(g));
  }
}

TEST_CASE("lower-link call counts") {
  for (int d = 0; d <= 3; ++d) {
    std::vector<VertexId> top;
    for (VertexId v = 1; v <= d + 1; ++v) top.push_back(v);
    const auto K = tst::K_id({top});
    CHECK(count_lower_link_calls(K) == (std::uint64_t(1) << (d + 1)) - 1);
  }

  const auto two = tst::K_id({{1}, {2}});
  CHECK(count_lower_link_calls(two) == 2);

  const auto cat = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  CHECK(count_lower_link_calls(cat) == 17);

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto K = tst::random_complex(rng);
    ExtractStats st;
    extract_raw(K, &st);
    CHECK(st.lower_link_calls == count_lower_link_calls(K));
    CHECK(st.lex_comparisons == 0);
    CHECK(st.wall_ms >= 0.0);
  }
}

TEST_CASE("path enumeration on the cat complex") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  const Gvf g = extract_raw(K);

  const auto paths = gradient_paths(g, *K.find({2, 5}));
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].start == *K.find({2, 5}));
  CHECK(paths[0].r() == 1);
  CHECK(paths[0].pairs[0].first == *K.find({5}));
  CHECK(paths[0].pairs[0].second == *K.find({1, 5}));
  CHECK(paths[0].end == *K.find({1}));

  // critical faces reachable without climbing are not paths
  for (const auto& P : paths) CHECK(P.r() >= 1);
}

TEST_CASE("path enumeration rejects bad starts") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  const Gvf g = extract_raw(K);
  expect_error(errc::not_critical, [&] { gradient_paths(g, *K.find({4, 6})); });
  expect_error(errc::not_critical, [&] { gradient_paths(g, *K.find({3, 4, 6})); });
  expect_error(errc::invalid_argument, [&] { gradient_paths(g, *K.find({1})); });
  expect_error(errc::invalid_argument, [&] { gradient_paths(g, Cell{1, 999}); });
  expect_error(errc::invalid_argument, [&] { gradient_paths(Gvf{}, Cell{1, 0}); });
}

TEST_CASE("a dead-end enumeration comes back empty") {
  // two triangles glued along an edge; the top critical cell only reaches
  // heads, so no alternating path leaves it
  const auto K = tst::K_id({{1, 5, 6}, {2, 5, 6}});
  const Gvf g = extract_raw(K);
  REQUIRE(g.is_critical(*K.find({2, 5, 6})));
  CHECK(gradient_paths(g, *K.find({2, 5, 6})).empty());
}

TEST_CASE("two paths may share an endpoint") {
  // cycle 1-2-3-4-1: both paths from the critical edge end at the vertex 1
  const auto K = tst::K_id({{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  const Gvf g = extract_raw(K);
  REQUIRE(g.is_critical(*K.find({3, 4})));
  const auto paths = gradient_paths(g, *K.find({3, 4}));
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].end == *K.find({1}));
  CHECK(paths[1].end == *K.find({1}));
  const std::set<std::size_t> lens{paths[0].r(), paths[1].r()};
  CHECK(lens == std::set<std::size_t>{1, 2});

  // the cap counts emitted paths; hitting one more than the cap throws
  CHECK(gradient_paths(g, *K.find({3, 4}), 2).size() == 2);
  expect_error(errc::path_limit_exceeded, [&] { gradient_paths(g, *K.find({3, 4}), 1); });
}

TEST_CASE("path enumeration matches the exhaustive oracle") {
  std::mt19937_64 rng(73);
  int starts_checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    // alternate closures of random vertex sets with flag complexes; the
    // latter have cycles, which is where critical edges live
    const auto K = trial % 2 == 0 ? tst::random_complex(rng, 7)
                                  : make_random_flag(8, 0.3 + 0.02 * (trial % 7), 3,
                                                     1000 + std::uint64_t(trial));
    const Gvf g = extract_raw(K);
    for (Cell c : g.criticals()) {
      if (c.dim < 1) continue;
      ++starts_checked;
      const auto got = gradient_paths(g, c);
      CHECK(sorted_seqs(got) == sorted_seqs(tst::path_oracle(g, c)));
      // determinism: the same call yields the same order
      CHECK(sorted_seqs(got) == sorted_seqs(gradient_paths(g, c)));

      for (const auto& P : got) {
        REQUIRE(P.r() >= 1);
        CHECK(P.start == c);
        CHECK(g.is_critical(P.end));
        CHECK(P.end.dim == c.dim - 1);
        for (std::size_t k = 0; k < P.pairs.size(); ++k) {
          const auto [t, h] = P.pairs[k];
          CHECK(g.is_tail(t));
          CHECK(g.r(t) == h);
          const Cell prev = k == 0 ? c : P.pairs[k - 1].second;
          CHECK(tst::subset_of(K.cell(t).verts, K.cell(prev).verts));
          if (k > 0) CHECK(t != P.pairs[k - 1].first);
        }
        CHECK(tst::subset_of(K.cell(P.end).verts, K.cell(P.pairs.back().second).verts));
        CHECK(P.end != P.pairs.back().first);
      }
    }
  }
  CHECK(starts_checked > 50);
}

TEST_CASE("cancellation on the cat complex") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  const Gvf raw = extract_raw(K);

  const Gvf c = extract_cancel(raw, {kInfinitePersistence, 1});
  CHECK(names(K, c.criticals()) == std::set<std::vector<VertexId>>{{2}});
  CHECK(c.r(*K.find({5})) == *K.find({2, 5}));
  CHECK(c.r(*K.find({1})) == *K.find({1, 5}));
  CHECK(validate_gvf(c).ok());

  // the full pipeline reaches the same place
  CHECK(tst::canon(extract(K, kInfinitePersistence)) == tst::canon(c));
}

TEST_CASE("the persistence window is strict") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  const Gvf raw = extract_raw(K);
  // the only candidate pairing spans values 5 and 1
  CHECK(extract_cancel(raw, {4.0, 1}) == raw);
  CHECK(names(K, extract_cancel(raw, {4.0 + 1e-9, 1}).criticals()) ==
        std::set<std::vector<VertexId>>{{2}});
  CHECK(extract_cancel(raw, {0.0, 1}) == raw);
}

TEST_CASE("a shared endpoint blocks reversal") {
  const auto K = tst::K_id({{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  const Gvf raw = extract_raw(K);
  const Gvf c = extract_cancel(raw, {kInfinitePersistence, 1});
  CHECK(c == raw);  // both paths end at the vertex 1
  CHECK(names(K, c.criticals()) == std::set<std::vector<VertexId>>{{1}, {3, 4}});
}

TEST_CASE("a direct critical face blocks reversal to it") {
  // After the first dim-1 cancellation, the unique path from the critical
  // edge [2,6] ends at the vertex [2], which is also one of its faces.
  // Reversing that path would close a directed cycle through [2].
  const auto K = tst::K_id({{1, 5, 6}, {2, 5, 6}});
  const Gvf raw = extract_raw(K);
  REQUIRE(names(K, raw.criticals()) ==
          std::set<std::vector<VertexId>>{{1}, {2}, {2, 5}, {2, 6}, {2, 5, 6}});

  const Gvf after = extract(K, kInfinitePersistence);
  CHECK(validate_gvf(after).ok());
  CHECK(tst::acyclic_oracle(after));
  CHECK(names(K, after.criticals()) ==
        std::set<std::vector<VertexId>>{{2}, {2, 6}, {2, 5, 6}});
  // the blocked pairing really is the one through the direct face
  const auto paths = gradient_paths(after, *K.find({2, 6}));
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].end == *K.find({2}));
}

TEST_CASE("cancellation input checks") {
  const auto K = tst::K_id({{1, 2, 3}});
  const Gvf raw = extract_raw(K);
  expect_error(errc::invalid_argument, [&] { extract_cancel(raw, {-1.0, 1}); });
  expect_error(errc::invalid_argument, [&] {
    extract_cancel(raw, {std::numeric_limits<double>::quiet_NaN(), 1});
  });
  expect_error(errc::invalid_argument, [&] { extract_cancel(raw, {1.0, 0}); });
  expect_error(errc::invalid_argument, [&] { extract_cancel(Gvf{}, {1.0, 1}); });
  expect_error(errc::invalid_argument, [&] { extract(K, -2.0); });

  // beyond the top dimension nothing can pair
  CHECK(extract_cancel(raw, {kInfinitePersistence, 5}) == raw);

  Gvf broken = Gvf::all_critical(K);
  broken.set_pair(*K.find({1}), *K.find({2, 3}));  // not incident
  expect_error(errc::invalid_gvf, [&] { extract_cancel(broken, {1.0, 1}); });
}

TEST_CASE("zero persistence reproduces the recursion exactly") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const auto K = tst::random_complex(rng);
    CAPTURE(tst::structure_signature(K));
    CHECK(extract(K, 0.0) == extract_raw(K));
  }
}

TEST_CASE("cancellation sweeps only shrink the critical set") {
  std::mt19937_64 rng(83);
  const double ps[] = {0.0, 0.5, 1.0, 2.5, kInfinitePersistence};
  for (int trial = 0; trial < 30; ++trial) {
    const auto K = tst::random_complex(rng);
    const Gvf raw = extract_raw(K);
    const auto raw_names = names(K, raw.criticals());
    for (double p : ps) {
      const Gvf out = extract(K, p);
      CAPTURE(tst::structure_signature(K));
      CAPTURE(p);
      CHECK(validate_gvf(out).ok());
      CHECK(tst::acyclic_oracle(out));
      CHECK(euler_identity_holds(out));
      CHECK(morse_inequalities_hold(out, betti_z2(K)));
      const auto out_names = names(K, out.criticals());
      for (const auto& c : out_names) CHECK(raw_names.count(c) == 1);
      CHECK((raw_names.size() - out_names.size()) % 2 == 0);
    }
  }
}

TEST_CASE("pipeline stats cover the recursion") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  ExtractStats st;
  extract(K, kInfinitePersistence, &st);
  CHECK(st.lower_link_calls == 17);
  CHECK(st.lex_comparisons == 0);
  CHECK(st.wall_ms >= 0.0);
}

TEST_CASE("critical-subdiagram sweep") {
  const auto K = tst::K_id({{3, 4, 6}, {2, 5, 7}, {1, 5}, {1, 3}});
  const Gvf raw = extract_raw(K);
  const Gvf before = raw;
  const Gvf out = cancel_kid(raw);
  CHECK(raw == before);  // input untouched
  CHECK(names(K, out.criticals()) == std::set<std::vector<VertexId>>{{1}});
  CHECK(out.r(*K.find({2})) == *K.find({2, 5}));
  CHECK(validate_gvf(out).ok());

  // nothing adjacent to cancel: fields with a single critical vertex
  const auto T = tst::K_id({{1, 2, 3}});
  const Gvf gt = extract_raw(T);
  CHECK(cancel_kid(gt) == gt);

  expect_error(errc::invalid_argument, [&] { cancel_kid(Gvf{}); });
  Gvf broken = Gvf::all_critical(K);
  broken.set_pair(*K.find({1}), *K.find({4, 6}));
  expect_error(errc::invalid_gvf, [&] { cancel_kid(broken); });
}

TEST_CASE("critical-subdiagram sweep never yields an unnoticed invalid field") {
  std::mt19937_64 rng(89);
  int produced = 0;
  int rejected = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto K = tst::random_complex(rng);
    const Gvf raw = extract_raw(K);
    try {
      const Gvf out = cancel_kid(raw);
      ++produced;
      CHECK(validate_gvf(out).ok());
      CHECK(tst::acyclic_oracle(out));
      const auto raw_names = names(K, raw.criticals());
      for (const auto& c : names(K, out.criticals())) CHECK(raw_names.count(c) == 1);
    } catch (const error& e) {
      CHECK(e.code() == errc::invalid_result);
      ++rejected;
    }
  }
  CHECK(produced + rejected == 40);
  CHECK(produced > 0);
}
