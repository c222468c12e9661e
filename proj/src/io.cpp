#include "dmt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>

#include "dmt/morse.hpp"
#include "dmt/reference.hpp"

namespace dmt {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// (dim, lex) order used everywhere serialized cells appear.
bool cell_less(const SimplicialComplex& K, Cell a, Cell b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return lex_compare(K.cell(a), K.cell(b)) == Ordering::less;
}

nlohmann::ordered_json cell_json(const SimplicialComplex& K, Cell c) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (VertexId v : K.cell(c).verts) arr.push_back(v);
  return arr;
}

nlohmann::ordered_json cells_json(const SimplicialComplex& K, std::vector<Cell> cs) {
  std::sort(cs.begin(), cs.end(), [&K](Cell a, Cell b) { return cell_less(K, a, b); });
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Cell c : cs) arr.push_back(cell_json(K, c));
  return arr;
}

}  // namespace

SimplicialComplex parse_complex_text(std::istream& in, const std::string& name) {
  std::vector<std::pair<VertexId, double>> values;
  std::unordered_set<VertexId> declared;
  std::vector<std::vector<VertexId>> maximal;
  std::vector<std::pair<std::size_t, std::vector<VertexId>>> simplex_lines;

  std::string line;
  std::size_t lineno = 0;
  auto at = [&name, &lineno](const std::string& msg) {
    return name + ":" + std::to_string(lineno) + ": " + msg;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      VertexId id = 0;
      double val = 0;
      if (!(ss >> id >> val)) fail(errc::parse_error, at("expected `v <id> <value>`"));
      std::string extra;
      if (ss >> extra) fail(errc::parse_error, at("trailing tokens after vertex record"));
      if (!std::isfinite(val)) fail(errc::parse_error, at("vertex value must be finite"));
      if (!declared.insert(id).second)
        fail(errc::parse_error, at("vertex " + std::to_string(id) + " declared twice"));
      values.emplace_back(id, val);
      maximal.push_back({id});
    } else if (tag == "s") {
      std::vector<VertexId> verts;
      VertexId id = 0;
      while (ss >> id) verts.push_back(id);
      if (!ss.eof()) fail(errc::parse_error, at("bad vertex id in simplex record"));
      if (verts.empty()) fail(errc::parse_error, at("simplex record lists no vertices"));
      simplex_lines.emplace_back(lineno, std::move(verts));
    } else {
      fail(errc::parse_error, at("unknown record `" + tag + "`"));
    }
  }
  for (auto& [ln, verts] : simplex_lines) {
    lineno = ln;
    for (VertexId id : verts)
      if (declared.count(id) == 0)
        fail(errc::unknown_vertex, at("simplex references undeclared vertex " + std::to_string(id)));
    maximal.push_back(std::move(verts));
  }
  return build_complex(VertexValues::from_pairs(values), maximal);
}

SimplicialComplex parse_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);
  return parse_complex_text(in, path);
}

std::string serialize_complex(const SimplicialComplex& K) {
  std::ostringstream os;
  for (VertexId v : K.vertex_order()) os << "v " << v << " " << fmt_double(K.f0(v)) << "\n";
  std::vector<Cell> maximal;
  for (int p = 1; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i)
      if (K.cofaces(Cell{p, i}).empty()) maximal.push_back(Cell{p, i});
  std::sort(maximal.begin(), maximal.end(), [&K](Cell a, Cell b) { return cell_less(K, a, b); });
  for (Cell c : maximal) {
    os << "s";
    for (VertexId v : K.cell(c).verts) os << " " << v;
    os << "\n";
  }
  return os.str();
}

nlohmann::ordered_json result_document(const Gvf& g, const ExtractStats* stats) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  const SimplicialComplex& K = *g.K;

  nlohmann::ordered_json doc;
  doc["heads"] = cells_json(K, g.heads());
  doc["tails"] = cells_json(K, g.tails());
  doc["criticals"] = cells_json(K, g.criticals());

  std::vector<Cell> tails = g.tails();
  std::sort(tails.begin(), tails.end(), [&K](Cell a, Cell b) { return cell_less(K, a, b); });
  nlohmann::ordered_json match = nlohmann::ordered_json::array();
  for (Cell t : tails) match.push_back({cell_json(K, t), cell_json(K, g.r(t))});
  doc["matching"] = match;

  doc["critical_counts"] = critical_counts(g);
  if (stats) {
    doc["counters"] = {{"lex_comparisons", stats->lex_comparisons},
                       {"lower_link_calls", stats->lower_link_calls},
                       {"wall_ms", stats->wall_ms}};
  }
  return doc;
}

nlohmann::ordered_json partition_content(nlohmann::ordered_json doc) {
  doc.erase("counters");
  return doc;
}

std::string export_dot(const Gvf& g) {
  require(g.K != nullptr, errc::invalid_argument, "field has no complex attached");
  const SimplicialComplex& K = *g.K;
  std::ostringstream os;
  os << "digraph gvf {\n";
  os << "  rankdir=BT;\n";
  os << "  node [style=filled, fontname=\"Helvetica\"];\n";
  for (int p = 0; p <= K.dim(); ++p) {
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell c{p, i};
      const char* shape = "hexagon";
      const char* fill = "lightcoral";
      if (g.is_head(c)) {
        shape = "box";
        fill = "lightblue";
      } else if (g.is_tail(c)) {
        shape = "pentagon";
        fill = "palegreen";
      }
      os << "  n" << p << "_" << i << " [shape=" << shape << ", fillcolor=" << fill
         << ", label=\"[";
      const Simplex& s = K.cell(c);
      for (std::size_t k = 0; k < s.verts.size(); ++k)
        os << (k ? "," : "") << s.verts[k];
      os << "]\"];\n";
    }
    os << "  { rank=same;";
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) os << " n" << p << "_" << i << ";";
    os << " }\n";
  }
  // matched incidences point upward, everything else downward
  for (int p = 1; p <= K.dim(); ++p)
    for (std::uint32_t i = 0; i < K.level_size(p); ++i) {
      const Cell c{p, i};
      const bool matched_head = g.is_head(c);
      const std::uint32_t t = matched_head ? g.tail_of(c).idx : 0;
      for (std::uint32_t j : K.faces(c)) {
        if (matched_head && j == t)
          os << "  n" << (p - 1) << "_" << j << " -> n" << p << "_" << i << " [color=blue];\n";
        else
          os << "  n" << p << "_" << i << " -> n" << (p - 1) << "_" << j << ";\n";
      }
    }
  os << "}\n";
  return os.str();
}

SimplicialComplex make_simplex_closure(int d) {
  require(d >= 0, errc::invalid_argument, "simplex dimension must be nonnegative");
  std::vector<std::pair<VertexId, double>> vals;
  std::vector<VertexId> top;
  for (int i = 0; i <= d; ++i) {
    vals.emplace_back(i, static_cast<double>(i));
    top.push_back(i);
  }
  return build_complex(VertexValues::from_pairs(vals), {top});
}

SimplicialComplex make_sphere(int d) {
  require(d >= 0, errc::invalid_argument, "sphere dimension must be nonnegative");
  std::vector<std::pair<VertexId, double>> vals;
  for (int i = 0; i <= d + 1; ++i) vals.emplace_back(i, static_cast<double>(i));
  std::vector<std::vector<VertexId>> maximal;
  for (int skip = 0; skip <= d + 1; ++skip) {
    std::vector<VertexId> face;
    for (int i = 0; i <= d + 1; ++i)
      if (i != skip) face.push_back(i);
    maximal.push_back(std::move(face));
  }
  return build_complex(VertexValues::from_pairs(vals), maximal);
}

SimplicialComplex make_random_flag(int vertices, double edge_probability, int max_dim,
                                   std::uint64_t seed) {
  require(vertices >= 0, errc::invalid_argument, "vertex count must be nonnegative");
  require(edge_probability >= 0.0 && edge_probability <= 1.0, errc::invalid_argument,
          "edge probability must lie in [0, 1]");
  require(max_dim >= 1, errc::invalid_argument, "maximum dimension must be at least 1");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_probability);
  const int n = vertices;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = coin(rng) ? 1 : 0;

  std::vector<double> vals(n);
  std::iota(vals.begin(), vals.end(), 0.0);
  std::shuffle(vals.begin(), vals.end(), rng);
  std::vector<std::pair<VertexId, double>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(i, vals[i]);

  // All cliques up to max_dim+1 vertices; the closure builder dedups, so
  // passing non-maximal cliques is harmless.
  std::vector<std::vector<VertexId>> cliques;
  std::vector<VertexId> cur;
  auto grow = [&](auto&& self, int last) -> void {
    cliques.push_back(cur);
    if (static_cast<int>(cur.size()) > max_dim) return;
    for (int c = last + 1; c < n; ++c) {
      bool ok = true;
      for (VertexId u : cur)
        if (!adj[static_cast<int>(u)][c]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(c);
      self(self, c);
      cur.pop_back();
    }
  };
  for (int i = 0; i < n; ++i) {
    cur.assign(1, i);
    grow(grow, i);
  }
  return build_complex(VertexValues::from_pairs(pairs), cliques);
}

namespace {

int exit_code_for(errc c) {
  switch (c) {
    case errc::parse_error:
    case errc::io_error:
    case errc::invalid_argument:
    case errc::unknown_vertex:
    case errc::duplicate_value:
    case errc::invalid_complex:
    case errc::missing_value:
    case errc::dimension_mismatch:
      return 2;
    default:
      return 1;
  }
}

void write_out(const std::string& content, const std::string& outfile) {
  if (outfile.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(outfile);
  if (!out) fail(errc::io_error, "cannot open " + outfile + " for writing");
  out << content;
  if (!out) fail(errc::io_error, "write to " + outfile + " failed");
}

int cmd_extract(const std::string& file, const std::string& algo, double persistence,
                const std::string& format, const std::string& outfile) {
  const SimplicialComplex K = parse_complex_file(file);
  ExtractStats stats;
  Gvf g;
  if (algo == "right-child")
    g = extract_right_child(K, &stats);
  else if (algo == "raw")
    g = extract_raw(K, &stats);
  else
    g = extract(K, persistence, &stats);

  if (format == "dot") {
    write_out(export_dot(g), outfile);
  } else {
    write_out(result_document(g, &stats).dump(2) + "\n", outfile);
  }
  return 0;
}

int cmd_compare(const std::string& file) {
  const SimplicialComplex K = parse_complex_file(file);
  ExtractStats fast_stats, raw_stats;
  const Gvf fast = extract_right_child(K, &fast_stats);
  const Gvf raw = extract_raw(K, &raw_stats);
  const auto a = partition_content(result_document(fast, &fast_stats));
  const auto b = partition_content(result_document(raw, &raw_stats));
  if (a == b) {
    std::cout << "identical: " << K.size() << " cells, " << a["criticals"].size()
              << " criticals, right-child " << fast_stats.lex_comparisons
              << " comparisons, raw " << raw_stats.lower_link_calls << " lower-link calls\n";
    return 0;
  }
  std::cout << "outputs differ\n--- right-child\n"
            << a.dump(2) << "\n--- raw\n"
            << b.dump(2) << "\n";
  return 1;
}

int cmd_validate(const std::string& file) {
  const SimplicialComplex K = parse_complex_file(file);
  const std::vector<std::size_t> betti = betti_z2(K);
  bool all_ok = true;
  auto check = [&all_ok](bool ok, const std::string& what) {
    std::cout << (ok ? "ok:   " : "FAIL: ") << what << "\n";
    all_ok = all_ok && ok;
  };
  const std::pair<const char*, Gvf> runs[] = {
      {"right-child", extract_right_child(K)},
      {"raw", extract_raw(K)},
  };
  for (const auto& [name, g] : runs) {
    const ValidationReport rep = validate_gvf(g);
    check(rep.ok(), std::string(name) + " field is a valid acyclic matching" +
                        (rep.ok() ? "" : " (" + rep.first_violation() + ")"));
    check(euler_identity_holds(g), std::string(name) + " critical alternating sum matches Euler characteristic");
    check(morse_inequalities_hold(g, betti),
          std::string(name) + " critical counts dominate Z2 Betti numbers");
  }
  return all_ok ? 0 : 1;
}

int cmd_bench(const std::string& family, int lo, int hi, int trials, double density, int max_dim,
              std::uint64_t seed) {
  std::cout << "family,param,n,d,trial,algorithm,lex_comparisons,lower_link_calls,wall_ms\n";
  for (int param = lo; param <= hi; ++param) {
    for (int trial = 0; trial < trials; ++trial) {
      SimplicialComplex K;
      if (family == "simplex")
        K = make_simplex_closure(param);
      else if (family == "sphere")
        K = make_sphere(param);
      else
        K = make_random_flag(param, density, max_dim, seed + static_cast<std::uint64_t>(trial));
      const auto row = [&](const char* algo, const ExtractStats& st) {
        std::cout << family << "," << param << "," << K.size() << "," << K.dim() << "," << trial
                  << "," << algo << "," << st.lex_comparisons << "," << st.lower_link_calls << ","
                  << st.wall_ms << "\n";
      };
      ExtractStats fast_stats;
      (void)extract_right_child(K, &fast_stats);
      row("right-child", fast_stats);
      ExtractStats raw_stats;
      (void)extract_raw(K, &raw_stats);
      row("raw", raw_stats);
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"discrete gradient extraction on simplicial complexes"};
  app.require_subcommand(1);

  auto* ex = app.add_subcommand("extract", "extract a gradient field from a complex file");
  std::string ex_file, ex_algo = "right-child", ex_out = "json", ex_outfile;
  double ex_pers = kInfinitePersistence;
  ex->add_option("file", ex_file, "complex file")->required();
  ex->add_option("--algo", ex_algo, "right-child | raw | full (raw + cancellation)")
      ->check(CLI::IsMember({"right-child", "raw", "full"}));
  ex->add_option("--persistence", ex_pers, "cancellation threshold for --algo full");
  ex->add_option("--out", ex_out, "json | dot")->check(CLI::IsMember({"json", "dot"}));
  ex->add_option("-o,--output", ex_outfile, "write to this file instead of stdout");

  auto* cmp = app.add_subcommand("compare", "run both extractors and compare outputs");
  std::string cmp_file;
  cmp->add_option("file", cmp_file, "complex file")->required();

  auto* val = app.add_subcommand("validate", "check field validity and topological identities");
  std::string val_file;
  val->add_option("file", val_file, "complex file")->required();

  auto* bench = app.add_subcommand("bench", "compare operation counts across a family sweep");
  std::string b_family, b_dims;
  int b_trials = 1, b_maxdim = 4;
  double b_density = 0.3;
  std::uint64_t b_seed = 12345;
  bench->add_option("--family", b_family, "simplex | sphere | random")
      ->required()
      ->check(CLI::IsMember({"simplex", "sphere", "random"}));
  bench->add_option("--dims", b_dims, "sweep range A..B (vertex count for random)")->required();
  bench->add_option("--trials", b_trials, "repetitions per parameter")->check(CLI::PositiveNumber);
  bench->add_option("--density", b_density, "edge probability for random family");
  bench->add_option("--max-dim", b_maxdim, "dimension cap for random family");
  bench->add_option("--seed", b_seed, "base seed for random family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ex->parsed()) return cmd_extract(ex_file, ex_algo, ex_pers, ex_out, ex_outfile);
    if (cmp->parsed()) return cmd_compare(cmp_file);
    if (val->parsed()) return cmd_validate(val_file);
    if (bench->parsed()) {
      const auto dots = b_dims.find("..");
      if (dots == std::string::npos)
        fail(errc::invalid_argument, "--dims expects a range like 2..10");
      int lo = 0, hi = 0;
      try {
        lo = std::stoi(b_dims.substr(0, dots));
        hi = std::stoi(b_dims.substr(dots + 2));
      } catch (const std::exception&) {
        fail(errc::invalid_argument, "--dims expects a range like 2..10");
      }
      require(lo >= 0 && lo <= hi, errc::invalid_argument, "--dims range is empty or negative");
      return cmd_bench(b_family, lo, hi, b_trials, b_density, b_maxdim, b_seed);
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace dmt
