#include "symcert/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace symcert {

Graph::Graph(int vertices) : n(vertices), adj(vertices, std::vector<bool>(vertices, false)) {}

Graph Graph::from_mask(int vertices, std::uint64_t mask) {
  Graph g(vertices);
  int bit = 0;
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j, ++bit) g.set_edge(i, j, (mask >> bit) & 1U);
  }
  return g;
}

void Graph::set_edge(int i, int j, bool present) {
  adj[i][j] = present;
  adj[j][i] = present;
}

Graph complement(const Graph& g) {
  Graph c(g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) c.set_edge(i, j, !g.edge(i, j));
  }
  return c;
}

bool is_clique(const Graph& g, std::uint32_t subset) {
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if ((subset >> i & 1U) && (subset >> j & 1U) && !g.edge(i, j)) return false;
    }
  }
  return true;
}

bool is_vertex_cover(const Graph& g, std::uint32_t subset) {
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (g.edge(i, j) && !(subset >> i & 1U) && !(subset >> j & 1U)) return false;
    }
  }
  return true;
}

bool oracle_clique(const Graph& g, int k) {
  for (std::uint32_t s = 0; s < (1U << g.n); ++s) {
    if (std::popcount(s) >= k && is_clique(g, s)) return true;
  }
  return false;
}

bool oracle_vertex_cover(const Graph& g, int l) {
  for (std::uint32_t s = 0; s < (1U << g.n); ++s) {
    if (std::popcount(s) <= l && is_vertex_cover(g, s)) return true;
  }
  return false;
}

std::string clique_instance_text(const Graph& g, int k) {
  std::string text = "nV = " + std::to_string(g.n) + ";\nnK_clique = " + std::to_string(k) + ";\n";
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      text += "bE_clique[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
              (g.edge(i, j) ? "true" : "false") + ";\n";
    }
  }
  return text;
}

OracleReport oracle_reduction_equisat(int n, const std::vector<const CorpusCase*>& clique_programs,
                                      const PipelineOptions& options) {
  OracleReport report;
  const std::uint64_t graphs = std::uint64_t{1} << Graph::pair_count(n);
  for (std::uint64_t mask = 0; mask < graphs && report.passed; ++mask) {
    const Graph g = Graph::from_mask(n, mask);
    for (int k = 0; k <= n; ++k) {
      const bool clique = oracle_clique(g, k);
      const bool cover = oracle_vertex_cover(complement(g), n - k);
      std::string witness = "graph mask " + std::to_string(mask) + " on " + std::to_string(n) +
                            " vertices, k=" + std::to_string(k);
      if (clique != cover) {
        report.passed = false;
        report.failure = "oracles disagree for " + witness;
        break;
      }
      for (const CorpusCase* program : clique_programs) {
        const std::string source = with_instance(*program, clique_instance_text(g, k));
        PipelineOptions o = options;
        o.mode = Mode::Solve;
        o.width = program->run_width;
        const bool sat = run_pipeline(source, o).status == SatStatus::Sat;
        if (sat != clique) {
          report.passed = false;
          report.failure = program->id + " answers " + (sat ? "yes" : "no") + " for " + witness;
          break;
        }
      }
      if (!report.passed) break;
      ++report.checked;
    }
  }
  return report;
}

std::uint64_t t_clauses(std::uint64_t k, std::uint64_t n) {
  if (k == 0) throw std::invalid_argument("an empty clause has no 3SAT image");
  if (k > 2 * n) throw std::invalid_argument("clause longer than 2n literals");
  switch (k) {
    case 1: return 4;
    case 2: return 2;
    case 3: return 1;
    default: return k - 2;
  }
}

Sat3Size sat3_output_size(std::uint64_t n, std::uint64_t clauses) {
  if (n < 2) throw std::invalid_argument("the reduction needs at least two variables");
  return {clauses * std::max<std::uint64_t>(2 * n - 2, 4) * 4, n + clauses * (2 * n - 3) * 2};
}

}  // namespace symcert
