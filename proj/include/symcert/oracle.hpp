#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symcert/corpus.hpp"

namespace symcert {

/// Simple undirected graph on vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::vector<bool>> adj;

  explicit Graph(int vertices = 0);
  /// Edge bits over the upper triangle in order (0,1), (0,2), ..., (n-2,n-1).
  static Graph from_mask(int vertices, std::uint64_t mask);
  static int pair_count(int vertices) { return vertices * (vertices - 1) / 2; }

  bool edge(int i, int j) const { return adj[i][j]; }
  void set_edge(int i, int j, bool present);
};

Graph complement(const Graph& g);

/// `subset` is a bit mask over the vertices.
bool is_clique(const Graph& g, std::uint32_t subset);
bool is_vertex_cover(const Graph& g, std::uint32_t subset);

/// Some clique with at least k vertices exists (by subset enumeration).
bool oracle_clique(const Graph& g, int k);
/// Some vertex cover with at most l vertices exists (by subset enumeration).
bool oracle_vertex_cover(const Graph& g, int l);

/// Instance block in the clique programs' style: nV, nK_clique and every
/// bE_clique[i][j] for i < j.
std::string clique_instance_text(const Graph& g, int k);

struct OracleReport {
  bool passed = true;
  std::size_t checked = 0;
  std::string failure;  // first disagreement, with the witness graph
};

/// For all graphs on n vertices and all k in 0..n: clique(G, k) equals
/// vertex_cover(complement(G), n - k), and the SAT pipeline on each given
/// program (with G inlined as its instance) gives the same yes/no answer.
OracleReport oracle_reduction_equisat(int n, const std::vector<const CorpusCase*>& clique_programs,
                                      const PipelineOptions& options = {});

/// Output clauses of one input clause of length k under the SAT to 3SAT
/// reduction (k between 1 and 2n; throws std::invalid_argument otherwise).
std::uint64_t t_clauses(std::uint64_t k, std::uint64_t n);

struct Sat3Size {
  std::uint64_t clause_slots = 0;
  std::uint64_t variables = 0;
};

/// Size of the 3SAT array produced from C clauses over n >= 2 variables:
/// C * max(2n - 2, 4) * 4 clause slots and n + C * (2n - 3) * 2 variables.
Sat3Size sat3_output_size(std::uint64_t n, std::uint64_t clauses);

}  // namespace symcert
