#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pst/spectral.hpp"
#include "pst/vertex.hpp"

namespace pst {

struct Edge {
  Vertex j;
  Vertex k;  // j.label < k.label
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class HamiltonianKind { Adjacency, Laplacian };

/// Undirected weighted graph. Edges are stored canonically (j < k), sorted,
/// without duplicates or zero weights.
class WeightedGraph {
 public:
  /// Throws PreconditionError on self-loops, out-of-range vertices,
  /// duplicate pairs or zero weights.
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::optional<double> weight(Vertex j, Vertex k) const;

  bool is_connected() const;
  bool has_negative_weight() const noexcept;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

RealSymmetricMatrix adjacency(const WeightedGraph& g);
/// L = R - A with R the diagonal of row sums.
RealSymmetricMatrix laplacian(const WeightedGraph& g);
RealSymmetricMatrix hamiltonian(const WeightedGraph& g, HamiltonianKind kind);

/// Unweighted path 1 - 2 - ... - n.
WeightedGraph path_graph(std::size_t n);
/// Path with coupling sqrt(j (n - j)) on edge (j, j+1).
WeightedGraph krawtchouk_chain(std::size_t n);
/// Complete graph on n vertices with the edge (1,2) removed.
WeightedGraph complete_minus_edge(std::size_t n);

/// Builds a named family from "name:n": path, krawtchouk, cme
/// (complete-minus-edge is accepted as an alias).
WeightedGraph family_graph(const std::string& spec);

/// Edge-list format: first non-comment line n, then "j k w" per line,
/// '#' starts a comment line. Throws ParseError with the offending line.
WeightedGraph parse_edge_list(const std::string& text);
WeightedGraph read_edge_list_file(const std::string& path);
std::string emit_edge_list(const WeightedGraph& g);

/// Human-readable warnings (disconnected graph, negative weights).
std::vector<std::string> graph_warnings(const WeightedGraph& g);

}  // namespace pst
