#include "pst/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pst/error.hpp"

namespace pst {

namespace {

std::string pair_name(std::size_t j, std::size_t k) {
  return "(" + std::to_string(j) + "," + std::to_string(k) + ")";
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n == 0) throw PreconditionError("graph needs at least one vertex");
  for (Edge& e : edges_) {
    if (e.j.label < 1 || e.j.label > n || e.k.label < 1 || e.k.label > n)
      throw PreconditionError("edge " + pair_name(e.j.label, e.k.label) +
                              " has a vertex out of range 1.." + std::to_string(n));
    if (e.j == e.k) throw PreconditionError("self-loop at vertex " + std::to_string(e.j.label));
    if (e.weight == 0.0 || !std::isfinite(e.weight))
      throw PreconditionError("edge " + pair_name(e.j.label, e.k.label) +
                              " must have a finite nonzero weight");
    if (e.j.label > e.k.label) std::swap(e.j, e.k);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.j.label != b.j.label ? a.j.label < b.j.label : a.k.label < b.k.label;
  });
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.j == b.j && a.k == b.k;
  });
  if (dup != edges_.end())
    throw PreconditionError("duplicate edge " + pair_name(dup->j.label, dup->k.label));
}

std::optional<double> WeightedGraph::weight(Vertex j, Vertex k) const {
  if (j.label > k.label) std::swap(j, k);
  for (const Edge& e : edges_)
    if (e.j == j && e.k == k) return e.weight;
  return std::nullopt;
}

bool WeightedGraph::is_connected() const {
  DisjointSets sets(n_);
  for (const Edge& e : edges_) sets.unite(e.j.index(), e.k.index());
  const std::size_t root = sets.find(0);
  for (std::size_t v = 1; v < n_; ++v)
    if (sets.find(v) != root) return false;
  return true;
}

bool WeightedGraph::has_negative_weight() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight < 0.0; });
}

RealSymmetricMatrix adjacency(const WeightedGraph& g) {
  RealSymmetricMatrix a(g.vertex_count());
  for (const Edge& e : g.edges()) a.set(e.j.index(), e.k.index(), e.weight);
  return a;
}

RealSymmetricMatrix laplacian(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  RealSymmetricMatrix l(n);
  std::vector<double> degree(n, 0.0);
  for (const Edge& e : g.edges()) {
    l.set(e.j.index(), e.k.index(), -e.weight);
    degree[e.j.index()] += e.weight;
    degree[e.k.index()] += e.weight;
  }
  for (std::size_t v = 0; v < n; ++v) l.set(v, v, degree[v]);
  return l;
}

RealSymmetricMatrix hamiltonian(const WeightedGraph& g, HamiltonianKind kind) {
  return kind == HamiltonianKind::Adjacency ? adjacency(g) : laplacian(g);
}

WeightedGraph path_graph(std::size_t n) {
  if (n < 1) throw PreconditionError("path needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j < n; ++j) edges.push_back({Vertex{j}, Vertex{j + 1}, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph krawtchouk_chain(std::size_t n) {
  if (n < 2) throw PreconditionError("Krawtchouk chain needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j < n; ++j)
    edges.push_back({Vertex{j}, Vertex{j + 1}, std::sqrt(static_cast<double>(j * (n - j)))});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph complete_minus_edge(std::size_t n) {
  if (n < 3) throw PreconditionError("complete-minus-edge graph needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = j + 1; k <= n; ++k)
      if (!(j == 1 && k == 2)) edges.push_back({Vertex{j}, Vertex{k}, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph family_graph(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw PreconditionError("family must look like name:n, got '" + spec + "'");
  const std::string name = spec.substr(0, colon);
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1 || v <= 0) throw std::invalid_argument("n");
    n = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw PreconditionError("family size must be a positive integer in '" + spec + "'");
  }
  if (name == "path") return path_graph(n);
  if (name == "krawtchouk") return krawtchouk_chain(n);
  if (name == "cme" || name == "complete-minus-edge") return complete_minus_edge(n);
  throw PreconditionError("unknown graph family '" + name + "' (path, krawtchouk, cme)");
}

WeightedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string extra;
    if (!n) {
      long long v = 0;
      if (!(fields >> v) || v <= 0 || (fields >> extra))
        throw ParseError("first line must be a positive vertex count", line_no);
      n = static_cast<std::size_t>(v);
      continue;
    }
    long long j = 0, k = 0;
    double w = 0.0;
    if (!(fields >> j >> k >> w) || (fields >> extra))
      throw ParseError("expected 'j k w'", line_no);
    if (j < 1 || k < 1 || static_cast<std::size_t>(j) > *n || static_cast<std::size_t>(k) > *n)
      throw ParseError("vertex out of range 1.." + std::to_string(*n), line_no);
    if (j == k) throw ParseError("self-loop at vertex " + std::to_string(j), line_no);
    if (w == 0.0 || !std::isfinite(w)) throw ParseError("weight must be finite and nonzero", line_no);
    const auto lo = static_cast<std::size_t>(std::min(j, k));
    const auto hi = static_cast<std::size_t>(std::max(j, k));
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].j.label == lo && edges[i].k.label == hi)
        throw ParseError("duplicate edge " + pair_name(lo, hi) + " (first on line " +
                             std::to_string(edge_line[i]) + ")",
                         line_no);
    edges.push_back({Vertex{lo}, Vertex{hi}, w});
    edge_line.push_back(line_no);
  }
  if (!n) throw ParseError("missing vertex count", 0);
  return WeightedGraph(*n, std::move(edges));
}

WeightedGraph read_edge_list_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open edge-list file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_edge_list(ss.str());
}

std::string emit_edge_list(const WeightedGraph& g) {
  std::ostringstream out;
  out.precision(17);
  out << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.j.label << ' ' << e.k.label << ' ' << e.weight << '\n';
  return out.str();
}

std::vector<std::string> graph_warnings(const WeightedGraph& g) {
  std::vector<std::string> w;
  if (!g.is_connected()) w.emplace_back("graph is not connected; bounds assume a connected graph");
  if (g.has_negative_weight())
    w.emplace_back("graph has negative weights; Perron-Frobenius arguments do not apply");
  return w;
}

}  // namespace pst
