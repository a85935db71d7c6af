#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natspec/bitmatrix.hpp"
#include "natspec/matrix.hpp"

namespace natspec {

// Undirected simple graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t n() const noexcept { return adj_.size(); }
  bool adjacent(std::size_t u, std::size_t v) const noexcept { return adj_.get(u, v); }
  // Throws DomainError on loops or out-of-range vertices.
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);

  std::size_t degree(std::size_t v) const noexcept { return adj_.row_count(v); }
  std::size_t edge_count() const noexcept { return adj_.count() / 2; }
  std::vector<std::size_t> neighbors(std::size_t v) const;

  const BitMatrix& adjacency_bits() const noexcept { return adj_; }
  Matrix adjacency() const { return adj_.to_matrix(); }

  // Vertex v of *this becomes vertex perm[v] of the result.
  Graph relabeled(std::span<const std::size_t> perm) const;
  Graph complement() const;
  bool connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

  // Throws DomainError unless `a` is symmetric 0/1 with zero diagonal.
  static Graph from_adjacency(const Matrix& a);

 private:
  BitMatrix adj_;
};

// graph6, standard short form. Supports n <= 258047.
Graph graph6_parse(std::string_view text);
std::string graph6_emit(const Graph& g);

// One graph6 string per non-empty line; '#' starts a comment line.
std::vector<Graph> read_graph6_corpus(std::string_view text);

Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph petersen_graph();
// Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
Graph shrikhande_graph();
// K_k x K_k (cartesian); k = 4 is the other SRG(16,6,2,2).
Graph rook_graph(std::size_t k);

}  // namespace natspec
