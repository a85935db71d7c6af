#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natspec/closure.hpp"
#include "natspec/graph.hpp"
#include "natspec/matrix.hpp"

namespace natspec {

struct DistanceResult {
  Matrix dist;
  std::size_t diam = 0;
};

// BFS distances. Throws DomainError for disconnected graphs.
DistanceResult distance_and_diameter(const Graph& g);

// G(n, 1/2); the same (n, seed) always gives the same graph.
Graph random_gnp_half(std::size_t n, std::uint64_t seed);

// floor(3 log2 n), computed exactly in integers.
std::size_t bes_r_paper(std::size_t n);

struct BesReport {
  std::size_t n = 0;
  std::size_t r_paper = 0;  // floor(3 log2 n)
  std::size_t r = 0;        // min(r_paper, n - 1) unless overridden
  std::vector<std::size_t> order;           // vertices by (degree desc, index)
  std::vector<std::size_t> degrees_sorted;  // non-increasing
  bool top_degrees_distinct = false;        // d_1 > ... > d_r > d_{r+1}
  // w_j for the j-th vertex in `order`, j >= r; bit i is A[order[i], order[j]].
  std::vector<std::uint64_t> signatures;
  bool signatures_distinct = false;
  bool passes() const { return top_degrees_distinct && signatures_distinct; }
};

// `r_override` replaces the truncated r (must be in [1, min(n - 1, 64)]).
BesReport bes_statistics(const Graph& g, std::optional<std::size_t> r_override = std::nullopt);

struct Certificate {
  std::size_t r = 0;
  std::size_t r_paper = 0;
  std::vector<std::size_t> order;
  // b_1..b_n in the order of `order`: diagonal matrix units.
  std::vector<Matrix> diag_units;
  // unit_vertex[k] is the vertex carrying the 1 of diag_units[k].
  std::vector<std::size_t> unit_vertex;
  std::vector<std::string> trace;
};

struct CertificateResult {
  enum class Status { certified, degree_collision, signature_collision, verification_mismatch };
  Status status = Status::degree_collision;
  std::string reason;
  std::optional<Certificate> certificate;
  bool ok() const { return status == Status::certified; }
};

struct CertificateOptions {
  // Try r = min(floor(3 log2 n), n - 1) first, then every r in [1, n - 2].
  bool adaptive_r = true;
};

// Builds b_i = proj({0..n-1}, d_i)((A*A).I) for the r top-degree vertices and
// b_j from the signature formula for the rest, then verifies that the n
// results are distinct diagonal matrix units.
CertificateResult bes_certificate(const Graph& g, const CertificateOptions& opt = {});

// dim span{b_s * J * b_t} == n^2.
bool certificate_spans_full(const Certificate& c);

struct Reconstruction {
  bool ok = false;
  std::size_t va = 0;  // |V_a|
  Graph graph;
  // vertex_map[k] = vertex of the input represented by vertex k of `graph`.
  std::vector<std::size_t> vertex_map;
  std::string reason;
};

Reconstruction reconstruct(const Graph& g, const ClosureOptions& opt = {});

struct SrgParameters {
  std::size_t n, k, lambda, mu;
  friend bool operator==(const SrgParameters&, const SrgParameters&) = default;
};

// None unless g is connected, neither complete nor empty, and strongly regular.
std::optional<SrgParameters> srg_parameters(const Graph& g);

struct IntersectionArray {
  std::vector<std::size_t> b;  // b_0 .. b_{d-1}
  std::vector<std::size_t> c;  // c_1 .. c_d
  friend bool operator==(const IntersectionArray&, const IntersectionArray&) = default;
};

// None unless g is nonempty, connected and distance-regular. K1 gives empty arrays.
std::optional<IntersectionArray> intersection_array(const Graph& g);

// Upper-triangle bit code in graph6 order, used for canonical forms (n <= 11).
std::uint64_t graph_code(const Graph& g);
Graph graph_from_code(std::size_t n, std::uint64_t code);

// Minimum code over all relabelings (n <= 8).
std::uint64_t canonical_code(const Graph& g);

// One representative per isomorphism class (the minimum code of its orbit),
// ascending by code. n <= 6.
std::vector<Graph> enumerate_graphs(std::size_t n);

enum class IsoVerdict { isomorphic, non_isomorphic, unknown };

// Exhaustive search for n <= 8; above that only invariant refutation
// (degree sequence, triangle counts, 4-clique counts), otherwise unknown.
IsoVerdict are_isomorphic(const Graph& a, const Graph& b);

std::size_t count_four_cliques(const Graph& g);

}  // namespace natspec
