#pragma once

// Independent reference implementations used only by tests. Each one is
// deliberately naive and shares no code path with the library routine it
// checks.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "natspec/dpoly.hpp"
#include "natspec/graph.hpp"
#include "natspec/matrix.hpp"

namespace oracle {

using natspec::Matrix;
using natspec::Rational;

// Characteristic polynomial by Faddeev-LeVerrier (uses division by k).
// Ascending coefficients, monic.
std::vector<Rational> faddeev_leverrier(const Matrix& a);

// Floating-point eigenvalues, for loose cross-checks only.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

// Expands prod (t - root) with integer roots, ascending coefficients.
std::vector<Rational> poly_from_roots(const std::vector<long>& roots);

Matrix random_rational_matrix(std::size_t n, std::mt19937_64& rng, int num_range = 5,
                              int den_range = 4);
Matrix random_int_matrix(std::size_t n, std::mt19937_64& rng, int lo, int hi);
std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng);

// Dimension of the span of the given matrices (plain Gaussian elimination).
std::size_t span_rank(const std::vector<Matrix>& mats);

// Random double polynomial of bounded depth with small rational scalars.
natspec::DPoly random_dpoly(std::mt19937_64& rng, int depth);

natspec::Graph random_graph(std::size_t n, std::mt19937_64& rng);

// All-pairs BFS distances; -1 for unreachable pairs.
std::vector<std::vector<long>> bfs_distances(const natspec::Graph& g);

long count_triangles(const natspec::Graph& g);

// Naive double-algebra closure: start from {I, J, a} and adjoin every
// product (both kinds) of basis pairs until nothing new appears. Returns an
// arbitrary (not echelonized) basis.
std::vector<Matrix> naive_double_closure(const Matrix& a);

// Naive Hadamard-unital closure of a set: adjoin J and all Hadamard
// products of basis pairs until stable.
std::vector<Matrix> naive_circ_closure(std::size_t n, const std::vector<Matrix>& s);

// Whether m lies in the span of mats.
bool in_span(const std::vector<Matrix>& mats, const Matrix& m);

}  // namespace oracle
