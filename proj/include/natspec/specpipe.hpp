#pragma once

// Natural spectra of double polynomials, merging several spectra into one,
// and the family-relative spectrum that determines full-dimension graphs.

#include <cstddef>
#include <vector>

#include "natspec/dpoly.hpp"
#include "natspec/graph.hpp"
#include "natspec/idempotent.hpp"
#include "natspec/matrix.hpp"
#include "natspec/spectrum.hpp"

namespace natspec {

// char_poly(eval(p, A_G)).
Spectrum natural_spectrum(const DPoly& p, const Graph& g);

// natural_spectrum of each member of d, in order.
std::vector<Spectrum> strong_spectrum_restricted(const Graph& g, const std::vector<DPoly>& d);

// natural_spectrum(p, g) for every g, evaluated in parallel (0 threads: see
// resolve_threads).
std::vector<Spectrum> family_spectra(const DPoly& p, const std::vector<Graph>& family,
                                     unsigned threads = 0);

// Weights a_1 = 1, a_{i+1} = z_i with z_i = 2n(n b_i)^n + 1 and
// b_i = b (a_1 + ... + a_i), the entry bound of the partial sum
// a_1 A_1 + ... + a_i A_i. Each stage is a two-matrix merge of that partial
// sum with the next matrix, so every stage decodes exactly.
struct MergePlan {
  std::size_t m = 0;
  std::size_t n = 0;
  Integer b;
  std::vector<Integer> weights;  // size m
  std::vector<Integer> z;        // size m - 1; z[i] = weights[i + 1]
};

MergePlan make_merge_plan(std::size_t m, const Integer& b, std::size_t n);

// a_1 = 1, a_{i+1} = z a_i with the single z = 2n(nb)^n + 1. Exactly
// decodable for m <= 2 only; used where just injectivity on a finite family
// is needed and the nested plan would be too large.
std::vector<Integer> geometric_weights(std::size_t m, const Integer& b, std::size_t n);

// sum a_i A_i. Matrices must be n x n with integer entries in [0, b].
Matrix merge(const std::vector<Matrix>& mats, const MergePlan& plan);

// Spectra of the A_i from the spectrum of merge(A, plan): per stage the
// low part is tr T^k mod z and the high part floor(tr M^k / z^k). Throws
// DomainError on a non-integer or negative trace.
std::vector<Spectrum> demerge(const Spectrum& s, const MergePlan& plan);

struct DSOptions {
  std::size_t depth_cap = 64;
  unsigned threads = 0;
};

struct DSPipeline {
  DPoly p;
  std::vector<DPoly> d;
  IdempotentBasis basis;  // involution-closed
  std::vector<Integer> weights;
  std::size_t c_count = 0;
};

// (1) involution-closed universal basis B of the family, (2) C = {b * x * b'}
// over diagonal b, b' in B, (3) D = {c + sigma(c)}, (4) p = sum a_d d with
// geometric_weights(|D|, 1, n). Zero and repeated value tuples are dropped
// from C and D. Throws DomainError on an empty or mixed family.
DSPipeline build_ds_dpoly(const std::vector<Graph>& family, const DSOptions& opt = {});

enum class DSVerdict { equal_spectrum, different_spectrum };

// Throws DimensionError on a size mismatch.
DSVerdict ds_compare(const Graph& g1, const Graph& g2, const DPoly& p);

}  // namespace natspec
