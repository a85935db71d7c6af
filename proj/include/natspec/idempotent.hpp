#pragma once

// Primitive Hadamard-idempotent bases and universal bases over finite
// families of matrices.
//
// A universal basis is a list of double polynomials whose evaluations at
// every family member give (after dropping zeros) that member's primitive
// Hadamard-idempotent basis, with no value repeated. All constructions here
// are family-relative: polynomials are pruned as long as their values on
// every member are unchanged.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "natspec/bitmatrix.hpp"
#include "natspec/closure.hpp"
#include "natspec/dpoly.hpp"
#include "natspec/matrix.hpp"

namespace natspec {

struct IdempotentEntry {
  std::optional<DPoly> poly;
  std::vector<BitMatrix> values;  // one per family member
};

struct IdempotentBasis {
  std::size_t n = 0;
  std::size_t members = 0;
  std::vector<IdempotentEntry> entries;
  // sigma_B as a permutation of entry indices, when present.
  std::optional<std::vector<std::size_t>> involution_pairing;
  // |C| after dropping zero and repeated value tuples, and Lambda, for bases
  // built by universal_basis.
  std::size_t c_size = 0;
  std::vector<Rational> lambdas;

  Matrix value(std::size_t entry, std::size_t member) const;
  std::vector<BitMatrix> nonzero_values(std::size_t member) const;
  // Number of nonzero values on a member, i.e. the dimension it spans.
  std::size_t rank(std::size_t member) const;
};

// Primitive idempotents of a Hadamard-closed unital subspace, by partition of
// positions on the vector of basis values; ordered by smallest position.
// Throws DomainError if S is not Hadamard-closed or misses J.
std::vector<Matrix> primitive_circ_idempotents(const SubspaceBasis& s);

// c_i = b_i - sum_{j<i} b_i . c_j, with terms dropped that vanish on every
// family member. Throws DomainError when the values are not orthogonal
// 0/1 matrices afterwards (B was not weakly universal on the family).
std::vector<DPoly> strictify(const std::vector<DPoly>& b, const std::vector<Matrix>& family);

struct UniversalOptions {
  // Evaluates every projection and atom polynomial literally and checks the
  // reconstruction identity, 0/1-ness, orthogonality and the atom values.
  // When |C| <= full_atom_cap also builds the product d_X over all of C for
  // each atom and checks it, and that every c is the sum of its atoms.
  // Throws Error on any mismatch.
  bool verify = false;
  std::size_t full_atom_cap = 14;
};

// One refinement step: atoms of F<b(a) | b in B>_circ for every member a.
IdempotentBasis universal_basis(const std::vector<Matrix>& family, const std::vector<DPoly>& b,
                                const UniversalOptions& opt = {});

struct UniversalFullResult {
  IdempotentBasis basis;
  bool stabilized = false;
  std::size_t depth = 0;  // refinement steps performed
  std::vector<std::vector<std::size_t>> ranks;  // ranks[step][member]
};

// Alternates B <- {c * c'} with universal_basis until every member's
// subalgebra stops growing, starting from B = {I, x}.
UniversalFullResult universal_basis_full(const std::vector<Matrix>& family,
                                         std::size_t depth_cap = 64,
                                         const UniversalOptions& opt = {});

struct InvolutionResult {
  IdempotentBasis basis;
  bool weak_basis_ok = true;  // the 3k-element sequence was weakly universal
  std::string diagnostic;
};

// Strict universal basis closed under the standard involution, with
// transpose(b(a)) = sigma_B(b)(a) for every entry and member. Family
// members must be symmetric (DomainError otherwise).
InvolutionResult involution_close(const IdempotentBasis& basis, const std::vector<Matrix>& family);

}  // namespace natspec
