#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "natspec/bitmatrix.hpp"
#include "natspec/graph.hpp"
#include "natspec/matrix.hpp"

namespace natspec {

// Linear subspace of M_n(Q) in reduced row-echelon form (matrices flattened
// row-major to n*n coordinates). Bases are ordered by pivot, so equal
// subspaces have identical bases.
class SubspaceBasis {
 public:
  struct Flags {
    bool bullet = false;
    bool circ = false;
    bool transpose = false;
  };

  explicit SubspaceBasis(std::size_t n = 0) : n_(n) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Matrix>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  // Adds m to the span. Returns true when the dimension grew.
  bool insert(const Matrix& m);
  // Remainder of m after elimination against the basis.
  Matrix reduce(const Matrix& m) const;
  bool contains(const Matrix& m) const { return reduce(m).is_zero(); }
  bool same_subspace(const SubspaceBasis& o) const {
    return n_ == o.n_ && pivots_ == o.pivots_ && basis_ == o.basis_;
  }

  // Exact closure checks over all basis pairs.
  bool bullet_closed() const;
  bool circ_closed() const;
  bool transpose_closed() const;

  Flags flags;

  // Builds a basis directly; the caller guarantees reduced echelon form.
  static SubspaceBasis from_echelon(std::size_t n, std::vector<Matrix> basis,
                                    std::vector<std::size_t> pivots, Flags flags);

 private:
  std::size_t n_;
  std::vector<Matrix> basis_;
  std::vector<std::size_t> pivots_;
};

// Partition of the n*n entry positions. Classes are numbered in order of
// their smallest position. The span of the class indicators is exactly the
// unital Hadamard-closed subspace the partition describes.
struct EntryPartition {
  std::size_t n = 0;
  std::vector<std::uint32_t> class_of;  // size n*n
  std::size_t classes = 0;

  std::vector<BitMatrix> indicators() const;
  SubspaceBasis to_subspace() const;
  friend bool operator==(const EntryPartition&, const EntryPartition&) = default;
};

// Joint-value partition of the given matrices: positions p, q share a class
// iff every matrix agrees at p and q. This is F<S>_circ (J included).
EntryPartition value_partition(std::size_t n, const std::vector<Matrix>& mats);

// One filtration step: the joint-value partition of all products E_X * E_Y
// of class indicators.
EntryPartition refine_by_products(const EntryPartition& p);

struct ClosureOptions {
  std::size_t max_n = 16;
};

// Partition describing F<<a>>.
EntryPartition double_algebra_partition(const Matrix& a, const ClosureOptions& opt = {});

SubspaceBasis generated_double_algebra(const Matrix& a, const ClosureOptions& opt = {});
SubspaceBasis circ_generated(std::size_t n, const std::vector<Matrix>& s);

// R^(0) = F<I, a>_circ, R^(i) = F<R^(i-1) * R^(i-1)>_circ. The list ends
// with the first term equal to its predecessor.
std::vector<SubspaceBasis> filtration(const Matrix& a, const ClosureOptions& opt = {});

bool is_full(const Matrix& a, const ClosureOptions& opt = {});

struct DimensionBoundsReport {
  std::size_t n = 0;
  std::size_t diam = 0;
  std::size_t dim = 0;
  bool lower_ok = false;     // diam + 1 <= dim
  bool upper_ok = false;     // dim <= n^2
  bool lower_tight = false;  // diam + 1 == dim
  bool upper_tight = false;  // dim == n^2
};

// Throws DomainError for disconnected graphs.
DimensionBoundsReport dimension_bounds_report(const Graph& g, const ClosureOptions& opt = {});

}  // namespace natspec
