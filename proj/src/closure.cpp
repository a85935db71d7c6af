#include "natspec/closure.hpp"

#include <algorithm>
#include <map>

#include "natspec/error.hpp"
#include "natspec/graphlab.hpp"
#include "natspec/simd.hpp"

namespace natspec {

bool SubspaceBasis::insert(const Matrix& m) {
  Matrix v = reduce(m);
  const auto e = v.entries();
  std::size_t piv = 0;
  while (piv < e.size() && e[piv] == 0) ++piv;
  if (piv == e.size()) return false;
  v *= Rational(1) / e[piv];
  for (auto& b : basis_) {
    const Rational c = b.entries()[piv];
    if (c != 0) b -= c * v;
  }
  const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + at, piv);
  basis_.insert(basis_.begin() + at, std::move(v));
  return true;
}

Matrix SubspaceBasis::reduce(const Matrix& m) const {
  if (m.size() != n_) throw DimensionError("matrix does not live in this ambient space");
  Matrix v = m;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational c = v.entries()[pivots_[k]];
    if (c != 0) v -= c * basis_[k];
  }
  return v;
}

bool SubspaceBasis::bullet_closed() const {
  for (const auto& a : basis_) {
    for (const auto& b : basis_) {
      if (!contains(mat_mul(a, b))) return false;
    }
  }
  return true;
}

bool SubspaceBasis::circ_closed() const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i; j < basis_.size(); ++j) {
      if (!contains(hadamard(basis_[i], basis_[j]))) return false;
    }
  }
  return true;
}

bool SubspaceBasis::transpose_closed() const {
  return std::all_of(basis_.begin(), basis_.end(),
                     [this](const Matrix& b) { return contains(transpose(b)); });
}

SubspaceBasis SubspaceBasis::from_echelon(std::size_t n, std::vector<Matrix> basis,
                                          std::vector<std::size_t> pivots, Flags flags) {
  SubspaceBasis s(n);
  s.basis_ = std::move(basis);
  s.pivots_ = std::move(pivots);
  s.flags = flags;
  return s;
}

namespace {

// Renumbers class ids by first occurrence.
void canonicalize(EntryPartition& p) {
  std::vector<std::uint32_t> remap;
  std::uint32_t next = 0;
  std::map<std::uint32_t, std::uint32_t> seen;
  for (auto& c : p.class_of) {
    auto [it, fresh] = seen.emplace(c, next);
    if (fresh) ++next;
    c = it->second;
  }
  p.classes = next;
}

// Refines p by the values v (indexed by position); v must have values in
// [0, bound). Returns true if the partition got finer.
bool refine_with(EntryPartition& p, const std::int64_t* v, std::size_t bound,
                 std::vector<std::int64_t>& scratch) {
  const std::size_t positions = p.class_of.size();
  // Cheap test: is v constant on every class?
  std::vector<std::int64_t>& first = scratch;
  first.assign(p.classes, -1);
  bool constant = true;
  for (std::size_t pos = 0; pos < positions && constant; ++pos) {
    auto& f = first[p.class_of[pos]];
    if (f < 0) f = v[pos];
    else if (f != v[pos]) constant = false;
  }
  if (constant) return false;
  std::vector<std::int64_t> id(p.classes * bound, -1);
  std::uint32_t next = 0;
  for (std::size_t pos = 0; pos < positions; ++pos) {
    auto& slot = id[p.class_of[pos] * bound + static_cast<std::size_t>(v[pos])];
    if (slot < 0) slot = next++;
    p.class_of[pos] = static_cast<std::uint32_t>(slot);
  }
  p.classes = next;
  return true;
}

}  // namespace

std::vector<BitMatrix> EntryPartition::indicators() const {
  std::vector<BitMatrix> out(classes, BitMatrix(n));
  for (std::size_t pos = 0; pos < class_of.size(); ++pos) out[class_of[pos]].set(pos / n, pos % n);
  return out;
}

SubspaceBasis EntryPartition::to_subspace() const {
  std::vector<Matrix> basis;
  std::vector<std::size_t> pivots(classes, class_of.size());
  for (const auto& b : indicators()) basis.push_back(b.to_matrix());
  for (std::size_t pos = class_of.size(); pos-- > 0;) pivots[class_of[pos]] = pos;
  SubspaceBasis::Flags flags;
  flags.circ = true;
  return SubspaceBasis::from_echelon(n, std::move(basis), std::move(pivots), flags);
}

EntryPartition value_partition(std::size_t n, const std::vector<Matrix>& mats) {
  EntryPartition p;
  p.n = n;
  p.class_of.assign(n * n, 0);
  p.classes = n ? 1 : 0;
  for (const auto& m : mats) {
    if (m.size() != n) throw DimensionError("generator has the wrong dimension");
    std::map<std::pair<std::uint32_t, Rational>, std::uint32_t> ids;
    std::uint32_t next = 0;
    for (std::size_t pos = 0; pos < n * n; ++pos) {
      auto [it, fresh] = ids.emplace(std::make_pair(p.class_of[pos], m.entries()[pos]), next);
      if (fresh) ++next;
      p.class_of[pos] = it->second;
    }
    p.classes = next;
  }
  canonicalize(p);
  return p;
}

EntryPartition refine_by_products(const EntryPartition& p) {
  const std::size_t n = p.n;
  const auto ind = p.indicators();
  std::vector<BitMatrix> ind_t;
  ind_t.reserve(ind.size());
  std::vector<std::uint64_t> col_support, row_support;  // bit v: column/row v used
  const std::size_t sw = (n + 63) / 64;
  col_support.assign(ind.size() * sw, 0);
  row_support.assign(ind.size() * sw, 0);
  for (std::size_t c = 0; c < ind.size(); ++c) {
    ind_t.push_back(ind[c].transposed());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (ind[c].get(i, j)) {
          row_support[c * sw + i / 64] |= std::uint64_t{1} << (i % 64);
          col_support[c * sw + j / 64] |= std::uint64_t{1} << (j % 64);
        }
      }
    }
  }
  EntryPartition out = p;
  std::vector<std::int64_t> prod(n * n), scratch;
  for (std::size_t x = 0; x < ind.size(); ++x) {
    for (std::size_t y = 0; y < ind.size(); ++y) {
      if (!simd::and_popcount({col_support.data() + x * sw, sw},
                              {row_support.data() + y * sw, sw})) {
        continue;
      }
      simd::bit_matmul(ind[x].data(), ind_t[y].data(), n, ind[x].words_per_row(), prod.data());
      refine_with(out, prod.data(), n + 1, scratch);
    }
  }
  canonicalize(out);
  return out;
}

EntryPartition double_algebra_partition(const Matrix& a, const ClosureOptions& opt) {
  const std::size_t n = a.size();
  if (n > opt.max_n) {
    throw DomainError("closure limited to n <= " + std::to_string(opt.max_n) + " (got " +
                      std::to_string(n) + ")");
  }
  EntryPartition p = value_partition(n, {Matrix::identity(n), a});
  for (;;) {
    EntryPartition next = refine_by_products(p);
    if (next.classes == p.classes) return next;
    p = std::move(next);
  }
}

namespace {

bool partition_transpose_closed(const EntryPartition& p) {
  const std::size_t n = p.n;
  std::vector<std::int64_t> image(p.classes, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = p.class_of[i * n + j];
      const auto t = static_cast<std::int64_t>(p.class_of[j * n + i]);
      if (image[c] < 0) image[c] = t;
      else if (image[c] != t) return false;
    }
  }
  return true;
}

}  // namespace

SubspaceBasis generated_double_algebra(const Matrix& a, const ClosureOptions& opt) {
  const EntryPartition p = double_algebra_partition(a, opt);
  SubspaceBasis s = p.to_subspace();
  s.flags.bullet = true;
  s.flags.transpose = partition_transpose_closed(p);
  return s;
}

SubspaceBasis circ_generated(std::size_t n, const std::vector<Matrix>& s) {
  SubspaceBasis out = value_partition(n, s).to_subspace();
  return out;
}

std::vector<SubspaceBasis> filtration(const Matrix& a, const ClosureOptions& opt) {
  const std::size_t n = a.size();
  if (n > opt.max_n) {
    throw DomainError("closure limited to n <= " + std::to_string(opt.max_n));
  }
  std::vector<SubspaceBasis> out;
  EntryPartition p = value_partition(n, {Matrix::identity(n), a});
  out.push_back(p.to_subspace());
  for (;;) {
    EntryPartition next = refine_by_products(p);
    out.push_back(next.to_subspace());
    if (next.classes == p.classes) break;
    p = std::move(next);
  }
  out.back().flags.bullet = true;
  return out;
}

bool is_full(const Matrix& a, const ClosureOptions& opt) {
  return double_algebra_partition(a, opt).classes == a.size() * a.size();
}

DimensionBoundsReport dimension_bounds_report(const Graph& g, const ClosureOptions& opt) {
  DimensionBoundsReport r;
  r.n = g.n();
  r.diam = distance_and_diameter(g).diam;
  r.dim = double_algebra_partition(g.adjacency(), opt).classes;
  r.lower_ok = r.diam + 1 <= r.dim;
  r.upper_ok = r.dim <= r.n * r.n;
  r.lower_tight = r.diam + 1 == r.dim;
  r.upper_tight = r.dim == r.n * r.n;
  return r;
}

}  // namespace natspec
