#pragma once

// Double polynomials: elements of the free double algebra F<<x>> over Q,
// stored as immutable shared DAGs.
//
// Text grammar (see docs/grammar.md):
//   `*` matrix product, `.` Hadamard product, `I` / `J` the two units, `x`
//   the generator, postfix `'` the standard involution, `^k` / `^.k` powers,
//   rational literals `p` or `p/q`. Tightest first: postfix, `.`, `*`,
//   unary minus, binary + and -.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "natspec/graph.hpp"
#include "natspec/matrix.hpp"

namespace natspec {

enum class DKind : std::uint8_t { var, bullet_one, circ_one, scalar_mul, sum, bullet_prod, circ_prod };

class DPoly;

namespace detail {

struct DNode {
  DKind kind;
  Rational coeff;  // scalar_mul only
  std::vector<std::shared_ptr<const DNode>> args;
  std::size_t hash;
  // Set on the top node of a chain  circ_prod_{i=1..N} (i*J - base).
  // eval uses the entry-wise identity prod (i - m) = N! [m == 0] when every
  // entry m of base is an integer in [0, N]. Ignored by equality and printing.
  std::uint64_t falling_n = 0;
  std::shared_ptr<const DNode> falling_base;
};

}  // namespace detail

class DPoly {
 public:
  // Default-constructed value is the zero polynomial.
  DPoly();

  static DPoly x();
  static DPoly bullet_one();  // I
  static DPoly circ_one();    // J
  static DPoly zero();

  // Smart constructors normalise eagerly: sums are flattened and drop zero
  // terms, scalars are folded out of products and merged, 1*p == p.
  static DPoly scalar(const Rational& c, const DPoly& p);
  static DPoly sum(const std::vector<DPoly>& terms);
  static DPoly bullet(const DPoly& a, const DPoly& b);
  static DPoly circ(const DPoly& a, const DPoly& b);
  // p^k as a left-associated chain; p^0 == I.
  static DPoly bullet_power(const DPoly& p, unsigned k);
  // p^.k as a left-associated chain; p^.0 == J.
  static DPoly circ_power(const DPoly& p, unsigned k);

  DKind kind() const noexcept { return node_->kind; }
  bool is_zero() const noexcept { return node_->kind == DKind::sum && node_->args.empty(); }
  const Rational& coefficient() const noexcept { return node_->coeff; }
  std::size_t arity() const noexcept { return node_->args.size(); }
  DPoly arg(std::size_t i) const { return DPoly(node_->args.at(i)); }
  std::size_t hash() const noexcept { return node_->hash; }
  // Node identity; stable while any copy of this value is alive.
  const detail::DNode* id() const noexcept { return node_.get(); }
  // Number of distinct nodes in the DAG.
  std::size_t dag_size() const;

  // Structural equality (exact, after normalisation). Never semantic.
  friend bool operator==(const DPoly& a, const DPoly& b);

  friend DPoly operator+(const DPoly& a, const DPoly& b) { return sum({a, b}); }
  friend DPoly operator-(const DPoly& a, const DPoly& b) {
    return sum({a, scalar(Rational(-1), b)});
  }
  friend DPoly operator-(const DPoly& a) { return scalar(Rational(-1), a); }
  friend DPoly operator*(const Rational& c, const DPoly& p) { return scalar(c, p); }

  const std::shared_ptr<const detail::DNode>& node() const noexcept { return node_; }
  explicit DPoly(std::shared_ptr<const detail::DNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::DNode> node_;
};

struct DPolyHash {
  std::size_t operator()(const DPoly& p) const noexcept { return p.hash(); }
};

DPoly parse_dpoly(std::string_view text);

// Canonical text: parse_dpoly(print_dpoly(p)) == p.
std::string print_dpoly(const DPoly& p);

// Same language extended with bindings for shared sub-DAGs:
//   let $1 = x + I; let $2 = $1*$1; $2.$2 - x
// Output stays linear in the DAG size; parse_dpoly accepts it.
std::string print_dpoly_shared(const DPoly& p);

Matrix eval(const DPoly& p, const Matrix& a);
// Evaluates several polynomials with one shared memo table.
std::vector<Matrix> eval_many(const std::vector<DPoly>& ps, const Matrix& a);

// The standard involution: fixes x, I, J, reverses both product orders.
DPoly involution(const DPoly& p);
// Same as involution on each, sharing work across common subgraphs.
std::vector<DPoly> involution_many(const std::vector<DPoly>& ps);

// f * g: substitutes g for x in f.
DPoly compose(const DPoly& f, const DPoly& g);

// circ_prod over mu in lambdas \ {lambda} of (x - mu J) / (lambda - mu).
// Throws DomainError if lambda is missing or lambdas repeat.
DPoly proj_poly(const std::vector<Rational>& lambdas, const Rational& lambda);

// Distinct entries of a, ascending.
std::vector<Rational> circ_spectrum(const Matrix& a);

enum class ClassicMatrix { complement, laplacian, signless_laplacian, distance };

// For distance, n is the vertex count and big_n the bound N >= 1 (see
// distance_N_bound); both are ignored otherwise.
DPoly classic_dpoly(ClassicMatrix which, std::uint64_t big_n = 0, std::size_t n = 0);

// Largest entry of (A + I)^(n-1).
Integer distance_N_bound(const Graph& g);

}  // namespace natspec
