#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "natspec/closure.hpp"
#include "natspec/error.hpp"
#include "natspec/graphlab.hpp"
#include "natspec/idempotent.hpp"
#include "oracles.hpp"

using natspec::BitMatrix;
using natspec::DPoly;
using natspec::Graph;
using natspec::IdempotentBasis;
using natspec::Matrix;

namespace {

std::vector<Matrix> graphs_of_size(std::size_t n) {
  std::vector<Matrix> out;
  for (const auto& g : natspec::enumerate_graphs(n)) out.push_back(g.adjacency());
  return out;
}

std::set<BitMatrix> as_set(const std::vector<BitMatrix>& v) { return {v.begin(), v.end()}; }

std::set<BitMatrix> as_set(const std::vector<Matrix>& v) {
  std::set<BitMatrix> s;
  for (const auto& m : v) s.insert(BitMatrix::from_matrix(m));
  return s;
}

// Nonzero values on a member: 0/1, disjoint, no repeats, summing to J.
bool strict_on(const IdempotentBasis& b, std::size_t a) {
  const auto vals = b.nonzero_values(a);
  Matrix total(b.n);
  for (const auto& v : vals) total += v.to_matrix();
  return total == Matrix::ones(b.n) && as_set(vals).size() == vals.size();
}

// The members' atoms span the naive Hadamard closure of the given values and
// lie in it, so they are its primitive idempotents.
bool primitive_for(const IdempotentBasis& b, std::size_t a, const std::vector<Matrix>& gens) {
  const auto closure = oracle::naive_circ_closure(b.n, gens);
  const auto vals = b.nonzero_values(a);
  if (vals.size() != closure.size()) return false;
  for (const auto& v : vals) {
    if (!oracle::in_span(closure, v.to_matrix())) return false;
  }
  return true;
}

bool is_matrix_unit(const BitMatrix& m) { return m.count() == 1; }

}  // namespace

TEST_CASE("primitive idempotents of Hadamard-closed subspaces") {
  SUBCASE("span of J") {
    const auto e = natspec::primitive_circ_idempotents(natspec::circ_generated(3, {}));
    REQUIRE(e.size() == 1);
    CHECK(e[0] == Matrix::ones(3));
  }
  SUBCASE("Petersen") {
    const Matrix a = natspec::petersen_graph().adjacency();
    const auto e = natspec::primitive_circ_idempotents(natspec::generated_double_algebra(a));
    const Matrix i = Matrix::identity(10);
    CHECK(as_set(e) == as_set(std::vector<Matrix>{i, a, Matrix::ones(10) - i - a}));
  }
  SUBCASE("full matrix algebra") {
    natspec::SubspaceBasis s(2);
    for (std::size_t p = 0; p < 4; ++p) {
      Matrix m(2);
      m.entries()[p] = 1;
      s.insert(m);
    }
    const auto e = natspec::primitive_circ_idempotents(s);
    CHECK(e.size() == 4);
    for (const auto& m : e) CHECK(is_matrix_unit(BitMatrix::from_matrix(m)));
  }
  SUBCASE("not closed") {
    natspec::SubspaceBasis s(2);
    s.insert(Matrix{{0, 1}, {1, 0}});
    CHECK_THROWS_AS(natspec::primitive_circ_idempotents(s), natspec::DomainError);
    natspec::SubspaceBasis d(3);
    d.insert(Matrix::ones(3));
    d.insert(Matrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 1}});
    CHECK_THROWS_AS(natspec::primitive_circ_idempotents(d), natspec::DomainError);
  }
}

TEST_CASE("strictify examples") {
  const auto family = graphs_of_size(3);
  const DPoly x = DPoly::x();
  const auto c = natspec::strictify({DPoly::circ(x, x), x}, family);
  REQUIRE(c.size() == 2);
  for (const auto& a : family) {
    CHECK(natspec::eval(c[0], a) == a);
    CHECK(natspec::eval(c[1], a).is_zero());
  }
  const auto d = natspec::strictify({DPoly::bullet_one(), DPoly::circ_one()}, family);
  for (const auto& a : family) {
    CHECK(natspec::eval(d[1], a) == Matrix::ones(3) - Matrix::identity(3));
  }
  CHECK_THROWS_AS(natspec::strictify({natspec::Rational(2) * x}, family), natspec::DomainError);
  // J after x keeps only the complement of x.
  const auto e = natspec::strictify({x, DPoly::circ_one()}, family);
  for (const auto& a : family) {
    CHECK(natspec::eval(e[1], a) == Matrix::ones(3) - a);
  }
}

TEST_CASE("universal basis on K2 and the empty graph") {
  const Matrix k2 = natspec::complete_graph(2).adjacency();
  const Matrix e2(2);
  const auto b = natspec::universal_basis({k2, e2}, {DPoly::x()}, {.verify = true});
  CHECK(b.lambdas.size() == 2);
  CHECK(b.rank(0) == 2);
  CHECK(b.rank(1) == 1);
  CHECK(as_set(b.nonzero_values(0)) == as_set(std::vector<Matrix>{Matrix::identity(2), k2}));
  CHECK(as_set(b.nonzero_values(1)) == as_set(std::vector<Matrix>{Matrix::ones(2)}));
  CHECK(b.c_size == 2);
}

TEST_CASE("universal basis values are the primitive idempotents of each member") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 2 + t % 3;
    std::vector<Matrix> family;
    for (int k = 0; k < 4; ++k) family.push_back(oracle::random_int_matrix(n, rng, -1, 2));
    std::vector<DPoly> b{oracle::random_dpoly(rng, 2), oracle::random_dpoly(rng, 2), DPoly::x()};
    const auto basis = natspec::universal_basis(family, b, {.verify = true});
    CAPTURE(t);
    for (std::size_t a = 0; a < family.size(); ++a) {
      CHECK(strict_on(basis, a));
      std::vector<Matrix> gens;
      for (const auto& p : b) gens.push_back(natspec::eval(p, family[a]));
      CHECK(primitive_for(basis, a, gens));
      CHECK(as_set(basis.nonzero_values(a)) ==
            as_set(natspec::primitive_circ_idempotents(natspec::circ_generated(n, gens))));
    }
  }
}

TEST_CASE("verify mode on exhaustive small graph families") {
  std::mt19937_64 rng(103);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto family = graphs_of_size(n);
    for (int t = 0; t < 3; ++t) {
      std::vector<DPoly> b{oracle::random_dpoly(rng, 3), oracle::random_dpoly(rng, 2)};
      const auto basis = natspec::universal_basis(family, b, {.verify = true});
      for (std::size_t a = 0; a < family.size(); ++a) CHECK(strict_on(basis, a));
    }
    const auto full = natspec::universal_basis_full(family, 64, {.verify = true});
    CHECK(full.stabilized);
  }
}

TEST_CASE("full universal basis matches the generated double algebra") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto family = graphs_of_size(n);
    const auto res = natspec::universal_basis_full(family);
    REQUIRE(res.stabilized);
    for (std::size_t a = 0; a < family.size(); ++a) {
      CAPTURE(n);
      CAPTURE(a);
      const auto alg = natspec::generated_double_algebra(family[a]);
      CHECK(res.basis.rank(a) == alg.dim());
      CHECK(strict_on(res.basis, a));
      CHECK(as_set(res.basis.nonzero_values(a)) ==
            as_set(natspec::primitive_circ_idempotents(alg)));
      // Single-member runs agree with the family run.
      const auto single = natspec::universal_basis_full({family[a]});
      CHECK(as_set(single.basis.nonzero_values(0)) == as_set(res.basis.nonzero_values(a)));
    }
    for (std::size_t s = 1; s < res.ranks.size(); ++s) {
      for (std::size_t a = 0; a < family.size(); ++a) {
        CHECK(res.ranks[s][a] >= res.ranks[s - 1][a]);
      }
    }
  }
}

TEST_CASE("full universal basis on random non-symmetric matrices") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 100; ++t) {
    const Matrix a = oracle::random_int_matrix(8, rng, 0, 2);
    natspec::UniversalOptions opt;
    opt.verify = true;
    const auto res = natspec::universal_basis_full({a}, 64, opt);
    REQUIRE(res.stabilized);
    CHECK(strict_on(res.basis, 0));
    CHECK(res.basis.rank(0) == natspec::generated_double_algebra(a).dim());
  }
}

TEST_CASE("full universal basis with a depth cap") {
  const Matrix p = natspec::path_graph(5).adjacency();
  const auto res = natspec::universal_basis_full({p}, 1);
  CHECK(res.depth == 1);
  CHECK(res.ranks.size() == 2);
}

TEST_CASE("involution closure pairs transposes") {
  const auto family = graphs_of_size(4);
  const auto full = natspec::universal_basis_full(family);
  const auto inv = natspec::involution_close(full.basis, family);
  REQUIRE(inv.weak_basis_ok);
  REQUIRE(inv.basis.involution_pairing.has_value());
  const auto& sigma = *inv.basis.involution_pairing;
  for (std::size_t e = 0; e < sigma.size(); ++e) {
    CHECK(sigma[sigma[e]] == e);
    for (std::size_t a = 0; a < family.size(); ++a) {
      CHECK(inv.basis.value(e, a) == natspec::transpose(inv.basis.value(sigma[e], a)));
    }
  }
  for (std::size_t a = 0; a < family.size(); ++a) {
    CHECK(strict_on(inv.basis, a));
    CHECK(as_set(inv.basis.nonzero_values(a)) == as_set(full.basis.nonzero_values(a)));
    // Polynomials agree with the stored values.
    for (std::size_t e = 0; e < inv.basis.entries.size(); ++e) {
      CHECK(natspec::eval(*inv.basis.entries[e].poly, family[a]) == inv.basis.value(e, a));
    }
  }
}

TEST_CASE("involution closure on a full graph maps matrix units to their transposes") {
  std::vector<Matrix> family;
  for (const auto& g : natspec::enumerate_graphs(6)) {
    if (natspec::is_full(g.adjacency())) {
      family.push_back(g.adjacency());
      break;
    }
  }
  REQUIRE(family.size() == 1);
  const auto res = natspec::universal_basis_full(family);
  CHECK(res.basis.rank(0) == 36);
  const auto inv = natspec::involution_close(res.basis, family);
  REQUIRE(inv.basis.involution_pairing.has_value());
  CHECK(inv.basis.entries.size() == 36);
  const auto& sigma = *inv.basis.involution_pairing;
  for (std::size_t e = 0; e < 36; ++e) {
    const BitMatrix& v = inv.basis.entries[e].values[0];
    REQUIRE(is_matrix_unit(v));
    CHECK(inv.basis.entries[sigma[e]].values[0] == v.transposed());
    CHECK(natspec::eval(*inv.basis.entries[e].poly, family[0]) == v.to_matrix());
  }
}

TEST_CASE("involution closure rejects non-symmetric members") {
  const Matrix a{{0, 1}, {0, 0}};
  const auto res = natspec::universal_basis_full({a});
  CHECK_THROWS_AS(natspec::involution_close(res.basis, {a}), natspec::DomainError);
}

TEST_CASE("universal basis is equivariant under relabeling") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 8; ++t) {
    const Graph g = oracle::random_graph(5 + t % 2, rng);
    const auto perm = oracle::random_permutation(g.n(), rng);
    const auto h = g.relabeled(perm);
    const auto bg = natspec::universal_basis_full({g.adjacency()});
    const auto bh = natspec::universal_basis_full({h.adjacency()});
    std::set<BitMatrix> moved;
    for (const auto& v : bg.basis.nonzero_values(0)) {
      moved.insert(BitMatrix::from_matrix(natspec::permute(v.to_matrix(), perm)));
    }
    CHECK(moved == as_set(bh.basis.nonzero_values(0)));
  }
}
