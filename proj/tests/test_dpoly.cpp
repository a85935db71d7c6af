#include <doctest.h>

#include <random>

#include "natspec/dpoly.hpp"
#include "natspec/error.hpp"
#include "oracles.hpp"

using natspec::DKind;
using natspec::DPoly;
using natspec::Graph;
using natspec::Matrix;
using natspec::Rational;

namespace {

Matrix degree_diag(const Graph& g) {
  Matrix d(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) d(v, v) = static_cast<long>(g.degree(v));
  return d;
}

Matrix random_symmetric_rational(std::size_t n, std::mt19937_64& rng) {
  Matrix a = oracle::random_rational_matrix(n, rng);
  return a + natspec::transpose(a);
}

}  // namespace

TEST_CASE("parse examples") {
  const DPoly lap = natspec::parse_dpoly("(x*x).I - x");
  const DPoly x = DPoly::x();
  CHECK(lap == DPoly::circ(DPoly::bullet(x, x), DPoly::bullet_one()) - x);
  CHECK(natspec::parse_dpoly("J - I - x") ==
        natspec::classic_dpoly(natspec::ClassicMatrix::complement));
  try {
    natspec::parse_dpoly("x *");
    FAIL("expected a parse error");
  } catch (const natspec::ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(natspec::parse_dpoly("x + y"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("x # x"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("2"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("x + 1"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("(x"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("x)"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("1/0*x"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly("$1"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::parse_dpoly(""), natspec::ParseError);
}

TEST_CASE("grammar: precedence, powers, involution, scalars") {
  const DPoly x = DPoly::x();
  const DPoly id = DPoly::bullet_one();
  const DPoly ones = DPoly::circ_one();
  CHECK(natspec::parse_dpoly("x*x.I") == DPoly::bullet(x, DPoly::circ(x, id)));
  CHECK(natspec::parse_dpoly("-x*x") == -DPoly::bullet(x, x));
  CHECK(natspec::parse_dpoly("x^3") == DPoly::bullet(DPoly::bullet(x, x), x));
  CHECK(natspec::parse_dpoly("x^0") == id);
  CHECK(natspec::parse_dpoly("x^.2") == DPoly::circ(x, x));
  CHECK(natspec::parse_dpoly("x^.0") == ones);
  CHECK(natspec::parse_dpoly("(x*J)'") == DPoly::bullet(ones, x));
  CHECK(natspec::parse_dpoly("(x.I)'") == DPoly::circ(id, x));
  CHECK(natspec::parse_dpoly("1/2*x*2") == x);
  CHECK(natspec::parse_dpoly("3*x - 3*x").kind() == DKind::sum);
  CHECK(natspec::parse_dpoly("0*J").is_zero());
  CHECK(natspec::parse_dpoly("x - 0*x") == x);
  CHECK(natspec::parse_dpoly("let $1 = x + I; $1*$1") ==
        DPoly::bullet(x + id, x + id));
}

TEST_CASE("print examples") {
  CHECK(natspec::print_dpoly(natspec::parse_dpoly("x")) == "x");
  CHECK(natspec::print_dpoly(natspec::classic_dpoly(natspec::ClassicMatrix::laplacian)) ==
        "(x*x).I - x");
  CHECK(natspec::print_dpoly(natspec::classic_dpoly(natspec::ClassicMatrix::complement)) ==
        "J - I - x");
  CHECK(natspec::print_dpoly(DPoly::zero()) == "0*J");
  CHECK(natspec::print_dpoly(natspec::parse_dpoly("-1/2*(x + J).x")) == "-1/2*(x + J).x");
  CHECK(natspec::print_dpoly(natspec::parse_dpoly("x*(x*x)")) == "x*(x*x)");
  CHECK(natspec::print_dpoly(natspec::parse_dpoly("x.(x.x)")) == "x.(x.x)");
}

TEST_CASE("print/parse round trip on random ASTs") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 1000; ++rep) {
    const DPoly p = oracle::random_dpoly(rng, 1 + rep % 6);
    const std::string text = natspec::print_dpoly(p);
    CAPTURE(text);
    CHECK(natspec::parse_dpoly(text) == p);
    CHECK(natspec::parse_dpoly(natspec::print_dpoly_shared(p)) == p);
  }
}

TEST_CASE("shared printing keeps the DAG linear") {
  DPoly p = DPoly::x() + DPoly::bullet_one();
  for (int i = 0; i < 40; ++i) p = DPoly::bullet(p, p);
  CHECK_THROWS_AS(natspec::print_dpoly(p), natspec::DomainError);
  const std::string text = natspec::print_dpoly_shared(p);
  CHECK(text.size() < 2000);
  const DPoly back = natspec::parse_dpoly(text);
  CHECK(back == p);
  CHECK(back.dag_size() == p.dag_size());
}

TEST_CASE("eval examples") {
  const Graph p3 = natspec::path_graph(3);
  const Matrix a = p3.adjacency();
  CHECK(natspec::eval(DPoly::x(), a) == a);
  CHECK(natspec::eval(natspec::classic_dpoly(natspec::ClassicMatrix::laplacian), a) ==
        Matrix{{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}});
  CHECK(natspec::eval(natspec::classic_dpoly(natspec::ClassicMatrix::complement),
                      natspec::complete_graph(3).adjacency())
            .is_zero());
  CHECK(natspec::eval(DPoly::zero(), a).is_zero());
}

TEST_CASE("eval is a double algebra homomorphism") {
  std::mt19937_64 rng(102);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rep % 4;
    const Matrix a = oracle::random_rational_matrix(n, rng, 2, 2);
    const DPoly p = oracle::random_dpoly(rng, 3);
    const DPoly q = oracle::random_dpoly(rng, 3);
    const Matrix pa = natspec::eval(p, a);
    const Matrix qa = natspec::eval(q, a);
    CHECK(natspec::eval(p + q, a) == pa + qa);
    CHECK(natspec::eval(DPoly::bullet(p, q), a) == natspec::mat_mul(pa, qa));
    CHECK(natspec::eval(DPoly::circ(p, q), a) == natspec::hadamard(pa, qa));
    CHECK(natspec::eval(Rational(3, 7) * p, a) == Rational(3, 7) * pa);
  }
}

TEST_CASE("involution") {
  CHECK(natspec::involution(DPoly::x()) == DPoly::x());
  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 200; ++rep) {
    const DPoly a = oracle::random_dpoly(rng, 3);
    const DPoly b = oracle::random_dpoly(rng, 3);
    CHECK(natspec::involution(DPoly::bullet(a, b)) ==
          DPoly::bullet(natspec::involution(b), natspec::involution(a)));
    CHECK(natspec::involution(DPoly::circ(a, b)) ==
          DPoly::circ(natspec::involution(b), natspec::involution(a)));
    CHECK(natspec::involution(natspec::involution(a)) == a);
  }
  for (int rep = 0; rep < 500; ++rep) {
    const Matrix a = random_symmetric_rational(1 + rep % 4, rng);
    const DPoly p = oracle::random_dpoly(rng, 4);
    CHECK(natspec::eval(natspec::involution(p), a) == natspec::transpose(natspec::eval(p, a)));
  }
}

TEST_CASE("compose") {
  std::mt19937_64 rng(104);
  for (int rep = 0; rep < 100; ++rep) {
    const DPoly f = oracle::random_dpoly(rng, 3);
    const DPoly g = oracle::random_dpoly(rng, 3);
    const DPoly h = oracle::random_dpoly(rng, 2);
    CHECK(natspec::compose(DPoly::x(), g) == g);
    CHECK(natspec::compose(f, DPoly::x()) == f);
    const Matrix a = oracle::random_rational_matrix(1 + rep % 3, rng, 2, 2);
    CHECK(natspec::eval(natspec::compose(f, g), a) == natspec::eval(f, natspec::eval(g, a)));
    CHECK(natspec::eval(natspec::compose(natspec::compose(f, g), h), a) ==
          natspec::eval(natspec::compose(f, natspec::compose(g, h)), a));
  }
  const DPoly pr = natspec::compose(natspec::proj_poly({0, 1}, 1), DPoly::x());
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = oracle::random_graph(5, rng);
    CHECK(natspec::eval(pr, g.adjacency()) == g.adjacency());
  }
}

TEST_CASE("proj_poly") {
  CHECK(natspec::proj_poly({Rational(5)}, 5) == DPoly::circ_one());
  const Matrix k2{{0, 1}, {1, 0}};
  CHECK(natspec::eval(natspec::proj_poly({0, 1}, 0), k2) == Matrix::identity(2));
  const Matrix m{{2, 0, 1}, {1, 2, 0}, {0, 1, 2}};
  CHECK(natspec::eval(natspec::proj_poly({0, 1, 2}, 2), m) == Matrix::identity(3));
  CHECK_THROWS_AS(natspec::proj_poly({0, 1}, 2), natspec::DomainError);
  CHECK_THROWS_AS(natspec::proj_poly({0, 1, 1}, 0), natspec::DomainError);
}

TEST_CASE("projection reconstruction identity on random 0/1/2 matrices") {
  std::mt19937_64 rng(105);
  for (int rep = 0; rep < 50; ++rep) {
    const Matrix a = oracle::random_int_matrix(2 + rep % 5, rng, 0, 2);
    const auto lambdas = natspec::circ_spectrum(a);
    Matrix total(a.size());
    for (const auto& l : lambdas) {
      const Matrix e = natspec::eval(natspec::proj_poly(lambdas, l), a);
      CHECK(natspec::hadamard(e, e) == e);
      total += l * e;
    }
    CHECK(total == a);
  }
}

TEST_CASE("circ_spectrum") {
  CHECK(natspec::circ_spectrum(Matrix::ones(3)) == std::vector<Rational>{1});
  CHECK(natspec::circ_spectrum(natspec::path_graph(4).adjacency()) ==
        std::vector<Rational>{0, 1});
  const Matrix a = natspec::path_graph(3).adjacency();
  CHECK(natspec::circ_spectrum(natspec::hadamard(natspec::mat_mul(a, a), Matrix::identity(3))) ==
        std::vector<Rational>{0, 1, 2});
}

TEST_CASE("classic matrices on random graphs") {
  std::mt19937_64 rng(106);
  const DPoly lap = natspec::classic_dpoly(natspec::ClassicMatrix::laplacian);
  const DPoly slap = natspec::classic_dpoly(natspec::ClassicMatrix::signless_laplacian);
  const DPoly comp = natspec::classic_dpoly(natspec::ClassicMatrix::complement);
  for (int rep = 0; rep < 60; ++rep) {
    const Graph g = oracle::random_graph(1 + rep % 6, rng);
    const Matrix a = g.adjacency();
    CHECK(natspec::eval(lap, a) == degree_diag(g) - a);
    CHECK(natspec::eval(slap, a) == degree_diag(g) + a);
    CHECK(natspec::eval(comp, a) == g.complement().adjacency());
  }
  CHECK(natspec::eval(comp, natspec::empty_graph(4).adjacency()) ==
        Matrix::ones(4) - Matrix::identity(4));
}

TEST_CASE("distance polynomial") {
  const Graph p3 = natspec::path_graph(3);
  const DPoly d3 = natspec::classic_dpoly(natspec::ClassicMatrix::distance, 3, 3);
  CHECK(natspec::eval(d3, p3.adjacency()) == Matrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK_THROWS_AS(natspec::classic_dpoly(natspec::ClassicMatrix::distance, 0, 3),
                  natspec::DomainError);

  std::mt19937_64 rng(107);
  int connected = 0;
  for (int rep = 0; rep < 80 && connected < 25; ++rep) {
    const Graph g = oracle::random_graph(2 + rep % 5, rng);
    if (!g.connected()) continue;
    ++connected;
    const auto big_n = natspec::distance_N_bound(g).get_ui();
    const DPoly p = natspec::classic_dpoly(natspec::ClassicMatrix::distance, big_n, g.n());
    const auto bfs = oracle::bfs_distances(g);
    Matrix expect(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
      for (std::size_t j = 0; j < g.n(); ++j) expect(i, j) = bfs[i][j];
    }
    CHECK(natspec::eval(p, g.adjacency()) == expect);
    if (big_n <= 40) {
      // compose(p, x) rebuilds the DAG without the evaluation shortcut.
      CHECK(natspec::eval(natspec::compose(p, DPoly::x()), g.adjacency()) == expect);
    }
  }
  CHECK(connected >= 10);
}

TEST_CASE("distance shortcut falls back to literal evaluation outside its range") {
  const DPoly p = natspec::classic_dpoly(natspec::ClassicMatrix::distance, 3, 3);
  const Matrix m{{0, 2, 0}, {2, 0, 1}, {0, 1, 0}};
  CHECK(natspec::eval(p, m) == natspec::eval(natspec::compose(p, DPoly::x()), m));
  const Matrix q{{Rational(1, 2), 0, 0}, {0, 0, 1}, {0, 1, -1}};
  CHECK(natspec::eval(p, q) == natspec::eval(natspec::compose(p, DPoly::x()), q));
}

TEST_CASE("distance_N_bound") {
  CHECK(natspec::distance_N_bound(natspec::path_graph(3)) == 3);
  // (A + I)^1 is the all-ones matrix for K2.
  CHECK(natspec::distance_N_bound(natspec::complete_graph(2)) == 1);
  const DPoly p = natspec::classic_dpoly(natspec::ClassicMatrix::distance, 1, 2);
  CHECK(natspec::eval(p, natspec::complete_graph(2).adjacency()) == Matrix{{0, 1}, {1, 0}});
  for (std::size_t n = 1; n <= 5; ++n) CHECK(natspec::distance_N_bound(natspec::empty_graph(n)) == 1);
}
