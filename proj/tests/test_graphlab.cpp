#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "natspec/closure.hpp"
#include "natspec/error.hpp"
#include "natspec/graph.hpp"
#include "natspec/graphlab.hpp"
#include "oracles.hpp"

using natspec::Graph;
using natspec::IsoVerdict;
using natspec::Matrix;

namespace {

std::size_t automorphism_count(const Graph& g) {
  std::vector<std::size_t> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < g.n() && ok; ++i) {
      for (std::size_t j = i + 1; j < g.n() && ok; ++j) ok = g.adjacent(i, j) == g.adjacent(p[i], p[j]);
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

Graph complete_multipartite(std::size_t parts, std::size_t size) {
  Graph g(parts * size);
  for (std::size_t u = 0; u < g.n(); ++u) {
    for (std::size_t v = u + 1; v < g.n(); ++v) {
      if (u / size != v / size) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("graph6 examples") {
  CHECK(natspec::graph6_parse("A_") == natspec::complete_graph(2));
  CHECK(natspec::graph6_parse("A?") == natspec::empty_graph(2));
  CHECK(natspec::graph6_emit(natspec::complete_graph(2)) == "A_");
  CHECK(natspec::graph6_emit(natspec::empty_graph(2)) == "A?");
  CHECK(natspec::graph6_parse(">>graph6<<A_") == natspec::complete_graph(2));
  // Petersen as published in the usual graph6 corpora; it is the unique
  // SRG(10,3,0,1).
  CHECK(natspec::srg_parameters(natspec::graph6_parse("IheA@GUAo")) ==
        natspec::srg_parameters(natspec::petersen_graph()));
}

TEST_CASE("graph6 round trip") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& g : natspec::enumerate_graphs(n)) {
      const auto s = natspec::graph6_emit(g);
      CHECK(natspec::graph6_parse(s) == g);
      CHECK(natspec::graph6_emit(natspec::graph6_parse(s)) == s);
    }
  }
  std::mt19937_64 rng(3);
  for (std::size_t n : {7u, 30u, 62u, 63u, 100u}) {
    const Graph g = oracle::random_graph(n, rng);
    CHECK(natspec::graph6_parse(natspec::graph6_emit(g)) == g);
  }
  CHECK(natspec::graph6_emit(Graph(63)).front() == '~');
}

TEST_CASE("graph6 errors") {
  CHECK_THROWS_AS(natspec::graph6_parse(""), natspec::ParseError);
  CHECK_THROWS_AS(natspec::graph6_parse("A"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::graph6_parse("A_?"), natspec::ParseError);
  CHECK_THROWS_AS(natspec::graph6_parse("B!"), natspec::ParseError);
  // Nonzero padding bits.
  CHECK_THROWS_AS(natspec::graph6_parse("A`"), natspec::ParseError);
  const auto corpus = natspec::read_graph6_corpus("# comment\nA_\n\nBw\n");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[1] == natspec::complete_graph(3));
}

TEST_CASE("random_gnp_half") {
  CHECK(natspec::random_gnp_half(20, 5) == natspec::random_gnp_half(20, 5));
  std::size_t edges = 0;
  int same = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Graph g = natspec::random_gnp_half(10, s);
    edges += g.edge_count();
    same += g == natspec::random_gnp_half(10, s + 1);
  }
  const double freq = static_cast<double>(edges) / (1000.0 * 45.0);
  CHECK(freq > 0.45);
  CHECK(freq < 0.55);
  CHECK(same == 0);
}

TEST_CASE("distance_and_diameter") {
  const auto k4 = natspec::distance_and_diameter(natspec::complete_graph(4));
  CHECK(k4.dist == Matrix::ones(4) - Matrix::identity(4));
  CHECK(k4.diam == 1);
  const auto p3 = natspec::distance_and_diameter(natspec::path_graph(3));
  CHECK(p3.dist == Matrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(p3.diam == 2);
  CHECK_THROWS_AS(natspec::distance_and_diameter(natspec::empty_graph(3)), natspec::DomainError);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(8, rng);
    if (!g.connected()) continue;
    const auto d = natspec::distance_and_diameter(g);
    const auto ref = oracle::bfs_distances(g);
    for (std::size_t i = 0; i < g.n(); ++i) {
      for (std::size_t j = 0; j < g.n(); ++j) CHECK(d.dist(i, j) == ref[i][j]);
    }
  }
}

TEST_CASE("bes statistics") {
  CHECK(natspec::bes_r_paper(4) == 6);
  CHECK(natspec::bes_r_paper(64) == 18);
  CHECK(natspec::bes_r_paper(1024) == 30);
  CHECK(natspec::bes_r_paper(10) == 9);  // 3 log2 10 = 9.97
  const auto k5 = natspec::bes_statistics(natspec::complete_graph(5));
  CHECK_FALSE(k5.top_degrees_distinct);
  CHECK_FALSE(k5.passes());
  const auto p4 = natspec::bes_statistics(natspec::path_graph(4));
  CHECK(p4.r_paper == 6);
  CHECK(p4.r == 3);
  CHECK_THROWS_AS(natspec::bes_statistics(natspec::path_graph(4), 4), natspec::DomainError);
  CHECK_THROWS_AS(natspec::bes_statistics(natspec::path_graph(4), 0), natspec::DomainError);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const Graph g = natspec::random_gnp_half(64, t);
    const auto rep = natspec::bes_statistics(g);
    REQUIRE(rep.r == 18);
    CHECK(std::is_sorted(rep.degrees_sorted.rbegin(), rep.degrees_sorted.rend()));
    // Ties broken by index.
    for (std::size_t i = 0; i + 1 < rep.order.size(); ++i) {
      if (rep.degrees_sorted[i] == rep.degrees_sorted[i + 1]) CHECK(rep.order[i] < rep.order[i + 1]);
    }
    bool distinct = true;
    for (std::size_t i = 0; i < rep.r; ++i) distinct &= rep.degrees_sorted[i] > rep.degrees_sorted[i + 1];
    CHECK(rep.top_degrees_distinct == distinct);
    REQUIRE(rep.signatures.size() == 64 - rep.r);
    bool sig_distinct = true;
    for (std::size_t j = rep.r; j < 64; ++j) {
      for (std::size_t k = j + 1; k < 64; ++k) {
        bool same = true;
        for (std::size_t i = 0; i < rep.r; ++i) {
          same &= g.adjacent(rep.order[i], rep.order[j]) == g.adjacent(rep.order[i], rep.order[k]);
        }
        sig_distinct &= !same;
      }
    }
    CHECK(rep.signatures_distinct == sig_distinct);
  }
}

TEST_CASE("bes certificate failures") {
  const auto k5 = natspec::bes_certificate(natspec::complete_graph(5));
  CHECK_FALSE(k5.ok());
  CHECK(k5.status == natspec::CertificateResult::Status::degree_collision);
  CHECK_FALSE(k5.reason.empty());
}

TEST_CASE("certified graphs are full dimensional") {
  int certified = 0;
  for (std::uint64_t s = 0; certified < 25 && s < 20000; ++s) {
    const std::size_t n = 7 + s % 6;
    const Graph g = natspec::random_gnp_half(n, s);
    const auto res = natspec::bes_certificate(g);
    if (!res.ok()) continue;
    ++certified;
    const auto& c = *res.certificate;
    CHECK(c.diag_units.size() == n);
    std::vector<std::size_t> verts = c.unit_vertex;
    std::sort(verts.begin(), verts.end());
    for (std::size_t v = 0; v < n; ++v) CHECK(verts[v] == v);
    for (std::size_t k = 0; k < n; ++k) {
      Matrix e(n);
      e(c.unit_vertex[k], c.unit_vertex[k]) = 1;
      CHECK(c.diag_units[k] == e);
    }
    // Units for the top vertices sit on those vertices.
    for (std::size_t i = 0; i < c.r; ++i) CHECK(c.unit_vertex[i] == c.order[i]);
    CHECK(natspec::certificate_spans_full(c));
    CHECK(natspec::is_full(g.adjacency()));
    CHECK_FALSE(c.trace.empty());
  }
  CHECK(certified == 25);
}

TEST_CASE("fixed r mode never tries other values") {
  natspec::CertificateOptions fixed;
  fixed.adaptive_r = false;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    const Graph g = natspec::random_gnp_half(8, s);
    const auto res = natspec::bes_certificate(g, fixed);
    if (res.ok()) CHECK(res.certificate->r == 7);
  }
}

TEST_CASE("reconstruct examples") {
  const auto pet = natspec::reconstruct(natspec::petersen_graph());
  CHECK_FALSE(pet.ok);
  CHECK(pet.va == 1);
  CHECK(pet.reason == "failed |V_a|=1");
  const auto k2 = natspec::reconstruct(natspec::complete_graph(2));
  CHECK_FALSE(k2.ok);
  CHECK(k2.va == 1);
}

TEST_CASE("reconstruct on every full graph up to 6 vertices") {
  int full = 0, agree = 0, total = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& g : natspec::enumerate_graphs(n)) {
      ++total;
      const bool is_full = natspec::is_full(g.adjacency());
      const auto r = natspec::reconstruct(g);
      agree += is_full == r.ok;
      if (!is_full) continue;
      ++full;
      REQUIRE(r.ok);
      REQUIRE(r.vertex_map.size() == n);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
          CHECK(r.graph.adjacent(s, t) == g.adjacent(r.vertex_map[s], r.vertex_map[t]));
        }
      }
    }
  }
  // The converse direction is reported, not asserted.
  MESSAGE("full graphs: " << full << ", reconstruct verdict agrees with fullness on " << agree
                          << " of " << total);
  CHECK(full == 9);  // K1 and the eight asymmetric 6-vertex graphs
}

TEST_CASE("reconstruct is equivariant under relabeling") {
  std::mt19937_64 rng(13);
  int done = 0;
  for (int t = 0; t < 200 && done < 10; ++t) {
    const Graph g = oracle::random_graph(8, rng);
    const auto r = natspec::reconstruct(g);
    if (!r.ok) continue;
    ++done;
    const auto perm = oracle::random_permutation(8, rng);
    const auto rp = natspec::reconstruct(g.relabeled(perm));
    REQUIRE(rp.ok);
    CHECK(natspec::are_isomorphic(rp.graph, r.graph) == IsoVerdict::isomorphic);
  }
  CHECK(done == 10);
}

TEST_CASE("srg parameters and intersection arrays") {
  using P = natspec::SrgParameters;
  CHECK(natspec::srg_parameters(natspec::cycle_graph(5)) == P{5, 2, 0, 1});
  CHECK(natspec::srg_parameters(natspec::petersen_graph()) == P{10, 3, 0, 1});
  CHECK(natspec::srg_parameters(natspec::shrikhande_graph()) == P{16, 6, 2, 2});
  CHECK(natspec::srg_parameters(natspec::rook_graph(4)) == P{16, 6, 2, 2});
  CHECK_FALSE(natspec::srg_parameters(natspec::path_graph(4)).has_value());
  CHECK_FALSE(natspec::srg_parameters(natspec::complete_graph(4)).has_value());
  CHECK_FALSE(natspec::srg_parameters(natspec::empty_graph(4)).has_value());
  CHECK_FALSE(natspec::srg_parameters(natspec::cycle_graph(6)).has_value());

  const auto pet = natspec::intersection_array(natspec::petersen_graph());
  REQUIRE(pet.has_value());
  CHECK(pet->b == std::vector<std::size_t>{3, 2});
  CHECK(pet->c == std::vector<std::size_t>{1, 1});
  const auto c6 = natspec::intersection_array(natspec::cycle_graph(6));
  REQUIRE(c6.has_value());
  CHECK(c6->b == std::vector<std::size_t>{2, 1, 1});
  CHECK(c6->c == std::vector<std::size_t>{1, 1, 2});
  CHECK_FALSE(natspec::intersection_array(natspec::path_graph(4)).has_value());
}

TEST_CASE("strongly regular graphs have a three-dimensional double algebra") {
  std::vector<Graph> srgs;
  for (std::size_t n = 3; n <= 6; ++n) {
    for (const auto& g : natspec::enumerate_graphs(n)) {
      if (natspec::srg_parameters(g)) srgs.push_back(g);
    }
  }
  CHECK(srgs.size() == 4);  // C4, C5, K_{3,3}, K_{2,2,2}
  srgs.push_back(natspec::rook_graph(3));
  srgs.push_back(natspec::petersen_graph());
  srgs.push_back(natspec::petersen_graph().complement());
  srgs.push_back(natspec::complete_bipartite_graph(5, 5));
  srgs.push_back(complete_multipartite(3, 3));
  for (const auto& g : srgs) {
    REQUIRE(natspec::srg_parameters(g).has_value());
    CHECK(natspec::generated_double_algebra(g.adjacency()).dim() == 3);
  }
}

TEST_CASE("enumerate graphs") {
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156};
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto gs = natspec::enumerate_graphs(n);
    CHECK(gs.size() == expected[n]);
    // Orbit sizes n!/|Aut| add up to the labeled count.
    std::size_t labeled = 0;
    for (const auto& g : gs) labeled += factorial(n) / automorphism_count(g);
    CHECK(labeled == (std::size_t{1} << (n * (n ? n - 1 : 0) / 2)));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      CHECK(natspec::canonical_code(gs[i]) == natspec::graph_code(gs[i]));
      if (i) CHECK(natspec::graph_code(gs[i - 1]) < natspec::graph_code(gs[i]));
    }
  }
  CHECK_THROWS_AS(natspec::enumerate_graphs(7), natspec::DomainError);
}

TEST_CASE("isomorphism oracle") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(8, rng);
    const Graph h = g.relabeled(oracle::random_permutation(8, rng));
    CHECK(natspec::are_isomorphic(g, h) == IsoVerdict::isomorphic);
    CHECK(natspec::canonical_code(g) == natspec::canonical_code(h));
  }
  CHECK(natspec::are_isomorphic(natspec::complete_graph(3), natspec::path_graph(3)) ==
        IsoVerdict::non_isomorphic);
  // Same degree sequence, different structure.
  Graph two_triangles(6);
  for (std::size_t k : {0u, 3u}) {
    two_triangles.add_edge(k, k + 1);
    two_triangles.add_edge(k + 1, k + 2);
    two_triangles.add_edge(k, k + 2);
  }
  CHECK(natspec::are_isomorphic(two_triangles, natspec::cycle_graph(6)) ==
        IsoVerdict::non_isomorphic);
  CHECK(natspec::count_four_cliques(natspec::shrikhande_graph()) == 0);
  CHECK(natspec::count_four_cliques(natspec::rook_graph(4)) == 8);
  CHECK(natspec::are_isomorphic(natspec::shrikhande_graph(), natspec::rook_graph(4)) ==
        IsoVerdict::non_isomorphic);
  CHECK_THROWS_AS(natspec::are_isomorphic(Graph(3), Graph(4)), natspec::DimensionError);
}
