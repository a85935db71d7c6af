#include "natspec/graphlab.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include "natspec/dpoly.hpp"
#include "natspec/error.hpp"
#include "natspec/rng.hpp"
#include "natspec/simd.hpp"

namespace natspec {
namespace {

// Rows of BFS distances; -1 marks unreachable.
std::vector<std::vector<long>> bfs_all(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  std::vector<std::vector<long>> d(n, std::vector<long>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    d[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u]) {
        if (d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push(v);
        }
      }
    }
  }
  return d;
}

}  // namespace

DistanceResult distance_and_diameter(const Graph& g) {
  const auto d = bfs_all(g);
  DistanceResult out{Matrix(g.n()), 0};
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (d[i][j] < 0) throw DomainError("graph is disconnected");
      out.dist(i, j) = d[i][j];
      out.diam = std::max(out.diam, static_cast<std::size_t>(d[i][j]));
    }
  }
  return out;
}

Graph random_gnp_half(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(splitmix64(seed));
  Graph g(n);
  std::uint64_t bits = 0;
  int left = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (left == 0) {
        bits = engine();
        left = 64;
      }
      if (bits & 1u) g.add_edge(i, j);
      bits >>= 1;
      --left;
    }
  }
  return g;
}

std::size_t bes_r_paper(std::size_t n) {
  if (n < 2) return 0;
  if (n >= (std::size_t{1} << 21)) throw DomainError("n too large for exact log computation");
  const std::uint64_t cube = static_cast<std::uint64_t>(n) * n * n;
  return static_cast<std::size_t>(std::bit_width(cube) - 1);
}

BesReport bes_statistics(const Graph& g, std::optional<std::size_t> r_override) {
  BesReport rep;
  const std::size_t n = g.n();
  rep.n = n;
  rep.r_paper = bes_r_paper(n);
  rep.r = n == 0 ? 0 : std::min(rep.r_paper, n - 1);
  if (r_override) {
    if (*r_override < 1 || *r_override + 1 > n || *r_override > 64) {
      throw DomainError("r must lie in [1, min(n - 1, 64)]");
    }
    rep.r = *r_override;
  }
  if (rep.r > 64) throw DomainError("signature length above 64 is not supported");
  rep.order.resize(n);
  std::iota(rep.order.begin(), rep.order.end(), 0);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::stable_sort(rep.order.begin(), rep.order.end(),
                   [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  for (std::size_t v : rep.order) rep.degrees_sorted.push_back(deg[v]);
  const std::size_t r = rep.r;
  rep.top_degrees_distinct = n >= 1;
  for (std::size_t i = 0; i < r && i + 1 < n; ++i) {
    if (!(rep.degrees_sorted[i] > rep.degrees_sorted[i + 1])) rep.top_degrees_distinct = false;
  }
  for (std::size_t j = r; j < n; ++j) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (g.adjacent(rep.order[i], rep.order[j])) w |= std::uint64_t{1} << i;
    }
    rep.signatures.push_back(w);
  }
  std::vector<std::uint64_t> sorted = rep.signatures;
  std::sort(sorted.begin(), sorted.end());
  rep.signatures_distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return rep;
}

namespace {

bool is_diag_unit(const Matrix& m, std::size_t& where) {
  bool found = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Rational& e = m(i, j);
      if (e == 0) continue;
      if (i != j || e != 1 || found) return false;
      found = true;
      where = i;
    }
  }
  return found;
}

CertificateResult certificate_for_r(const Graph& g, std::size_t r) {
  CertificateResult res;
  const BesReport rep = bes_statistics(g, r);
  const std::size_t n = g.n();
  if (!rep.top_degrees_distinct) {
    res.status = CertificateResult::Status::degree_collision;
    res.reason = "degree collision among the top " + std::to_string(r + 1) + " vertices";
    return res;
  }
  if (!rep.signatures_distinct) {
    res.status = CertificateResult::Status::signature_collision;
    res.reason = "two low-degree vertices share a signature of length " + std::to_string(r);
    return res;
  }
  Certificate cert;
  cert.r = r;
  cert.r_paper = rep.r_paper;
  cert.order = rep.order;
  const Matrix a = g.adjacency();
  const Matrix id = Matrix::identity(n);
  const Matrix ones = Matrix::ones(n);
  const Matrix degrees = hadamard(mat_mul(a, a), id);
  std::vector<Rational> all_degrees;
  for (std::size_t d = 0; d < n; ++d) all_degrees.emplace_back(static_cast<long>(d));

  Matrix top_sum(n);
  for (std::size_t i = 0; i < r; ++i) {
    const Rational di(static_cast<long>(rep.degrees_sorted[i]));
    Matrix b = eval(proj_poly(all_degrees, di), degrees);
    top_sum += b;
    cert.diag_units.push_back(std::move(b));
    cert.trace.push_back("b_" + std::to_string(i + 1) + " = proj({0..n-1}, " +
                         to_string(Integer(di.get_num())) + ")((A*A).I)");
  }
  const Matrix non_adj = ones - id - a;
  const Matrix mask = id - top_sum;
  std::vector<Rational> counts;
  for (std::size_t c = 0; c <= r; ++c) counts.emplace_back(static_cast<long>(c));
  const DPoly extract = proj_poly(counts, Rational(static_cast<long>(r)));
  for (std::size_t j = r; j < n; ++j) {
    const std::size_t vj = rep.order[j];
    Matrix acc(n);
    for (std::size_t i = 0; i < r; ++i) {
      const bool edge = g.adjacent(rep.order[i], vj);
      acc += mat_mul(mat_mul(edge ? a : non_adj, cert.diag_units[i]), ones);
    }
    cert.diag_units.push_back(eval(extract, hadamard(acc, mask)));
  }
  cert.trace.push_back("b_j = proj({0.." + std::to_string(r) + "}, " + std::to_string(r) +
                       ")((sum_i (A_ij A + (1 - A_ij)(J - I - A)) * b_i * J) . (I - sum_i b_i))"
                       " for j = " + std::to_string(r + 1) + ".." + std::to_string(n));

  std::vector<bool> used(n, false);
  for (const auto& b : cert.diag_units) {
    std::size_t where = 0;
    if (!is_diag_unit(b, where) || used[where]) {
      res.status = CertificateResult::Status::verification_mismatch;
      res.reason = "constructed matrices are not distinct diagonal units";
      return res;
    }
    used[where] = true;
    cert.unit_vertex.push_back(where);
  }
  res.status = CertificateResult::Status::certified;
  res.certificate = std::move(cert);
  return res;
}

}  // namespace

CertificateResult bes_certificate(const Graph& g, const CertificateOptions& opt) {
  const std::size_t n = g.n();
  if (n < 2) {
    CertificateResult res;
    res.status = CertificateResult::Status::degree_collision;
    res.reason = "certificate needs at least two vertices";
    return res;
  }
  const std::size_t r0 = std::min({bes_r_paper(n), n - 1, std::size_t{64}});
  CertificateResult first = certificate_for_r(g, r0);
  if (first.ok() || !opt.adaptive_r) return first;
  for (std::size_t r = 1; r + 1 < n && r <= 64; ++r) {
    if (r == r0) continue;
    CertificateResult alt = certificate_for_r(g, r);
    if (alt.ok()) return alt;
  }
  return first;
}

bool certificate_spans_full(const Certificate& c) {
  const std::size_t n = c.diag_units.size();
  if (n == 0) return false;
  SubspaceBasis span(n);
  const Matrix ones = Matrix::ones(n);
  for (const auto& s : c.diag_units) {
    const Matrix sj = mat_mul(s, ones);
    for (const auto& t : c.diag_units) span.insert(mat_mul(sj, t));
  }
  return span.dim() == n * n;
}

Reconstruction reconstruct(const Graph& g, const ClosureOptions& opt) {
  Reconstruction out;
  const std::size_t n = g.n();
  const EntryPartition p = double_algebra_partition(g.adjacency(), opt);
  // A class is a nonzero diagonal idempotent iff all its positions are diagonal.
  std::vector<bool> diagonal_only(p.classes, true);
  for (std::size_t pos = 0; pos < p.class_of.size(); ++pos) {
    if (pos / n != pos % n) diagonal_only[p.class_of[pos]] = false;
  }
  std::vector<std::size_t> units;  // vertex carrying each unit, in class order
  std::vector<std::size_t> class_size(p.classes, 0);
  for (auto c : p.class_of) ++class_size[c];
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = p.class_of[v * n + v];
    if (diagonal_only[c] && class_size[c] == 1) units.push_back(v);
  }
  out.va = static_cast<std::size_t>(std::count(diagonal_only.begin(), diagonal_only.end(), true));
  if (out.va < n || units.size() < n) {
    out.reason = "failed |V_a|=" + std::to_string(out.va);
    return out;
  }
  // Arcs s -> t whenever s * A * t != 0.
  const Matrix a = g.adjacency();
  std::vector<Matrix> unit_mats;
  for (std::size_t v : units) {
    Matrix e(n);
    e(v, v) = 1;
    unit_mats.push_back(std::move(e));
  }
  Graph rebuilt(n);
  for (std::size_t s = 0; s < n; ++s) {
    const Matrix sa = mat_mul(unit_mats[s], a);
    for (std::size_t t = 0; t < n; ++t) {
      const bool arc = !mat_mul(sa, unit_mats[t]).is_zero();
      const bool back = !mat_mul(mat_mul(unit_mats[t], a), unit_mats[s]).is_zero();
      if (arc != back) {
        out.reason = "arc relation is not symmetric";
        return out;
      }
      if (arc && s < t) rebuilt.add_edge(s, t);
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (rebuilt.adjacent(s, t) != g.adjacent(units[s], units[t])) {
        out.reason = "reconstructed graph disagrees with the input through the bijection";
        return out;
      }
    }
  }
  out.ok = true;
  out.graph = std::move(rebuilt);
  out.vertex_map = std::move(units);
  return out;
}

std::optional<SrgParameters> srg_parameters(const Graph& g) {
  const std::size_t n = g.n();
  if (n < 3 || !g.connected()) return std::nullopt;
  const std::size_t edges = g.edge_count();
  if (edges == 0 || edges == n * (n - 1) / 2) return std::nullopt;
  const std::size_t k = g.degree(0);
  for (std::size_t v = 1; v < n; ++v) {
    if (g.degree(v) != k) return std::nullopt;
  }
  std::optional<std::size_t> lambda, mu;
  const BitMatrix& bits = g.adjacency_bits();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::size_t common = static_cast<std::size_t>(
          simd::and_popcount(bits.row(u), bits.row(v)));
      auto& slot = g.adjacent(u, v) ? lambda : mu;
      if (!slot) slot = common;
      else if (*slot != common) return std::nullopt;
    }
  }
  return SrgParameters{n, k, lambda.value_or(0), mu.value_or(0)};
}

std::optional<IntersectionArray> intersection_array(const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0 || !g.connected()) return std::nullopt;
  const auto d = bfs_all(g);
  std::size_t diam = 0;
  for (const auto& row : d) {
    for (long x : row) diam = std::max(diam, static_cast<std::size_t>(x));
  }
  std::vector<long> b(diam + 1, -1), c(diam + 1, -1);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto i = static_cast<std::size_t>(d[u][v]);
      long up = 0, down = 0;
      for (std::size_t w = 0; w < n; ++w) {
        if (!g.adjacent(v, w)) continue;
        if (d[u][w] == d[u][v] + 1) ++up;
        if (d[u][w] == d[u][v] - 1) ++down;
      }
      if (b[i] < 0) b[i] = up;
      else if (b[i] != up) return std::nullopt;
      if (c[i] < 0) c[i] = down;
      else if (c[i] != down) return std::nullopt;
    }
  }
  IntersectionArray out;
  for (std::size_t i = 0; i < diam; ++i) out.b.push_back(static_cast<std::size_t>(b[i]));
  for (std::size_t i = 1; i <= diam; ++i) out.c.push_back(static_cast<std::size_t>(c[i]));
  return out;
}

std::uint64_t graph_code(const Graph& g) {
  const std::size_t n = g.n();
  if (n > 11) throw DomainError("graph codes are limited to n <= 11");
  std::uint64_t code = 0;
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      if (g.adjacent(i, j)) code |= std::uint64_t{1} << k;
    }
  }
  return code;
}

Graph graph_from_code(std::size_t n, std::uint64_t code) {
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      if ((code >> k) & 1u) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

// Code of g relabeled by perm, without building the graph.
std::uint64_t permuted_code(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                            const std::vector<std::size_t>& perm,
                            const std::vector<std::vector<std::size_t>>& bit_index) {
  std::uint64_t code = 0;
  for (auto [u, v] : edges) code |= std::uint64_t{1} << bit_index[perm[u]][perm[v]];
  return code;
}

std::vector<std::vector<std::size_t>> code_bit_index(std::size_t n) {
  std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(n, 0));
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) idx[i][j] = idx[j][i] = k;
  }
  return idx;
}

std::vector<std::pair<std::size_t, std::size_t>> edge_list(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = i + 1; j < g.n(); ++j) {
      if (g.adjacent(i, j)) e.emplace_back(i, j);
    }
  }
  return e;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.n();
  if (n > 8) throw DomainError("canonical codes by exhaustive search are limited to n <= 8");
  const auto idx = code_bit_index(n);
  const auto edges = edge_list(g);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, permuted_code(edges, perm, idx));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0 : best;
}

std::vector<Graph> enumerate_graphs(std::size_t n) {
  if (n > 6) throw DomainError("exhaustive enumeration is limited to n <= 6");
  const std::size_t bits = n * (n ? n - 1 : 0) / 2;
  const std::uint64_t total = std::uint64_t{1} << bits;
  const auto idx = code_bit_index(n);
  std::vector<bool> seen(total, false);
  std::vector<Graph> out;
  std::vector<std::size_t> perm(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (seen[code]) continue;
    // First unseen code is the minimum of its orbit: mark the whole orbit.
    const Graph g = graph_from_code(n, code);
    const auto edges = edge_list(g);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      seen[permuted_code(edges, perm, idx)] = true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.push_back(g);
  }
  return out;
}

std::size_t count_four_cliques(const Graph& g) {
  const std::size_t n = g.n();
  std::size_t count = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (!g.adjacent(a, c) || !g.adjacent(b, c)) continue;
        for (std::size_t d = c + 1; d < n; ++d) {
          if (g.adjacent(a, d) && g.adjacent(b, d) && g.adjacent(c, d)) ++count;
        }
      }
    }
  }
  return count;
}

namespace {

std::vector<std::size_t> triangles_per_vertex(const Graph& g) {
  std::vector<std::size_t> t(g.n(), 0);
  for (std::size_t a = 0; a < g.n(); ++a) {
    for (std::size_t b = a + 1; b < g.n(); ++b) {
      if (!g.adjacent(a, b)) continue;
      for (std::size_t c = b + 1; c < g.n(); ++c) {
        if (g.adjacent(a, c) && g.adjacent(b, c)) {
          ++t[a];
          ++t[b];
          ++t[c];
        }
      }
    }
  }
  return t;
}

bool extend(const Graph& a, const Graph& b, std::vector<long>& map, std::vector<bool>& used,
            std::size_t v) {
  const std::size_t n = a.n();
  if (v == n) return true;
  for (std::size_t w = 0; w < n; ++w) {
    if (used[w] || a.degree(v) != b.degree(w)) continue;
    bool ok = true;
    for (std::size_t u = 0; u < v && ok; ++u) {
      ok = a.adjacent(u, v) == b.adjacent(static_cast<std::size_t>(map[u]), w);
    }
    if (!ok) continue;
    map[v] = static_cast<long>(w);
    used[w] = true;
    if (extend(a, b, map, used, v + 1)) return true;
    used[w] = false;
  }
  map[v] = -1;
  return false;
}

}  // namespace

IsoVerdict are_isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) throw DimensionError("graphs have different vertex counts");
  if (a.edge_count() != b.edge_count()) return IsoVerdict::non_isomorphic;
  auto degs = [](const Graph& g) {
    std::vector<std::size_t> d(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) d[v] = g.degree(v);
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degs(a) != degs(b)) return IsoVerdict::non_isomorphic;
  auto ta = triangles_per_vertex(a), tb = triangles_per_vertex(b);
  std::sort(ta.begin(), ta.end());
  std::sort(tb.begin(), tb.end());
  if (ta != tb) return IsoVerdict::non_isomorphic;
  if (a.n() <= 8) {
    std::vector<long> map(a.n(), -1);
    std::vector<bool> used(a.n(), false);
    return extend(a, b, map, used, 0) ? IsoVerdict::isomorphic : IsoVerdict::non_isomorphic;
  }
  if (count_four_cliques(a) != count_four_cliques(b)) return IsoVerdict::non_isomorphic;
  return IsoVerdict::unknown;
}

}  // namespace natspec
