#include "natspec/graph.hpp"

#include <queue>

#include "natspec/error.hpp"

namespace natspec {

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n() || v >= n()) throw DomainError("vertex out of range");
  if (u == v) throw DomainError("loops are not allowed");
  adj_.set(u, v);
  adj_.set(v, u);
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  if (u >= n() || v >= n()) throw DomainError("vertex out of range");
  adj_.set(u, v, false);
  adj_.set(v, u, false);
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < n(); ++u) {
    if (adjacent(v, u)) out.push_back(u);
  }
  return out;
}

Graph Graph::relabeled(std::span<const std::size_t> perm) const {
  if (perm.size() != n()) throw DimensionError("permutation length mismatch");
  Graph g(n());
  for (std::size_t u = 0; u < n(); ++u) {
    for (std::size_t v = u + 1; v < n(); ++v) {
      if (adjacent(u, v)) g.add_edge(perm[u], perm[v]);
    }
  }
  return g;
}

Graph Graph::complement() const {
  Graph g(n());
  for (std::size_t u = 0; u < n(); ++u) {
    for (std::size_t v = u + 1; v < n(); ++v) {
      if (!adjacent(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

bool Graph::connected() const {
  if (n() == 0) return true;
  std::vector<bool> seen(n(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v = 0; v < n(); ++v) {
      if (adjacent(u, v) && !seen[v]) {
        seen[v] = true;
        ++reached;
        q.push(v);
      }
    }
  }
  return reached == n();
}

Graph Graph::from_adjacency(const Matrix& a) {
  Graph g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a(i, i) != 0) throw DomainError("adjacency matrix has a nonzero diagonal");
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a(i, j) != a(j, i)) throw DomainError("adjacency matrix is not symmetric");
      if (a(i, j) == 1) {
        g.add_edge(i, j);
      } else if (a(i, j) != 0) {
        throw DomainError("adjacency matrix is not 0/1");
      }
    }
  }
  return g;
}

namespace {

constexpr std::size_t kGraph6Max = 258047;

}  // namespace

Graph graph6_parse(std::string_view text) {
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character", i + 1);
  }
  if (text.empty()) throw ParseError("empty graph6 string");
  std::size_t pos = 0;
  std::size_t n = 0;
  if (text[0] != '~') {
    n = static_cast<std::size_t>(text[0] - 63);
    pos = 1;
  } else {
    if (text.size() >= 2 && text[1] == '~') {
      throw ParseError("graph6 8-byte size form is not supported", 2);
    }
    if (text.size() < 4) throw ParseError("truncated graph6 size header", text.size() + 1);
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | static_cast<std::size_t>(text[i] - 63);
    if (n < 63) throw ParseError("non-canonical graph6 size header", 1);
    pos = 4;
  }
  const std::size_t bits = n * (n - (n ? 1 : 0)) / 2;
  const std::size_t chars = (bits + 5) / 6;
  if (text.size() - pos != chars) {
    throw ParseError("graph6 body has " + std::to_string(text.size() - pos) +
                         " characters, expected " + std::to_string(chars),
                     text.size() < pos + chars ? text.size() + 1 : pos + chars + 1);
  }
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const auto c = static_cast<unsigned>(text[pos + k / 6] - 63);
      if ((c >> (5 - k % 6)) & 1u) g.add_edge(i, j);
    }
  }
  if (bits % 6) {
    const auto last = static_cast<unsigned>(text.back() - 63);
    const unsigned pad_mask = (1u << (6 - bits % 6)) - 1;
    if (last & pad_mask) throw ParseError("nonzero graph6 padding bits", text.size());
  }
  return g;
}

std::string graph6_emit(const Graph& g) {
  const std::size_t n = g.n();
  if (n > kGraph6Max) throw DomainError("graph too large for graph6");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
  }
  unsigned acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

std::vector<Graph> read_graph6_corpus(std::string_view text) {
  std::vector<Graph> out;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(graph6_parse(line));
  }
  return out;
}

Graph complete_graph(std::size_t n) { return empty_graph(n).complement(); }

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw DomainError("a cycle needs at least 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Graph petersen_graph() {
  // Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
  std::vector<std::pair<int, int>> sets;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) sets.emplace_back(i, j);
  }
  Graph g(10);
  for (std::size_t s = 0; s < 10; ++s) {
    for (std::size_t t = s + 1; t < 10; ++t) {
      const auto [a, b] = sets[s];
      const auto [c, d] = sets[t];
      if (a != c && a != d && b != c && b != d) g.add_edge(s, t);
    }
  }
  return g;
}

Graph shrikhande_graph() {
  Graph g(16);
  const int gens[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      for (const auto& d : gens) {
        const int u = x * 4 + y;
        const int v = ((x + d[0]) % 4) * 4 + (y + d[1]) % 4;
        if (u < v) g.add_edge(u, v);
      }
    }
  }
  return g;
}

Graph rook_graph(std::size_t k) {
  Graph g(k * k);
  for (std::size_t u = 0; u < k * k; ++u) {
    for (std::size_t v = u + 1; v < k * k; ++v) {
      if (u / k == v / k || u % k == v % k) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace natspec
