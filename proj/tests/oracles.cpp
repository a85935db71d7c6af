#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <queue>

namespace oracle {

std::vector<Rational> faddeev_leverrier(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix m = Matrix::zero(n);
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = natspec::mat_mul(a, m) + c[n - k + 1] * id;
    Matrix am = natspec::mat_mul(a, m);
    c[n - k] = -natspec::trace(am) / Rational(static_cast<long>(k));
  }
  return c;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j).get_d();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

std::vector<Rational> poly_from_roots(const std::vector<long>& roots) {
  std::vector<Rational> p{1};
  for (long r : roots) {
    std::vector<Rational> next(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= Rational(r) * p[i];
    }
    p = std::move(next);
  }
  return p;
}

Matrix random_rational_matrix(std::size_t n, std::mt19937_64& rng, int num_range,
                              int den_range) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  Matrix m(n);
  for (auto& e : m.entries()) {
    e = Rational(num(rng), den(rng));
    e.canonicalize();
  }
  return m;
}

Matrix random_int_matrix(std::size_t n, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Matrix m(n);
  for (auto& e : m.entries()) e = dist(rng);
  return m;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::size_t span_rank(const std::vector<Matrix>& mats) {
  if (mats.empty()) return 0;
  const std::size_t dim = mats.front().size() * mats.front().size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : mats) rows.emplace_back(m.entries().begin(), m.entries().end());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

natspec::DPoly random_dpoly(std::mt19937_64& rng, int depth) {
  using natspec::DPoly;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
  switch (pick(rng)) {
    case 0:
    case 1:
      return DPoly::x();
    case 2:
      return rng() % 2 ? DPoly::bullet_one() : DPoly::circ_one();
    case 3: {
      std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
      Rational c(num(rng), den(rng));
      c.canonicalize();
      return DPoly::scalar(c, random_dpoly(rng, depth - 1));
    }
    case 4:
    case 5: {
      std::vector<DPoly> terms;
      const int k = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < k; ++i) terms.push_back(random_dpoly(rng, depth - 1));
      return DPoly::sum(terms);
    }
    case 6:
    case 7:
      return DPoly::bullet(random_dpoly(rng, depth - 1), random_dpoly(rng, depth - 1));
    default:
      return DPoly::circ(random_dpoly(rng, depth - 1), random_dpoly(rng, depth - 1));
  }
}

natspec::Graph random_graph(std::size_t n, std::mt19937_64& rng) {
  natspec::Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() & 1) g.add_edge(i, j);
    }
  }
  return g;
}

std::vector<std::vector<long>> bfs_distances(const natspec::Graph& g) {
  const std::size_t n = g.n();
  std::vector<std::vector<long>> d(n, std::vector<long>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    q.push(s);
    d[s][s] = 0;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (g.adjacent(u, v) && d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push(v);
        }
      }
    }
  }
  return d;
}

long count_triangles(const natspec::Graph& g) {
  long t = 0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = i + 1; j < g.n(); ++j) {
      for (std::size_t k = j + 1; k < g.n(); ++k) {
        if (g.adjacent(i, j) && g.adjacent(j, k) && g.adjacent(i, k)) ++t;
      }
    }
  }
  return t;
}

}  // namespace oracle

namespace oracle {
namespace {

// Incremental independent set over Q with its own elimination state.
class NaiveSpan {
 public:
  explicit NaiveSpan(std::size_t dim) : dim_(dim) {}

  bool add(const Matrix& m) {
    std::vector<Rational> v(m.entries().begin(), m.entries().end());
    reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) return false;
    rows_.push_back(v);
    lead_.push_back(static_cast<std::size_t>(it - v.begin()));
    return true;
  }

  bool contains(const Matrix& m) const {
    std::vector<Rational> v(m.entries().begin(), m.entries().end());
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
  }

 private:
  void reduce(std::vector<Rational>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& c = v[lead_[r]];
      if (c == 0) continue;
      const Rational f = c / rows_[r][lead_[r]];
      for (std::size_t k = 0; k < dim_; ++k) v[k] -= f * rows_[r][k];
    }
  }

  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> lead_;
};

std::vector<Matrix> closure_loop(std::size_t n, std::vector<Matrix> seeds, bool with_bullet) {
  NaiveSpan span(n * n);
  std::vector<Matrix> basis;
  for (auto& s : seeds) {
    if (span.add(s)) basis.push_back(s);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<Matrix> cands{natspec::hadamard(basis[i], basis[j])};
        if (with_bullet) cands.push_back(natspec::mat_mul(basis[i], basis[j]));
        for (auto& c : cands) {
          if (span.add(c)) {
            basis.push_back(c);
            grew = true;
          }
        }
      }
    }
  }
  return basis;
}

}  // namespace

std::vector<Matrix> naive_double_closure(const Matrix& a) {
  const std::size_t n = a.size();
  return closure_loop(n, {Matrix::identity(n), Matrix::ones(n), a}, true);
}

std::vector<Matrix> naive_circ_closure(std::size_t n, const std::vector<Matrix>& s) {
  std::vector<Matrix> seeds{Matrix::ones(n)};
  seeds.insert(seeds.end(), s.begin(), s.end());
  return closure_loop(n, std::move(seeds), false);
}

bool in_span(const std::vector<Matrix>& mats, const Matrix& m) {
  if (mats.empty()) return m.is_zero();
  NaiveSpan span(m.size() * m.size());
  for (const auto& x : mats) span.add(x);
  return span.contains(m);
}

}  // namespace oracle
