#include "natspec/idempotent.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

#include "natspec/error.hpp"
#include "natspec/rng.hpp"

namespace natspec {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Values of one element of B as codes into Lambda. Members missing from
// `rows` have value 0 there.
struct Coded {
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> rows;  // ascending member
};

struct Table {
  std::size_t n = 0;
  std::size_t members = 0;
  std::vector<Rational> lambdas;  // sorted
  std::uint32_t zero = kNone;     // code of 0, if 0 occurs
  std::vector<DPoly> polys;
  std::vector<Coded> vals;

  const std::vector<std::uint32_t>* row_of(std::size_t b, std::uint32_t a) const {
    const auto& rows = vals[b].rows;
    auto it = std::lower_bound(rows.begin(), rows.end(), a,
                               [](const auto& r, std::uint32_t m) { return r.first < m; });
    return it != rows.end() && it->first == a ? &it->second : nullptr;
  }

  Matrix decode(std::size_t b, std::uint32_t a) const {
    Matrix m(n);
    if (const auto* r = row_of(b, a)) {
      for (std::size_t p = 0; p < n * n; ++p) m.entries()[p] = lambdas[(*r)[p]];
    }
    return m;
  }
};

void check_family(const std::vector<Matrix>& family) {
  if (family.empty()) throw DomainError("empty family");
  const std::size_t n = family.front().size();
  if (n == 0) throw DomainError("family of 0x0 matrices");
  for (const auto& m : family) {
    if (m.size() != n) throw DimensionError("family members differ in size");
  }
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

Table table_from_matrices(std::vector<DPoly> polys,
                          const std::vector<std::vector<Matrix>>& vals /* [member][b] */,
                          std::size_t n) {
  Table t;
  t.n = n;
  t.members = vals.size();
  t.polys = std::move(polys);
  std::set<Rational> seen;
  for (const auto& per : vals) {
    for (const auto& m : per) seen.insert(m.entries().begin(), m.entries().end());
  }
  t.lambdas.assign(seen.begin(), seen.end());
  for (std::uint32_t k = 0; k < t.lambdas.size(); ++k) {
    if (t.lambdas[k] == 0) t.zero = k;
  }
  t.vals.resize(t.polys.size());
  for (std::uint32_t a = 0; a < t.members; ++a) {
    for (std::size_t b = 0; b < t.polys.size(); ++b) {
      std::vector<std::uint32_t> codes(n * n);
      const auto e = vals[a][b].entries();
      for (std::size_t p = 0; p < n * n; ++p) {
        codes[p] = static_cast<std::uint32_t>(
            std::lower_bound(t.lambdas.begin(), t.lambdas.end(), e[p]) - t.lambdas.begin());
      }
      t.vals[b].rows.emplace_back(a, std::move(codes));
    }
  }
  return t;
}

bool is_zero_one(const Matrix& m) {
  for (const auto& e : m.entries()) {
    if (e != 0 && e != 1) return false;
  }
  return true;
}

// The atom-cutting step shared by universal_basis and universal_basis_full.
class AtomCutter {
 public:
  AtomCutter(const Table& t, const std::vector<Matrix>& family, const UniversalOptions& opt)
      : t_(t), family_(family), opt_(opt), n2_(t.n * t.n) {}

  IdempotentBasis run() {
    index_members();
    build_c_set();
    build_atoms();
    build_tree();
    IdempotentBasis out;
    out.n = t_.n;
    out.members = t_.members;
    out.lambdas = t_.lambdas;
    out.c_size = c_rep_.size();
    out.entries.reserve(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      out.entries.push_back({atom_poly(i), std::move(atom_values_[i])});
    }
    if (opt_.verify) verify(out);
    return out;
  }

 private:
  using Sig = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (b, code), code != zero

  void index_members() {
    by_member_.assign(t_.members, {});
    for (std::uint32_t b = 0; b < t_.vals.size(); ++b) {
      for (const auto& [a, codes] : t_.vals[b].rows) by_member_[a].emplace_back(b, &codes);
    }
    lam_codes_.resize(t_.vals.size());
    for (std::size_t b = 0; b < t_.vals.size(); ++b) {
      std::vector<char> hit(t_.lambdas.size(), 0);
      for (const auto& [a, codes] : t_.vals[b].rows) {
        for (auto c : codes) hit[c] = 1;
      }
      if (t_.vals[b].rows.size() < t_.members) hit.at(t_.zero) = 1;
      for (std::uint32_t k = 0; k < hit.size(); ++k) {
        if (hit[k]) lam_codes_[b].push_back(k);
      }
    }
  }

  std::uint32_t code_at(std::size_t b, std::uint32_t a, std::size_t p) const {
    const auto* r = t_.row_of(b, a);
    return r ? (*r)[p] : t_.zero;
  }

  bool same_indicator(std::pair<std::uint32_t, std::uint32_t> x,
                      std::pair<std::uint32_t, std::uint32_t> y) const {
    for (std::uint32_t a = 0; a < t_.members; ++a) {
      const auto* rx = t_.row_of(x.first, a);
      const auto* ry = t_.row_of(y.first, a);
      for (std::size_t p = 0; p < n2_; ++p) {
        const bool ix = (rx ? (*rx)[p] : t_.zero) == x.second;
        const bool iy = (ry ? (*ry)[p] : t_.zero) == y.second;
        if (ix != iy) return false;
      }
    }
    return true;
  }

  // C = {proj(lambda) * b}: every realized (b, lambda), deduplicated by value.
  void build_c_set() {
    std::vector<std::uint64_t> absent(t_.members, 0);
    for (std::uint32_t a = 0; a < t_.members; ++a) {
      for (std::size_t p = 0; p < n2_; ++p) absent[a] += mix(a, p);
    }
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash;
    cidx_.assign(t_.vals.size(), std::vector<std::uint32_t>(t_.lambdas.size(), kNone));
    std::vector<std::uint64_t> h(t_.lambdas.size());
    for (std::uint32_t b = 0; b < t_.vals.size(); ++b) {
      std::fill(h.begin(), h.end(), 0);
      std::size_t next_row = 0;
      const auto& rows = t_.vals[b].rows;
      for (std::uint32_t a = 0; a < t_.members; ++a) {
        if (next_row < rows.size() && rows[next_row].first == a) {
          const auto& codes = rows[next_row++].second;
          for (std::size_t p = 0; p < n2_; ++p) h[codes[p]] += mix(a, p);
        } else {
          h[t_.zero] += absent[a];
        }
      }
      for (auto k : lam_codes_[b]) {
        auto& bucket = by_hash[h[k]];
        std::uint32_t found = kNone;
        for (auto c : bucket) {
          if (same_indicator(c_rep_[c], {b, k})) {
            found = c;
            break;
          }
        }
        if (found == kNone) {
          found = static_cast<std::uint32_t>(c_rep_.size());
          c_rep_.emplace_back(b, k);
          bucket.push_back(found);
        }
        cidx_[b][k] = found;
      }
    }
  }

  // Joint-value classes realized on some member, numbered by first
  // realization (member, then position).
  void build_atoms() {
    std::map<Sig, std::uint32_t> ids;
    for (std::uint32_t a = 0; a < t_.members; ++a) {
      std::vector<Sig> sig(n2_);
      for (const auto& [b, codes] : by_member_[a]) {
        for (std::size_t p = 0; p < n2_; ++p) {
          if ((*codes)[p] != t_.zero) sig[p].emplace_back(b, (*codes)[p]);
        }
      }
      for (std::size_t p = 0; p < n2_; ++p) {
        auto [it, fresh] = ids.emplace(std::move(sig[p]), static_cast<std::uint32_t>(atoms_.size()));
        if (fresh) {
          atoms_.push_back(it->first);
          atom_values_.emplace_back(t_.members, BitMatrix(t_.n));
        }
        atom_values_[it->second][a].set(p / t_.n, p % t_.n);
      }
    }
  }

  std::uint32_t sig_code(const Sig& s, std::uint32_t b) const {
    auto it = std::lower_bound(s.begin(), s.end(), std::make_pair(b, std::uint32_t{0}));
    return it != s.end() && it->first == b ? it->second : t_.zero;
  }

  // Separating conditions per atom: a decision tree over the signatures,
  // splitting on the element of B with the smallest largest branch.
  void build_tree() {
    paths_.assign(atoms_.size(), {});
    struct Node {
      std::vector<std::uint32_t> atoms;
      std::vector<std::uint32_t> path;
    };
    std::vector<Node> stack;
    {
      Node root;
      root.atoms.resize(atoms_.size());
      for (std::uint32_t i = 0; i < atoms_.size(); ++i) root.atoms[i] = i;
      stack.push_back(std::move(root));
    }
    while (!stack.empty()) {
      Node node = std::move(stack.back());
      stack.pop_back();
      if (node.atoms.size() == 1) {
        paths_[node.atoms.front()] = std::move(node.path);
        continue;
      }
      std::unordered_map<std::uint64_t, std::uint32_t> count;
      std::unordered_map<std::uint32_t, std::uint32_t> nonzero;
      for (auto i : node.atoms) {
        for (const auto& [b, code] : atoms_[i]) {
          ++count[(std::uint64_t{b} << 32) | code];
          ++nonzero[b];
        }
      }
      std::unordered_map<std::uint32_t, std::uint32_t> largest;
      for (const auto& [key, c] : count) {
        auto& l = largest[static_cast<std::uint32_t>(key >> 32)];
        l = std::max(l, c);
      }
      const auto size = static_cast<std::uint32_t>(node.atoms.size());
      std::uint32_t best_b = kNone, best = size;
      for (const auto& [b, nz] : nonzero) {
        const std::uint32_t branch = std::max(largest[b], size - nz);
        if (branch < best || (branch == best && b < best_b && branch < size)) {
          best = branch;
          best_b = b;
        }
      }
      if (best_b == kNone) throw Error("atom signatures are not separated");
      std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
      for (auto i : node.atoms) groups[sig_code(atoms_[i], best_b)].push_back(i);
      for (auto& [code, members] : groups) {
        Node child{std::move(members), node.path};
        const auto c = cidx_[best_b][code];
        if (std::find(child.path.begin(), child.path.end(), c) == child.path.end()) {
          child.path.push_back(c);
        }
        stack.push_back(std::move(child));
      }
    }
  }

  std::vector<Rational> lambda_values(std::size_t b) const {
    std::vector<Rational> out;
    for (auto k : lam_codes_[b]) out.push_back(t_.lambdas[k]);
    return out;
  }

  const DPoly& c_poly(std::uint32_t c) {
    if (c_polys_.size() < c_rep_.size()) c_polys_.resize(c_rep_.size());
    auto& slot = c_polys_[c];
    if (!slot) {
      const auto [b, k] = c_rep_[c];
      slot = compose(proj_poly(lambda_values(b), t_.lambdas[k]), t_.polys[b]);
    }
    return *slot;
  }

  DPoly atom_poly(std::size_t i) {
    const auto& path = paths_[i];
    if (path.empty()) return DPoly::circ_one();
    DPoly p = c_poly(path.front());
    for (std::size_t k = 1; k < path.size(); ++k) p = DPoly::circ(p, c_poly(path[k]));
    return p;
  }

  BitMatrix c_value(std::uint32_t c, std::uint32_t a) const {
    const auto [b, k] = c_rep_[c];
    BitMatrix m(t_.n);
    for (std::size_t p = 0; p < n2_; ++p) {
      if (code_at(b, a, p) == k) m.set(p / t_.n, p % t_.n);
    }
    return m;
  }

  void verify(const IdempotentBasis& out) {
    const std::size_t n = t_.n;
    // Projections evaluated literally reconstruct each b.
    for (std::size_t b = 0; b < t_.vals.size(); ++b) {
      const auto lam = lambda_values(b);
      std::vector<DPoly> projs;
      for (const auto& l : lam) projs.push_back(proj_poly(lam, l));
      for (std::uint32_t a = 0; a < t_.members; ++a) {
        const Matrix v = t_.decode(b, a);
        Matrix sum(n);
        const auto evals = eval_many(projs, v);
        for (std::size_t k = 0; k < lam.size(); ++k) {
          if (!is_zero_one(evals[k])) throw Error("projection is not 0/1");
          for (std::size_t p = 0; p < n * n; ++p) {
            if ((evals[k].entries()[p] == 1) != (v.entries()[p] == lam[k])) {
              throw Error("projection does not match the value class");
            }
          }
          sum += lam[k] * evals[k];
        }
        if (!(sum == v)) throw Error("projections do not reconstruct b");
      }
    }
    // Atom and c polynomials evaluated on every member.
    std::vector<DPoly> polys;
    for (const auto& e : out.entries) polys.push_back(*e.poly);
    std::vector<std::uint32_t> used;
    for (std::uint32_t c = 0; c < c_rep_.size(); ++c) {
      if (c < c_polys_.size() && c_polys_[c]) used.push_back(c);
    }
    for (auto c : used) polys.push_back(*c_polys_[c]);
    const bool full = c_rep_.size() <= opt_.full_atom_cap;
    std::vector<DPoly> full_atoms;
    if (full) {
      const DPoly j = DPoly::circ_one();
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        DPoly d = j;
        for (std::uint32_t c = 0; c < c_rep_.size(); ++c) {
          const auto [b, k] = c_rep_[c];
          const DPoly& cp = c_poly(c);
          d = DPoly::circ(d, sig_code(atoms_[i], b) == k ? cp : j - cp);
        }
        full_atoms.push_back(d);
      }
      polys.insert(polys.end(), full_atoms.begin(), full_atoms.end());
    }
    const std::size_t na = out.entries.size();
    for (std::uint32_t a = 0; a < t_.members; ++a) {
      const auto ev = eval_many(polys, family_[a]);
      Matrix total(n);
      for (std::size_t i = 0; i < na; ++i) {
        if (!(ev[i] == out.entries[i].values[a].to_matrix())) {
          throw Error("atom polynomial disagrees with its value");
        }
        total += ev[i];
      }
      if (!(total == Matrix::ones(n))) throw Error("atoms are not a partition of J");
      for (std::size_t u = 0; u < used.size(); ++u) {
        if (!(ev[na + u] == c_value(used[u], a).to_matrix())) {
          throw Error("c polynomial disagrees with its indicator");
        }
      }
      if (!full) continue;
      for (std::size_t i = 0; i < na; ++i) {
        if (!(ev[na + used.size() + i] == ev[i])) throw Error("d_X disagrees with the atom");
      }
      for (std::uint32_t c = 0; c < c_rep_.size(); ++c) {
        const auto [b, k] = c_rep_[c];
        BitMatrix s(n);
        for (std::size_t i = 0; i < na; ++i) {
          if (sig_code(atoms_[i], b) == k) {
            for (std::size_t p = 0; p < n * n; ++p) {
              if (out.entries[i].values[a].get(p / n, p % n)) s.set(p / n, p % n);
            }
          }
        }
        if (!(s == c_value(c, a))) throw Error("c is not the sum of its atoms");
      }
    }
  }

  const Table& t_;
  const std::vector<Matrix>& family_;
  const UniversalOptions& opt_;
  std::size_t n2_;
  std::vector<std::vector<std::pair<std::uint32_t, const std::vector<std::uint32_t>*>>> by_member_;
  std::vector<std::vector<std::uint32_t>> lam_codes_;
  std::vector<std::vector<std::uint32_t>> cidx_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> c_rep_;
  std::vector<std::optional<DPoly>> c_polys_;
  std::vector<Sig> atoms_;
  std::vector<std::vector<BitMatrix>> atom_values_;
  std::vector<std::vector<std::uint32_t>> paths_;
};

std::vector<std::size_t> member_ranks(const IdempotentBasis& b) {
  std::vector<std::size_t> r(b.members);
  for (std::size_t a = 0; a < b.members; ++a) r[a] = b.rank(a);
  return r;
}

// B' = {c * c'} over pairs whose product is nonzero on some member, with
// repeated value tuples dropped.
Table product_table(const IdempotentBasis& basis) {
  const std::size_t n = basis.n;
  const std::size_t m = basis.members;
  const std::size_t words = (n + 63) / 64;
  const std::size_t k = basis.entries.size();
  std::vector<std::vector<char>> nonzero(k, std::vector<char>(m));
  // Column support and row support of each atom on each member.
  std::vector<std::vector<std::vector<std::uint64_t>>> cols(k), rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    cols[i].assign(m, std::vector<std::uint64_t>(words, 0));
    rows[i].assign(m, std::vector<std::uint64_t>(words, 0));
    for (std::size_t a = 0; a < m; ++a) {
      const BitMatrix& v = basis.entries[i].values[a];
      nonzero[i][a] = v.any();
      if (!nonzero[i][a]) continue;
      for (std::size_t r = 0; r < n; ++r) {
        const auto row = v.row(r);
        bool any = false;
        for (std::size_t w = 0; w < words; ++w) {
          cols[i][a][w] |= row[w];
          any = any || row[w];
        }
        if (any) rows[i][a][r / 64] |= std::uint64_t{1} << (r % 64);
      }
    }
  }
  auto meets = [&](std::size_t x, std::size_t y, std::size_t a) {
    for (std::size_t w = 0; w < words; ++w) {
      if (cols[x][a][w] & rows[y][a][w]) return true;
    }
    return false;
  };
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::uint32_t> live;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (nonzero[i][a]) live.push_back(i);
    }
    for (auto x : live) {
      for (auto y : live) {
        if (meets(x, y, a)) pairs.emplace(x, y);
      }
    }
  }
  struct Product {
    std::uint32_t x, y;
    std::vector<std::pair<std::uint32_t, IntMatrix>> rows;
  };
  std::vector<Product> uniq;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
  bool has_zero = false;
  for (const auto& [x, y] : pairs) {
    Product pr{x, y, {}};
    std::uint64_t h = 0;
    for (std::uint32_t a = 0; a < m; ++a) {
      if (!nonzero[x][a] || !nonzero[y][a] || !meets(x, y, a)) continue;
      IntMatrix v = bit_product(basis.entries[x].values[a], basis.entries[y].values[a]);
      h = mix(h, a);
      for (auto e : v.entries()) {
        h = mix(h, static_cast<std::uint64_t>(e));
        has_zero = has_zero || e == 0;
      }
      pr.rows.emplace_back(a, std::move(v));
    }
    if (pr.rows.size() < m) has_zero = true;
    auto& bucket = by_hash[h];
    bool dup = false;
    for (auto u : bucket) {
      if (uniq[u].rows == pr.rows) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    bucket.push_back(uniq.size());
    uniq.push_back(std::move(pr));
  }
  Table t;
  t.n = n;
  t.members = m;
  std::set<std::int64_t> values;
  if (has_zero) values.insert(0);
  for (const auto& pr : uniq) {
    for (const auto& [a, v] : pr.rows) values.insert(v.entries().begin(), v.entries().end());
  }
  std::unordered_map<std::int64_t, std::uint32_t> code;
  for (auto v : values) {
    code.emplace(v, static_cast<std::uint32_t>(t.lambdas.size()));
    t.lambdas.emplace_back(v);
  }
  if (has_zero) t.zero = code.at(0);
  for (const auto& pr : uniq) {
    t.polys.push_back(DPoly::bullet(*basis.entries[pr.x].poly, *basis.entries[pr.y].poly));
    Coded c;
    for (const auto& [a, v] : pr.rows) {
      std::vector<std::uint32_t> codes(n * n);
      for (std::size_t p = 0; p < n * n; ++p) codes[p] = code.at(v.entries()[p]);
      c.rows.emplace_back(a, std::move(codes));
    }
    t.vals.push_back(std::move(c));
  }
  return t;
}

}  // namespace

Matrix IdempotentBasis::value(std::size_t entry, std::size_t member) const {
  return entries.at(entry).values.at(member).to_matrix();
}

std::vector<BitMatrix> IdempotentBasis::nonzero_values(std::size_t member) const {
  std::vector<BitMatrix> out;
  for (const auto& e : entries) {
    if (e.values.at(member).any()) out.push_back(e.values[member]);
  }
  return out;
}

std::size_t IdempotentBasis::rank(std::size_t member) const {
  std::size_t r = 0;
  for (const auto& e : entries) r += e.values.at(member).any();
  return r;
}

std::vector<Matrix> primitive_circ_idempotents(const SubspaceBasis& s) {
  const std::size_t n = s.n();
  if (s.dim() == 0) throw DomainError("zero subspace has no idempotent basis");
  const EntryPartition p = value_partition(n, s.basis());
  if (p.classes != s.dim() || !s.contains(Matrix::ones(n))) {
    throw DomainError("subspace is not Hadamard-closed with J");
  }
  std::vector<Matrix> out;
  for (const auto& ind : p.indicators()) {
    Matrix m = ind.to_matrix();
    if (!s.contains(m)) throw DomainError("subspace is not Hadamard-closed with J");
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<DPoly> strictify(const std::vector<DPoly>& b, const std::vector<Matrix>& family) {
  check_family(family);
  const std::size_t n = family.front().size();
  std::vector<std::vector<Matrix>> vals;  // [member][i]
  for (const auto& a : family) vals.push_back(eval_many(b, a));
  std::vector<std::vector<Matrix>> cvals(family.size());
  std::vector<DPoly> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<std::size_t> rel;
    std::vector<Matrix> cur;
    for (std::size_t a = 0; a < family.size(); ++a) cur.push_back(vals[a][i]);
    for (std::size_t j = 0; j < i; ++j) {
      bool live = false;
      for (std::size_t a = 0; a < family.size(); ++a) {
        const Matrix h = hadamard(vals[a][i], cvals[a][j]);
        if (!h.is_zero()) {
          live = true;
          cur[a] -= h;
        }
      }
      if (live) rel.push_back(j);
    }
    std::vector<DPoly> terms{b[i]};
    for (auto j : rel) terms.push_back(-DPoly::circ(b[i], out[j]));
    out.push_back(rel.empty() ? b[i] : DPoly::sum(terms));
    for (std::size_t a = 0; a < family.size(); ++a) cvals[a].push_back(std::move(cur[a]));
  }
  for (std::size_t a = 0; a < family.size(); ++a) {
    Matrix total(n);
    for (const auto& c : cvals[a]) {
      if (!is_zero_one(c)) throw DomainError("strictified values are not 0/1");
      total += c;
    }
    if (!is_zero_one(total)) throw DomainError("strictified values overlap");
  }
  return out;
}

IdempotentBasis universal_basis(const std::vector<Matrix>& family, const std::vector<DPoly>& b,
                                const UniversalOptions& opt) {
  check_family(family);
  std::vector<std::vector<Matrix>> vals;
  vals.reserve(family.size());
  for (const auto& a : family) vals.push_back(eval_many(b, a));
  const Table t = table_from_matrices(b, vals, family.front().size());
  return AtomCutter(t, family, opt).run();
}

UniversalFullResult universal_basis_full(const std::vector<Matrix>& family, std::size_t depth_cap,
                                         const UniversalOptions& opt) {
  check_family(family);
  const std::size_t n = family.front().size();
  std::vector<std::vector<Matrix>> vals;
  for (const auto& a : family) vals.push_back({Matrix::identity(n), a});
  Table t = table_from_matrices({DPoly::bullet_one(), DPoly::x()}, vals, n);
  UniversalFullResult res;
  res.basis = AtomCutter(t, family, opt).run();
  res.ranks.push_back(member_ranks(res.basis));
  while (res.depth < depth_cap) {
    t = product_table(res.basis);
    IdempotentBasis next = AtomCutter(t, family, opt).run();
    ++res.depth;
    auto r = member_ranks(next);
    const bool same = r == res.ranks.back();
    res.ranks.push_back(std::move(r));
    if (same) {
      res.stabilized = true;
      break;
    }
    res.basis = std::move(next);
  }
  return res;
}

InvolutionResult involution_close(const IdempotentBasis& basis, const std::vector<Matrix>& family) {
  check_family(family);
  if (family.size() != basis.members || family.front().size() != basis.n) {
    throw DimensionError("basis and family do not match");
  }
  for (const auto& a : family) {
    if (!is_symmetric(a)) throw DomainError("involution closure needs symmetric members");
  }
  const std::size_t m = basis.members;
  const std::size_t n = basis.n;
  std::vector<const IdempotentEntry*> live;
  for (const auto& e : basis.entries) {
    if (!e.poly) throw DomainError("basis entry without a polynomial");
    for (const auto& v : e.values) {
      if (v.any()) {
        live.push_back(&e);
        break;
      }
    }
  }
  const std::size_t k = live.size();
  std::vector<DPoly> polys;
  for (const auto* e : live) polys.push_back(*e->poly);
  const std::vector<DPoly> sigma = involution_many(polys);

  // B' = [b o sigma(b)]..., then b_1, sigma(b_1), b_2, sigma(b_2), ...
  std::vector<DPoly> bp;
  std::vector<std::vector<BitMatrix>> bv;
  for (std::size_t i = 0; i < k; ++i) {
    bp.push_back(DPoly::circ(polys[i], sigma[i]));
    std::vector<BitMatrix> v;
    for (const auto& x : live[i]->values) v.push_back(x & x.transposed());
    bv.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < k; ++i) {
    bp.push_back(polys[i]);
    bv.push_back(live[i]->values);
    bp.push_back(sigma[i]);
    std::vector<BitMatrix> v;
    for (const auto& x : live[i]->values) v.push_back(x.transposed());
    bv.push_back(std::move(v));
  }

  InvolutionResult res;
  std::vector<std::set<BitMatrix>> known(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (const auto* e : live) {
      if (e->values[a].any()) known[a].insert(e->values[a]);
    }
  }
  for (std::size_t i = 0; i < bp.size() && res.weak_basis_ok; ++i) {
    for (std::size_t a = 0; a < m; ++a) {
      if (bv[i][a].any() && !known[a].count(bv[i][a])) {
        res.weak_basis_ok = false;
        res.diagnostic = "value of element " + std::to_string(i) + " on member " +
                         std::to_string(a) + " is not a basis value";
        break;
      }
    }
  }

  // Strictify: with a weakly universal B' every nonzero value is primitive,
  // so b'_i o c_j is nonzero exactly when the two values coincide.
  std::vector<std::map<BitMatrix, std::size_t>> claimed(m);
  std::vector<DPoly> cp;
  std::vector<std::vector<BitMatrix>> cv;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    std::set<std::size_t> rel;
    std::vector<BitMatrix> v(m, BitMatrix(n));
    for (std::size_t a = 0; a < m; ++a) {
      if (!bv[i][a].any()) continue;
      auto it = claimed[a].find(bv[i][a]);
      if (it != claimed[a].end()) {
        rel.insert(it->second);
      } else {
        claimed[a].emplace(bv[i][a], i);
        v[a] = bv[i][a];
      }
    }
    std::vector<DPoly> terms{bp[i]};
    for (auto j : rel) terms.push_back(-DPoly::circ(bp[i], cp[j]));
    cp.push_back(rel.empty() ? bp[i] : DPoly::sum(terms));
    cv.push_back(std::move(v));
  }

  std::vector<std::size_t> pair(bp.size());
  for (std::size_t i = 0; i < k; ++i) {
    pair[i] = i;
    pair[k + 2 * i] = k + 2 * i + 1;
    pair[k + 2 * i + 1] = k + 2 * i;
  }
  std::vector<std::size_t> remap(bp.size(), kNone);
  IdempotentBasis& out = res.basis;
  out.n = n;
  out.members = m;
  out.lambdas = basis.lambdas;
  out.c_size = basis.c_size;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    bool any = false;
    for (const auto& x : cv[i]) any = any || x.any();
    if (!any) continue;
    remap[i] = out.entries.size();
    out.entries.push_back({cp[i], std::move(cv[i])});
  }
  if (!res.weak_basis_ok) return res;
  std::vector<std::size_t> sigma_b(out.entries.size());
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (remap[i] == kNone) continue;
    if (remap[pair[i]] == kNone) throw Error("involution partner vanished");
    sigma_b[remap[i]] = remap[pair[i]];
  }
  for (std::size_t e = 0; e < out.entries.size(); ++e) {
    for (std::size_t a = 0; a < m; ++a) {
      if (!(out.entries[e].values[a].transposed() == out.entries[sigma_b[e]].values[a])) {
        throw Error("involution pairing does not match transposes");
      }
    }
  }
  out.involution_pairing = std::move(sigma_b);
  return res;
}

}  // namespace natspec
