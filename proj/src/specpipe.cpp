#include "natspec/specpipe.hpp"

#include <unordered_map>
#include <utility>

#include "natspec/error.hpp"
#include "natspec/parallel.hpp"
#include "natspec/rng.hpp"

namespace natspec {

namespace {

Integer pow_int(const Integer& base, std::size_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// 2n(nb)^n + 1
Integer merge_base(const Integer& b, std::size_t n) {
  return 2 * Integer(static_cast<unsigned long>(n)) *
             pow_int(Integer(static_cast<unsigned long>(n)) * b, n) +
         1;
}

using Tuple = std::vector<std::pair<std::uint32_t, IntMatrix>>;  // nonzero members only

std::uint64_t tuple_hash(const Tuple& t) {
  std::uint64_t h = 0;
  for (const auto& [a, v] : t) {
    h = splitmix64(h ^ a);
    for (auto e : v.entries()) h = splitmix64(h ^ static_cast<std::uint64_t>(e));
  }
  return h;
}

// Keeps the first occurrence of each value tuple; returns whether t was new.
class TupleSet {
 public:
  bool insert(const Tuple& t) {
    auto& bucket = by_hash_[tuple_hash(t)];
    for (auto i : bucket) {
      if (kept_[i] == t) return false;
    }
    bucket.push_back(kept_.size());
    kept_.push_back(t);
    return true;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
  std::vector<Tuple> kept_;
};

IntMatrix int_mul(const IntMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto aik = a(i, k);
      if (!aik) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.get(k, j)) c(i, j) += aik;
      }
    }
  }
  return c;
}

}  // namespace

Spectrum natural_spectrum(const DPoly& p, const Graph& g) {
  return char_poly(eval(p, g.adjacency()));
}

std::vector<Spectrum> strong_spectrum_restricted(const Graph& g, const std::vector<DPoly>& d) {
  std::vector<Spectrum> out;
  out.reserve(d.size());
  for (const auto& m : eval_many(d, g.adjacency())) out.push_back(char_poly(m));
  return out;
}

std::vector<Spectrum> family_spectra(const DPoly& p, const std::vector<Graph>& family,
                                     unsigned threads) {
  std::vector<Spectrum> out(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) { out[i] = natural_spectrum(p, family[i]); });
  return out;
}

MergePlan make_merge_plan(std::size_t m, const Integer& b, std::size_t n) {
  if (m == 0 || n == 0 || b < 1) throw DomainError("merge plan needs m, n, b >= 1");
  MergePlan plan{m, n, b, {Integer(1)}, {}};
  Integer total = 1;
  for (std::size_t i = 1; i < m; ++i) {
    const Integer z = merge_base(b * total, n);
    plan.z.push_back(z);
    plan.weights.push_back(z);
    total += z;
  }
  return plan;
}

std::vector<Integer> geometric_weights(std::size_t m, const Integer& b, std::size_t n) {
  if (n == 0 || b < 1) throw DomainError("merge weights need n, b >= 1");
  const Integer z = merge_base(b, n);
  std::vector<Integer> w;
  Integer a = 1;
  for (std::size_t i = 0; i < m; ++i) {
    w.push_back(a);
    a *= z;
  }
  return w;
}

Matrix merge(const std::vector<Matrix>& mats, const MergePlan& plan) {
  if (mats.size() != plan.m) throw DimensionError("merge: wrong number of matrices");
  Matrix out(plan.n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].size() != plan.n) throw DimensionError("merge: wrong matrix size");
    for (const auto& e : mats[i].entries()) {
      if (e.get_den() != 1 || e < 0 || e > plan.b) {
        throw DomainError("merge: entries must be integers in [0, b]");
      }
    }
    out += Rational(plan.weights[i]) * mats[i];
  }
  return out;
}

std::vector<Spectrum> demerge(const Spectrum& s, const MergePlan& plan) {
  if (s.n() != plan.n) throw DimensionError("demerge: spectrum size does not match the plan");
  if (plan.m == 1) return {s};
  const std::size_t n = plan.n;
  std::vector<Integer> t;
  for (const auto& tr : traces_from_charpoly(s)) {
    if (tr.get_den() != 1) throw DomainError("demerge: non-integer trace");
    if (tr < 0) throw DomainError("demerge: negative trace");
    t.push_back(tr.get_num());
  }
  std::vector<Spectrum> out(plan.m);
  for (std::size_t i = plan.m - 1; i >= 1; --i) {
    const Integer& z = plan.z[i - 1];
    std::vector<Rational> high(n);
    Integer zk = 1;
    for (std::size_t k = 0; k < n; ++k) {
      zk *= z;
      Integer q, r;
      mpz_fdiv_q(q.get_mpz_t(), t[k].get_mpz_t(), zk.get_mpz_t());
      mpz_fdiv_r(r.get_mpz_t(), t[k].get_mpz_t(), z.get_mpz_t());
      high[k] = Rational(q);
      t[k] = r;
    }
    out[i] = charpoly_from_traces(high, n);
  }
  std::vector<Rational> low(t.begin(), t.end());
  out[0] = charpoly_from_traces(low, n);
  return out;
}

DSPipeline build_ds_dpoly(const std::vector<Graph>& family, const DSOptions& opt) {
  if (family.empty()) throw DomainError("empty family");
  const std::size_t n = family.front().n();
  std::vector<Matrix> mats;
  for (const auto& g : family) {
    if (g.n() != n) throw DomainError("family members differ in size");
    mats.push_back(g.adjacency());
  }
  const auto full = universal_basis_full(mats, opt.depth_cap);
  auto inv = involution_close(full.basis, mats);
  if (!inv.weak_basis_ok) throw Error("involution closure failed: " + inv.diagnostic);

  DSPipeline out;
  out.basis = std::move(inv.basis);
  const auto& entries = out.basis.entries;
  const std::size_t m = family.size();
  const DPoly x = DPoly::x();

  // C = {b * x * b'} over diagonal entries b, b' (b o I = b), with distinct
  // nonzero value tuples. Every entry refines I, so it is diagonal on all
  // members or on none.
  std::vector<bool> diagonal(entries.size(), true);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (std::size_t a = 0; a < m && diagonal[e]; ++a) {
      const BitMatrix& v = entries[e].values[a];
      diagonal[e] = (v & BitMatrix::identity(n)) == v;
    }
  }
  std::vector<DPoly> c_polys;
  std::vector<Tuple> c_vals;
  {
    std::vector<std::vector<IntMatrix>> left(entries.size());  // b(a) A
    for (std::size_t e = 0; e < entries.size(); ++e) {
      left[e].resize(m);
      if (!diagonal[e]) continue;
      for (std::size_t a = 0; a < m; ++a) {
        if (entries[e].values[a].any()) {
          left[e][a] = bit_product(entries[e].values[a], family[a].adjacency_bits());
        }
      }
    }
    TupleSet seen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      if (!diagonal[e]) continue;
      for (std::size_t f = 0; f < entries.size(); ++f) {
        if (!diagonal[f]) continue;
        Tuple t;
        for (std::uint32_t a = 0; a < m; ++a) {
          if (!entries[e].values[a].any() || !entries[f].values[a].any()) continue;
          IntMatrix v = int_mul(left[e][a], entries[f].values[a]);
          if (!v.is_zero()) t.emplace_back(a, std::move(v));
        }
        if (t.empty() || !seen.insert(t)) continue;
        c_polys.push_back(DPoly::bullet(DPoly::bullet(*entries[e].poly, x), *entries[f].poly));
        c_vals.push_back(std::move(t));
      }
    }
  }
  out.c_count = c_polys.size();

  // D = {c + sigma(c)}, again by distinct value tuples.
  const auto sigma = involution_many(c_polys);
  TupleSet seen;
  for (std::size_t i = 0; i < c_polys.size(); ++i) {
    Tuple t;
    for (const auto& [a, v] : c_vals[i]) t.emplace_back(a, v + transpose(v));
    if (!seen.insert(t)) continue;
    out.d.push_back(c_polys[i] + sigma[i]);
  }
  out.weights = geometric_weights(out.d.size(), Integer(1), n);
  std::vector<DPoly> terms;
  for (std::size_t i = 0; i < out.d.size(); ++i) {
    terms.push_back(DPoly::scalar(Rational(out.weights[i]), out.d[i]));
  }
  out.p = DPoly::sum(terms);
  return out;
}

DSVerdict ds_compare(const Graph& g1, const Graph& g2, const DPoly& p) {
  if (g1.n() != g2.n()) throw DimensionError("ds_compare: graphs differ in size");
  return natural_spectrum(p, g1) == natural_spectrum(p, g2) ? DSVerdict::equal_spectrum
                                                            : DSVerdict::different_spectrum;
}

}  // namespace natspec
