#include "natspec/dpoly.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "natspec/error.hpp"

namespace natspec {
namespace {

using detail::DNode;
using NodePtr = std::shared_ptr<const DNode>;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t hash_integer(const Integer& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs && i < 4; ++i) {
    h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))));
  }
  return mix(h, limbs);
}

NodePtr make_node(DKind kind, std::vector<NodePtr> args, Rational coeff = Rational(0)) {
  auto node = std::make_shared<DNode>();
  node->kind = kind;
  std::size_t h = mix(0x51ed27, static_cast<std::size_t>(kind));
  if (kind == DKind::scalar_mul) {
    h = mix(h, hash_integer(coeff.get_num()));
    h = mix(h, hash_integer(coeff.get_den()));
  }
  for (const auto& a : args) h = mix(h, a->hash);
  node->hash = mix(h, args.size());
  node->coeff = std::move(coeff);
  node->args = std::move(args);
  return node;
}

const NodePtr& var_node() {
  static const NodePtr n = make_node(DKind::var, {});
  return n;
}
const NodePtr& bullet_one_node() {
  static const NodePtr n = make_node(DKind::bullet_one, {});
  return n;
}
const NodePtr& circ_one_node() {
  static const NodePtr n = make_node(DKind::circ_one, {});
  return n;
}
const NodePtr& zero_node() {
  static const NodePtr n = make_node(DKind::sum, {});
  return n;
}

// Splits off a scalar factor: p = c * rest.
std::pair<Rational, NodePtr> split_scalar(const NodePtr& p) {
  if (p->kind == DKind::scalar_mul) return {p->coeff, p->args[0]};
  return {Rational(1), p};
}

DPoly product(DKind kind, const DPoly& a, const DPoly& b) {
  if (a.is_zero() || b.is_zero()) return DPoly::zero();
  auto [ca, ra] = split_scalar(a.node());
  auto [cb, rb] = split_scalar(b.node());
  DPoly core(make_node(kind, {ra, rb}));
  return DPoly::scalar(ca * cb, core);
}

// Rebuilds each root bottom-up with one shared memo. `leaf` maps atoms;
// `reverse` swaps product operands.
std::vector<DPoly> rebuild_many(const std::vector<DPoly>& roots,
                                const std::function<DPoly(const DPoly&)>& leaf, bool reverse) {
  std::unordered_map<const DNode*, DPoly> memo;
  std::vector<std::pair<NodePtr, bool>> stack;
  for (const auto& p : roots) stack.emplace_back(p.node(), false);
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    if (memo.count(node.get())) {
      stack.pop_back();
      continue;
    }
    if (!expanded) {
      stack.back().second = true;
      for (const auto& a : node->args) {
        if (!memo.count(a.get())) stack.emplace_back(a, false);
      }
      continue;
    }
    stack.pop_back();
    DPoly out;
    switch (node->kind) {
      case DKind::var:
      case DKind::bullet_one:
      case DKind::circ_one:
        out = leaf(DPoly(node));
        break;
      case DKind::scalar_mul:
        out = DPoly::scalar(node->coeff, memo.at(node->args[0].get()));
        break;
      case DKind::sum: {
        std::vector<DPoly> terms;
        terms.reserve(node->args.size());
        for (const auto& a : node->args) terms.push_back(memo.at(a.get()));
        out = DPoly::sum(terms);
        break;
      }
      case DKind::bullet_prod:
      case DKind::circ_prod: {
        const DPoly& l = memo.at(node->args[0].get());
        const DPoly& r = memo.at(node->args[1].get());
        out = node->kind == DKind::bullet_prod ? (reverse ? DPoly::bullet(r, l) : DPoly::bullet(l, r))
                                               : (reverse ? DPoly::circ(r, l) : DPoly::circ(l, r));
        break;
      }
    }
    memo.emplace(node.get(), std::move(out));
  }
  std::vector<DPoly> out;
  out.reserve(roots.size());
  for (const auto& p : roots) out.push_back(memo.at(p.id()));
  return out;
}

DPoly rebuild(const DPoly& p, const std::function<DPoly(const DPoly&)>& leaf, bool reverse) {
  return rebuild_many({p}, leaf, reverse).front();
}

Rational factorial(std::uint64_t n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace

DPoly::DPoly() : node_(zero_node()) {}
DPoly DPoly::x() { return DPoly(var_node()); }
DPoly DPoly::bullet_one() { return DPoly(bullet_one_node()); }
DPoly DPoly::circ_one() { return DPoly(circ_one_node()); }
DPoly DPoly::zero() { return DPoly(zero_node()); }

DPoly DPoly::scalar(const Rational& c, const DPoly& p) {
  if (c == 0 || p.is_zero()) return zero();
  if (c == 1) return p;
  if (p.kind() == DKind::scalar_mul) {
    return scalar(c * p.coefficient(), p.arg(0));
  }
  return DPoly(make_node(DKind::scalar_mul, {p.node()}, c));
}

DPoly DPoly::sum(const std::vector<DPoly>& terms) {
  std::vector<NodePtr> flat;
  for (const auto& t : terms) {
    if (t.kind() == DKind::sum) {
      flat.insert(flat.end(), t.node()->args.begin(), t.node()->args.end());
    } else {
      flat.push_back(t.node());
    }
  }
  if (flat.empty()) return zero();
  if (flat.size() == 1) return DPoly(flat.front());
  return DPoly(make_node(DKind::sum, std::move(flat)));
}

DPoly DPoly::bullet(const DPoly& a, const DPoly& b) { return product(DKind::bullet_prod, a, b); }
DPoly DPoly::circ(const DPoly& a, const DPoly& b) { return product(DKind::circ_prod, a, b); }

DPoly DPoly::bullet_power(const DPoly& p, unsigned k) {
  if (k == 0) return bullet_one();
  DPoly r = p;
  for (unsigned i = 1; i < k; ++i) r = bullet(r, p);
  return r;
}

DPoly DPoly::circ_power(const DPoly& p, unsigned k) {
  if (k == 0) return circ_one();
  DPoly r = p;
  for (unsigned i = 1; i < k; ++i) r = circ(r, p);
  return r;
}

std::size_t DPoly::dag_size() const {
  std::unordered_set<const DNode*> seen;
  std::vector<const DNode*> stack{node_.get()};
  while (!stack.empty()) {
    const DNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& a : n->args) stack.push_back(a.get());
  }
  return seen.size();
}

bool operator==(const DPoly& a, const DPoly& b) {
  struct PairHash {
    std::size_t operator()(const std::pair<const DNode*, const DNode*>& p) const noexcept {
      return mix(std::hash<const void*>()(p.first), std::hash<const void*>()(p.second));
    }
  };
  std::unordered_set<std::pair<const DNode*, const DNode*>, PairHash> done;
  std::vector<std::pair<const DNode*, const DNode*>> stack{{a.id(), b.id()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x == y) continue;
    if (x->hash != y->hash || x->kind != y->kind || x->args.size() != y->args.size()) return false;
    if (x->kind == DKind::scalar_mul && x->coeff != y->coeff) return false;
    if (!done.insert({x, y}).second) continue;
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      stack.emplace_back(x->args[i].get(), y->args[i].get());
    }
  }
  return true;
}

std::vector<Matrix> eval_many(const std::vector<DPoly>& ps, const Matrix& a) {
  const std::size_t n = a.size();
  std::unordered_map<const DNode*, Matrix> memo;
  enum Phase { fresh, await_base, await_args };
  std::vector<std::pair<const DNode*, Phase>> stack;

  auto falling_shortcut = [&](const DNode* node) -> bool {
    const Matrix& base = memo.at(node->falling_base.get());
    const Rational big_n(Integer(std::to_string(node->falling_n)));
    for (const auto& m : base.entries()) {
      if (!is_integer(m) || m < 0 || m > big_n) return false;
    }
    const Rational fact = factorial(node->falling_n);
    Matrix out(n);
    auto dst = out.entries();
    auto src = base.entries();
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (src[k] == 0) dst[k] = fact;
    }
    memo.emplace(node, std::move(out));
    return true;
  };
  auto push_args = [&](const DNode* node) {
    for (const auto& c : node->args) {
      if (!memo.count(c.get())) stack.emplace_back(c.get(), fresh);
    }
  };

  for (const auto& p : ps) {
    stack.emplace_back(p.id(), fresh);
    while (!stack.empty()) {
      const DNode* cur = stack.back().first;
      const Phase phase = stack.back().second;
      if (memo.count(cur)) {
        stack.pop_back();
        continue;
      }
      if (phase == fresh && cur->falling_base) {
        stack.back().second = await_base;
        if (!memo.count(cur->falling_base.get())) {
          stack.emplace_back(cur->falling_base.get(), fresh);
        }
        continue;
      }
      if (phase == await_base && falling_shortcut(cur)) {
        stack.pop_back();
        continue;
      }
      if (phase != await_args) {
        stack.back().second = await_args;
        push_args(cur);
        continue;
      }
      stack.pop_back();
      Matrix value;
      switch (cur->kind) {
        case DKind::var:
          value = a;
          break;
        case DKind::bullet_one:
          value = Matrix::identity(n);
          break;
        case DKind::circ_one:
          value = Matrix::ones(n);
          break;
        case DKind::scalar_mul:
          value = cur->coeff * memo.at(cur->args[0].get());
          break;
        case DKind::sum:
          value = Matrix::zero(n);
          for (const auto& c : cur->args) value += memo.at(c.get());
          break;
        case DKind::bullet_prod:
          value = mat_mul(memo.at(cur->args[0].get()), memo.at(cur->args[1].get()));
          break;
        case DKind::circ_prod:
          value = hadamard(memo.at(cur->args[0].get()), memo.at(cur->args[1].get()));
          break;
      }
      memo.emplace(cur, std::move(value));
    }
  }
  std::vector<Matrix> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(memo.at(p.id()));
  return out;
}

Matrix eval(const DPoly& p, const Matrix& a) { return std::move(eval_many({p}, a).front()); }

DPoly involution(const DPoly& p) {
  return rebuild(p, [](const DPoly& leaf) { return leaf; }, true);
}

std::vector<DPoly> involution_many(const std::vector<DPoly>& ps) {
  return rebuild_many(ps, [](const DPoly& leaf) { return leaf; }, true);
}

DPoly compose(const DPoly& f, const DPoly& g) {
  return rebuild(
      f, [&g](const DPoly& leaf) { return leaf.kind() == DKind::var ? g : leaf; }, false);
}

DPoly proj_poly(const std::vector<Rational>& lambdas, const Rational& lambda) {
  std::vector<Rational> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("projection set has repeated elements");
  }
  if (!std::binary_search(sorted.begin(), sorted.end(), lambda)) {
    throw DomainError("projection target " + to_string(lambda) + " is not in the set");
  }
  DPoly out = DPoly::circ_one();
  bool first = true;
  Rational scale(1);
  for (const auto& mu : lambdas) {
    if (mu == lambda) continue;
    DPoly factor = DPoly::sum({DPoly::x(), DPoly::scalar(-mu, DPoly::circ_one())});
    out = first ? factor : DPoly::circ(out, factor);
    first = false;
    scale /= (lambda - mu);
  }
  return DPoly::scalar(scale, out);
}

std::vector<Rational> circ_spectrum(const Matrix& a) {
  std::vector<Rational> values(a.entries().begin(), a.entries().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

DPoly classic_dpoly(ClassicMatrix which, std::uint64_t big_n, std::size_t n) {
  const DPoly x = DPoly::x();
  const DPoly id = DPoly::bullet_one();
  const DPoly ones = DPoly::circ_one();
  switch (which) {
    case ClassicMatrix::complement:
      return ones - id - x;
    case ClassicMatrix::laplacian:
      return DPoly::circ(DPoly::bullet(x, x), id) - x;
    case ClassicMatrix::signless_laplacian:
      return DPoly::circ(DPoly::bullet(x, x), id) + x;
    case ClassicMatrix::distance:
      break;
  }
  if (big_n < 1) throw DomainError("distance polynomial needs N >= 1");
  if (n < 1) throw DomainError("distance polynomial needs n >= 1");
  const DPoly step = x + id;
  std::vector<DPoly> terms;
  DPoly power = id;
  for (std::size_t d = 0; d < n; ++d) {
    if (d == 1) power = step;
    if (d >= 2) power = DPoly::bullet(power, step);
    DPoly chain;
    for (std::uint64_t i = 1; i <= big_n; ++i) {
      DPoly factor = DPoly::sum({DPoly::scalar(Rational(Integer(std::to_string(i))), ones),
                                 DPoly::scalar(Rational(-1), power)});
      chain = i == 1 ? factor : DPoly::circ(chain, factor);
    }
    if (big_n >= 2) {
      auto annotated = std::make_shared<DNode>(*chain.node());
      annotated->falling_n = big_n;
      annotated->falling_base = power.node();
      chain = DPoly(std::move(annotated));
    }
    terms.push_back(chain);
  }
  return DPoly::scalar(1 / factorial(big_n), DPoly::sum(terms));
}

Integer distance_N_bound(const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0) throw DomainError("empty vertex set");
  Matrix base = g.adjacency() + Matrix::identity(n);
  Matrix result = Matrix::identity(n);
  for (std::size_t e = n - 1; e; e >>= 1) {
    if (e & 1) result = mat_mul(result, base);
    if (e > 1) base = mat_mul(base, base);
  }
  Rational best = 0;
  for (const auto& v : result.entries()) best = std::max(best, v);
  return best.get_num();
}

}  // namespace natspec
