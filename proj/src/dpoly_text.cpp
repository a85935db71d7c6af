#include <cctype>
#include <map>
#include <optional>
#include <unordered_map>

#include "natspec/dpoly.hpp"
#include "natspec/error.hpp"

namespace natspec {
namespace {

constexpr unsigned kMaxExponent = 1u << 16;

enum class Tok {
  x, bullet_one, circ_one, number, binding, plus, minus, star, dot, prime, caret, caret_dot,
  lparen, rparen, kw_let, equals, semicolon, end
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;  // 1-based
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t pos = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), pos});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      const std::string word(s.substr(i, j - i));
      if (word == "x") out.push_back({Tok::x, word, pos});
      else if (word == "I") out.push_back({Tok::bullet_one, word, pos});
      else if (word == "J") out.push_back({Tok::circ_one, word, pos});
      else if (word == "let") out.push_back({Tok::kw_let, word, pos});
      else throw ParseError("unknown token '" + word + "'", pos);
      i = j;
      continue;
    }
    if (c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i + 1) throw ParseError("expected binding number after '$'", pos);
      out.push_back({Tok::binding, std::string(s.substr(i + 1, j - i - 1)), pos});
      i = j;
      continue;
    }
    if (c == '^') {
      if (i + 1 < s.size() && s[i + 1] == '.') {
        out.push_back({Tok::caret_dot, "^.", pos});
        i += 2;
      } else {
        out.push_back({Tok::caret, "^", pos});
        ++i;
      }
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '.': kind = Tok::dot; break;
      case '\'': kind = Tok::prime; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '=': kind = Tok::equals; break;
      case ';': kind = Tok::semicolon; break;
      default:
        throw ParseError(std::string("unknown token '") + c + "'", pos);
    }
    out.push_back({kind, std::string(1, c), pos});
    ++i;
  }
  out.push_back({Tok::end, "", s.size() + 1});
  return out;
}

// Intermediate parse value: either a bare scalar literal or a polynomial.
struct Value {
  std::optional<Rational> scalar;
  DPoly poly;
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  DPoly program() {
    while (peek().kind == Tok::kw_let) {
      next();
      const Token& name = expect(Tok::binding, "'$' binding name");
      if (bindings_.count(name.text)) {
        throw ParseError("binding $" + name.text + " defined twice", name.pos);
      }
      expect(Tok::equals, "'='");
      Value v = sum();
      require_poly(v);
      expect(Tok::semicolon, "';'");
      bindings_.emplace(name.text, v.poly);
    }
    Value v = sum();
    if (peek().kind != Tok::end) unexpected();
    require_poly(v);
    return v.poly;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      if (peek().kind == Tok::end) throw ParseError(std::string("expected ") + what + ", got end of input", peek().pos);
      throw ParseError(std::string("expected ") + what + ", got '" + peek().text + "'", peek().pos);
    }
    return next();
  }
  [[noreturn]] void unexpected() const {
    if (peek().kind == Tok::end) throw ParseError("unexpected end of input", peek().pos);
    throw ParseError("unexpected '" + peek().text + "'", peek().pos);
  }
  static void require_poly(const Value& v) {
    if (v.scalar) {
      throw ParseError("a scalar must multiply a polynomial (write c*I or c*J)", v.pos);
    }
  }

  Value sum() {
    Value first = unary();
    if (peek().kind != Tok::plus && peek().kind != Tok::minus) return first;
    require_poly(first);
    std::vector<DPoly> terms{first.poly};
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = next().kind == Tok::minus;
      Value t = unary();
      require_poly(t);
      terms.push_back(minus ? -t.poly : t.poly);
    }
    return {std::nullopt, DPoly::sum(terms), first.pos};
  }

  Value unary() {
    if (peek().kind == Tok::minus) {
      const std::size_t pos = next().pos;
      Value v = unary();
      if (v.scalar) return {-*v.scalar, DPoly(), pos};
      return {std::nullopt, -v.poly, pos};
    }
    return product(Tok::star);
  }

  static Value combine(DKind kind, const Value& a, const Value& b) {
    if (a.scalar && b.scalar) return {Rational(*a.scalar * *b.scalar), DPoly(), a.pos};
    if (a.scalar) return {std::nullopt, DPoly::scalar(*a.scalar, b.poly), a.pos};
    if (b.scalar) return {std::nullopt, DPoly::scalar(*b.scalar, a.poly), a.pos};
    return {std::nullopt,
            kind == DKind::bullet_prod ? DPoly::bullet(a.poly, b.poly) : DPoly::circ(a.poly, b.poly),
            a.pos};
  }

  // op == star: bullet level over circ operands; op == dot: circ level.
  Value product(Tok op) {
    Value acc = op == Tok::star ? product(Tok::dot) : postfix();
    while (peek().kind == op) {
      next();
      Value rhs = op == Tok::star ? product(Tok::dot) : postfix();
      acc = combine(op == Tok::star ? DKind::bullet_prod : DKind::circ_prod, acc, rhs);
    }
    return acc;
  }

  unsigned exponent() {
    const Token& t = expect(Tok::number, "exponent");
    if (t.text.find('/') != std::string::npos || t.text.size() > 6 ||
        std::stoul(t.text) > kMaxExponent) {
      throw ParseError("exponent must be an integer in [0, " + std::to_string(kMaxExponent) + "]", t.pos);
    }
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Value postfix() {
    Value v = primary();
    for (;;) {
      const Tok k = peek().kind;
      if (k == Tok::prime) {
        next();
        if (!v.scalar) v.poly = involution(v.poly);
      } else if (k == Tok::caret || k == Tok::caret_dot) {
        next();
        const unsigned e = exponent();
        if (v.scalar) {
          Rational r(1);
          for (unsigned i = 0; i < e; ++i) r *= *v.scalar;
          v.scalar = r;
        } else {
          v.poly = k == Tok::caret ? DPoly::bullet_power(v.poly, e) : DPoly::circ_power(v.poly, e);
        }
      } else {
        return v;
      }
    }
  }

  Value primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::x:
        next();
        return {std::nullopt, DPoly::x(), t.pos};
      case Tok::bullet_one:
        next();
        return {std::nullopt, DPoly::bullet_one(), t.pos};
      case Tok::circ_one:
        next();
        return {std::nullopt, DPoly::circ_one(), t.pos};
      case Tok::number: {
        next();
        Rational r;
        try {
          r = parse_rational(t.text);
        } catch (const ParseError& e) {
          throw ParseError("malformed number '" + t.text + "'", t.pos);
        }
        return {r, DPoly(), t.pos};
      }
      case Tok::binding: {
        next();
        auto it = bindings_.find(t.text);
        if (it == bindings_.end()) throw ParseError("undefined binding $" + t.text, t.pos);
        return {std::nullopt, it->second, t.pos};
      }
      case Tok::lparen: {
        next();
        Value v = sum();
        expect(Tok::rparen, "')'");
        v.pos = t.pos;
        return v;
      }
      default:
        unexpected();
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::unordered_map<std::string, DPoly> bindings_;
};

// Binding strength of the outermost operator of a printed term.
enum Level { lvl_sum = 0, lvl_unary = 1, lvl_bullet = 2, lvl_circ = 3, lvl_atom = 4 };

std::string coeff_text(const Rational& c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

class Printer {
 public:
  explicit Printer(const std::unordered_map<const detail::DNode*, std::string>* names)
      : names_(names) {}

  std::string print(const DPoly& p, Level min_level) const {
    auto [text, level] = render(p);
    return level < min_level ? "(" + text + ")" : text;
  }

  std::pair<std::string, Level> render_top(const DPoly& p) const { return render_body(p); }

 private:
  std::pair<std::string, Level> render(const DPoly& p) const {
    if (names_) {
      auto it = names_->find(p.id());
      if (it != names_->end()) return {it->second, lvl_atom};
    }
    return render_body(p);
  }

  // c*p for c > 0, at bullet level.
  std::string scaled(const Rational& c, const DPoly& p) const {
    if (c == 1) return print(p, lvl_bullet);
    return coeff_text(c) + "*" + print(p, lvl_bullet);
  }

  std::pair<std::string, Level> render_body(const DPoly& p) const {
    switch (p.kind()) {
      case DKind::var:
        return {"x", lvl_atom};
      case DKind::bullet_one:
        return {"I", lvl_atom};
      case DKind::circ_one:
        return {"J", lvl_atom};
      case DKind::scalar_mul: {
        const Rational& c = p.coefficient();
        if (c < 0) return {"-" + scaled(-c, p.arg(0)), lvl_unary};
        return {scaled(c, p.arg(0)), lvl_bullet};
      }
      case DKind::sum: {
        if (p.is_zero()) return {"0*J", lvl_bullet};
        std::string out;
        for (std::size_t i = 0; i < p.arity(); ++i) {
          const DPoly t = p.arg(i);
          const bool named = names_ && names_->count(t.id());
          if (i == 0) {
            out += print(t, lvl_unary);
          } else if (!named && t.kind() == DKind::scalar_mul && t.coefficient() < 0) {
            out += " - " + scaled(-t.coefficient(), t.arg(0));
          } else {
            out += " + " + print(t, lvl_unary);
          }
        }
        return {out, lvl_sum};
      }
      case DKind::bullet_prod:
        return {print(p.arg(0), lvl_bullet) + "*" + print(p.arg(1), lvl_circ), lvl_bullet};
      case DKind::circ_prod:
        return {print(p.arg(0), lvl_circ) + "." + print(p.arg(1), lvl_atom), lvl_circ};
    }
    return {"", lvl_atom};
  }

  const std::unordered_map<const detail::DNode*, std::string>* names_;
};

// Number of nodes in the fully expanded tree, saturating at `cap`.
std::size_t expanded_size(const DPoly& p, std::size_t cap) {
  std::unordered_map<const detail::DNode*, std::size_t> memo;
  std::vector<std::pair<const detail::DNode*, bool>> stack{{p.id(), false}};
  while (!stack.empty()) {
    auto [node, done] = stack.back();
    if (memo.count(node)) {
      stack.pop_back();
      continue;
    }
    if (!done) {
      stack.back().second = true;
      for (const auto& a : node->args) stack.emplace_back(a.get(), false);
      continue;
    }
    stack.pop_back();
    std::size_t total = 1;
    for (const auto& a : node->args) total = std::min(cap, total + memo.at(a.get()));
    memo.emplace(node, total);
  }
  return memo.at(p.id());
}

}  // namespace

DPoly parse_dpoly(std::string_view text) { return Parser(lex(text)).program(); }

std::string print_dpoly(const DPoly& p) {
  constexpr std::size_t kCap = 5'000'000;
  if (expanded_size(p, kCap) >= kCap) {
    throw DomainError("expression tree too large to print flat; use the shared form");
  }
  return Printer(nullptr).print(p, lvl_sum);
}

std::string print_dpoly_shared(const DPoly& p) {
  // Count parents of every node; nodes with several parents get a binding.
  std::unordered_map<const detail::DNode*, std::size_t> parents;
  std::vector<DPoly> order;  // post-order
  {
    std::unordered_map<const detail::DNode*, bool> state;
    std::vector<std::pair<DPoly, bool>> stack{{p, false}};
    while (!stack.empty()) {
      auto [q, expanded] = stack.back();
      if (!expanded) {
        if (state.count(q.id())) {
          stack.pop_back();
          continue;
        }
        state[q.id()] = false;
        stack.back().second = true;
        for (std::size_t i = q.arity(); i-- > 0;) {
          DPoly c = q.arg(i);
          ++parents[c.id()];
          if (!state.count(c.id())) stack.emplace_back(c, false);
        }
        continue;
      }
      stack.pop_back();
      order.push_back(q);
    }
  }
  std::unordered_map<const detail::DNode*, std::string> names;
  std::string out;
  std::size_t next_id = 1;
  for (const auto& q : order) {
    if (q.id() == p.id() || q.arity() == 0 || parents[q.id()] < 2) continue;
    const std::string name = "$" + std::to_string(next_id++);
    Printer printer(&names);
    out += "let " + name + " = " + printer.render_top(q).first + ";\n";
    names.emplace(q.id(), name);
  }
  out += Printer(&names).render_top(p).first;
  return out;
}

}  // namespace natspec
