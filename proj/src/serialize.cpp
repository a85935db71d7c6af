#include "natspec/serialize.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <unordered_map>

#include "natspec/error.hpp"

#ifndef NATSPEC_VERSION
#define NATSPEC_VERSION "0.0.0"
#endif

namespace natspec {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Integer integer_from_string(const std::string& s) {
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("bad integer \"" + s + "\"");
  return z;
}

const char* op_name(DKind k) {
  switch (k) {
    case DKind::var: return "x";
    case DKind::bullet_one: return "I";
    case DKind::circ_one: return "J";
    case DKind::scalar_mul: return "scalar";
    case DKind::sum: return "sum";
    case DKind::bullet_prod: return "bullet";
    case DKind::circ_prod: return "circ";
  }
  return "?";
}

std::string bits_row(const BitMatrix& m, std::size_t i) {
  std::string s(m.size(), '0');
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m.get(i, j)) s[j] = '1';
  }
  return s;
}

}  // namespace

std::string version_string() { return std::string("natspec ") + NATSPEC_VERSION; }

std::string rational_to_string(const Rational& q) { return to_string(q); }

Rational rational_from_string(std::string_view s) { return parse_rational(s); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(rational_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    Matrix m(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_array() || j[i].size() != j.size()) throw ParseError("matrix is not square");
      for (std::size_t k = 0; k < j.size(); ++k) {
        m(i, k) = rational_from_string(j[i][k].get<std::string>());
      }
    }
    return m;
  });
}

Json spectrum_to_json(const Spectrum& s) {
  Json c = Json::array();
  for (const auto& q : s.coeffs) c.push_back(rational_to_string(q));
  return {{"n", s.n()}, {"coeffs", c}};
}

Spectrum spectrum_from_json(const Json& j) {
  return guarded("spectrum", [&] {
    Spectrum s;
    for (const auto& c : j.at("coeffs")) s.coeffs.push_back(rational_from_string(c.get<std::string>()));
    if (s.n() != j.at("n").get<std::size_t>() || s.coeffs.empty() || s.coeffs.back() != 1) {
      throw ParseError("spectrum must be monic of degree n");
    }
    return s;
  });
}

Json subspace_to_json(const SubspaceBasis& s) {
  Json basis = Json::array();
  for (const auto& m : s.basis()) basis.push_back(matrix_to_json(m));
  return {{"n", s.n()}, {"pivots", s.pivots()}, {"basis", basis}};
}

SubspaceBasis subspace_from_json(const Json& j) {
  return guarded("subspace", [&] {
    SubspaceBasis s(j.at("n").get<std::size_t>());
    for (const auto& m : j.at("basis")) s.insert(matrix_from_json(m));
    if (s.pivots() != j.at("pivots").get<std::vector<std::size_t>>() ||
        s.basis().size() != j.at("basis").size()) {
      throw ParseError("subspace basis is not in reduced echelon form");
    }
    for (std::size_t k = 0; k < s.dim(); ++k) {
      if (!(s.basis()[k] == matrix_from_json(j.at("basis")[k]))) {
        throw ParseError("subspace basis is not in reduced echelon form");
      }
    }
    return s;
  });
}

Json merge_plan_to_json(const MergePlan& p) {
  Json w = Json::array(), z = Json::array();
  for (const auto& a : p.weights) w.push_back(to_string(a));
  for (const auto& a : p.z) z.push_back(to_string(a));
  return {{"m", p.m}, {"n", p.n}, {"b", to_string(p.b)}, {"weights", w}, {"z", z}};
}

MergePlan merge_plan_from_json(const Json& j) {
  return guarded("merge plan", [&] {
    MergePlan p = make_merge_plan(j.at("m").get<std::size_t>(),
                                  integer_from_string(j.at("b").get<std::string>()),
                                  j.at("n").get<std::size_t>());
    if (merge_plan_to_json(p) != j) throw ParseError("merge plan weights do not match m, n, b");
    return p;
  });
}

Json dpoly_dag_to_json(const std::vector<DPoly>& roots) {
  std::unordered_map<const detail::DNode*, std::size_t> index;
  Json nodes = Json::array();
  std::vector<std::pair<DPoly, bool>> stack;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) stack.emplace_back(*it, false);
  while (!stack.empty()) {
    auto [p, expanded] = stack.back();
    if (index.count(p.id())) {
      stack.pop_back();
      continue;
    }
    if (!expanded) {
      stack.back().second = true;
      for (std::size_t i = p.arity(); i-- > 0;) {
        if (!index.count(p.arg(i).id())) stack.emplace_back(p.arg(i), false);
      }
      continue;
    }
    stack.pop_back();
    Json node{{"op", op_name(p.kind())}};
    if (p.arity()) {
      Json args = Json::array();
      for (std::size_t i = 0; i < p.arity(); ++i) args.push_back(index.at(p.arg(i).id()));
      node["args"] = std::move(args);
    }
    if (p.kind() == DKind::scalar_mul) node["coeff"] = rational_to_string(p.coefficient());
    index.emplace(p.id(), nodes.size());
    nodes.push_back(std::move(node));
  }
  Json r = Json::array();
  for (const auto& p : roots) r.push_back(index.at(p.id()));
  return {{"nodes", nodes}, {"roots", r}};
}

std::vector<DPoly> dpoly_dag_from_json(const Json& j) {
  return guarded("dpoly dag", [&] {
    std::vector<DPoly> built;
    for (const auto& node : j.at("nodes")) {
      const auto op = node.at("op").get<std::string>();
      std::vector<DPoly> args;
      if (node.contains("args")) {
        for (const auto& a : node["args"]) {
          const auto k = a.get<std::size_t>();
          if (k >= built.size()) throw ParseError("dpoly node refers forward");
          args.push_back(built[k]);
        }
      }
      auto need = [&](std::size_t count) {
        if (args.size() != count) throw ParseError("dpoly node \"" + op + "\" has wrong arity");
      };
      if (op == "x") {
        need(0);
        built.push_back(DPoly::x());
      } else if (op == "I") {
        need(0);
        built.push_back(DPoly::bullet_one());
      } else if (op == "J") {
        need(0);
        built.push_back(DPoly::circ_one());
      } else if (op == "scalar") {
        need(1);
        built.push_back(DPoly::scalar(rational_from_string(node.at("coeff").get<std::string>()), args[0]));
      } else if (op == "sum") {
        built.push_back(DPoly::sum(args));
      } else if (op == "bullet") {
        need(2);
        built.push_back(DPoly::bullet(args[0], args[1]));
      } else if (op == "circ") {
        need(2);
        built.push_back(DPoly::circ(args[0], args[1]));
      } else {
        throw ParseError("unknown dpoly op \"" + op + "\"");
      }
    }
    std::vector<DPoly> roots;
    for (const auto& r : j.at("roots")) roots.push_back(built.at(r.get<std::size_t>()));
    return roots;
  });
}

Json idempotent_basis_to_json(const IdempotentBasis& b) {
  std::vector<DPoly> polys;
  for (const auto& e : b.entries) polys.push_back(e.poly.value_or(DPoly::zero()));
  Json entries = Json::array();
  for (const auto& e : b.entries) {
    Json vals = Json::array();
    for (const auto& v : e.values) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < b.n; ++i) rows.push_back(bits_row(v, i));
      vals.push_back(std::move(rows));
    }
    entries.push_back({{"values", std::move(vals)}});
  }
  Json lambdas = Json::array();
  for (const auto& l : b.lambdas) lambdas.push_back(rational_to_string(l));
  Json out{{"n", b.n},
           {"members", b.members},
           {"c_size", b.c_size},
           {"lambdas", lambdas},
           {"polys", dpoly_dag_to_json(polys)},
           {"entries", entries}};
  if (b.involution_pairing) out["involution_pairing"] = *b.involution_pairing;
  return out;
}

IdempotentBasis idempotent_basis_from_json(const Json& j) {
  return guarded("idempotent basis", [&] {
    IdempotentBasis b;
    b.n = j.at("n").get<std::size_t>();
    b.members = j.at("members").get<std::size_t>();
    b.c_size = j.at("c_size").get<std::size_t>();
    for (const auto& l : j.at("lambdas")) b.lambdas.push_back(rational_from_string(l.get<std::string>()));
    const auto polys = dpoly_dag_from_json(j.at("polys"));
    const auto& entries = j.at("entries");
    if (polys.size() != entries.size()) throw ParseError("entry and polynomial counts differ");
    for (std::size_t e = 0; e < entries.size(); ++e) {
      IdempotentEntry entry{polys[e], {}};
      const auto& vals = entries[e].at("values");
      if (vals.size() != b.members) throw ParseError("wrong number of member values");
      for (const auto& rows : vals) {
        BitMatrix v(b.n);
        if (rows.size() != b.n) throw ParseError("value has the wrong size");
        for (std::size_t i = 0; i < b.n; ++i) {
          const auto row = rows[i].get<std::string>();
          if (row.size() != b.n) throw ParseError("value row has the wrong length");
          for (std::size_t k = 0; k < b.n; ++k) {
            if (row[k] != '0' && row[k] != '1') throw ParseError("value rows must be 0/1");
            if (row[k] == '1') v.set(i, k);
          }
        }
        entry.values.push_back(std::move(v));
      }
      b.entries.push_back(std::move(entry));
    }
    if (j.contains("involution_pairing")) {
      auto pairing = j["involution_pairing"].get<std::vector<std::size_t>>();
      if (pairing.size() != b.entries.size()) throw ParseError("pairing has the wrong size");
      for (auto k : pairing) {
        if (k >= pairing.size()) throw ParseError("pairing index out of range");
      }
      b.involution_pairing = std::move(pairing);
    }
    return b;
  });
}

std::string family_fingerprint(const std::vector<Graph>& family) {
  std::vector<std::string> codes;
  for (const auto& g : family) codes.push_back(graph6_emit(g));
  std::sort(codes.begin(), codes.end());
  std::string text;
  for (const auto& c : codes) text += c + "\n";
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr)) {
    throw Error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

DSBundle make_bundle(const std::vector<Graph>& family, DSPipeline pipeline) {
  DSBundle b;
  b.n = family.empty() ? 0 : family.front().n();
  for (const auto& g : family) b.family.push_back(graph6_emit(g));
  std::sort(b.family.begin(), b.family.end());
  b.fingerprint = family_fingerprint(family);
  b.pipeline = std::move(pipeline);
  return b;
}

Json bundle_to_json(const DSBundle& b) {
  Json w = Json::array();
  for (const auto& a : b.pipeline.weights) w.push_back(to_string(a));
  return {{"format", "natspec-ds-bundle/1"},
          {"version", version_string()},
          {"n", b.n},
          {"family", b.family},
          {"fingerprint", b.fingerprint},
          {"p", print_dpoly_shared(b.pipeline.p)},
          {"d", dpoly_dag_to_json(b.pipeline.d)},
          {"weights", w},
          {"c_count", b.pipeline.c_count},
          {"basis", idempotent_basis_to_json(b.pipeline.basis)}};
}

DSBundle bundle_from_json(const Json& j) {
  return guarded("bundle", [&] {
    if (j.at("format") != "natspec-ds-bundle/1") throw ParseError("not a natspec ds bundle");
    DSBundle b;
    b.n = j.at("n").get<std::size_t>();
    b.family = j.at("family").get<std::vector<std::string>>();
    b.fingerprint = j.at("fingerprint").get<std::string>();
    std::vector<Graph> family;
    for (const auto& s : b.family) family.push_back(graph6_parse(s));
    if (family_fingerprint(family) != b.fingerprint) throw ParseError("bundle fingerprint mismatch");
    b.pipeline.p = parse_dpoly(j.at("p").get<std::string>());
    b.pipeline.d = dpoly_dag_from_json(j.at("d"));
    for (const auto& a : j.at("weights")) b.pipeline.weights.push_back(integer_from_string(a.get<std::string>()));
    b.pipeline.c_count = j.at("c_count").get<std::size_t>();
    b.pipeline.basis = idempotent_basis_from_json(j.at("basis"));
    return b;
  });
}

}  // namespace natspec
