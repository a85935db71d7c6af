// natspec command-line tool. Exit codes: 0 success, 1 domain failure,
// 2 graph or file input error, 3 polynomial parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "natspec/closure.hpp"
#include "natspec/dpoly.hpp"
#include "natspec/error.hpp"
#include "natspec/experiment.hpp"
#include "natspec/graph.hpp"
#include "natspec/graphlab.hpp"
#include "natspec/serialize.hpp"
#include "natspec/specpipe.hpp"

namespace {

using natspec::Graph;
using natspec::Json;

enum Exit { ok = 0, domain = 1, input = 2, poly_input = 3 };

struct CliFailure {
  int code;
  std::string message;
};

Graph parse_graph(const std::string& text) {
  try {
    return natspec::graph6_parse(text);
  } catch (const natspec::Error& e) {
    throw CliFailure{input, "graph6 \"" + text + "\": " + e.what()};
  }
}

natspec::DPoly parse_poly(const std::string& text) {
  try {
    return natspec::parse_dpoly(text);
  } catch (const natspec::ParseError& e) {
    throw CliFailure{poly_input, std::string("polynomial: ") + e.what()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{input, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Graph> read_corpus(const std::string& path) {
  try {
    return natspec::read_graph6_corpus(read_file(path));
  } catch (const natspec::ParseError& e) {
    throw CliFailure{input, path + ": " + e.what()};
  }
}

natspec::DSBundle read_bundle(const std::string& path) {
  try {
    return natspec::bundle_from_json(Json::parse(read_file(path)));
  } catch (const Json::exception& e) {
    throw CliFailure{input, path + ": " + e.what()};
  } catch (const natspec::ParseError& e) {
    throw CliFailure{input, path + ": " + e.what()};
  }
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw CliFailure{input, "cannot write " + out};
  f << text;
}

Json base_report(const std::string& command) {
  Json j;
  j["version"] = natspec::version_string();
  j["command"] = command;
  return j;
}

Json srg_json(const Graph& g) {
  const auto srg = natspec::srg_parameters(g);
  if (!srg) return nullptr;
  return {{"n", srg->n}, {"k", srg->k}, {"lambda", srg->lambda}, {"mu", srg->mu}};
}

Json drg_json(const Graph& g) {
  const auto ia = natspec::intersection_array(g);
  if (!ia) return nullptr;
  return {{"b", ia->b}, {"c", ia->c}};
}

int cmd_analyze(const std::string& g6, const std::string& out) {
  const Graph g = parse_graph(g6);
  Json j = base_report("analyze");
  j["graph6"] = natspec::graph6_emit(g);
  j["n"] = g.n();
  const auto sub = natspec::generated_double_algebra(g.adjacency());
  j["dim"] = sub.dim();
  j["full"] = sub.dim() == g.n() * g.n();
  j["connected"] = g.connected();
  if (g.connected()) {
    const auto rep = natspec::dimension_bounds_report(g);
    j["diam"] = rep.diam;
    j["lower_bound_ok"] = rep.lower_ok;
    j["lower_bound_tight"] = rep.lower_tight;
    j["upper_bound_tight"] = rep.upper_tight;
  }
  const auto rec = natspec::reconstruct(g);
  j["reconstruct"] = rec.ok ? std::string("ok") : "failed |V_a|=" + std::to_string(rec.va);
  j["va"] = rec.va;
  j["srg"] = srg_json(g);
  j["intersection_array"] = drg_json(g);
  if (g.n() >= 2) {
    const auto cert = natspec::bes_certificate(g);
    j["bes_certified"] = cert.ok();
  }
  emit(j, out);
  return ok;
}

int cmd_reconstruct(const std::string& g6, const std::string& out) {
  const Graph g = parse_graph(g6);
  const auto rec = natspec::reconstruct(g);
  Json j = base_report("reconstruct");
  j["graph6"] = natspec::graph6_emit(g);
  j["ok"] = rec.ok;
  j["va"] = rec.va;
  if (rec.ok) {
    j["reconstructed"] = natspec::graph6_emit(rec.graph);
    j["vertex_map"] = rec.vertex_map;
  } else {
    j["reason"] = rec.reason;
  }
  emit(j, out);
  return rec.ok ? ok : domain;
}

int cmd_spectrum(const std::string& g6, const std::string& poly, const std::string& out) {
  const Graph g = parse_graph(g6);
  const natspec::DPoly p = parse_poly(poly);
  Json j = base_report("spectrum");
  j["graph6"] = natspec::graph6_emit(g);
  j["poly"] = natspec::print_dpoly(p);
  j["spectrum"] = natspec::spectrum_to_json(natspec::natural_spectrum(p, g));
  emit(j, out);
  return ok;
}

int cmd_ds_build(const std::string& corpus, std::size_t n, unsigned threads, const std::string& out) {
  if (corpus.empty() == (n == 0)) throw CliFailure{input, "give exactly one of --corpus or --n"};
  const std::vector<Graph> family = corpus.empty() ? natspec::enumerate_graphs(n) : read_corpus(corpus);
  if (family.empty()) throw CliFailure{input, "empty corpus"};
  const auto bundle = natspec::make_bundle(family, natspec::build_ds_dpoly(family, {.threads = threads}));
  Json j = natspec::bundle_to_json(bundle);
  emit(j, out);
  if (!out.empty()) {
    Json s = base_report("ds-build");
    s["out"] = out;
    s["n"] = bundle.n;
    s["family_size"] = bundle.family.size();
    s["d_size"] = bundle.pipeline.d.size();
    s["fingerprint"] = bundle.fingerprint;
    std::cout << s.dump(2) << "\n";
  }
  return ok;
}

void check_order(const natspec::DSBundle& b, const Graph& g) {
  if (g.n() != b.n) {
    throw natspec::DomainError("graph has " + std::to_string(g.n()) + " vertices, bundle family has " +
                               std::to_string(b.n));
  }
}

void check_fingerprint(const natspec::DSBundle& b, const std::string& expected) {
  if (!expected.empty() && expected != b.fingerprint) {
    throw natspec::DomainError("fingerprint mismatch: bundle " + b.fingerprint + ", expected " + expected);
  }
}

// For n <= 8 the graph must be isomorphic to a family member; the pipeline
// says nothing about graphs outside its family.
void check_member(const natspec::DSBundle& b, const Graph& g) {
  if (b.n > 8) return;
  std::set<std::uint64_t> codes;
  for (const auto& s : b.family) codes.insert(natspec::canonical_code(natspec::graph6_parse(s)));
  if (!codes.count(natspec::canonical_code(g))) {
    throw natspec::DomainError("graph " + natspec::graph6_emit(g) + " is not in the family of bundle " +
                               b.fingerprint);
  }
}

int cmd_ds_spectrum(const std::string& bundle_path, const std::string& g6, const std::string& fp,
                    const std::string& out) {
  const auto b = read_bundle(bundle_path);
  const Graph g = parse_graph(g6);
  check_fingerprint(b, fp);
  check_order(b, g);
  check_member(b, g);
  Json j = base_report("ds-spectrum");
  j["fingerprint"] = b.fingerprint;
  j["graph6"] = natspec::graph6_emit(g);
  j["spectrum"] = natspec::spectrum_to_json(natspec::natural_spectrum(b.pipeline.p, g));
  emit(j, out);
  return ok;
}

std::string iso_name(natspec::IsoVerdict v) {
  switch (v) {
    case natspec::IsoVerdict::isomorphic: return "isomorphic";
    case natspec::IsoVerdict::non_isomorphic: return "non_isomorphic";
    case natspec::IsoVerdict::unknown: return "unknown";
  }
  return "unknown";
}

int cmd_ds_check(const std::string& bundle_path, const std::string& g1s, const std::string& g2s,
                 const std::string& fp, const std::string& out) {
  const auto b = read_bundle(bundle_path);
  const Graph g1 = parse_graph(g1s);
  const Graph g2 = parse_graph(g2s);
  check_fingerprint(b, fp);
  check_order(b, g1);
  check_order(b, g2);
  check_member(b, g1);
  check_member(b, g2);

  const auto verdict = natspec::ds_compare(g1, g2, b.pipeline.p);
  const bool equal = verdict == natspec::DSVerdict::equal_spectrum;
  Json j = base_report("ds-check");
  j["fingerprint"] = b.fingerprint;
  j["graph6"] = {natspec::graph6_emit(g1), natspec::graph6_emit(g2)};
  j["verdict"] = equal ? "equal_spectrum" : "different_spectrum";
  const bool full1 = natspec::is_full(g1.adjacency());
  const bool full2 = natspec::is_full(g2.adjacency());
  j["full"] = {full1, full2};
  bool consistent = true;
  if (b.n <= 8) {
    const auto iso = natspec::are_isomorphic(g1, g2);
    j["isomorphism"] = iso_name(iso);
    // Isomorphic graphs always share the spectrum; for full members the
    // converse is the separation claim.
    if (iso == natspec::IsoVerdict::isomorphic && !equal) consistent = false;
    if (iso == natspec::IsoVerdict::non_isomorphic && equal && full1 && full2) consistent = false;
    j["consistent"] = consistent;
  }
  emit(j, out);
  return consistent ? ok : domain;
}

int cmd_experiment(const std::string& mode, std::size_t n, std::size_t trials, std::uint64_t seed,
                   unsigned threads, const std::string& out) {
  natspec::ExperimentConfig cfg;
  try {
    cfg.mode = natspec::parse_experiment_mode(mode);
  } catch (const natspec::DomainError& e) {
    throw CliFailure{input, e.what()};
  }
  if (trials == 0) throw CliFailure{input, "--trials must be at least 1"};
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.threads = threads;
  emit(natspec::run_experiment(cfg), out);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-algebra graph tools: closures, natural spectra, reconstruction, experiments"};
  app.set_version_flag("--version", natspec::version_string());
  app.require_subcommand(1);

  std::string out, g6, g6b, poly, corpus, bundle, fingerprint, mode = "bes_frequency";
  std::size_t n = 0, trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  auto add_out = [&](CLI::App* c) { c->add_option("--out", out, "Write the JSON report here instead of stdout"); };
  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", threads, "Worker threads (default: NATSPEC_THREADS, else all cores)");
  };

  auto* analyze = app.add_subcommand("analyze", "Closure dimension, bounds, reconstruction, SRG/DRG data");
  analyze->add_option("graph6", g6)->required();
  add_out(analyze);

  auto* recon = app.add_subcommand("reconstruct", "Rebuild a graph from its double algebra");
  recon->add_option("graph6", g6)->required();
  add_out(recon);

  auto* spectrum = app.add_subcommand("spectrum", "Characteristic polynomial of p(A_G)");
  spectrum->add_option("graph6", g6)->required();
  spectrum->add_option("--poly", poly, "Double polynomial text")->required();
  add_out(spectrum);

  auto* build = app.add_subcommand("ds-build", "Build the separating polynomial for a family");
  build->add_option("--corpus", corpus, "graph6 corpus, one graph per line");
  build->add_option("--n", n, "Use every graph on n <= 6 vertices");
  add_out(build);
  add_threads(build);

  auto* dspec = app.add_subcommand("ds-spectrum", "Spectrum of a graph under a bundle");
  dspec->add_option("bundle", bundle)->required();
  dspec->add_option("graph6", g6)->required();
  dspec->add_option("--fingerprint", fingerprint, "Expected family fingerprint");
  add_out(dspec);

  auto* check = app.add_subcommand("ds-check", "Compare two graphs under a bundle");
  check->add_option("bundle", bundle)->required();
  check->add_option("graph6_1", g6)->required();
  check->add_option("graph6_2", g6b)->required();
  check->add_option("--fingerprint", fingerprint, "Expected family fingerprint");
  add_out(check);

  auto* exp = app.add_subcommand("experiment", "Seeded random-graph and family experiments");
  exp->add_option("--mode", mode, "bes_frequency | certify_and_confirm | ds_family");
  exp->add_option("--n", n)->required();
  exp->add_option("--trials", trials);
  exp->add_option("--seed", seed);
  add_out(exp);
  add_threads(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : input;
  }

  try {
    if (*analyze) return cmd_analyze(g6, out);
    if (*recon) return cmd_reconstruct(g6, out);
    if (*spectrum) return cmd_spectrum(g6, poly, out);
    if (*build) return cmd_ds_build(corpus, n, threads, out);
    if (*dspec) return cmd_ds_spectrum(bundle, g6, fingerprint, out);
    if (*check) return cmd_ds_check(bundle, g6, g6b, fingerprint, out);
    if (*exp) return cmd_experiment(mode, n, trials, seed, threads, out);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const natspec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input;
  } catch (const natspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return domain;
  }
  return ok;
}
