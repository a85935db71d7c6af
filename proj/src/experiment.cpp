#include "natspec/experiment.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "natspec/closure.hpp"
#include "natspec/error.hpp"
#include "natspec/graphlab.hpp"
#include "natspec/parallel.hpp"
#include "natspec/rng.hpp"

namespace natspec {

namespace {

std::string rate(std::size_t num, std::size_t den) {
  Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return rational_to_string(q);
}

Json header(const ExperimentConfig& cfg) {
  Json j;
  j["version"] = version_string();
  j["mode"] = to_string(cfg.mode);
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["seed"] = std::to_string(cfg.seed);
  return j;
}

Json run_bes(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw DomainError("bes_frequency needs n >= 2");
  struct Slot {
    bool pass = false, degrees = false, signatures = false;
  };
  std::vector<Slot> slots(cfg.trials);
  std::size_t r_paper = 0, r = 0;
  {
    const BesReport probe = bes_statistics(random_gnp_half(cfg.n, derive_seed(cfg.seed, 0)));
    r_paper = probe.r_paper;
    r = probe.r;
  }
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const BesReport rep = bes_statistics(random_gnp_half(cfg.n, derive_seed(cfg.seed, t)));
    slots[t] = {rep.passes(), rep.top_degrees_distinct, rep.signatures_distinct};
  });
  std::size_t pass = 0, deg = 0, sig = 0;
  for (const Slot& s : slots) {
    pass += s.pass;
    deg += s.degrees;
    sig += s.signatures;
  }
  Json j;
  j["bes_pass_rate"] = rate(pass, cfg.trials);
  j["passes"] = pass;
  j["top_degrees_distinct_rate"] = rate(deg, cfg.trials);
  j["signatures_distinct_rate"] = rate(sig, cfg.trials);
  j["r_paper"] = r_paper;
  j["r"] = r;
  return j;
}

struct CertSlot {
  bool bes = false;
  bool certified = false;
  bool full = false;
  bool spans = false;
};

CertSlot certify_one(const Graph& g) {
  CertSlot s;
  s.bes = bes_statistics(g).passes();
  const CertificateResult res = bes_certificate(g);
  if (!res.ok()) return s;
  s.certified = true;
  s.full = is_full(g.adjacency());
  s.spans = certificate_spans_full(*res.certificate);
  return s;
}

Json run_certify(const ExperimentConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 16) throw DomainError("certify_and_confirm needs 2 <= n <= 16");
  std::vector<CertSlot> slots(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    slots[t] = certify_one(random_gnp_half(cfg.n, derive_seed(cfg.seed, t)));
  });
  std::size_t bes = 0, cert = 0, full = 0, spans = 0;
  Json counter = Json::array();
  for (std::size_t t = 0; t < slots.size(); ++t) {
    const CertSlot& s = slots[t];
    bes += s.bes;
    cert += s.certified;
    full += s.certified && s.full;
    spans += s.certified && s.spans;
    if (s.certified && (!s.full || !s.spans)) {
      counter.push_back(
          {{"trial", t}, {"graph6", graph6_emit(random_gnp_half(cfg.n, derive_seed(cfg.seed, t)))}});
    }
  }
  Json j;
  j["certified"] = cert;
  j["certified_rate"] = rate(cert, cfg.trials);
  j["full_dim_confirmed"] = full;
  j["spans_full"] = spans;
  j["counterexamples"] = counter;
  j["bes_pass_rate"] = rate(bes, cfg.trials);
  return j;
}

Json run_ds_family(const ExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 6) throw DomainError("ds_family needs 1 <= n <= 6");
  const std::vector<Graph> family = enumerate_graphs(cfg.n);
  const DSPipeline pipe = build_ds_dpoly(family, {.threads = cfg.threads});
  const std::vector<Spectrum> spectra = family_spectra(pipe.p, family, cfg.threads);

  std::vector<char> full(family.size(), 0);
  parallel_for(family.size(), cfg.threads,
               [&](std::size_t i) { full[i] = is_full(family[i].adjacency()); });

  std::set<std::vector<std::string>> distinct;
  for (const Spectrum& s : spectra) {
    std::vector<std::string> key;
    for (const Rational& c : s.coeffs) key.push_back(rational_to_string(c));
    distinct.insert(std::move(key));
  }
  std::size_t full_members = 0, full_pairs = 0, separated = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!full[i]) continue;
    ++full_members;
    for (std::size_t k = i + 1; k < family.size(); ++k) {
      if (!full[k]) continue;
      ++full_pairs;
      separated += !(spectra[i] == spectra[k]);
    }
  }

  const std::size_t checks = family.size() * cfg.trials;
  std::vector<char> mismatch(checks, 0);
  parallel_for(checks, cfg.threads, [&](std::size_t idx) {
    const std::size_t g = idx / cfg.trials;
    auto rng = make_engine(cfg.seed, idx);
    const auto perm = random_permutation(cfg.n, rng);
    mismatch[idx] = !(natural_spectrum(pipe.p, family[g].relabeled(perm)) == spectra[g]);
  });

  Json j;
  j["family_size"] = family.size();
  j["full_members"] = full_members;
  j["c_count"] = pipe.c_count;
  j["d_size"] = pipe.d.size();
  j["distinct_spectra"] = distinct.size();
  j["full_pairs"] = full_pairs;
  j["separated_full_pairs"] = separated;
  j["relabel_checks"] = checks;
  j["relabel_mismatches"] = static_cast<std::size_t>(std::count(mismatch.begin(), mismatch.end(), 1));
  j["fingerprint"] = family_fingerprint(family);
  return j;
}

}  // namespace

std::string to_string(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::bes_frequency: return "bes_frequency";
    case ExperimentMode::certify_and_confirm: return "certify_and_confirm";
    case ExperimentMode::ds_family: return "ds_family";
  }
  return "?";
}

ExperimentMode parse_experiment_mode(const std::string& name) {
  for (auto m : {ExperimentMode::bes_frequency, ExperimentMode::certify_and_confirm,
                 ExperimentMode::ds_family}) {
    if (name == to_string(m)) return m;
  }
  throw DomainError("unknown experiment mode: " + name);
}

Json run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw DomainError("trials must be positive");
  Json result;
  switch (cfg.mode) {
    case ExperimentMode::bes_frequency: result = run_bes(cfg); break;
    case ExperimentMode::certify_and_confirm: result = run_certify(cfg); break;
    case ExperimentMode::ds_family: result = run_ds_family(cfg); break;
  }
  Json report = header(cfg);
  report.update(result);
  return report;
}

CertifyScan certify_scan(std::uint64_t seed, std::size_t n_min, std::size_t n_max,
                         std::size_t target, std::size_t max_trials, unsigned threads) {
  if (n_min < 2 || n_max > 16 || n_min > n_max) throw DomainError("certify_scan needs 2 <= n_min <= n_max <= 16");
  const std::size_t span = n_max - n_min + 1;
  CertifyScan out;
  out.certified_by_n.assign(span, 0);
  // Batches keep the stopping point independent of the thread count.
  const std::size_t batch = 256;
  while (out.certified < target && out.trials < max_trials) {
    const std::size_t base = out.trials;
    const std::size_t count = std::min(batch, max_trials - base);
    std::vector<CertSlot> slots(count);
    parallel_for(count, threads, [&](std::size_t i) {
      const std::size_t t = base + i;
      slots[i] = certify_one(random_gnp_half(n_min + t % span, derive_seed(seed, t)));
    });
    for (std::size_t i = 0; i < count && out.certified < target; ++i) {
      const std::size_t t = base + i;
      ++out.trials;
      const CertSlot& s = slots[i];
      if (!s.certified) continue;
      ++out.certified;
      ++out.certified_by_n[t % span];
      out.confirmed += s.full;
      out.spans_full += s.spans;
      if (!s.full || !s.spans) out.counterexamples.push_back(t);
    }
  }
  return out;
}

}  // namespace natspec
