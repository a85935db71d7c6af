#pragma once

// Seeded Monte-Carlo and exhaustive-family experiments. Trial i always uses
// derive_seed(seed, i), so reports do not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "natspec/serialize.hpp"

namespace natspec {

enum class ExperimentMode { bes_frequency, certify_and_confirm, ds_family };

std::string to_string(ExperimentMode m);
// Throws DomainError for an unknown name.
ExperimentMode parse_experiment_mode(const std::string& name);

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::bes_frequency;
  std::size_t n = 0;
  std::size_t trials = 0;  // ds_family: relabelings per graph
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

// Report: version, mode, n, trials, seed, then the mode's fields.
// bes_frequency: share of G(n, 1/2) samples meeting the degree and signature
//   conditions (n >= 2).
// certify_and_confirm: certificate on each sample, every certified sample
//   checked full-dimensional by closure (2 <= n <= 16).
// ds_family: DS pipeline on all graphs of order n (1 <= n <= 6), pairwise
//   separation and relabeling invariance.
// Throws DomainError for trials == 0 or n out of range.
Json run_experiment(const ExperimentConfig& cfg);

struct CertifyScan {
  std::size_t trials = 0;
  std::size_t certified = 0;
  std::size_t confirmed = 0;   // certified and is_full
  std::size_t spans_full = 0;  // certified and span{b_s J b_t} = M_n
  std::vector<std::size_t> counterexamples;  // trial indices
  std::vector<std::size_t> certified_by_n;   // index n - n_min
};

// Trial t samples n = n_min + t mod (n_max - n_min + 1) with
// derive_seed(seed, t); stops after `target` certified samples or
// `max_trials` trials.
CertifyScan certify_scan(std::uint64_t seed, std::size_t n_min, std::size_t n_max,
                         std::size_t target, std::size_t max_trials, unsigned threads = 0);

}  // namespace natspec
