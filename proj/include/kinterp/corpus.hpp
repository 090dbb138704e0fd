#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kinterp/kfunctional.hpp"

namespace kinterp {

// A decreasing rearrangement that can be rebuilt on any grid.
struct NamedRearrangement {
  std::string id;
  std::string family;  // power, log-power, step, random-concave
  std::function<StepRearrangement(const LogGrid&)> make;
};

struct NamedSequence {
  std::string id;
  SequenceData a;
};

// Concave members of t^g (1 - ln t)^d, clipped to the plateau at t = 1.
std::vector<NamedProfile> conv0_canonical();
// Piecewise-linear profiles with random breakpoints in [1e-8, 1] and sorted
// random slopes; concave by construction.
std::vector<NamedProfile> conv0_random(std::size_t n, std::uint64_t seed);
std::vector<NamedProfile> conv0_corpus(std::size_t n_random, std::uint64_t seed);
// min(2^j t, 1) for j = 1..jmax
std::vector<NamedProfile> steep_family(int jmax);

// t^g (1 - ln t)^d for g in {0, 1/2, 1}, d in {-2..2}, plus sampled random
// profiles; the corpus for operator-norm estimates.
std::vector<SampledFunction> lattice_corpus(const LogGrid& g, std::size_t n_random, std::uint64_t seed);

// Powers s^-b with b < max_power, log-powers, steps and rearrangements of
// random concave profiles.
std::vector<NamedRearrangement> rearrangement_corpus(double max_power, std::size_t n_random, std::uint64_t seed);

std::vector<NamedSequence> sequence_corpus(std::size_t n_random, std::uint64_t seed);

// At most 8 atoms with at most 16 density steps each.
std::vector<VectorValuedInstance> pisier_corpus(std::size_t n, std::uint64_t seed);

struct CorpusSpec {
  std::uint64_t seed = 7;
  std::vector<std::string> families{"power", "log-power", "step", "random-concave", "sequence", "operator"};
  std::size_t count = 100;  // random members per family
  int ppo = 64;
  double t_min = 1e-12;
};

// Writes one CSV per family into dir and returns the file names. Profiles
// are validated before they are written.
std::vector<std::string> gen_corpus(const CorpusSpec& spec, const std::string& dir);

}  // namespace kinterp
