#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pol/core.hpp"
#include "pol/dims.hpp"
#include "pol/games.hpp"
#include "pol/rational.hpp"

namespace pol {

/// Round indices are 1-based, sorted, at most L of them.
using MistakeSet = std::vector<int>;

/// All subsets of {1..T} with at most `l` elements, by size then
/// lexicographically. Throws CapExceeded past `cap` sets.
std::vector<MistakeSet> mistake_sets(int horizon, int l, std::size_t cap = 100'000);
std::size_t mistake_set_count(int horizon, int l);

/// Labels g_I(x_1), g_I(x_{1:2}), ...: SOA on a version space that is
/// flipped against SOA's own prediction at the rounds in I, when the flip
/// leaves it non-empty.
std::vector<int> expert_trace(LittlestoneCache& cache, const MistakeSet& mistakes, std::span<const int> xs);
/// g_I on the prefix `xs`, i.e. the last element of expert_trace.
int expert_g(const ConceptClass& c, const MistakeSet& mistakes, std::span<const int> xs);

/// The rounds where SOA, updating only when wrong, errs on h's labels.
MistakeSet mistake_set_of(LittlestoneCache& cache, const Concept& h, std::span<const int> xs);

/// True iff every concept's labels on `xs` equal some expert's trace.
bool expert_coverage_holds(const ConceptClass& c, std::span<const int> xs);

/// A vote within eps of the measure's mean label at every instance,
/// starting from ceil(8 vc* / eps^2) members and doubling as needed.
MeasureApproxResult sparsify_final(const ConceptClass& c, std::span<const double> mixture, double eps,
                                   std::uint64_t seed, const SparsifyOptions& options = {});

struct AgnosticOptions {
  std::uint64_t seed = 0;
  std::size_t max_experts = 100'000;
  SparsifyOptions sparsify;
  /// Number of whole-run draws for the sampling check; 0 skips it.
  int monte_carlo_draws = 0;
};

struct AgnosticRound {
  std::size_t t = 0;
  int x = 0;
  int y = 0;
  std::size_t vote_size = 0;
  double prediction = 0;
  double mixture = 0;
  double abs_loss = 0;
  double cum_regret_vs_best = 0;
  double deviation = 0;
};

struct MonteCarloCheck {
  int draws = 0;
  double mean = 0;
  double standard_error = 0;
  double expected = 0;
  bool ok = false;
};

struct AgnosticReport {
  std::vector<AgnosticRound> rounds;
  int horizon = 0;
  int ldim = 0;
  int dual_vcdim = 0;
  std::size_t experts = 0;
  double eta = 0;
  double eps = 0;
  /// The eps the sub-learners and sparsifier actually use.
  Rational eps_used;
  /// T < 10 L: the bound T is trivially met; the run is still performed.
  bool trivial_regime = false;
  double trivial_bound = 0;

  double learner_loss = 0;
  double mixture_loss = 0;
  int best_concept_loss = 0;
  double best_expert_loss = 0;
  double regret = 0;
  double aggregator_regret = 0;
  double experts_bound = 0;
  double composite_bound = 0;
  int frozen_experts = 0;
  std::size_t max_vote_size = 0;
  /// max vote size / (vc* T / (L log(T / L))).
  double vote_size_constant = 0;
  int max_doublings = 0;

  bool experts_bound_ok = true;
  bool composite_ok = true;
  bool chain_ok = true;
  std::string first_failure;
  std::optional<MonteCarloCheck> monte_carlo;

  bool ok() const { return experts_bound_ok && composite_ok && chain_ok && (!monte_carlo || monte_carlo->ok); }
  static std::string csv_header();
  std::string csv_rows() const;
};

AgnosticReport agnostic_run(const ConceptClass& c, std::span<const LabeledExample> stream,
                            const AgnosticOptions& options = {});

}  // namespace pol
