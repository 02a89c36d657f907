#include "pol/agnostic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "pol/errors.hpp"
#include "pol/learner_vote.hpp"
#include "pol/soa.hpp"

namespace pol {

std::size_t mistake_set_count(int horizon, int l) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (int j = 0; j <= std::min(l, horizon); ++j) {
    total += binom;
    binom = binom * static_cast<std::size_t>(horizon - j) / static_cast<std::size_t>(j + 1);
  }
  return total;
}

std::vector<MistakeSet> mistake_sets(int horizon, int l, std::size_t cap) {
  if (horizon < 0 || l < 0) throw InvalidInput("horizon and L must be nonnegative");
  const std::size_t count = mistake_set_count(horizon, l);
  if (count > cap)
    throw CapExceeded(std::to_string(count) + " mistake sets exceed the expert cap of " + std::to_string(cap));
  std::vector<MistakeSet> out;
  out.reserve(count);
  MistakeSet current;
  std::function<void(int, int)> pick = [&](int start, int remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int t = start; t <= horizon - remaining + 1; ++t) {
      current.push_back(t);
      pick(t + 1, remaining - 1);
      current.pop_back();
    }
  };
  for (int size = 0; size <= std::min(l, horizon); ++size) pick(1, size);
  return out;
}

std::vector<int> expert_trace(LittlestoneCache& cache, const MistakeSet& mistakes, std::span<const int> xs) {
  const ConceptClass& c = cache.concept_class();
  IndexSet space = c.all();
  std::vector<int> out;
  out.reserve(xs.size());
  std::size_t next = 0;
  for (std::size_t t = 1; t <= xs.size(); ++t) {
    const int x = xs[t - 1];
    const int guess = soa_predict(cache, space, x);
    while (next < mistakes.size() && static_cast<std::size_t>(mistakes[next]) < t) ++next;
    if (next < mistakes.size() && static_cast<std::size_t>(mistakes[next]) == t) {
      IndexSet flipped = space & c.agreeing(x, 1 - guess);
      if (!flipped.empty()) space = std::move(flipped);
    }
    out.push_back(soa_predict(cache, space, x));
  }
  return out;
}

int expert_g(const ConceptClass& c, const MistakeSet& mistakes, std::span<const int> xs) {
  if (xs.empty()) throw InvalidInput("g_I needs a non-empty prefix");
  LittlestoneCache cache(c);
  return expert_trace(cache, mistakes, xs).back();
}

MistakeSet mistake_set_of(LittlestoneCache& cache, const Concept& h, std::span<const int> xs) {
  const ConceptClass& c = cache.concept_class();
  IndexSet space = c.all();
  MistakeSet out;
  for (std::size_t t = 1; t <= xs.size(); ++t) {
    const int x = xs[t - 1];
    if (soa_predict(cache, space, x) != h(x)) {
      out.push_back(static_cast<int>(t));
      space &= c.agreeing(x, h(x));
    }
  }
  return out;
}

bool expert_coverage_holds(const ConceptClass& c, std::span<const int> xs) {
  LittlestoneCache cache(c);
  const int l = cache.root();
  std::vector<std::vector<int>> traces;
  for (const auto& set : mistake_sets(static_cast<int>(xs.size()), std::max(l, 0)))
    traces.push_back(expert_trace(cache, set, xs));
  for (const auto& h : c.concepts()) {
    std::vector<int> labels;
    for (int x : xs) labels.push_back(h(x));
    if (std::find(traces.begin(), traces.end(), labels) == traces.end()) return false;
  }
  return true;
}

MeasureApproxResult sparsify_final(const ConceptClass& c, std::span<const double> mixture, double eps,
                                   std::uint64_t seed, const SparsifyOptions& options) {
  const int vcstar = std::max(1, dual_vcdim(c));
  const auto initial = static_cast<std::size_t>(std::ceil(8.0 * vcstar / (eps * eps)));
  auto out = approximate_measure(c, mixture, eps, initial, seed, options);
  if (out.max_deviation > eps) throw DefectError("sparsified vote deviates from the mixture by more than eps");
  return out;
}

namespace {

struct Expert {
  MistakeSet mistakes;
  std::vector<int> labels;
  std::unique_ptr<VoteLearner> learner;
  std::optional<VoteHypothesis> frozen;
  double cum_loss = 0;
};

Rational eps_for_learners(double eps) {
  if (!(eps > 0)) return Rational(1, 4);
  if (eps >= 1) return Rational(1, 2);
  Rational out(static_cast<long>(std::ceil(eps * 1e6)), 1'000'000);
  out.canonicalize();
  return out >= 1 ? Rational(1, 2) : out;
}

}  // namespace

std::string AgnosticReport::csv_header() { return "round,vote_size,prediction,label,abs_loss,cum_regret_vs_best"; }

std::string AgnosticReport::csv_rows() const {
  std::ostringstream os;
  os.precision(10);
  for (const auto& r : rounds)
    os << r.t + 1 << ',' << r.vote_size << ',' << r.prediction << ',' << r.y << ',' << r.abs_loss << ','
       << r.cum_regret_vs_best << '\n';
  return os.str();
}

AgnosticReport agnostic_run(const ConceptClass& c, std::span<const LabeledExample> stream,
                            const AgnosticOptions& options) {
  if (c.is_empty()) throw InvalidInput("agnostic learner needs a non-empty class");
  if (stream.empty()) throw InvalidInput("agnostic run needs T >= 1");
  for (const auto& e : stream) {
    c.check_instance(e.x);
    if (e.y != 0 && e.y != 1) throw InvalidInput("labels must be 0 or 1");
  }
  const int horizon = static_cast<int>(stream.size());
  LittlestoneCache cache(c);
  AgnosticReport rep;
  rep.horizon = horizon;
  rep.ldim = cache.root();
  rep.dual_vcdim = dual_vcdim(c);
  const int l = rep.ldim;
  const auto sets = mistake_sets(horizon, l, options.max_experts);
  rep.experts = sets.size();
  const double n = static_cast<double>(rep.experts);
  const double t_d = horizon;
  rep.eta = std::sqrt(8.0 / t_d * std::log(n));
  rep.eps = l > 0 ? std::sqrt(l / t_d * std::log(std::exp(1.0) * t_d / l)) : 0.0;
  rep.eps_used = eps_for_learners(rep.eps);
  const double eps = rep.eps_used.get_d();
  rep.trivial_regime = horizon < 10 * l;
  rep.trivial_bound = t_d;
  rep.experts_bound = std::sqrt(t_d / 2.0 * std::log(n));
  const double vote_bound = vote_margin_bound(l, rep.eps_used);
  rep.composite_bound = rep.experts_bound + eps * t_d + vote_bound;

  std::vector<int> xs;
  for (const auto& e : stream) xs.push_back(e.x);

  VoteOptions vote_options;
  vote_options.seed = options.seed;
  vote_options.sparsify = options.sparsify;
  vote_options.cache = std::make_shared<ProposalCache>();
  vote_options.allow_wide_eps = true;
  std::vector<Expert> experts(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    experts[i].mistakes = sets[i];
    experts[i].labels = expert_trace(cache, sets[i], xs);
    experts[i].learner = std::make_unique<VoteLearner>(c, rep.eps_used, vote_options);
  }

  // The best concept over the whole stream and the expert that tracks it.
  std::size_t best_concept = 0;
  {
    int best = std::numeric_limits<int>::max();
    for (std::size_t h = 0; h < c.size(); ++h) {
      int loss = 0;
      for (const auto& e : stream) loss += c[h](e.x) != e.y;
      if (loss < best) {
        best = loss;
        best_concept = h;
      }
    }
    rep.best_concept_loss = best;
  }
  const MistakeSet star_set = mistake_set_of(cache, c[best_concept], xs);
  const auto star_it = std::find(sets.begin(), sets.end(), star_set);
  if (star_it == sets.end()) throw DefectError("best concept's mistake set is missing from the expert family");
  const auto star = static_cast<std::size_t>(star_it - sets.begin());

  auto fail = [&](bool& flag, const std::string& why) {
    if (flag && rep.first_failure.empty()) rep.first_failure = why;
    flag = false;
  };

  std::vector<int> concept_prefix_loss(c.size(), 0);
  std::vector<std::vector<std::size_t>> votes_used;
  std::vector<double> mixture(c.size());
  double deviation_sum = 0;
  double star_gap_sum = 0;
  int star_margin_errors = 0;
  int star_target_loss = 0;
  const double slack = 1e-9;

  for (std::size_t t = 0; t < stream.size(); ++t) {
    const auto [x, y] = stream[t];
    double min_cum = std::numeric_limits<double>::infinity();
    for (const auto& ex : experts) min_cum = std::min(min_cum, ex.cum_loss);
    std::vector<double> weight(experts.size());
    double weight_sum = 0;
    for (std::size_t i = 0; i < experts.size(); ++i) {
      weight[i] = std::exp(-rep.eta * (experts[i].cum_loss - min_cum));
      weight_sum += weight[i];
    }

    std::fill(mixture.begin(), mixture.end(), 0.0);
    double mixture_value = 0;
    std::vector<double> expert_value(experts.size());
    for (std::size_t i = 0; i < experts.size(); ++i) {
      auto& ex = experts[i];
      const VoteHypothesis& vote = ex.frozen ? *ex.frozen : ex.learner->propose();
      const double share = weight[i] / weight_sum;
      expert_value[i] = vote(x).get_d();
      mixture_value += share * expert_value[i];
      const double per_member = share / static_cast<double>(vote.size());
      for (const auto& m : vote.members()) mixture[*c.index_of(m)] += per_member;
    }

    const auto seed = options.seed * 0x9e3779b97f4a7c15ULL + (t + 1) * 0xbf58476d1ce4e5b9ULL;
    const auto sparse = sparsify_final(c, mixture, eps, seed, options.sparsify);
    std::size_t ones = 0;
    for (auto m : sparse.members) ones += static_cast<std::size_t>(c[m](x));
    const double prediction = static_cast<double>(ones) / static_cast<double>(sparse.members.size());
    rep.max_vote_size = std::max(rep.max_vote_size, sparse.members.size());
    rep.max_doublings = std::max(rep.max_doublings, sparse.doublings);
    votes_used.push_back(sparse.members);

    AgnosticRound round;
    round.t = t;
    round.x = x;
    round.y = y;
    round.vote_size = sparse.members.size();
    round.prediction = prediction;
    round.mixture = mixture_value;
    round.abs_loss = std::abs(prediction - y);
    round.deviation = sparse.max_deviation;
    rep.learner_loss += round.abs_loss;
    rep.mixture_loss += std::abs(mixture_value - y);
    deviation_sum += std::abs(prediction - mixture_value);

    for (std::size_t h = 0; h < c.size(); ++h) concept_prefix_loss[h] += c[h](x) != y;
    round.cum_regret_vs_best =
        rep.learner_loss - *std::min_element(concept_prefix_loss.begin(), concept_prefix_loss.end());
    rep.rounds.push_back(round);

    const int target = c[best_concept](x);
    const double star_gap = std::abs(expert_value[star] - target);
    star_gap_sum += star_gap;
    if (star_gap > eps) ++star_margin_errors;
    star_target_loss += target != y;

    for (std::size_t i = 0; i < experts.size(); ++i) {
      auto& ex = experts[i];
      ex.cum_loss += std::abs(expert_value[i] - y);
      if (ex.frozen) continue;
      const VoteHypothesis last = ex.learner->propose();
      try {
        ex.learner->observe({x, ex.labels[t]});
      } catch (const Unrealizable&) {
        // This expert's self-labeled stream left the class; keep its last vote.
        ex.frozen = last;
        ++rep.frozen_experts;
      }
    }

    // Every prefix satisfies the same inequalities as the full run.
    double best_expert = std::numeric_limits<double>::infinity();
    for (const auto& ex : experts) best_expert = std::min(best_expert, ex.cum_loss);
    if (rep.mixture_loss - best_expert > rep.experts_bound + slack)
      fail(rep.experts_bound_ok, "aggregator regret exceeds sqrt((T/2) ln N) at t=" + std::to_string(t + 1));
    const double rounds_so_far = static_cast<double>(t + 1);
    const bool chain =
        rep.learner_loss <= rep.mixture_loss + deviation_sum + slack && deviation_sum <= eps * rounds_so_far + slack &&
        best_expert <= experts[star].cum_loss + slack &&
        experts[star].cum_loss <= star_gap_sum + star_target_loss + slack &&
        star_gap_sum <= eps * (rounds_so_far - star_margin_errors) + star_margin_errors + slack &&
        star_margin_errors <= vote_bound + slack;
    if (!chain) fail(rep.chain_ok, "triangle-inequality chain broke at t=" + std::to_string(t + 1));
  }

  double best_expert = std::numeric_limits<double>::infinity();
  for (const auto& ex : experts) best_expert = std::min(best_expert, ex.cum_loss);
  rep.best_expert_loss = best_expert;
  rep.aggregator_regret = rep.mixture_loss - best_expert;
  rep.regret = rep.learner_loss - rep.best_concept_loss;
  if (rep.regret > rep.composite_bound + slack)
    fail(rep.composite_ok, "regret " + std::to_string(rep.regret) + " exceeds the composite bound " +
                               std::to_string(rep.composite_bound));
  if (l > 0) {
    const double shape = std::max(1, rep.dual_vcdim) * t_d / (l * log_floor1(t_d / l));
    rep.vote_size_constant = static_cast<double>(rep.max_vote_size) / shape;
  }

  if (options.monte_carlo_draws > 0) {
    // Draw one member per round from each emitted vote; the mean total
    // 0-1 loss must match the summed absolute loss.
    std::mt19937_64 rng(options.seed ^ 0x94d049bb133111ebULL);
    const int draws = options.monte_carlo_draws;
    double sum = 0;
    double sum_sq = 0;
    for (int d = 0; d < draws; ++d) {
      int loss = 0;
      for (std::size_t t = 0; t < stream.size(); ++t) {
        const auto& members = votes_used[t];
        std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
        loss += c[members[pick(rng)]](stream[t].x) != stream[t].y;
      }
      sum += loss;
      sum_sq += static_cast<double>(loss) * loss;
    }
    MonteCarloCheck mc;
    mc.draws = draws;
    mc.mean = sum / draws;
    const double var = std::max(0.0, sum_sq / draws - mc.mean * mc.mean) * draws / std::max(1, draws - 1);
    mc.standard_error = std::sqrt(var / draws);
    mc.expected = rep.learner_loss;
    mc.ok = std::abs(mc.mean - mc.expected) <= 3.0 * mc.standard_error + 1e-12;
    if (!mc.ok && rep.first_failure.empty()) rep.first_failure = "sampled loss disagrees with the vote loss";
    rep.monte_carlo = mc;
  }
  return rep;
}

}  // namespace pol
