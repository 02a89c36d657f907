#include "pol/harness/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pol/agnostic.hpp"
#include "pol/dims.hpp"
#include "pol/errors.hpp"
#include "pol/games.hpp"
#include "pol/harness/adversary.hpp"
#include "pol/harness/fixtures.hpp"
#include "pol/learner_helly.hpp"
#include "pol/learner_vote.hpp"

namespace pol {
namespace {

// Collects the first failure and a running summary for one criterion.
struct Check {
  bool pass = true;
  std::string failure;
  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
  void expect(bool ok, const std::function<std::string()>& why) {
    if (!ok) fail(why());
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  bool quick;
  std::function<std::string(Check&, const VerifyOptions&)> body;
};

std::string dimension_oracles(Check& check, const VerifyOptions&) {
  int classes = 0;
  for (const auto& f : fixture_classes()) {
    ++classes;
    const auto& c = f.c;
    const int l = ldim(c);
    const int lo = oracle::ldim_tree(c);
    check.expect(l == lo, [&] { return f.name + ": ldim " + std::to_string(l) + " vs tree search " + std::to_string(lo); });
    const int v = vcdim(c), vo = oracle::vcdim_brute(c);
    check.expect(v == vo, [&] { return f.name + ": vcdim " + std::to_string(v) + " vs " + std::to_string(vo); });
    const int dv = dual_vcdim(c), dvo = oracle::dual_vcdim_brute(c);
    check.expect(dv == dvo, [&] { return f.name + ": dual vcdim " + std::to_string(dv) + " vs " + std::to_string(dvo); });
    const int td = threshold_dim(c), tdo = oracle::threshold_dim_brute(c);
    check.expect(td == tdo,
                 [&] { return f.name + ": threshold dim " + std::to_string(td) + " vs " + std::to_string(tdo); });
  }
  return std::to_string(classes) + " classes, 4 dimensions each match their oracles";
}

std::string lower_bound(Check& check, const VerifyOptions&) {
  int pairs = 0;
  int tight = 0;
  for (const auto& p : fixture_pairs()) {
    ++pairs;
    const Count mb = mb_exact(p.c, p.h).value;
    const DualHellyResult helly = dual_helly(p.c, p.h);
    const Count k = helly.value;
    const Count ko = oracle::dual_helly_brute(p.c, p.h);
    check.expect(k == ko, [&] {
      return p.name + ": dual Helly " + count_to_string(k) + " vs brute force " + count_to_string(ko);
    });
    // A one-concept class has K = 2 only through the k >= 2 floor; the
    // unclamped value is the one the bound speaks about.
    const Count effective = helly.trivial_class ? helly.raw : k;
    const Count floor = std::max<Count>(ldim(p.c), effective == kUnbounded ? kUnbounded : effective - 1);
    check.expect(mb >= floor, [&] {
      return p.name + ": mb_exact " + count_to_string(mb) + " < max(L, K-1) = " + count_to_string(floor);
    });
    tight += mb == floor;
  }
  return std::to_string(pairs) + " pairs satisfy mb_exact >= max(L, K-1); " + std::to_string(tight) + " tight";
}

std::string helly_worst_case(Check& check, const VerifyOptions& options) {
  int runs = 0;
  double worst_ratio = 0;
  std::string worst;
  for (const auto& p : fixture_pairs()) {
    const int l = ldim(p.c);
    const Count k = dual_helly(p.c, p.h).value;
    if (k > 4 || l > 3) continue;
    ++runs;
    HellyOptions ho;
    ho.skip_weight_decay = options.mutate_skip_decay;
    WorstCaseAdversary adversary(p.c, p.h);
    const HellyTrace trace = lh_run(p.c, p.h, adversary, 30, ho);
    check.expect(!adversary.heuristic(), [&] { return p.name + ": worst-case adversary fell back to the heuristic"; });
    check.expect(trace.invariants.ok(), [&] { return p.name + ": " + trace.invariants.first_failure; });
    check.expect(trace.mistakes <= trace.bound, [&] {
      return p.name + ": " + std::to_string(trace.mistakes) + " mistakes > bound " + std::to_string(trace.bound);
    });
    if (trace.bound > 0) {
      const double ratio = static_cast<double>(trace.mistakes) / static_cast<double>(trace.bound);
      if (ratio >= worst_ratio) {
        worst_ratio = ratio;
        worst = p.name + " " + std::to_string(trace.mistakes) + "/" + std::to_string(trace.bound);
      }
    }
  }
  return std::to_string(runs) + " pairs, T=30; tightest mistakes/bound: " + worst;
}

std::string majority_learner(Check& check, const VerifyOptions& options) {
  int runs = 0;
  int worst_mistakes = 0;
  for (const auto& f : fixture_classes()) {
    VoteOptions vo;
    vo.skip_weight_decay = options.mutate_skip_decay;
    vo.cache = std::make_shared<ProposalCache>();
    const long bound = 80L * ldim(f.c);
    auto run = [&](Adversary& adversary, const std::string& label) {
      ++runs;
      const MajTrace trace = lv_as_mistake_learner(f.c, adversary, 20, vo);
      worst_mistakes = std::max(worst_mistakes, trace.mistakes);
      check.expect(trace.inner.invariants.ok(),
                   [&] { return f.name + " " + label + ": " + trace.inner.invariants.first_failure; });
      check.expect(trace.mistakes <= bound, [&] {
        return f.name + " " + label + ": " + std::to_string(trace.mistakes) + " mistakes > 80L = " +
               std::to_string(bound);
      });
    };
    WorstCaseAdversary worst(f.c);
    run(worst, "worst");
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      RandomAdversary random(f.c, seed);
      run(random, "seed " + std::to_string(seed));
    }
  }
  return std::to_string(runs) + " runs, T=20; max mistakes " + std::to_string(worst_mistakes) + " (bound 80L)";
}

std::string vote_learner(Check& check, const VerifyOptions& options) {
  int runs = 0;
  double worst_ratio = 0;
  const Rational eps_values[] = {Rational(1, 10), Rational(1, 4), Rational(2, 5)};
  for (const auto& eps : eps_values) {
    for (const auto& f : fixture_classes()) {
      VoteOptions vo;
      vo.skip_weight_decay = options.mutate_skip_decay;
      vo.cache = std::make_shared<ProposalCache>();
      auto run = [&](Adversary& adversary, const std::string& label) {
        ++runs;
        const VoteTrace trace = lv_run(f.c, eps, adversary, 20, vo);
        const std::string where = f.name + " eps=" + eps.get_str() + " " + label;
        check.expect(trace.invariants.ok(), [&] { return where + ": " + trace.invariants.first_failure; });
        check.expect(trace.margin_errors <= trace.bound, [&] {
          return where + ": " + std::to_string(trace.margin_errors) + " margin errors > " + fmt(trace.bound);
        });
        check.expect(trace.max_doublings <= 10, [&] { return where + ": sparsifier doubled more than 10 times"; });
        if (trace.bound > 0) worst_ratio = std::max(worst_ratio, trace.margin_errors / trace.bound);
      };
      WorstCaseAdversary worst(f.c);
      run(worst, "worst");
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomAdversary random(f.c, seed);
        run(random, "seed " + std::to_string(seed));
      }
    }
  }
  return std::to_string(runs) + " runs, T=20; max margin errors/bound " + fmt(worst_ratio);
}

std::string agnostic_regret(Check& check, const VerifyOptions&) {
  struct Setting {
    const char* name;
    ConceptClass c;
    int horizon;
  };
  const Setting settings[] = {{"singletons:3", singletons(3), 8},
                              {"singletons:3", singletons(3), 16},
                              {"thresholds:3", thresholds(3), 8},
                              {"thresholds:3", thresholds(3), 16}};
  int runs = 0;
  double worst_slack = -1e300;
  double worst_aggregator = -1e300;
  for (const auto& s : settings) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      ++runs;
      const auto stream = random_label_stream(s.c.domain_size(), static_cast<std::size_t>(s.horizon), seed);
      AgnosticOptions ao;
      ao.seed = seed;
      ao.monte_carlo_draws = (seed == 1 && s.horizon == 16) ? 10000 : 0;
      const AgnosticReport rep = agnostic_run(s.c, stream, ao);
      const std::string where = std::string(s.name) + " T=" + std::to_string(s.horizon) + " seed " + std::to_string(seed);
      check.expect(rep.ok(), [&] { return where + ": " + rep.first_failure; });
      worst_slack = std::max(worst_slack, rep.regret - rep.composite_bound);
      worst_aggregator = std::max(worst_aggregator, rep.aggregator_regret - rep.experts_bound);
    }
  }
  return std::to_string(runs) + " streams; max regret - composite bound " + fmt(worst_slack) +
         ", max aggregator regret - sqrt((T/2) ln N) " + fmt(worst_aggregator);
}

std::string expert_coverage(Check& check, const VerifyOptions&) {
  int cases = 0;
  for (const auto& f : exhaustive_small_classes(3, 8)) {
    const int n = f.c.domain_size();
    for (int len = 1; len <= 4; ++len) {
      std::vector<int> xs(static_cast<std::size_t>(len), 0);
      while (true) {
        ++cases;
        check.expect(expert_coverage_holds(f.c, xs), [&] {
          std::string seq;
          for (int x : xs) seq += std::to_string(x);
          return f.name + ": some concept's trace on " + seq + " has no expert";
        });
        int k = 0;
        while (k < len && ++xs[static_cast<std::size_t>(k)] == n) xs[static_cast<std::size_t>(k++)] = 0;
        if (k == len) break;
      }
    }
  }
  return std::to_string(cases) + " (class, sequence) cases covered";
}

std::string eq_correspondence(Check& check, const VerifyOptions&) {
  int pairs = 0;
  for (const auto& p : fixture_pairs()) {
    ++pairs;
    MistakeBoundTable table(p.c, p.h);
    const Count mb = table.root();
    const Count qc = eq_query_complexity(p.c, p.h);
    const Count brute = oracle::eq_queries_brute(p.c, p.h);
    const Count simulated = simulate_eq_protocol(table);
    check.expect(qc == saturating_add(mb, 1), [&] {
      return p.name + ": QC_EQ " + count_to_string(qc) + " != mb + 1 = " + count_to_string(saturating_add(mb, 1));
    });
    check.expect(brute == qc, [&] {
      return p.name + ": query game search gives " + count_to_string(brute) + " vs " + count_to_string(qc);
    });
    check.expect(simulated <= qc, [&] {
      return p.name + ": protocol used " + count_to_string(simulated) + " queries > " + count_to_string(qc);
    });
  }
  return std::to_string(pairs) + " pairs: QC_EQ = mb + 1, simulation within it";
}

std::string games(Check& check, const VerifyOptions&) {
  for (int k = 1; k <= 8; ++k) {
    const GameSolution s = game_value(GameMatrix::upper_triangular(k));
    check.expect(*s.exact_value == 1, [&] {
      return "triangular " + std::to_string(k) + "x" + std::to_string(k) + " value " + s.exact_value->get_str();
    });
  }
  const GameSolution sym = game_value(GameMatrix::from_rows({{1, 0}, {0, 1}}));
  check.expect(*sym.exact_value == Rational(1, 2), [&] { return "2x2 game value " + sym.exact_value->get_str(); });

  std::mt19937_64 rng(7);
  double worst = 0;
  GameSolveOptions iter;
  iter.mode = SolveMode::kIterative;
  iter.tol = 1e-4;
  for (int i = 0; i < 50; ++i) {
    const int r = 1 + static_cast<int>(rng() % 12);
    const int c = 1 + static_cast<int>(rng() % 12);
    const GameMatrix m = random_matrix(r, c, rng());
    const GameSolution exact = game_value(m);
    check.expect(exact.exact_value && exact.upper == exact.lower, [&] { return "exact solve left a gap"; });
    const GameSolution approx = game_value(m, iter);
    const double err = std::max(std::abs(approx.value - exact.value), approx.duality_gap);
    worst = std::max(worst, err);
    check.expect(err <= 1e-4, [&] { return "iterative solve off by " + fmt(err) + " on matrix " + std::to_string(i); });
  }
  int classes = 0;
  for (const auto& f : fixture_classes()) {
    ++classes;
    const int tri = triangular_dim(GameMatrix::class_matrix(f.c));
    const int td = threshold_dim(f.c);
    check.expect(tri == td, [&] {
      return f.name + ": triangular dim " + std::to_string(tri) + " vs threshold dim " + std::to_string(td);
    });
  }
  return "triangular k=1..8 value 1, 2x2 value 1/2, 50 iterative solves within " + fmt(worst) + ", " +
         std::to_string(classes) + " class matrices";
}

std::string sparsifiers(Check& check, const VerifyOptions&) {
  int nets = 0, approxes = 0, measures = 0, max_doublings = 0;
  const Rational eps_values[] = {Rational(1, 10), Rational(1, 4), Rational(2, 5)};
  std::mt19937_64 rng(11);
  for (const auto& f : fixture_classes()) {
    const auto& c = f.c;
    const int n = c.domain_size();
    ExampleSequence all, zeros, ones;
    for (int x = 0; x < n; ++x) {
      all.push_back({x, 0});
      all.push_back({x, 1});
      zeros.push_back({x, 0});
      ones.push_back({x, 1});
    }
    const ExampleSequence* sets[] = {&all, &zeros, &ones};
    for (const auto& eps : eps_values) {
      for (const auto* s : sets) {
        const Rational value = *game_value(GameMatrix::error_matrix(c, *s)).exact_value;
        const auto net = eps_net(c, *s, eps, rng());
        check.expect(net.has_value() == (value > eps), [&] {
          return f.name + ": eps-net presence disagrees with game value " + value.get_str();
        });
        if (!net) continue;
        ++nets;
        max_doublings = std::max(max_doublings, net->doublings);
        const auto m = static_cast<long>(net->net.size());
        for (const auto& e : net->net)
          check.expect(std::find(s->begin(), s->end(), e) != s->end(), [&] { return f.name + ": net left its sample"; });
        for (const auto& h : c.concepts()) {
          long errors = 0;
          for (const auto& e : net->net) errors += h(e.x) != e.y;
          check.expect(2 * Rational(errors) > eps * m,
                       [&] { return f.name + ": concept " + h.to_string() + " errs too rarely on the net"; });
        }
      }

      // Uniform and random-denominator weights, scope = every example the
      // weights get within eps.
      for (int trial = 0; trial < 2; ++trial) {
        std::vector<Rational> pi(c.size());
        if (trial == 0) {
          for (auto& w : pi) w = Rational(1, static_cast<long>(c.size()));
        } else {
          Rational total = 0;
          for (auto& w : pi) {
            w = Rational(static_cast<long>(1 + rng() % 7), static_cast<long>(1 + rng() % 5));
            w.canonicalize();
            total += w;
          }
          for (auto& w : pi) w /= total;
        }
        ExampleSequence scope;
        for (const auto& e : all) {
          Rational err = 0;
          for (std::size_t i = 0; i < c.size(); ++i) err += c[i](e.x) != e.y ? pi[i] : Rational(0);
          if (err <= eps) scope.push_back(e);
        }
        const auto approx = dual_eps_approx(c, pi, eps, scope, rng());
        ++approxes;
        max_doublings = std::max(max_doublings, approx.doublings);
        const auto k = static_cast<long>(approx.members.size());
        for (const auto& e : scope) {
          long errors = 0;
          for (auto i : approx.members) errors += c[i](e.x) != e.y;
          check.expect(Rational(errors) < 2 * eps * k, [&] {
            return f.name + ": sparse vote errs on (" + std::to_string(e.x) + "," + std::to_string(e.y) + ")";
          });
        }
      }

      std::vector<double> mixture(c.size());
      double total = 0;
      for (auto& w : mixture) total += (w = static_cast<double>(rng() % 1000) + 1);
      for (auto& w : mixture) w /= total;
      const double e = eps.get_d();
      const auto sparse = sparsify_final(c, mixture, e, rng());
      ++measures;
      max_doublings = std::max(max_doublings, sparse.doublings);
      for (int x = 0; x < n; ++x) {
        double target = 0;
        for (std::size_t i = 0; i < c.size(); ++i) target += mixture[i] * c[i](x);
        long hits = 0;
        for (auto i : sparse.members) hits += c[i](x);
        const double got = static_cast<double>(hits) / static_cast<double>(sparse.members.size());
        check.expect(std::abs(got - target) <= e + 1e-12, [&] {
          return f.name + ": final vote deviates by " + fmt(std::abs(got - target)) + " at x=" + std::to_string(x);
        });
      }
    }
  }
  check.expect(max_doublings <= 10, [&] { return "a sparsifier doubled " + std::to_string(max_doublings) + " times"; });
  return std::to_string(nets) + " nets, " + std::to_string(approxes) + " dual approximations, " +
         std::to_string(measures) + " final votes verified; max doublings " + std::to_string(max_doublings);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "dimension oracles", 60, true, dimension_oracles},
      {2, "mistake-bound lower bound", 60, true, lower_bound},
      {3, "cover learner vs worst case", 120, false, helly_worst_case},
      {4, "majority vote mistake bound", 120, false, majority_learner},
      {5, "vote learner margin errors", 180, false, vote_learner},
      {6, "agnostic regret", 300, false, agnostic_regret},
      {7, "expert coverage", 60, false, expert_coverage},
      {8, "equivalence-query correspondence", 60, true, eq_correspondence},
      {9, "games", 120, true, games},
      {10, "sparsifiers", 120, false, sparsifiers},
  };
  return all;
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& r : results)
    os << "criterion " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL") << " [" << fmt(r.seconds)
       << "s / " << r.budget_seconds << "s] " << r.detail << '\n';
  return os.str();
}

CriterionResult verify_criterion(int id, const VerifyOptions& options) {
  const auto& all = criteria();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; });
  if (it == all.end()) throw InvalidInput("no criterion " + std::to_string(id));
  CriterionResult result;
  result.id = id;
  result.name = it->name;
  result.budget_seconds = it->budget;
  if (options.log) *options.log << "running criterion " << id << " (" << it->name << ")\n" << std::flush;
  const auto start = std::chrono::steady_clock::now();
  Check check;
  std::string summary;
  try {
    summary = it->body(check, options);
  } catch (const std::exception& e) {
    check.fail(std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (check.pass && result.seconds > it->budget)
    check.fail("took " + fmt(result.seconds) + "s, over the " + fmt(it->budget) + "s budget");
  result.pass = check.pass;
  result.detail = check.pass ? summary : check.failure;
  return result;
}

VerifyReport verify_suite(const VerifyOptions& options) {
  VerifyReport report;
  for (const auto& c : criteria()) {
    const bool selected = options.only.empty() ? (options.level == VerifyLevel::kFull || c.quick)
                                               : std::find(options.only.begin(), options.only.end(), c.id) !=
                                                     options.only.end();
    if (selected) report.results.push_back(verify_criterion(c.id, options));
  }
  return report;
}

}  // namespace pol
