#include "pol/harness/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "pol/agnostic.hpp"
#include "pol/errors.hpp"
#include "pol/harness/adversary.hpp"
#include "pol/learner_helly.hpp"
#include "pol/learner_vote.hpp"
#include "pol/rational.hpp"
#include "pol/soa.hpp"

namespace pol {

ConceptClass load_class(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) return read_class_file(source);
  return generate(source);
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "class=" << class_source << ";hypotheses=" << hypotheses_source.value_or("") << ";learner=" << learner
     << ";adversary=" << adversary << ";stream=" << stream_path.value_or("") << ";T=" << horizon
     << ";eps=" << eps.value_or("") << ";seed=" << seed << ";base=" << base_predictor;
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string ledger_header() { return "config_hash,learner,class,adversary,T,eps,seed,rounds,measured,bound,invariants_ok,pass"; }

namespace {

std::string weight_text(const Rational& w) {
  std::ostringstream os;
  os.precision(12);
  os << w.get_d();
  return os.str();
}

std::unique_ptr<Adversary> make_adversary(const ExperimentConfig& config, const ConceptClass& c,
                                          const std::optional<ConceptClass>& h) {
  if (config.adversary == "worst") return std::make_unique<WorstCaseAdversary>(c, h);
  if (config.adversary == "random") return std::make_unique<RandomAdversary>(c, config.seed);
  if (config.adversary == "replay") {
    if (!config.stream_path) throw InvalidInput("replay adversary needs --stream");
    return std::make_unique<ReplayAdversary>(read_examples_file(*config.stream_path));
  }
  throw InvalidInput("unknown adversary '" + config.adversary + "' (worst|random|replay)");
}

void run_soa(const ExperimentConfig& config, const ConceptClass& c, RunRecord& rec) {
  auto adversary = make_adversary(config, c, std::nullopt);
  SoaLearner learner(c);
  rec.csv_header = "round,x,y,prediction,mistake,cum_mistakes";
  for (std::size_t t = 0; t < config.horizon && !adversary->exhausted(); ++t) {
    const auto e = adversary->choose(learner.version_space(), [&](int x, int y) { return learner.predict(x) != y; });
    const int guess = learner.predict(e.x);
    learner.update(e);
    std::ostringstream row;
    row << t + 1 << ',' << e.x << ',' << e.y << ',' << guess << ',' << (guess != e.y) << ',' << learner.mistakes();
    rec.rows.push_back(row.str());
  }
  rec.summary.rounds = learner.rounds();
  rec.summary.measured = learner.mistakes();
  rec.summary.bound = ldim(c);
  rec.summary.pass = rec.summary.measured <= rec.summary.bound;
}

void run_helly(const ExperimentConfig& config, const ConceptClass& c, const ConceptClass& h, RunRecord& rec) {
  auto adversary = make_adversary(config, c, h);
  HellyOptions options;
  options.base_predictor = config.base_predictor;
  const HellyTrace trace = lh_run(c, h, *adversary, config.horizon, options);
  rec.csv_header = "round,branch,x,y,prediction,hypothesis,mistake,cum_mistakes,total_weight,entries";
  int mistakes = 0;
  std::size_t rounds = 0;
  for (const auto& r : trace.rounds) {
    std::ostringstream row;
    if (r.branch) {
      row << r.t + 1 << ",1,,,,,0," << mistakes;
    } else {
      ++rounds;
      mistakes += r.mistake;
      row << r.t + 1 << ",0," << r.x << ',' << r.y << ',' << r.prediction << ',' << r.hypothesis << ','
          << r.mistake << ',' << mistakes;
    }
    row << ',' << weight_text(r.weight_after) << ',' << r.entries;
    rec.rows.push_back(row.str());
  }
  rec.summary.rounds = rounds;
  rec.summary.measured = trace.mistakes;
  rec.summary.bound = static_cast<double>(trace.bound);
  rec.summary.invariants_ok = trace.invariants.ok();
  rec.summary.detail = trace.invariants.first_failure;
  rec.summary.pass = trace.mistakes <= trace.bound && trace.invariants.ok();
}

void append_vote_rows(const VoteTrace& trace, RunRecord& rec) {
  int errors = 0;
  for (const auto& r : trace.rounds) {
    std::ostringstream row;
    if (r.branch) {
      row << r.t + 1 << ",1,,,,0," << errors << ",," << r.net_size;
    } else {
      errors += r.margin_error;
      row << r.t + 1 << ",0," << r.x << ',' << r.y << ',' << r.value.get_str() << ',' << r.margin_error << ','
          << errors << ',' << r.vote_size << ',';
    }
    row << ',' << weight_text(r.weight_after) << ',' << r.entries;
    rec.rows.push_back(row.str());
  }
}

Rational parse_eps(const ExperimentConfig& config, const Rational& fallback) {
  return config.eps ? parse_rational(*config.eps) : fallback;
}

void run_vote(const ExperimentConfig& config, const ConceptClass& c, RunRecord& rec) {
  auto adversary = make_adversary(config, c, std::nullopt);
  VoteOptions options;
  options.base_predictor = config.base_predictor;
  options.seed = config.seed;
  const VoteTrace trace = lv_run(c, parse_eps(config, Rational(1, 4)), *adversary, config.horizon, options);
  rec.csv_header = "round,branch,x,y,value,margin_error,cum_margin_errors,vote_size,net_size,total_weight,entries";
  append_vote_rows(trace, rec);
  std::size_t rounds = 0;
  for (const auto& r : trace.rounds) rounds += !r.branch;
  rec.summary.rounds = rounds;
  rec.summary.measured = trace.margin_errors;
  rec.summary.bound = trace.bound;
  rec.summary.invariants_ok = trace.invariants.ok();
  rec.summary.detail = trace.invariants.first_failure;
  rec.summary.pass = trace.margin_errors <= trace.bound && trace.invariants.ok();
}

void run_maj(const ExperimentConfig& config, const ConceptClass& c, RunRecord& rec) {
  if (config.eps && parse_rational(*config.eps) != Rational(1, 3))
    throw InvalidInput("the majority learner runs at eps = 1/3 only");
  auto adversary = make_adversary(config, c, std::nullopt);
  VoteOptions options;
  options.base_predictor = config.base_predictor;
  options.seed = config.seed;
  const MajTrace trace = lv_as_mistake_learner(c, *adversary, config.horizon, options);
  rec.csv_header = "round,x,y,prediction,mistake,cum_mistakes";
  int mistakes = 0;
  std::size_t k = 0;
  for (const auto& r : trace.inner.rounds) {
    if (r.branch) continue;
    const int guess = trace.predictions.at(k++);
    mistakes += guess != r.y;
    std::ostringstream row;
    row << k << ',' << r.x << ',' << r.y << ',' << guess << ',' << (guess != r.y) << ',' << mistakes;
    rec.rows.push_back(row.str());
  }
  rec.summary.rounds = k;
  rec.summary.measured = trace.mistakes;
  rec.summary.bound = static_cast<double>(trace.bound);
  rec.summary.invariants_ok = trace.inner.invariants.ok();
  rec.summary.detail = trace.inner.invariants.first_failure;
  rec.summary.pass = trace.mistakes <= trace.bound && trace.inner.invariants.ok();
}

void run_agnostic(const ExperimentConfig& config, const ConceptClass& c, RunRecord& rec) {
  ExampleSequence stream;
  if (config.stream_path) {
    stream = read_examples_file(*config.stream_path);
    if (config.horizon > 0 && config.horizon < stream.size()) stream.resize(config.horizon);
  } else {
    if (config.horizon == 0) throw InvalidInput("agnostic run without a stream needs T >= 1");
    stream = random_label_stream(c.domain_size(), config.horizon, config.seed);
  }
  AgnosticOptions options;
  options.seed = config.seed;
  const AgnosticReport rep = agnostic_run(c, stream, options);
  rec.csv_header = AgnosticReport::csv_header();
  std::istringstream rows(rep.csv_rows());
  for (std::string line; std::getline(rows, line);) rec.rows.push_back(line);
  rec.summary.rounds = stream.size();
  rec.summary.measured = rep.regret;
  rec.summary.bound = rep.composite_bound;
  rec.summary.invariants_ok = rep.experts_bound_ok && rep.chain_ok;
  rec.summary.detail = rep.first_failure;
  rec.summary.pass = rep.ok();
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& config) {
  if (config.class_source.empty()) throw InvalidInput("experiment needs a class");
  const ConceptClass c = load_class(config.class_source);
  if (c.is_empty()) throw InvalidInput("concept class is empty");
  RunRecord rec;
  rec.config_hash = config.hash();
  rec.summary.learner = config.learner;
  if (config.learner == "soa") {
    run_soa(config, c, rec);
  } else if (config.learner == "helly") {
    const ConceptClass h = config.hypotheses_source ? load_class(*config.hypotheses_source) : c;
    if (h.domain_size() != c.domain_size()) throw InvalidInput("class and hypotheses must share a domain");
    run_helly(config, c, h, rec);
  } else if (config.learner == "vote") {
    run_vote(config, c, rec);
  } else if (config.learner == "maj") {
    run_maj(config, c, rec);
  } else if (config.learner == "agnostic") {
    run_agnostic(config, c, rec);
  } else {
    throw InvalidInput("unknown learner '" + config.learner + "' (soa|helly|vote|maj|agnostic)");
  }

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) throw InvalidInput("cannot write " + config.out_path);
    out << rec.csv_header << '\n';
    for (const auto& r : rec.rows) out << r << '\n';
  }
  if (!config.ledger_path.empty()) {
    const bool fresh = !std::filesystem::exists(config.ledger_path) || std::filesystem::file_size(config.ledger_path) == 0;
    std::ofstream out(config.ledger_path, std::ios::app);
    if (!out) throw InvalidInput("cannot append to " + config.ledger_path);
    if (fresh) out << ledger_header() << '\n';
    out.precision(10);
    out << rec.config_hash << ',' << config.learner << ',' << config.class_source << ',' << config.adversary << ','
        << config.horizon << ',' << config.eps.value_or("") << ',' << config.seed << ',' << rec.summary.rounds << ','
        << rec.summary.measured << ',' << rec.summary.bound << ',' << rec.summary.invariants_ok << ','
        << rec.summary.pass << '\n';
  }
  return rec;
}

}  // namespace pol
