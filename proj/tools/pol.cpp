// Command-line front end. Exit codes: 0 success, 1 a checked bound or
// criterion failed, 2 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pol/dims.hpp"
#include "pol/errors.hpp"
#include "pol/games.hpp"
#include "pol/harness/experiment.hpp"
#include "pol/harness/verify.hpp"

namespace {

constexpr int kFailure = 1;
constexpr int kInvalid = 2;

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw pol::InvalidInput("cannot write " + path);
    }
    return file;
  }
};

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online learning with restricted hypothesis classes: dimensions, games, learners, checks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  Output out;
  std::string format = "csv";
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out.path, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}))->capture_default_str();

  std::string class_source;
  std::optional<std::string> hyp_source;

  auto* dims = app.add_subcommand("dims", "Print L, V, vc*, K and threshold dimension as CSV");
  dims->add_option("--class", class_source, "Class file or generator descriptor")->required();
  dims->add_option("--hypotheses", hyp_source, "Hypothesis class (default: the class itself)");

  auto* game = app.add_subcommand("game", "Solve a 0/1 matrix game");
  std::string game_task;
  std::string matrix_path;
  std::string mode = "exact";
  double tol = 1e-6;
  game->add_option("task", game_task, "value | tridim")->required()->check(CLI::IsMember({"value", "tridim"}));
  game->add_option("--matrix", matrix_path, "Matrix file")->required();
  game->add_option("--mode", mode, "exact | iter")->check(CLI::IsMember({"exact", "iter"}))->capture_default_str();
  game->add_option("--tol", tol, "Certified gap for iterative mode")->check(CLI::PositiveNumber)->capture_default_str();

  auto* run = app.add_subcommand("run", "Run a learner against an adversary or stream");
  pol::ExperimentConfig config;
  std::optional<std::string> hyp_run, stream, eps;
  run->add_option("--learner", config.learner, "soa | helly | vote | maj | agnostic")
      ->check(CLI::IsMember({"soa", "helly", "vote", "maj", "agnostic"}))
      ->capture_default_str();
  run->add_option("--class", config.class_source, "Class file or generator descriptor")->required();
  run->add_option("--hypotheses", hyp_run, "Hypothesis class for the cover learner");
  run->add_option("--stream", stream, "Example stream file");
  run->add_option("--adversary", config.adversary, "worst | random | replay")
      ->check(CLI::IsMember({"worst", "random", "replay"}))
      ->capture_default_str();
  run->add_option("--T", config.horizon, "Rounds (0 = whole stream)")->capture_default_str();
  run->add_option("--eps", eps, "Margin, e.g. 1/4 or 0.25");
  run->add_option("--base", config.base_predictor, "soa | halving")
      ->check(CLI::IsMember({"soa", "halving"}))
      ->capture_default_str();
  run->add_option("--ledger", config.ledger_path, "Append a summary row to this results ledger");

  auto* mb = app.add_subcommand("mb-exact", "Exact optimal mistake bound of C with hypotheses from H");
  mb->add_option("--class", class_source, "Class")->required();
  mb->add_option("--hypotheses", hyp_source, "Hypothesis class (default: the class itself)");

  auto* eq = app.add_subcommand("eq", "Equivalence-query complexity");
  eq->add_option("--class", class_source, "Class")->required();
  eq->add_option("--hypotheses", hyp_source, "Hypothesis class (default: the class itself)");

  auto* gen = app.add_subcommand("gen", "Write a generated class file");
  std::string gen_descriptor;
  gen->add_option("descriptor", gen_descriptor, "singletons:N | thresholds:N | powerset:D | random:N:M:SEED")->required();

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  std::string level = "quick";
  std::vector<int> only;
  bool mutate = false;
  verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  verify->add_option("--criterion", only, "Run only these criteria");
  verify->add_flag("--mutate", mutate, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    auto hypotheses = [&](const pol::ConceptClass& c) {
      pol::ConceptClass h = hyp_source ? pol::load_class(*hyp_source) : c;
      if (h.domain_size() != c.domain_size()) throw pol::InvalidInput("class and hypotheses must share a domain");
      return h;
    };

    if (*dims) {
      const auto c = pol::load_class(class_source);
      const auto report = pol::dimension_report(c, hypotheses(c));
      out.stream() << pol::DimensionReport::csv_header() << '\n' << report.csv_row() << '\n';
    } else if (*game) {
      const auto m = pol::read_matrix_file(matrix_path);
      if (game_task == "tridim") {
        out.stream() << "triangular_dim\n" << pol::triangular_dim(m) << '\n';
      } else {
        pol::GameSolveOptions options;
        options.mode = mode == "exact" ? pol::SolveMode::kExact : pol::SolveMode::kIterative;
        options.tol = tol;
        const auto s = pol::game_value(m, options);
        auto& os = out.stream();
        os.precision(12);
        os << "value,upper,lower,duality_gap,iterations,exact_value,row_strategy,col_strategy\n"
           << s.value << ',' << s.upper << ',' << s.lower << ',' << s.duality_gap << ',' << s.iterations << ','
           << (s.exact_value ? s.exact_value->get_str() : "") << ',' << join_doubles(s.row) << ','
           << join_doubles(s.col) << '\n';
      }
    } else if (*run) {
      config.hypotheses_source = hyp_run;
      config.stream_path = stream;
      config.eps = eps;
      config.seed = seed;
      config.out_path = out.path;
      const auto rec = pol::run_experiment(config);
      if (out.path.empty()) {
        std::cout << rec.csv_header << '\n';
        for (const auto& r : rec.rows) std::cout << r << '\n';
      }
      std::cerr << "config " << rec.config_hash << ": " << rec.summary.learner << " measured " << rec.summary.measured
                << " vs bound " << rec.summary.bound << (rec.summary.pass ? " PASS" : " FAIL")
                << (rec.summary.detail.empty() ? "" : " (" + rec.summary.detail + ")") << '\n';
      return rec.summary.pass ? 0 : kFailure;
    } else if (*mb) {
      const auto c = pol::load_class(class_source);
      const auto r = pol::mb_exact(c, hypotheses(c));
      out.stream() << "mb_exact,optimal_first_hypothesis\n"
                   << pol::count_to_string(r.value) << ','
                   << (r.optimal_first_hypothesis ? r.optimal_first_hypothesis->to_string() : "") << '\n';
    } else if (*eq) {
      const auto c = pol::load_class(class_source);
      out.stream() << "eq_query_complexity\n" << pol::count_to_string(pol::eq_query_complexity(c, hypotheses(c))) << '\n';
    } else if (*gen) {
      pol::write_class(out.stream(), pol::generate(gen_descriptor));
    } else if (*verify) {
      pol::VerifyOptions options;
      options.level = level == "full" ? pol::VerifyLevel::kFull : pol::VerifyLevel::kQuick;
      options.only = only;
      options.mutate_skip_decay = mutate;
      options.log = &std::cerr;
      const auto report = pol::verify_suite(options);
      out.stream() << report.text();
      return report.ok() ? 0 : kFailure;
    }
  } catch (const pol::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const pol::Unrealizable& e) {
    std::cerr << "unrealizable stream (prefix " << e.prefix_length() << "): " << e.what() << '\n';
    return kInvalid;
  } catch (const pol::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kInvalid;
  } catch (const pol::DefectError& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kFailure;
  }
  return 0;
}
