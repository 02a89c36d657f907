#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pol/core.hpp"
#include "pol/rational.hpp"

namespace pol {

/// Binary payoff matrix. The row player minimizes, the column player
/// maximizes.
class GameMatrix {
 public:
  GameMatrix() = default;
  GameMatrix(int rows, int cols);
  static GameMatrix from_rows(const std::vector<std::vector<int>>& rows);
  /// Rows are concepts, columns are instances, entry h(x).
  static GameMatrix class_matrix(const ConceptClass& c);
  /// Rows are concepts, columns are examples, entry 1[h(x) != y].
  static GameMatrix error_matrix(const ConceptClass& c, std::span<const LabeledExample> examples);
  static GameMatrix upper_triangular(int k);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int operator()(int r, int c) const { return cells_[static_cast<std::size_t>(r * cols_ + c)]; }
  void set(int r, int c, int v) { cells_[static_cast<std::size_t>(r * cols_ + c)] = static_cast<std::uint8_t>(v != 0); }
  GameMatrix transposed() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Matrix file: "r c" then r lines of c bits; '#' comments allowed.
GameMatrix read_matrix(std::istream& in);
GameMatrix read_matrix_file(const std::string& path);
GameMatrix random_matrix(int rows, int cols, std::uint64_t seed);

/// Finite-support strategy with exact weights summing to one.
struct MixedStrategy {
  std::vector<int> support;
  std::vector<Rational> weights;

  static MixedStrategy from_dense(std::span<const Rational> dense);
  static MixedStrategy uniform(int actions);
  std::vector<Rational> dense(int actions) const;
  std::vector<double> dense_double(int actions) const;
};

enum class SolveMode { kExact, kIterative };

struct GameSolveOptions {
  SolveMode mode = SolveMode::kExact;
  double tol = 1e-6;
  long max_iterations = 2'000'000;
  /// Exact mode refuses tableaux with more cells than this.
  long exact_cell_cap = 200'000;
};

struct GameSolution {
  bool exact = false;
  double value = 0;
  /// Guarantee of the row strategy (an upper bound on the value) and of the
  /// column strategy (a lower bound).
  double upper = 0;
  double lower = 0;
  double duality_gap = 0;
  long iterations = 0;
  std::vector<double> row;
  std::vector<double> col;
  /// Populated in exact mode only.
  std::optional<Rational> exact_value;
  std::optional<MixedStrategy> exact_row;
  std::optional<MixedStrategy> exact_col;
};

/// Exact mode solves the row player's linear program over the rationals
/// and certifies a zero gap. Iterative mode runs optimistic multiplicative
/// weights and throws CapExceeded if the certified gap stays above `tol`.
GameSolution game_value(const GameMatrix& m, const GameSolveOptions& options = {});

/// Largest k such that some k rows and k columns, suitably ordered, carry
/// the pattern 1[s <= t].
int triangular_dim(const GameMatrix& m);

struct SparsifyOptions {
  int max_doublings = 10;
  int samples_per_size = 2;
};

struct EpsNetResult {
  ExampleSequence net;
  Rational game_value;
  int doublings = 0;
  bool greedy = false;
  /// m / ((V / eps) * log(1 / eps)) for the returned length m.
  double constant = 0;
};

/// log with a floor of 1, so size formulas stay positive as eps -> 1.
double log_floor1(double z);

/// A sequence over `examples` on which every concept of C errs at rate
/// strictly above eps/2, or nullopt when the concept-vs-example game has
/// value <= eps. Throws DefectError if verification never succeeds.
std::optional<EpsNetResult> eps_net(const ConceptClass& c, std::span<const LabeledExample> examples,
                                    const Rational& eps, std::uint64_t seed, const SparsifyOptions& options = {});
std::optional<EpsNetResult> eps_net(const ConceptClass& c, std::span<const LabeledExample> examples, double eps,
                                    std::uint64_t seed, const SparsifyOptions& options = {});

struct DualApproxResult {
  /// Concept indices, repetitions allowed.
  std::vector<std::size_t> members;
  int doublings = 0;
  bool greedy = false;
  /// The multiset is the weight vector itself scaled by a common denominator.
  bool exact_multiset = false;
  /// |members| * eps^2 / vc*.
  double constant = 0;
};

/// A multiset of concepts whose empirical error is < 2 eps on every scope
/// example. `pi` is dense over concept indices. Throws InvalidInput if some
/// scope example has pi-error above eps.
DualApproxResult dual_eps_approx(const ConceptClass& c, std::span<const Rational> pi, const Rational& eps,
                                 std::span<const LabeledExample> scope, std::uint64_t seed,
                                 const SparsifyOptions& options = {});

struct MeasureApproxResult {
  std::vector<std::size_t> members;
  int doublings = 0;
  bool greedy = false;
  double max_deviation = 0;
};

/// A multiset whose vote is within eps of the measure's mean label at every
/// instance. `weights` is dense over concept indices and sums to one.
MeasureApproxResult approximate_measure(const ConceptClass& c, std::span<const double> weights, double eps,
                                        std::size_t initial_size, std::uint64_t seed,
                                        const SparsifyOptions& options = {});

}  // namespace pol
