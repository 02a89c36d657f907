#include "pol/games.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "pol/dims.hpp"
#include "pol/errors.hpp"

namespace pol {

GameMatrix::GameMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("negative matrix dimension");
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

GameMatrix GameMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InvalidInput("matrix needs at least one row and column");
  GameMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != m.cols()) throw InvalidInput("ragged matrix rows");
    for (int c = 0; c < m.cols(); ++c) {
      const int v = row[static_cast<std::size_t>(c)];
      if (v != 0 && v != 1) throw InvalidInput("matrix entries must be 0 or 1");
      m.set(r, c, v);
    }
  }
  return m;
}

GameMatrix GameMatrix::class_matrix(const ConceptClass& c) {
  GameMatrix m(static_cast<int>(c.size()), c.domain_size());
  for (int r = 0; r < m.rows(); ++r)
    for (int x = 0; x < m.cols(); ++x) m.set(r, x, c[static_cast<std::size_t>(r)](x));
  return m;
}

GameMatrix GameMatrix::error_matrix(const ConceptClass& c, std::span<const LabeledExample> examples) {
  GameMatrix m(static_cast<int>(c.size()), static_cast<int>(examples.size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int j = 0; j < m.cols(); ++j) {
      const auto& e = examples[static_cast<std::size_t>(j)];
      c.check_instance(e.x);
      m.set(r, j, c[static_cast<std::size_t>(r)](e.x) != e.y);
    }
  return m;
}

GameMatrix GameMatrix::upper_triangular(int k) {
  GameMatrix m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) m.set(i, j, 1);
  return m;
}

GameMatrix GameMatrix::transposed() const {
  GameMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
  return t;
}

GameMatrix read_matrix(std::istream& in) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    std::string stripped;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) stripped.push_back(ch);
    if (stripped.empty() || stripped[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw InvalidInput("matrix file has no header");
  std::istringstream header(lines[0]);
  int r = 0;
  int c = 0;
  if (!(header >> r >> c) || r < 1 || c < 1) throw InvalidInput("matrix header must be 'rows cols' with both >= 1");
  if (static_cast<int>(lines.size()) - 1 != r) throw InvalidInput("matrix file row count does not match header");
  std::vector<std::vector<int>> rows;
  for (int i = 1; i <= r; ++i) {
    std::vector<int> row;
    for (char ch : lines[static_cast<std::size_t>(i)]) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (ch != '0' && ch != '1') throw InvalidInput("matrix entries must be 0 or 1");
      row.push_back(ch - '0');
    }
    if (static_cast<int>(row.size()) != c) throw InvalidInput("matrix row length does not match header");
    rows.push_back(std::move(row));
  }
  return GameMatrix::from_rows(rows);
}

GameMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

GameMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GameMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, static_cast<int>(rng() & 1U));
  return m;
}

MixedStrategy MixedStrategy::from_dense(std::span<const Rational> dense) {
  MixedStrategy s;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (sgn(dense[i]) < 0) throw InvalidInput("negative strategy weight");
    if (sgn(dense[i]) > 0) {
      s.support.push_back(static_cast<int>(i));
      s.weights.push_back(dense[i]);
    }
  }
  return s;
}

MixedStrategy MixedStrategy::uniform(int actions) {
  MixedStrategy s;
  for (int i = 0; i < actions; ++i) {
    s.support.push_back(i);
    s.weights.emplace_back(1, actions);
  }
  return s;
}

std::vector<Rational> MixedStrategy::dense(int actions) const {
  std::vector<Rational> out(static_cast<std::size_t>(actions), 0);
  for (std::size_t k = 0; k < support.size(); ++k) out[static_cast<std::size_t>(support[k])] = weights[k];
  return out;
}

std::vector<double> MixedStrategy::dense_double(int actions) const {
  std::vector<double> out(static_cast<std::size_t>(actions), 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) out[static_cast<std::size_t>(support[k])] = weights[k].get_d();
  return out;
}

namespace {

// Maximize sum(z) subject to A z <= 1, z >= 0 for a strictly positive
// matrix A, by a dense rational tableau with Bland's rule. Returns the
// primal z and the dual u (one entry per row of A) read off the slacks.
void solve_positive_lp(const std::vector<std::vector<Rational>>& a, std::vector<Rational>& z,
                       std::vector<Rational>& u) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  const std::size_t width = n + m + 1;
  const std::size_t rhs = n + m;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][rhs] = 1;
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -1;

  Rational ratio;
  Rational best_ratio;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j)
      if (sgn(t[m][j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw DefectError("game LP reported unbounded on a positive matrix");
    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (sgn(t[leave][j]) != 0) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
  z.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) z[basis[i]] = t[i][rhs];
  u.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) u[i] = t[m][n + i];
}

GameSolution solve_exact(const GameMatrix& g, const GameSolveOptions& options) {
  const int r = g.rows();
  const int c = g.cols();
  if (static_cast<long>(c + 1) * static_cast<long>(r + c + 1) > options.exact_cell_cap)
    throw CapExceeded("exact game solve refused a " + std::to_string(r) + "x" + std::to_string(c) + " matrix");
  // The minimizer's program: maximize sum(u) subject to (A + 1)^T u <= 1.
  // Its dual, read off the slacks, is the maximizer's program.
  std::vector<std::vector<Rational>> shifted(static_cast<std::size_t>(c), std::vector<Rational>(static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) shifted[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = g(i, j) + 1;
  std::vector<Rational> u;
  std::vector<Rational> z;
  solve_positive_lp(shifted, u, z);
  const Rational total = std::accumulate(u.begin(), u.end(), Rational(0));
  if (sgn(total) <= 0) throw DefectError("game LP returned a zero optimum");
  const Rational shifted_value = 1 / total;
  std::vector<Rational> q(static_cast<std::size_t>(c));
  std::vector<Rational> p(static_cast<std::size_t>(r));
  for (int j = 0; j < c; ++j) q[static_cast<std::size_t>(j)] = z[static_cast<std::size_t>(j)] * shifted_value;
  for (int i = 0; i < r; ++i) p[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] * shifted_value;
  const Rational value = shifted_value - 1;

  // Certify both guarantees exactly.
  Rational upper = -1;
  for (int j = 0; j < c; ++j) {
    Rational s = 0;
    for (int i = 0; i < r; ++i)
      if (g(i, j)) s += p[static_cast<std::size_t>(i)];
    if (s > upper) upper = s;
  }
  Rational lower = 2;
  for (int i = 0; i < r; ++i) {
    Rational s = 0;
    for (int j = 0; j < c; ++j)
      if (g(i, j)) s += q[static_cast<std::size_t>(j)];
    if (s < lower) lower = s;
  }
  const Rational psum = std::accumulate(p.begin(), p.end(), Rational(0));
  const Rational qsum = std::accumulate(q.begin(), q.end(), Rational(0));
  if (upper != value || lower != value || psum != 1 || qsum != 1)
    throw DefectError("exact game solve failed its zero-gap certificate");

  GameSolution s;
  s.exact = true;
  s.exact_value = value;
  s.exact_row = MixedStrategy::from_dense(p);
  s.exact_col = MixedStrategy::from_dense(q);
  s.value = s.upper = s.lower = value.get_d();
  s.duality_gap = 0;
  s.row = s.exact_row->dense_double(r);
  s.col = s.exact_col->dense_double(c);
  return s;
}

void softmax(std::vector<double>& v, double sign, double eta, const std::vector<double>& cum,
             const std::vector<double>& last) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = sign * eta * (cum[i] + last[i]);
    peak = std::max(peak, v[i]);
  }
  double total = 0;
  for (auto& x : v) {
    x = std::exp(x - peak);
    total += x;
  }
  for (auto& x : v) x /= total;
}

GameSolution solve_iterative(const GameMatrix& g, const GameSolveOptions& options) {
  const auto r = static_cast<std::size_t>(g.rows());
  const auto c = static_cast<std::size_t>(g.cols());
  std::vector<double> p(r, 1.0 / static_cast<double>(r));
  std::vector<double> q(c, 1.0 / static_cast<double>(c));
  std::vector<double> loss(r, 0), gain(c, 0), cum_loss(r, 0), cum_gain(c, 0);
  std::vector<double> avg_p(r, 0), avg_q(c, 0);
  std::vector<double> best_row = p, best_col = q;
  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = -std::numeric_limits<double>::infinity();
  const double eta = 0.2;

  auto row_guarantee = [&](const std::vector<double>& pr) {
    double worst = -1;
    for (std::size_t j = 0; j < c; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (g(static_cast<int>(i), static_cast<int>(j))) s += pr[i];
      worst = std::max(worst, s);
    }
    return worst;
  };
  auto col_guarantee = [&](const std::vector<double>& qc) {
    double worst = 2;
    for (std::size_t i = 0; i < r; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < c; ++j)
        if (g(static_cast<int>(i), static_cast<int>(j))) s += qc[j];
      worst = std::min(worst, s);
    }
    return worst;
  };
  auto normalized = [](std::vector<double> v) {
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x /= total;
    return v;
  };
  auto certify = [&](const std::vector<double>& pr, const std::vector<double>& qc) {
    const double up = row_guarantee(pr);
    if (up < best_upper) {
      best_upper = up;
      best_row = pr;
    }
    const double lo = col_guarantee(qc);
    if (lo > best_lower) {
      best_lower = lo;
      best_col = qc;
    }
  };

  long it = 0;
  while (it < options.max_iterations) {
    softmax(p, -1.0, eta, cum_loss, loss);
    softmax(q, +1.0, eta, cum_gain, gain);
    for (std::size_t i = 0; i < r; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < c; ++j)
        if (g(static_cast<int>(i), static_cast<int>(j))) s += q[j];
      loss[i] = s;
      cum_loss[i] += s;
      avg_p[i] += p[i];
    }
    for (std::size_t j = 0; j < c; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (g(static_cast<int>(i), static_cast<int>(j))) s += p[i];
      gain[j] = s;
      cum_gain[j] += s;
      avg_q[j] += q[j];
    }
    ++it;
    if (it % 32 == 0 || it == options.max_iterations) {
      certify(p, q);
      certify(normalized(avg_p), normalized(avg_q));
      if (best_upper - best_lower <= options.tol) break;
    }
  }
  GameSolution s;
  s.exact = false;
  s.upper = best_upper;
  s.lower = best_lower;
  s.duality_gap = std::max(0.0, best_upper - best_lower);
  s.value = 0.5 * (best_upper + best_lower);
  s.iterations = it;
  s.row = best_row;
  s.col = best_col;
  if (s.duality_gap > options.tol) {
    std::ostringstream os;
    os << "iterative game solve stopped at gap " << s.duality_gap << " after " << it << " iterations";
    throw CapExceeded(os.str());
  }
  return s;
}

}  // namespace

GameSolution game_value(const GameMatrix& m, const GameSolveOptions& options) {
  if (m.rows() < 1) throw InvalidInput("game needs at least one row");
  if (m.cols() == 0) {
    // The maximizer has no move, so every row strategy guarantees 0.
    GameSolution s;
    s.exact = options.mode == SolveMode::kExact;
    s.row.assign(static_cast<std::size_t>(m.rows()), 1.0 / m.rows());
    if (s.exact) {
      s.exact_value = Rational(0);
      s.exact_row = MixedStrategy::uniform(m.rows());
      s.exact_col = MixedStrategy{};
    }
    return s;
  }
  return options.mode == SolveMode::kExact ? solve_exact(m, options) : solve_iterative(m, options);
}

int triangular_dim(const GameMatrix& m) {
  // Candidates are diagonal cells (r, c) with m(r, c) = 1. Cell p may
  // precede q iff m(p.r, q.c) = 1 and m(q.r, p.c) = 0; a valid selection is
  // a chain in which every earlier cell precedes every later one.
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c)) cells.emplace_back(r, c);
  const std::size_t k = cells.size();
  if (k == 0) return 0;
  std::vector<IndexSet> after(k, IndexSet(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto [pr, pc] = cells[a];
      const auto [qr, qc] = cells[b];
      if (a != b && m(pr, qc) == 1 && m(qr, pc) == 0) after[a].set(b);
    }
  const int ceiling = std::min(m.rows(), m.cols());
  int best = 1;
  std::function<void(const IndexSet&, int)> grow = [&](const IndexSet& candidates, int depth) {
    if (depth > best) best = depth;
    if (best >= ceiling) return;
    if (depth + static_cast<int>(candidates.count()) <= best) return;
    candidates.for_each([&](std::size_t q) {
      if (best >= ceiling) return;
      grow(candidates & after[q], depth + 1);
    });
  };
  for (std::size_t a = 0; a < k && best < ceiling; ++a) grow(after[a], 1);
  return best;
}

double log_floor1(double z) { return std::max(std::log(z), 1.0); }

namespace {

std::vector<std::size_t> sample_indices(std::span<const double> weights, std::size_t count, std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<std::size_t> out(count);
  for (auto& v : out) v = pick(rng);
  return out;
}

}  // namespace

std::optional<EpsNetResult> eps_net(const ConceptClass& c, std::span<const LabeledExample> examples, double eps,
                                    std::uint64_t seed, const SparsifyOptions& options) {
  return eps_net(c, examples, exact_rational(eps), seed, options);
}

std::optional<EpsNetResult> eps_net(const ConceptClass& c, std::span<const LabeledExample> examples,
                                    const Rational& eps_exact, std::uint64_t seed, const SparsifyOptions& options) {
  if (!(sgn(eps_exact) > 0 && eps_exact <= 1)) throw InvalidInput("eps must lie in (0, 1]");
  if (c.is_empty()) throw InvalidInput("eps_net needs a non-empty class");
  if (examples.empty()) return std::nullopt;
  const GameMatrix g = GameMatrix::error_matrix(c, examples);
  const GameSolution sol = game_value(g);
  if (*sol.exact_value <= eps_exact) return std::nullopt;
  const double eps = eps_exact.get_d();

  const std::size_t concepts = c.size();
  const int vc = std::max(1, vcdim(c));
  const double shape = static_cast<double>(vc) / eps * log_floor1(1.0 / eps);
  auto length = static_cast<std::size_t>(std::ceil(8.0 * shape));
  std::mt19937_64 rng(seed);

  auto verify = [&](const std::vector<std::size_t>& picks) {
    const Rational threshold = eps_exact * static_cast<long>(picks.size());
    for (std::size_t h = 0; h < concepts; ++h) {
      long errors = 0;
      for (auto j : picks) errors += g(static_cast<int>(h), static_cast<int>(j));
      if (!(Rational(2 * errors) > threshold)) return false;
    }
    return true;
  };
  // Pessimistic estimator: each step picks the example with the largest
  // error mass under weights that decay with each concept's current error.
  auto greedy = [&](std::size_t m) {
    const double rate = std::min(0.5, eps);
    std::vector<double> logw(concepts, 0.0);
    std::vector<std::size_t> picks;
    picks.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
      std::size_t best = 0;
      double best_mass = -1;
      for (int j = 0; j < g.cols(); ++j) {
        double mass = 0;
        for (std::size_t h = 0; h < concepts; ++h)
          if (g(static_cast<int>(h), j)) mass += std::exp(logw[h]);
        if (mass > best_mass) {
          best_mass = mass;
          best = static_cast<std::size_t>(j);
        }
      }
      picks.push_back(best);
      for (std::size_t h = 0; h < concepts; ++h)
        if (g(static_cast<int>(h), static_cast<int>(best))) logw[h] -= rate;
    }
    return picks;
  };
  auto finish = [&](const std::vector<std::size_t>& picks, int doublings, bool used_greedy) {
    EpsNetResult r;
    for (auto j : picks) r.net.push_back(examples[j]);
    r.game_value = *sol.exact_value;
    r.doublings = doublings;
    r.greedy = used_greedy;
    r.constant = static_cast<double>(picks.size()) / shape;
    return r;
  };

  for (int d = 0; d <= options.max_doublings; ++d) {
    for (int s = 0; s < options.samples_per_size; ++s) {
      auto picks = sample_indices(sol.col, length, rng);
      if (verify(picks)) return finish(picks, d, false);
    }
    auto picks = greedy(length);
    if (verify(picks)) return finish(picks, d, true);
    length *= 2;
  }
  throw DefectError("eps-net search failed after " + std::to_string(options.max_doublings) + " doublings");
}

DualApproxResult dual_eps_approx(const ConceptClass& c, std::span<const Rational> pi, const Rational& eps,
                                 std::span<const LabeledExample> scope, std::uint64_t seed,
                                 const SparsifyOptions& options) {
  if (sgn(eps) <= 0) throw InvalidInput("eps must be positive");
  if (pi.size() != c.size()) throw InvalidInput("measure length must equal the class size");
  Rational total = 0;
  for (const auto& w : pi) {
    if (sgn(w) < 0) throw InvalidInput("measure has a negative weight");
    total += w;
  }
  if (total != 1) throw InvalidInput("measure weights must sum to 1");
  for (const auto& e : scope) {
    c.check_instance(e.x);
    Rational err = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i](e.x) != e.y) err += pi[i];
    if (err > eps)
      throw InvalidInput("measure errs with mass " + err.get_str() + " > eps at (" + std::to_string(e.x) + "," +
                         std::to_string(e.y) + ")");
  }

  const int vcstar = std::max(1, dual_vcdim(c));
  const double eps_d = eps.get_d();
  const double shape = static_cast<double>(vcstar) / (eps_d * eps_d);
  auto length = static_cast<std::size_t>(std::ceil(8.0 * shape));

  auto verify = [&](const std::vector<std::size_t>& members) {
    const Rational limit = 2 * eps * static_cast<long>(members.size());
    for (const auto& e : scope) {
      long errors = 0;
      for (auto i : members) errors += c[i](e.x) != e.y;
      if (!(Rational(errors) < limit)) return false;
    }
    return !members.empty();
  };
  auto finish = [&](std::vector<std::size_t> members, int doublings, bool used_greedy, bool exact) {
    DualApproxResult r;
    r.members = std::move(members);
    r.doublings = doublings;
    r.greedy = used_greedy;
    r.exact_multiset = exact;
    r.constant = static_cast<double>(r.members.size()) / shape;
    return r;
  };

  // A measure with a small common denominator is its own multiset.
  BigInt common = 1;
  for (const auto& w : pi)
    if (sgn(w) > 0) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), w.get_den_mpz_t());
  if (common <= static_cast<unsigned long>(length)) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < pi.size(); ++i) {
      const Rational copies = pi[i] * common;
      for (unsigned long k = 0; k < copies.get_num().get_ui(); ++k) members.push_back(i);
    }
    if (verify(members)) return finish(std::move(members), 0, false, true);
  }

  std::vector<double> weights(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) weights[i] = pi[i].get_d();
  std::mt19937_64 rng(seed);
  // Pessimistic estimator over scope examples: weights grow with each
  // example's running error; pick the support concept with least mass.
  auto greedy = [&](std::size_t m) {
    std::vector<double> logw(scope.size(), 0.0);
    std::vector<std::size_t> members;
    members.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
      std::size_t best = 0;
      double best_mass = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pi.size(); ++i) {
        if (sgn(pi[i]) == 0) continue;
        double mass = 0;
        for (std::size_t s = 0; s < scope.size(); ++s)
          if (c[i](scope[s].x) != scope[s].y) mass += std::exp(logw[s]);
        if (mass < best_mass) {
          best_mass = mass;
          best = i;
        }
      }
      members.push_back(best);
      for (std::size_t s = 0; s < scope.size(); ++s)
        if (c[best](scope[s].x) != scope[s].y) logw[s] += std::min(0.5, eps_d);
    }
    return members;
  };
  for (int d = 0; d <= options.max_doublings; ++d) {
    for (int s = 0; s < options.samples_per_size; ++s) {
      auto members = sample_indices(weights, length, rng);
      if (verify(members)) return finish(std::move(members), d, false, false);
    }
    auto members = greedy(length);
    if (verify(members)) return finish(std::move(members), d, true, false);
    length *= 2;
  }
  throw DefectError("dual eps-approximation failed after " + std::to_string(options.max_doublings) + " doublings");
}

MeasureApproxResult approximate_measure(const ConceptClass& c, std::span<const double> weights, double eps,
                                        std::size_t initial_size, std::uint64_t seed, const SparsifyOptions& options) {
  if (weights.size() != c.size() || c.is_empty()) throw InvalidInput("measure length must equal the class size");
  if (!(eps > 0)) throw InvalidInput("eps must be positive");
  const int n = c.domain_size();
  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  std::size_t support = 0;
  std::size_t only = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (weights[i] < 0) throw InvalidInput("measure has a negative weight");
    if (weights[i] > 0) {
      ++support;
      only = i;
    }
    for (int x = 0; x < n; ++x) mean[static_cast<std::size_t>(x)] += weights[i] * c[i](x);
  }
  auto deviation = [&](const std::vector<std::size_t>& members) {
    double worst = 0;
    for (int x = 0; x < n; ++x) {
      std::size_t ones = 0;
      for (auto i : members) ones += static_cast<std::size_t>(c[i](x));
      worst = std::max(worst, std::abs(static_cast<double>(ones) / static_cast<double>(members.size()) -
                                       mean[static_cast<std::size_t>(x)]));
    }
    return worst;
  };
  auto finish = [&](std::vector<std::size_t> members, int doublings, bool used_greedy) {
    MeasureApproxResult r;
    r.max_deviation = deviation(members);
    r.members = std::move(members);
    r.doublings = doublings;
    r.greedy = used_greedy;
    return r;
  };
  if (support == 1) return finish({only}, 0, false);

  // Herding: each step adds the concept that best corrects the running
  // per-instance surplus.
  auto greedy = [&](std::size_t m) {
    std::vector<double> ones(static_cast<std::size_t>(n), 0.0);
    std::vector<std::size_t> members;
    members.reserve(m);
    for (std::size_t step = 1; step <= m; ++step) {
      std::size_t best = 0;
      double best_score = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (weights[i] <= 0) continue;
        double score = 0;
        for (int x = 0; x < n; ++x) {
          const double d = ones[static_cast<std::size_t>(x)] + c[i](x) - static_cast<double>(step) * mean[static_cast<std::size_t>(x)];
          score += d * d;
        }
        if (score < best_score) {
          best_score = score;
          best = i;
        }
      }
      members.push_back(best);
      for (int x = 0; x < n; ++x) ones[static_cast<std::size_t>(x)] += c[best](x);
    }
    return members;
  };
  std::size_t length = std::max<std::size_t>(1, initial_size);
  std::mt19937_64 rng(seed);
  for (int d = 0; d <= options.max_doublings; ++d) {
    for (int s = 0; s < options.samples_per_size; ++s) {
      auto members = sample_indices(weights, length, rng);
      if (deviation(members) <= eps) return finish(std::move(members), d, false);
    }
    auto members = greedy(length);
    if (deviation(members) <= eps) return finish(std::move(members), d, true);
    length *= 2;
  }
  throw DefectError("measure sparsification failed after " + std::to_string(options.max_doublings) + " doublings");
}

}  // namespace pol
