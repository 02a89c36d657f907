#include "pol/dims.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <vector>

#include "pol/errors.hpp"

namespace pol {

namespace {

int floor_log2(std::size_t v) { return v == 0 ? -1 : static_cast<int>(std::bit_width(v)) - 1; }

// Labels of `h` on the instances of `set`, packed in increasing instance order.
std::uint32_t project(std::uint64_t bits, std::uint64_t set) {
  std::uint32_t out = 0;
  int k = 0;
  while (set != 0) {
    const int x = std::countr_zero(set);
    out |= static_cast<std::uint32_t>((bits >> x) & 1U) << k;
    ++k;
    set &= set - 1;
  }
  return out;
}

bool shatters(const ConceptClass& c, std::uint64_t set) {
  const int k = std::popcount(set);
  const std::size_t patterns = std::size_t{1} << k;
  if (patterns > c.size()) return false;
  std::vector<char> seen(patterns, 0);
  std::size_t distinct = 0;
  for (const auto& h : c.concepts()) {
    const auto p = project(h.bits(), set);
    if (!seen[p]) {
      seen[p] = 1;
      if (++distinct == patterns) return true;
    }
  }
  return false;
}

}  // namespace

std::string count_to_string(Count c) { return c == kUnbounded ? "inf" : std::to_string(c); }

LittlestoneCache::LittlestoneCache(ConceptClass c) : class_(std::move(c)) {}

int LittlestoneCache::operator()(const IndexSet& space) {
  if (space.empty()) return -1;
  if (auto it = memo_.find(space); it != memo_.end()) return it->second;
  const int ceiling = floor_log2(space.count());
  int best = 0;
  for (int x = 0; x < class_.domain_size() && best < ceiling; ++x) {
    const IndexSet zero = space & class_.agreeing(x, 0);
    if (zero.empty()) continue;
    const IndexSet one = space & class_.agreeing(x, 1);
    if (one.empty()) continue;
    // Both restrictions are proper subsets here, so the recursion is
    // well-founded.
    const int a = (*this)(zero);
    if (a + 1 <= best) continue;
    const int b = (*this)(one);
    best = std::max(best, std::min(a, b) + 1);
  }
  memo_.emplace(space, best);
  return best;
}

int ldim(const ConceptClass& c) {
  LittlestoneCache cache(c);
  return cache.root();
}

int vcdim(const ConceptClass& c) {
  if (c.is_empty()) return 0;
  const int n = c.domain_size();
  std::vector<std::uint64_t> level{0};
  int k = 0;
  while (true) {
    std::vector<std::uint64_t> next;
    for (const auto s : level) {
      const int start = s == 0 ? 0 : 64 - std::countl_zero(s);
      for (int x = start; x < n; ++x) {
        const std::uint64_t t = s | (std::uint64_t{1} << x);
        if (shatters(c, t)) next.push_back(t);
      }
    }
    if (next.empty()) return k;
    ++k;
    level = std::move(next);
  }
}

int dual_vcdim(const ConceptClass& c) {
  const int n = c.domain_size();
  const std::size_t m = c.size();
  const int ceiling = floor_log2(static_cast<std::size_t>(n));
  int best = 0;
  std::vector<std::uint32_t> patterns(static_cast<std::size_t>(n), 0);

  std::function<void(std::size_t, int)> extend = [&](std::size_t start, int depth) {
    for (std::size_t i = start; i < m && best < ceiling; ++i) {
      std::vector<std::uint32_t> saved = patterns;
      const std::size_t needed = std::size_t{1} << (depth + 1);
      std::vector<char> seen(needed, 0);
      std::size_t distinct = 0;
      for (int x = 0; x < n; ++x) {
        auto& p = patterns[static_cast<std::size_t>(x)];
        p |= static_cast<std::uint32_t>(c[i](x)) << depth;
        if (!seen[p]) {
          seen[p] = 1;
          ++distinct;
        }
      }
      if (distinct == needed) {
        best = std::max(best, depth + 1);
        if ((std::size_t{1} << (depth + 2)) <= static_cast<std::size_t>(n)) extend(i + 1, depth + 1);
      }
      patterns = std::move(saved);
    }
  };
  extend(0, 0);
  return best;
}

int threshold_dim(const ConceptClass& c) {
  // A chain (h_1, x_1), ..., (h_k, x_k) with h_i(x_j) = 1[j <= i] is grown
  // from the top: the next concept must label every chosen instance 1 and
  // the next instance must be labeled 0 by every chosen concept. The state
  // (chosen instances, admissible instances) determines all extensions.
  struct Key {
    std::uint64_t chosen;
    std::uint64_t admissible;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.chosen * 0x9e3779b97f4a7c15ULL ^ k.admissible); }
  };
  std::unordered_map<Key, int, KeyHash> memo;
  const int n = c.domain_size();

  std::function<int(std::uint64_t, std::uint64_t)> grow = [&](std::uint64_t chosen, std::uint64_t admissible) -> int {
    if (admissible == 0) return 0;
    const Key key{chosen, admissible};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int best = 0;
    const int ceiling = std::popcount(admissible);
    for (int x = 0; x < n && best < ceiling; ++x) {
      if (!((admissible >> x) & 1U)) continue;
      const std::uint64_t need = chosen | (std::uint64_t{1} << x);
      std::vector<std::uint64_t> tried;
      for (const auto& h : c.concepts()) {
        if ((h.bits() & need) != need) continue;
        const std::uint64_t next_admissible = admissible & ~h.bits();
        if (std::find(tried.begin(), tried.end(), next_admissible) != tried.end()) continue;
        tried.push_back(next_admissible);
        best = std::max(best, 1 + grow(need, next_admissible));
        if (best >= ceiling) break;
      }
    }
    memo.emplace(key, best);
    return best;
  };
  const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return grow(0, all);
}

namespace {

// Size of the smallest C-unrealizable subset of `s`, or kUnbounded.
Count smallest_unrealizable_subset(const ConceptClass& c, const std::vector<LabeledExample>& s) {
  if (!c.consistent_with(s).empty()) return kUnbounded;
  const int size = static_cast<int>(s.size());
  std::vector<int> pick;
  std::function<bool(int, int, const IndexSet&)> search = [&](int start, int remaining, const IndexSet& space) -> bool {
    if (remaining == 0) return space.empty();
    for (int i = start; i <= size - remaining; ++i) {
      const auto& e = s[static_cast<std::size_t>(i)];
      if (search(i + 1, remaining - 1, space & c.agreeing(e.x, e.y))) return true;
    }
    return false;
  };
  for (int k = 0; k <= size; ++k)
    if (search(0, k, c.all())) return k;
  return kUnbounded;
}

}  // namespace

DualHellyResult dual_helly(const ConceptClass& c, const ConceptClass& h, const DualHellyOptions& options) {
  if (c.domain_size() != h.domain_size()) throw InvalidInput("C and H must share a domain");
  const int n = c.domain_size();
  Count raw = 0;
  auto account = [&](Count f) { raw = std::max(raw, f); };

  // Minimal sets that mention some instance twice are exactly the
  // contradiction pairs; singletons are handled alongside.
  for (int x = 0; x < n; ++x) {
    bool both_h_realizable = true;
    for (int y = 0; y < 2; ++y) {
      if (h.agreeing(x, y).empty()) {
        both_h_realizable = false;
        account(c.agreeing(x, y).empty() ? 1 : kUnbounded);
      }
    }
    if (both_h_realizable) {
      const bool singles_c_realizable = !c.agreeing(x, 0).empty() && !c.agreeing(x, 1).empty();
      account(singles_c_realizable ? 2 : 1);
    }
  }

  // Minimal H-unrealizable partial functions on two or more instances.
  std::vector<LabeledExample> s;
  std::function<void(int, const IndexSet&)> visit = [&](int start, const IndexSet& hspace) {
    for (int x = start; x < n; ++x) {
      for (int y = 0; y < 2; ++y) {
        if (h.agreeing(x, y).empty()) continue;
        const IndexSet next = hspace & h.agreeing(x, y);
        s.push_back({x, y});
        if (static_cast<int>(s.size()) > options.max_set_size)
          throw CapExceeded("dual Helly enumeration exceeded the set-size cap of " + std::to_string(options.max_set_size));
        if (next.empty()) {
          bool minimal = true;
          for (std::size_t drop = 0; drop + 1 < s.size() && minimal; ++drop) {
            IndexSet rest = h.all();
            for (std::size_t i = 0; i < s.size(); ++i)
              if (i != drop) rest &= h.agreeing(s[i].x, s[i].y);
            minimal = !rest.empty();
          }
          if (minimal) account(smallest_unrealizable_subset(c, s));
        } else {
          visit(x + 1, next);
        }
        s.pop_back();
      }
    }
  };
  visit(0, h.all());

  DualHellyResult result;
  result.raw = raw;
  result.value = raw == kUnbounded ? kUnbounded : std::max(raw, 2);
  result.trivial_class = c.size() <= 1;
  return result;
}

MistakeBoundTable::MistakeBoundTable(ConceptClass c, ConceptClass h, MistakeBoundOptions options)
    : c_(std::move(c)), h_(std::move(h)), options_(options), ldim_(c_) {
  if (c_.domain_size() != h_.domain_size()) throw InvalidInput("C and H must share a domain");
  if (h_.is_empty()) throw InvalidInput("hypothesis class is empty");
}

Count MistakeBoundTable::value(const IndexSet& space) { return evaluate(space, nullptr); }

std::size_t MistakeBoundTable::best_hypothesis(const IndexSet& space) {
  std::size_t arg = 0;
  evaluate(space, &arg);
  return arg;
}

Count MistakeBoundTable::evaluate(const IndexSet& space, std::size_t* argmin) {
  if (space.empty()) {
    if (argmin) *argmin = 0;
    return 0;
  }
  if (auto it = memo_.find(space); it != memo_.end()) {
    if (argmin) *argmin = it->second.second;
    return it->second.first;
  }
  if (memo_.size() >= options_.max_states)
    throw CapExceeded("mistake-bound recursion exceeded " + std::to_string(options_.max_states) + " states");

  const int n = c_.domain_size();
  // Restricting the learner to H can only cost mistakes, so L(V) is a floor.
  const Count floor = ldim_(space);
  Count best = kUnbounded;
  std::size_t arg = 0;
  for (std::size_t hi = 0; hi < h_.size(); ++hi) {
    const Concept& hyp = h_[hi];
    Count worst = 0;
    for (int x = 0; x < n && worst < best; ++x) {
      for (int y = 0; y < 2 && worst < best; ++y) {
        const IndexSet next = space & c_.agreeing(x, y);
        if (next.empty()) continue;
        const Count err = hyp(x) != y ? 1 : 0;
        if (next == space) {
          if (err) worst = kUnbounded;
          continue;
        }
        worst = std::max(worst, saturating_add(err, evaluate(next, nullptr)));
      }
    }
    if (worst < best) {
      best = worst;
      arg = hi;
      if (best == floor) break;
    }
  }
  memo_.emplace(space, std::make_pair(best, arg));
  if (argmin) *argmin = arg;
  return best;
}

MistakeBoundResult mb_exact(const ConceptClass& c, const ConceptClass& h, const MistakeBoundOptions& options) {
  MistakeBoundTable table(c, h, options);
  MistakeBoundResult result;
  result.value = table.root();
  if (result.value != kUnbounded && !c.is_empty()) result.optimal_first_hypothesis = h[table.best_hypothesis(c.all())];
  return result;
}

Count simulate_eq_protocol(MistakeBoundTable& table) {
  const ConceptClass& c = table.concept_class();
  const ConceptClass& h = table.hypotheses();
  if (table.root() == kUnbounded) return kUnbounded;
  Count most = 0;
  for (std::size_t t = 0; t < c.size(); ++t) {
    const Concept& target = c[t];
    std::function<void(const IndexSet&, Count)> query = [&](const IndexSet& space, Count asked) {
      const Concept& guess = h[table.best_hypothesis(space)];
      const Count used = asked + 1;
      if (guess == target) {
        most = std::max(most, used);
        return;
      }
      for (int x = 0; x < c.domain_size(); ++x) {
        if (guess(x) == target(x)) continue;
        const IndexSet next = space & c.agreeing(x, target(x));
        if (next == space) throw DefectError("equivalence-query simulation made no progress");
        query(next, used);
      }
    };
    query(c.all(), 0);
  }
  return most;
}

Count eq_query_complexity(const ConceptClass& c, const ConceptClass& h, const MistakeBoundOptions& options) {
  MistakeBoundTable table(c, h, options);
  const Count mb = table.root();
  const Count qc = saturating_add(mb, 1);
  if (c.size() <= 8 && mb != kUnbounded) {
    const Count simulated = simulate_eq_protocol(table);
    if (simulated > qc)
      throw DefectError("equivalence-query simulation used " + std::to_string(simulated) + " queries, more than " +
                        std::to_string(qc));
  }
  return qc;
}

std::string DimensionReport::csv_header() { return "ldim,vcdim,dual_vcdim,dual_helly,threshold_dim,dual_helly_trivial"; }

std::string DimensionReport::csv_row() const {
  std::ostringstream os;
  os << ldim << ',' << vcdim << ',' << dual_vcdim << ',' << count_to_string(dual_helly.value) << ','
     << threshold_dim << ',' << (dual_helly.trivial_class ? 1 : 0);
  return os.str();
}

DimensionReport dimension_report(const ConceptClass& c, const std::optional<ConceptClass>& h) {
  DimensionReport r;
  r.ldim = ldim(c);
  r.vcdim = vcdim(c);
  r.dual_vcdim = dual_vcdim(c);
  r.dual_helly = dual_helly(c, h.value_or(c));
  r.threshold_dim = threshold_dim(c);
  return r;
}

}  // namespace pol
