#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace pol::oracle {
namespace {

using Rows = std::vector<Concept>;

bool tree_exists(const Rows& v, int depth, int n) {
  if (v.empty()) return false;
  if (depth == 0) return true;
  for (int x = 0; x < n; ++x) {
    Rows zero, one;
    for (const auto& h : v) (h(x) ? one : zero).push_back(h);
    if (tree_exists(zero, depth - 1, n) && tree_exists(one, depth - 1, n)) return true;
  }
  return false;
}

// Bitmask over concept indices of the concepts labeling x as y.
std::vector<std::uint64_t> label_masks(const ConceptClass& c) {
  if (c.size() > 64) throw std::invalid_argument("oracle supports at most 64 concepts");
  const int n = c.domain_size();
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(2 * n), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int x = 0; x < n; ++x) masks[static_cast<std::size_t>(2 * x + c[i](x))] |= std::uint64_t{1} << i;
  return masks;
}

std::uint64_t full_mask(std::size_t size) { return size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1; }

}  // namespace

int ldim_tree(const ConceptClass& c) {
  const Rows rows = c.concepts();
  if (rows.empty()) return -1;
  int d = 0;
  while (tree_exists(rows, d + 1, c.domain_size())) ++d;
  return d;
}

int vcdim_brute(const ConceptClass& c) {
  const int n = c.domain_size();
  if (n > 20) throw std::invalid_argument("vcdim oracle supports at most 20 instances");
  if (c.is_empty()) return 0;
  int best = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    const int k = std::popcount(s);
    if (k <= best) continue;
    std::vector<std::uint64_t> patterns;
    for (const auto& h : c.concepts()) patterns.push_back(h.bits() & s);
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    if (patterns.size() == (std::size_t{1} << k)) best = k;
  }
  return best;
}

int dual_vcdim_brute(const ConceptClass& c) {
  const std::size_t m = c.size();
  if (m > 24) throw std::invalid_argument("dual vcdim oracle supports at most 24 concepts");
  const int n = c.domain_size();
  int best = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
    const int k = std::popcount(s);
    if (k <= best || (std::uint64_t{1} << k) > static_cast<std::uint64_t>(n)) continue;
    std::vector<std::uint64_t> patterns;
    for (int x = 0; x < n; ++x) {
      std::uint64_t p = 0;
      int bit = 0;
      for (std::size_t i = 0; i < m; ++i)
        if ((s >> i) & 1U) p |= static_cast<std::uint64_t>(c[i](x)) << bit++;
      patterns.push_back(p);
    }
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    if (patterns.size() == (std::size_t{1} << k)) best = k;
  }
  return best;
}

int threshold_dim_brute(const ConceptClass& c) {
  const int n = c.domain_size();
  std::vector<int> seq;
  // Every prefix of a valid sequence is valid, so depth-first extension
  // visits every valid sequence.
  auto valid = [&]() {
    const int k = static_cast<int>(seq.size());
    for (int i = 1; i <= k; ++i) {
      bool found = false;
      for (const auto& h : c.concepts()) {
        bool match = true;
        for (int j = 1; j <= k && match; ++j) match = h(seq[static_cast<std::size_t>(j - 1)]) == (j <= i ? 1 : 0);
        if (match) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  int best = 0;
  std::function<void()> extend = [&]() {
    best = std::max(best, static_cast<int>(seq.size()));
    for (int x = 0; x < n; ++x) {
      if (std::find(seq.begin(), seq.end(), x) != seq.end()) continue;
      seq.push_back(x);
      if (valid()) extend();
      seq.pop_back();
    }
  };
  extend();
  return best;
}

Count dual_helly_brute(const ConceptClass& c, const ConceptClass& h) {
  const int n = c.domain_size();
  if (n > 10) throw std::invalid_argument("dual Helly oracle supports at most 10 instances");
  if (h.domain_size() != n) throw std::invalid_argument("classes must share a domain");
  const auto cm = label_masks(c);
  const auto hm = label_masks(h);
  const int e = 2 * n;
  const std::size_t sets = std::size_t{1} << e;
  // smallest[S] = size of the smallest C-unrealizable subset of S, or -1.
  std::vector<int> smallest(sets, -1);
  Count best = 2;
  for (std::size_t s = 1; s < sets; ++s) {
    std::uint64_t cv = full_mask(c.size());
    std::uint64_t hv = full_mask(h.size());
    for (int k = 0; k < e; ++k) {
      if (!((s >> k) & 1U)) continue;
      cv &= cm[static_cast<std::size_t>(k)];
      hv &= hm[static_cast<std::size_t>(k)];
    }
    int value = cv == 0 ? std::popcount(s) : -1;
    for (int k = 0; k < e; ++k) {
      if (!((s >> k) & 1U)) continue;
      const int sub = smallest[s & ~(std::size_t{1} << k)];
      if (sub >= 0 && (value < 0 || sub < value)) value = sub;
    }
    smallest[s] = value;
    if (hv == 0) {
      if (value < 0) return kUnbounded;
      best = std::max(best, value);
    }
  }
  return best;
}

Count eq_queries_brute(const ConceptClass& c, const ConceptClass& h) {
  const int n = c.domain_size();
  const auto cm = label_masks(c);
  std::map<std::uint64_t, Count> memo;
  std::function<Count(std::uint64_t)> solve = [&](std::uint64_t v) -> Count {
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    Count best = kUnbounded;
    for (const auto& q : h.concepts()) {
      Count worst = 0;
      for (int x = 0; x < n && worst != kUnbounded; ++x) {
        const int y = 1 - q(x);
        const std::uint64_t next = v & cm[static_cast<std::size_t>(2 * x + y)];
        if (next == 0) continue;
        if (next == v) {
          worst = kUnbounded;
          break;
        }
        worst = std::max(worst, solve(next));
      }
      if (worst != kUnbounded) best = std::min(best, saturating_add(1, worst));
    }
    memo.emplace(v, best);
    return best;
  };
  if (c.is_empty()) return 0;
  return solve(full_mask(c.size()));
}

}  // namespace pol::oracle
