#include "pol/harness/fixtures.hpp"

#include <bit>
#include <random>

namespace pol {

std::vector<NamedClass> fixture_classes() {
  std::vector<NamedClass> out;
  for (int n = 2; n <= 8; ++n) out.push_back({"singletons:" + std::to_string(n), singletons(n)});
  for (int n = 2; n <= 6; ++n) out.push_back({"thresholds:" + std::to_string(n), thresholds(n)});
  for (int d = 1; d <= 3; ++d) out.push_back({"powerset:" + std::to_string(d), powerset(d)});
  std::mt19937_64 rng(20240611);
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int cap = std::min(16, 1 << n);
    const int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cap));
    const std::uint64_t seed = rng() % 1000000;
    const std::string name =
        "random:" + std::to_string(n) + ":" + std::to_string(count) + ":" + std::to_string(seed);
    out.push_back({name, random_class(n, count, seed)});
  }
  return out;
}

std::vector<ClassPair> fixture_pairs() {
  std::vector<ClassPair> out;
  for (const auto& f : fixture_classes()) {
    const int n = f.c.domain_size();
    out.push_back({f.name + "|self", f.c, f.c});
    const Concept zero(0, n);
    out.push_back({f.name + "|with_zero", f.c, f.c.with(std::span<const Concept>(&zero, 1))});
    if (n <= 4) out.push_back({f.name + "|powerset", f.c, powerset(n)});
  }
  return out;
}

std::vector<NamedClass> exhaustive_small_classes(int max_domain, std::size_t max_size) {
  std::vector<NamedClass> out;
  for (int n = 1; n <= max_domain; ++n) {
    const int rows = 1 << n;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << rows); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) > max_size) continue;
      std::vector<Concept> concepts;
      for (int b = 0; b < rows; ++b)
        if ((s >> b) & 1U) concepts.emplace_back(static_cast<std::uint64_t>(b), n);
      out.push_back({"all:" + std::to_string(n) + ":" + std::to_string(s), ConceptClass::from_concepts(n, concepts)});
    }
  }
  return out;
}

}  // namespace pol
