#pragma once

#include <string>
#include <vector>

#include "pol/core.hpp"

namespace pol {

struct NamedClass {
  std::string name;
  ConceptClass c;
};

struct ClassPair {
  std::string name;
  ConceptClass c;
  ConceptClass h;
};

/// singletons(2..8), thresholds(2..6), powerset(1..3) and 50 seeded random
/// classes with |X| in 2..6 and |C| <= 16.
std::vector<NamedClass> fixture_classes();

/// Per fixture class: (C, C), (C, C plus the all-zero concept) and, when
/// |X| <= 4, (C, powerset of X).
std::vector<ClassPair> fixture_pairs();

/// Every class of non-empty concept sets over |X| = 1..max_domain whose
/// size is at most max_size.
std::vector<NamedClass> exhaustive_small_classes(int max_domain, std::size_t max_size);

}  // namespace pol
