#pragma once

// Brute-force reference computations. Each one follows a definition
// directly and shares no search code with the library it checks.

#include "pol/core.hpp"
#include "pol/dims.hpp"

namespace pol::oracle {

/// Largest depth of a complete mistake tree, found by explicit tree search.
int ldim_tree(const ConceptClass& c);

/// Largest instance set on which C realizes every labeling.
int vcdim_brute(const ConceptClass& c);

/// Largest concept set on which the instances realize every labeling.
int dual_vcdim_brute(const ConceptClass& c);

/// Largest k with x_1..x_k and h_1..h_k in C such that h_i(x_j) = 1[j <= i],
/// by enumerating ordered instance sequences.
int threshold_dim_brute(const ConceptClass& c);

/// Max over every H-unrealizable labeled set S (all 4^n of them) of the
/// smallest C-unrealizable subset of S, floored at 2. kUnbounded if some
/// H-unrealizable set is C-realizable. Requires |X| <= 10 and |C|, |H| <= 64.
Count dual_helly_brute(const ConceptClass& c, const ConceptClass& h);

/// Equivalence-query game: each query is some h in H, each answer is a
/// counterexample consistent with the remaining targets.
Count eq_queries_brute(const ConceptClass& c, const ConceptClass& h);

}  // namespace pol::oracle
