#pragma once

// Shared test fixtures.  Each family is hand-checkable; the frozen facts the
// tests assert (neighborhood counts, cover edges, optimal sets, witness
// pairs) were derived by direct enumeration on these members.

#include <string>
#include <vector>

#include "frankl/core.hpp"

namespace fixtures {

using frankl::SetFamily;

// Union-closed, 6 members over {1,2,3,4}; element 3 is covert: {3} is not a
// member yet A u {3} stays in the family for every member avoiding 3.
inline SetFamily covert_family() {
    return SetFamily::from_label_sets({{"1", "2"},
                                       {"2", "4"},
                                       {"1", "2", "3"},
                                       {"1", "2", "4"},
                                       {"2", "3", "4"},
                                       {"1", "2", "3", "4"}});
}

// Union-closed hexagon of dimension two; optimal elements are exactly {2,3},
// element 1 is abundant but not optimal.
inline SetFamily dim2_family() {
    return SetFamily::from_label_sets({{"1", "2"},
                                       {"2", "3"},
                                       {"3", "4"},
                                       {"1", "2", "3"},
                                       {"2", "3", "4"},
                                       {"1", "2", "3", "4"}});
}

// The smallest separating union-closed family with an optimal element that
// is not abundant: 7 members over {1,2,3}, dimension three; element 1 is
// optimal with |F_1| = 3 and |F_1^c| = 4.
inline SetFamily optimal_not_abundant_family() {
    return SetFamily::from_label_sets(
        {{}, {"2"}, {"3"}, {"1", "2"}, {"1", "3"}, {"2", "3"}, {"1", "2", "3"}});
}

// Union closure of the edges of a 5-cycle: 16 members over {1,...,5},
// dimension three, every element optimal and abundant (in 10 of 16), yet
// every element x has a member of F_x^c with no x-cover.
inline SetFamily five_cycle_family() {
    return SetFamily::from_label_sets({{"1", "2"},
                                       {"1", "5"},
                                       {"2", "3"},
                                       {"3", "4"},
                                       {"4", "5"},
                                       {"1", "2", "3"},
                                       {"1", "2", "5"},
                                       {"1", "4", "5"},
                                       {"2", "3", "4"},
                                       {"3", "4", "5"},
                                       {"1", "2", "3", "4"},
                                       {"1", "2", "3", "5"},
                                       {"1", "2", "4", "5"},
                                       {"1", "3", "4", "5"},
                                       {"2", "3", "4", "5"},
                                       {"1", "2", "3", "4", "5"}});
}

// the 5-cycle edges alone (their union closure is five_cycle_family)
inline SetFamily five_cycle_edges() {
    return SetFamily::from_label_sets(
        {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}, {"1", "5"}});
}

// dominating family and 2-tent of the final tent example
inline SetFamily tent_dominating_family() {
    return SetFamily::from_label_sets({{}, {"1", "3"}, {"2", "4"}});
}

inline SetFamily tent_two_tent() {
    return SetFamily::from_label_sets({{"1"}, {"2"}, {"1", "2"}});
}

} // namespace fixtures
