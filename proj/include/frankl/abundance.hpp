#pragma once

// Element classification (abundant / optimal / covert / basis sets) and
// explicit injection witnesses F_x^c -> F_x.
//
// Abundance itself is decided by the cardinality comparison |F_x^c| <= |F_x|
// (equivalent to the injection definition for finite families); the witness
// constructors below realize the injection explicitly.  Structured witnesses
// (cover, covert, dim2) are preferred; padding is the order-canonical
// fallback.  Every witness is machine-verified before it is returned;
// verification failure throws internal_error, never returns garbage.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frankl/core.hpp"
#include "frankl/errors.hpp"
#include "frankl/poset.hpp"

namespace frankl {

enum class WitnessMethod { cover, covert, dim2, tent, padding };

inline const char* witness_method_name(WitnessMethod m) {
    switch (m) {
        case WitnessMethod::cover: return "cover";
        case WitnessMethod::covert: return "covert";
        case WitnessMethod::dim2: return "dim2";
        case WitnessMethod::tent: return "tent";
        case WitnessMethod::padding: return "padding";
    }
    return "?";
}

// An explicit injective map from F_x^c into F_x, tagged with how it was built.
struct InjectionWitness {
    std::size_t element = 0;
    WitnessMethod method = WitnessMethod::padding;
    std::vector<std::pair<ESet, ESet>> pairs;  // A -> phi(A), sorted by A
};

// Checks a witness against the family it claims to certify: the domain must
// be exactly F_x^c, the image must lie inside F_x, and the map must be
// injective.  Called by every construction path before a witness escapes.
inline void verify_witness(const SetFamily& f, const InjectionWitness& w) {
    auto nm = neighborhoods(f);
    if (w.element >= f.universe_size())
        throw internal_error("witness names an element outside the universe");
    std::vector<ESet> domain;
    for (const auto& [a, b] : w.pairs) {
        auto ai = f.member_index(a);
        auto bi = f.member_index(b);
        if (!ai || !bi)
            throw internal_error("witness pair references a non-member set");
        if (a.test(w.element))
            throw internal_error("witness domain set contains the element");
        if (!b.test(w.element))
            throw internal_error("witness image set avoids the element");
        domain.push_back(a);
    }
    std::sort(domain.begin(), domain.end());
    if (std::adjacent_find(domain.begin(), domain.end()) != domain.end())
        throw internal_error("witness domain repeats a set");
    if (domain.size() != nm.avoiding[w.element].size())
        throw internal_error("witness domain does not cover all of F_x^c");
    std::vector<ESet> image;
    for (const auto& [a, b] : w.pairs) image.push_back(b);
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
        throw internal_error("witness is not injective");
}

inline InjectionWitness finish_witness(const SetFamily& f, InjectionWitness w) {
    std::sort(w.pairs.begin(), w.pairs.end(),
              [](const auto& p, const auto& q) { return canonical_less(p.first, q.first); });
    verify_witness(f, w);
    return w;
}

// Classification of one element of the universe.
struct ElementReport {
    std::size_t element = 0;
    std::size_t count_in = 0;   // |F_x|
    std::size_t count_out = 0;  // |F_x^c|
    bool abundant = false;      // count_out <= count_in
    bool optimal = false;       // F_x maximal in (N(F), subseteq)
    bool covert = false;        // {x} not a member yet A -> A u {x} lands in F
    bool singleton_member = false;
};

namespace detail {

// F_x subsetneq F_y given as ascending index lists.
inline bool proper_subset_indices(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace detail

inline std::vector<std::size_t> optimal_elements(const SetFamily& f) {
    if (!f.nontrivial()) throw domain_error("optimal_elements: family must be nontrivial");
    auto nm = neighborhoods(f);
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < f.universe_size(); ++x) {
        bool maximal = true;
        for (std::size_t y = 0; y < f.universe_size() && maximal; ++y)
            if (detail::proper_subset_indices(nm.containing[x], nm.containing[y]))
                maximal = false;
        if (maximal) out.push_back(x);
    }
    return out;
}

// Full report for every element of the universe.
inline std::vector<ElementReport> classify_elements(const SetFamily& f) {
    if (!f.nontrivial()) throw domain_error("classify_elements: family must be nontrivial");
    auto nm = neighborhoods(f);
    auto optimal = optimal_elements(f);
    std::vector<ElementReport> out;
    for (std::size_t x = 0; x < f.universe_size(); ++x) {
        ElementReport r;
        r.element = x;
        r.count_in = nm.containing[x].size();
        r.count_out = nm.avoiding[x].size();
        r.abundant = r.count_out <= r.count_in;
        r.optimal = std::binary_search(optimal.begin(), optimal.end(), x);
        ESet singleton = ESet::of(f.universe_size(), {x});
        r.singleton_member = f.has_member(singleton);
        if (!r.singleton_member) {
            bool covert = true;
            for (std::size_t i : nm.avoiding[x]) {
                ESet a = f.member(i);
                a.add(x);
                if (!f.has_member(a)) {
                    covert = false;
                    break;
                }
            }
            r.covert = covert;
        }
        out.push_back(r);
    }
    return out;
}

struct CovertCheck {
    bool covert = false;
    std::optional<InjectionWitness> witness;  // the pairs A -> A u {x} on success
};

// x is covert when {x} is not a member yet A -> A u {x} maps F_x^c into F.
inline CovertCheck is_covert(const SetFamily& f, std::size_t x) {
    if (!f.nontrivial()) throw domain_error("is_covert: family must be nontrivial");
    if (x >= f.universe_size()) throw domain_error("is_covert: element outside the universe");
    if (f.has_member(ESet::of(f.universe_size(), {x}))) return {};
    auto nm = neighborhoods(f);
    InjectionWitness w{x, WitnessMethod::covert, {}};
    for (std::size_t i : nm.avoiding[x]) {
        ESet a = f.member(i);
        ESet b = a;
        b.add(x);
        if (!f.has_member(b)) return {};
        w.pairs.emplace_back(std::move(a), std::move(b));
    }
    return {true, finish_witness(f, std::move(w))};
}

// Checks A u {x} in F only along min F_x^c; for union-closed families this
// is equivalent to the full check over F_x^c (finiteness supplies the
// required chain condition).
inline bool covert_min_check(const SetFamily& f, std::size_t x) {
    if (x >= f.universe_size()) throw domain_error("covert_min_check: element outside the universe");
    require_union_closed(f, "the minimal-row covertness criterion");
    auto nm = neighborhoods(f);
    std::vector<ESet> avoiding;
    for (std::size_t i : nm.avoiding[x]) avoiding.push_back(f.member(i));
    for (const auto& a : minimal_sets(avoiding)) {
        ESet b = a;
        b.add(x);
        if (!f.has_member(b)) return false;
    }
    return true;
}

// All x-covers of A: members B containing x with A <_c B in (F, subseteq).
inline std::vector<ESet> x_covers(const SetFamily& f, std::size_t x, const ESet& a) {
    if (x >= f.universe_size()) throw domain_error("x_covers: element outside the universe");
    if (!f.has_member(a)) throw domain_error("x_covers: " + f.set_to_string(a) + " is not a member");
    if (a.test(x)) throw domain_error("x_covers: " + f.set_to_string(a) + " is not in F_x^c");
    std::vector<ESet> out;
    for (const auto& b : f.members()) {
        if (!b.test(x) || !a.proper_subset_of(b)) continue;
        bool covers = true;
        for (const auto& c : f.members())
            if (a.proper_subset_of(c) && c.proper_subset_of(b)) {
                covers = false;
                break;
            }
        if (covers) out.push_back(b);
    }
    return out;
}

struct CoverInjectionResult {
    std::optional<InjectionWitness> witness;  // present iff every A had an x-cover
    std::optional<ESet> uncovered;            // first A (canonical order) without one
};

// Assigns each A in F_x^c its canonical x-cover.  Injectivity is guaranteed
// for union-closed families (no member covers two sets avoiding x) and is
// re-verified anyway.
inline CoverInjectionResult cover_injection(const SetFamily& f, std::size_t x) {
    if (x >= f.universe_size()) throw domain_error("cover_injection: element outside the universe");
    require_union_closed(f, "the x-cover injection");
    auto nm = neighborhoods(f);
    InjectionWitness w{x, WitnessMethod::cover, {}};
    for (std::size_t i : nm.avoiding[x]) {
        const ESet& a = f.member(i);
        auto covers = x_covers(f, x, a);
        if (covers.empty()) return {std::nullopt, a};
        w.pairs.emplace_back(a, covers.front());  // least (size, mask) cover
    }
    return {finish_witness(f, std::move(w)), std::nullopt};
}

// Constructive witness for union-closed separating families of dimension
// two and an optimal x: U_F when it covers A, else A u X for the least
// X in F_x with A u X != U_F.  Each assignment is re-checked to be an
// x-cover rather than trusted.
inline InjectionWitness dim2_witness(const SetFamily& f, std::size_t x) {
    if (x >= f.universe_size()) throw domain_error("dim2_witness: element outside the universe");
    require_union_closed(f, "the dimension-two theorem");
    if (!is_separating(f).separating)
        throw precondition_error(
            "the dimension-two theorem requires a separating family; run quotient first");
    if (dimension(f) != 2)
        throw precondition_error("the dimension-two theorem requires dimension exactly two (got " +
                                 std::to_string(dimension(f)) + ")");
    {
        auto opt = optimal_elements(f);
        if (!std::binary_search(opt.begin(), opt.end(), x))
            throw precondition_error("the dimension-two theorem requires an optimal element; \"" +
                                     f.label(x) + "\" is not optimal");
    }
    auto nm = neighborhoods(f);
    ESet universe = f.universe_set();
    InjectionWitness w{x, WitnessMethod::dim2, {}};
    for (std::size_t i : nm.avoiding[x]) {
        const ESet& a = f.member(i);
        ESet chosen;
        auto covers_a = [&](const ESet& b) {
            auto cs = x_covers(f, x, a);
            return std::find(cs.begin(), cs.end(), b) != cs.end();
        };
        if (covers_a(universe)) {
            chosen = universe;
        } else {
            bool found = false;
            for (std::size_t j : nm.containing[x]) {
                ESet b = a | f.member(j);
                if (b != universe) {
                    chosen = b;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw internal_error("dim2_witness: no admissible union below the universe exists");
            if (!covers_a(chosen))
                throw internal_error("dim2_witness: constructed set is not an x-cover");
        }
        w.pairs.emplace_back(a, chosen);
    }
    return finish_witness(f, std::move(w));
}

// For nontrivial union-closed families of dimension <= 1: every element is
// abundant and misses at most one member.  Both facts are asserted, not
// assumed.
inline std::vector<ElementReport> dim_le1_report(const SetFamily& f) {
    if (!f.nontrivial()) throw domain_error("dim_le1_report: family must be nontrivial");
    require_union_closed(f, "the dimension-one proposition");
    if (dimension(f) > 1)
        throw precondition_error("the dimension-one proposition requires dimension at most one (got " +
                                 std::to_string(dimension(f)) + ")");
    auto reports = classify_elements(f);
    for (const auto& r : reports) {
        if (!r.abundant || r.count_out > 1)
            throw internal_error("dim_le1_report: an element misses more than one member");
    }
    return reports;
}

// Intersection of all members containing x.  Equals {x} whenever the family
// is separating and union-closed and x is optimal.
inline ESet neighborhood_intersection(const SetFamily& f, std::size_t x) {
    if (x >= f.universe_size())
        throw domain_error("neighborhood_intersection: element outside the universe");
    auto nm = neighborhoods(f);
    ESet acc = f.universe_set();
    for (std::size_t i : nm.containing[x]) acc = acc & f.member(i);
    return acc;
}

// Members not expressible as a union of two other members.  Always contains
// every minimal member.
inline std::vector<ESet> basis_sets(const SetFamily& f) {
    require_union_closed(f, "basis-set computation");
    std::vector<bool> decomposable(f.size(), false);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            ESet u = f.member(i) | f.member(j);
            if (u == f.member(i) || u == f.member(j)) continue;
            if (auto k = f.member_index(u)) decomposable[*k] = true;
        }
    std::vector<ESet> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!decomposable[i]) out.push_back(f.member(i));
    return out;
}

// Order-canonical fallback injection: pairs the (size, mask)-sorted F_x^c
// with F_x position by position.  Requires |F_x^c| <= |F_x|.
inline InjectionWitness padding_witness(const SetFamily& f, std::size_t x) {
    if (x >= f.universe_size()) throw domain_error("padding_witness: element outside the universe");
    auto nm = neighborhoods(f);
    if (nm.avoiding[x].size() > nm.containing[x].size())
        throw precondition_error("element \"" + f.label(x) + "\" is not abundant (|F_x| = " +
                                 std::to_string(nm.containing[x].size()) + " < |F_x^c| = " +
                                 std::to_string(nm.avoiding[x].size()) + ")");
    InjectionWitness w{x, WitnessMethod::padding, {}};
    for (std::size_t k = 0; k < nm.avoiding[x].size(); ++k)
        w.pairs.emplace_back(f.member(nm.avoiding[x][k]), f.member(nm.containing[x][k]));
    return finish_witness(f, std::move(w));
}

// Witness serialization: {"element": "3", "method": "covert",
// "pairs": [[["1","2"],["1","2","3"]], ...]} with pairs ordered by
// (size, label tuple) of the domain set.
inline nlohmann::ordered_json witness_to_json(const SetFamily& f, const InjectionWitness& w) {
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
    for (const auto& [a, b] : w.pairs) {
        std::vector<std::string> la, lb;
        for (auto i : a.indices()) la.push_back(f.label(i));
        for (auto i : b.indices()) lb.push_back(f.label(i));
        pairs.emplace_back(std::move(la), std::move(lb));
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& p, const auto& q) {
        if (p.first.size() != q.first.size()) return p.first.size() < q.first.size();
        return p.first < q.first;
    });
    nlohmann::ordered_json doc;
    doc["element"] = f.label(w.element);
    doc["method"] = witness_method_name(w.method);
    auto jpairs = nlohmann::ordered_json::array();
    for (const auto& [la, lb] : pairs) {
        auto jp = nlohmann::ordered_json::array();
        jp.push_back(la);
        jp.push_back(lb);
        jpairs.push_back(std::move(jp));
    }
    doc["pairs"] = std::move(jpairs);
    return doc;
}

} // namespace frankl
