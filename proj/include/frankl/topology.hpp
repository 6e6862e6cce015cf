#pragma once

// Finite topological spaces as set families: axiom validation, minimal
// neighborhoods, and the abundant-point construction.
//
// Every finite space satisfies the descending chain condition on opens, so
// the construction below always succeeds: pass to the T0 quotient, pick an
// optimal class, observe its singleton is open, and pull the resulting
// injection back.  (Infinite spaces can genuinely fail: a topology whose
// every point lies in only finitely many of infinitely many opens has no
// abundant point.  Such spaces are out of reach of finite values and live
// only in prose like this.)

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "frankl/abundance.hpp"
#include "frankl/core.hpp"
#include "frankl/errors.hpp"
#include "frankl/quotient.hpp"

namespace frankl {

// A finite topological space; `opens` always contains the empty set and the
// full point set X, and is closed under pairwise union and intersection.
struct TopSpace {
    SetFamily opens;

    std::size_t point_count() const { return opens.universe_size(); }
};

struct TopologyValidation {
    std::optional<TopSpace> space;
    std::string rejection;                          // empty iff valid
    std::optional<std::pair<ESet, ESet>> witness;   // offending pair for closure escapes

    bool valid() const { return space.has_value(); }
};

// Validates the open-set axioms over a declared point set.  `points` may be
// empty, in which case the point set is inferred as the union of the sets.
// Rejections carry the first witness in scan order: missing empty set,
// missing X, undeclared point, union escape, intersection escape.
inline TopologyValidation validate_topology(std::vector<std::string> points,
                                            const std::vector<std::vector<std::string>>& sets) {
    if (sets.empty()) return {std::nullopt, "a topology must list its open sets", std::nullopt};

    std::vector<std::string> labels = points;
    for (const auto& s : sets)
        for (const auto& l : s) labels.push_back(l);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (!points.empty() && labels != points) {
        for (const auto& l : labels)
            if (!std::binary_search(points.begin(), points.end(), l))
                return {std::nullopt, "open sets use point \"" + l + "\" that is not declared",
                        std::nullopt};
    }

    // masks over the full label table (declared isolated points included)
    std::vector<ESet> opens;
    for (const auto& s : sets) {
        ESet m(labels.size());
        for (const auto& l : s) {
            auto it = std::lower_bound(labels.begin(), labels.end(), l);
            m.add(static_cast<std::size_t>(it - labels.begin()));
        }
        opens.push_back(std::move(m));
    }
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());

    auto has = [&](const ESet& s) { return std::binary_search(opens.begin(), opens.end(), s); };
    if (!has(ESet(labels.size())))
        return {std::nullopt, "the empty set is not open", std::nullopt};
    if (!has(ESet::full(labels.size())))
        return {std::nullopt, "the full point set X is not open", std::nullopt};
    for (std::size_t i = 0; i < opens.size(); ++i)
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            if (!has(opens[i] | opens[j]))
                return {std::nullopt, "union of two opens is not open",
                        std::make_pair(opens[i], opens[j])};
            if (!has(opens[i] & opens[j]))
                return {std::nullopt, "intersection of two opens is not open",
                        std::make_pair(opens[i], opens[j])};
        }

    TopSpace space{SetFamily::from_members(labels, opens)};
    return {std::move(space), "", std::nullopt};
}

inline TopSpace parse_topology(std::string_view text, std::size_t max_universe = 64) {
    RawFamilyFile raw = parse_family_file(text);
    auto v = validate_topology(raw.points.value_or(std::vector<std::string>{}), raw.sets);
    if (!v.valid()) throw parse_error("not a topology: " + v.rejection);
    if (v.space->point_count() > max_universe)
        throw parse_error("point set has " + std::to_string(v.space->point_count()) +
                          " elements, above the cap of " + std::to_string(max_universe));
    return std::move(*v.space);
}

// Least open set containing a; finite spaces are Alexandroff, so the
// intersection of all opens containing a is itself open.
inline ESet minimal_neighborhood(const TopSpace& t, std::size_t a) {
    if (a >= t.point_count()) throw domain_error("minimal_neighborhood: point outside X");
    if (!t.opens.nontrivial())
        throw domain_error("minimal_neighborhood: the topology has no nonempty open");
    ESet acc = neighborhood_intersection(t.opens, a);
    if (!t.opens.has_member(acc))
        throw internal_error("minimal_neighborhood: intersection of opens is not open");
    return acc;
}

struct AbundantPointResult {
    ElementId point;                        // in 0-indexed point table of the space
    InjectionWitness witness;               // verified over the opens family
    std::vector<std::size_t> point_class;   // the T0 class the point was pulled from
    ESet quotient_singleton;                // {[x]} as a member of the quotient (over quotient labels)
    SetFamily quotient;                     // the T0 quotient family
};

// The descending-chain construction specialized to finite spaces: T0-reduce,
// take the least optimal class whose neighborhood intersection is the open
// singleton {[x]}, inject A -> A u {[x]} there, and pull back along the
// order isomorphism.  All steps the theory guarantees are re-verified.
inline AbundantPointResult abundant_point(const TopSpace& t) {
    const SetFamily& tau = t.opens;
    if (!tau.nontrivial())
        throw precondition_error("abundant point requires a topology with a nonempty open set");

    QuotientResult q = separating_quotient(tau);
    const SetFamily& s = q.quotient;

    auto opt = optimal_elements(s);
    if (opt.empty()) throw internal_error("abundant_point: no optimal class exists");

    std::optional<std::size_t> chosen;
    for (std::size_t cand : opt) {
        ESet ix = neighborhood_intersection(s, cand);
        if (ix == ESet::of(s.universe_size(), {cand}) && s.has_member(ix)) {
            chosen = cand;
            break;
        }
    }
    // the theory makes every optimal class qualify; not finding one is a bug
    if (!chosen)
        throw internal_error("abundant_point: no optimal class has an open singleton");

    std::size_t cx = *chosen;
    ESet singleton = ESet::of(s.universe_size(), {cx});

    // classical singleton injection in the quotient: A -> A u {[x]}
    auto nm_s = neighborhoods(s);
    std::vector<std::pair<ESet, ESet>> s_pairs;
    for (std::size_t i : nm_s.avoiding[cx]) {
        ESet b = s.member(i) | singleton;
        if (!s.has_member(b))
            throw internal_error("abundant_point: singleton union left the quotient family");
        s_pairs.emplace_back(s.member(i), b);
    }

    // pull back along the member bijection
    std::size_t class_id = static_cast<std::size_t>(-1);
    for (std::size_t c = 0; c < q.classes.size(); ++c)
        if (q.element_forward[q.classes[c].front()] == cx) class_id = c;
    if (class_id == static_cast<std::size_t>(-1))
        throw internal_error("abundant_point: chosen class not found");
    std::size_t x = q.classes[class_id].front();  // least original label in the class

    InjectionWitness w{x, WitnessMethod::cover, {}};
    for (const auto& [a, b] : s_pairs) {
        auto ai = s.member_index(a);
        auto bi = s.member_index(b);
        w.pairs.emplace_back(tau.member(q.backward[*ai]), tau.member(q.backward[*bi]));
    }
    w = finish_witness(tau, std::move(w));

    return {tau.element(x), std::move(w), q.classes[class_id], std::move(singleton),
            std::move(q.quotient)};
}

} // namespace frankl
