#pragma once

// Alpha-tents (one-dimensional posets with a single greatest node) and the
// domination argument: if F* = F \ {0} dominates a union-closed alpha-tent T
// with alpha > 1, then F u T has an abundant element -- with no
// union-closedness assumed of F.  The companion construction derives the
// tent from a union-closed family itself when some height-one member exceeds
// every minimal member.
//
// Finiteness guarantees the maximum of {|M^up|} exists, so the transfinite
// branch of the argument (no maximum) is unreachable here and is not
// implemented.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "frankl/abundance.hpp"
#include "frankl/core.hpp"
#include "frankl/errors.hpp"
#include "frankl/poset.hpp"

namespace frankl {

struct TentCertificate {
    SetFamily tent;
    std::size_t alpha = 0;             // number of minimal nodes
    ESet apex;                         // the unique greatest node
    std::vector<ESet> minimal_nodes;   // canonical order
    bool union_closed = false;         // pairwise unions of minimal nodes stay in the tent
};

struct TentCheck {
    std::optional<TentCertificate> certificate;
    std::string rejection;                         // empty iff certified
    std::optional<std::pair<ESet, ESet>> witness;  // offending pair, when applicable

    bool ok() const { return certificate.has_value(); }
};

// Certifies T as an alpha-tent: exactly one maximal member (the apex), every
// other member minimal and strictly below it, at least one of them.  With
// `require_union_closed`, rejects tents whose minimal-node unions escape;
// the certificate records the flag either way.
inline TentCheck is_alpha_tent(const SetFamily& t, bool require_union_closed_flag = false) {
    if (t.size() == 0) return {std::nullopt, "a tent must be nonempty", std::nullopt};
    auto maxima = maximal_members(t);
    if (maxima.size() != 1) {
        return {std::nullopt, "a tent needs a single greatest node (found " +
                                  std::to_string(maxima.size()) + " maximal members)",
                std::make_pair(maxima[0], maxima.size() > 1 ? maxima[1] : maxima[0])};
    }
    ESet apex = maxima.front();
    std::vector<ESet> minimals;
    for (const auto& m : t.members()) {
        if (m == apex) continue;
        if (!m.proper_subset_of(apex))
            return {std::nullopt, "member " + t.set_to_string(m) + " is not below the apex",
                    std::make_pair(m, apex)};
        minimals.push_back(m);
    }
    if (minimals.empty())
        return {std::nullopt, "a tent has dimension one, a single node has dimension zero",
                std::nullopt};
    for (std::size_t i = 0; i < minimals.size(); ++i)
        for (std::size_t j = i + 1; j < minimals.size(); ++j)
            if (minimals[i].proper_subset_of(minimals[j]) ||
                minimals[j].proper_subset_of(minimals[i]))
                return {std::nullopt, "minimal nodes must form an antichain (dimension would exceed one)",
                        std::make_pair(minimals[i], minimals[j])};

    bool closed = true;
    std::optional<std::pair<ESet, ESet>> escape;
    for (std::size_t i = 0; i < minimals.size() && closed; ++i)
        for (std::size_t j = i + 1; j < minimals.size(); ++j)
            if (!t.has_member(minimals[i] | minimals[j])) {
                closed = false;
                escape = std::make_pair(minimals[i], minimals[j]);
                break;
            }
    if (require_union_closed_flag && !closed)
        return {std::nullopt, "tent is not union-closed (a union of minimal nodes escapes)", escape};

    TentCertificate cert;
    cert.tent = t;
    cert.alpha = minimals.size();
    cert.apex = apex;
    cert.minimal_nodes = std::move(minimals);
    cert.union_closed = closed;
    return {std::move(cert), "", std::nullopt};
}

struct DominationCheck {
    bool dominates = false;
    std::optional<ESet> witness;  // first member (canonical order) containing no minimal node
};

// F* dominates T iff every member of F* contains some minimal node of T.
// Callers pass the family with the empty member already stripped; sets over
// any universe extending the tent's are accepted via label lookup.
inline DominationCheck dominates(const SetFamily& fstar, const TentCertificate& t) {
    std::vector<ESet> nodes;
    for (const auto& n : t.minimal_nodes) {
        std::vector<std::string> labels;
        for (auto i : n.indices()) labels.push_back(t.tent.label(i));
        ESet mapped(fstar.universe_size());
        bool representable = true;
        for (const auto& l : labels) {
            auto e = fstar.element_index(l);
            if (!e) {
                representable = false;
                break;
            }
            mapped.add(*e);
        }
        if (representable) nodes.push_back(std::move(mapped));
    }
    for (const auto& m : fstar.members()) {
        bool covered = false;
        for (const auto& n : nodes)
            if (n.subset_of(m)) {
                covered = true;
                break;
            }
        if (!covered) return {false, m};
    }
    return {true, std::nullopt};
}

struct TentAbundanceResult {
    SetFamily combined;        // F u T over the merged universe
    ElementId element;         // the abundant element, indexed in `combined`
    InjectionWitness witness;  // verified against `combined`
    ESet chosen_m;             // minimal node maximizing |M^up|
    std::optional<ESet> chosen_n;  // the one minimal node missing x, when there is one
};

// The domination argument made explicit.  Requires a union-closed tent with
// alpha > 1 whose minimal nodes are dominated by F* = F \ {0}; F itself may
// be any family of sets.  Returns the element, the verified injection over
// F u T, and the nodes the construction picked.
inline TentAbundanceResult tent_abundant(const SetFamily& f, const TentCertificate& t) {
    if (t.alpha <= 1)
        throw precondition_error("the tent argument requires alpha > 1 minimal nodes (got " +
                                 std::to_string(t.alpha) + ")");
    if (!t.union_closed)
        throw precondition_error("the tent argument requires a union-closed tent");

    // merge label spaces: G = F* u T, combined = F u T
    bool f_has_empty = false;
    for (const auto& m : f.members())
        if (m.empty()) f_has_empty = true;

    auto sets = without_empty_member(f).label_sets();
    auto tsets = t.tent.label_sets();
    sets.insert(sets.end(), tsets.begin(), tsets.end());
    SetFamily g = SetFamily::from_label_sets(sets);

    {
        DominationCheck d = dominates(without_empty_member(f), t);
        if (!d.dominates)
            throw precondition_error("F* does not dominate the tent: member " +
                                     f.set_to_string(*d.witness) + " contains no minimal node");
    }

    // the tent transplanted into the merged universe
    auto in_g = [&](const ESet& s_in_t) {
        std::vector<std::string> labels;
        for (auto i : s_in_t.indices()) labels.push_back(t.tent.label(i));
        return g.set_from_labels(labels);
    };
    ESet apex = in_g(t.apex);
    std::vector<ESet> minimals;
    for (const auto& n : t.minimal_nodes) minimals.push_back(in_g(n));
    std::sort(minimals.begin(), minimals.end());

    // min G = min T (domination pushes every member above some minimal node)
    {
        auto ming = minimal_members(g);
        if (ming != minimals)
            throw internal_error("tent_abundant: minimal members of F* u T differ from the tent's");
    }

    // choose M maximizing |M^up| in G, ties to the least node
    ESet chosen_m;
    std::size_t best = 0;
    for (const auto& n : minimals) {
        std::size_t upn = up_set(g, n).size();
        if (upn > best) {
            best = upn;
            chosen_m = n;
        }
    }

    // least-label x in M; it misses at most one minimal node
    std::size_t x = chosen_m.indices().front();
    std::vector<ESet> missing;
    for (const auto& n : minimals)
        if (!n.test(x)) missing.push_back(n);
    if (missing.size() > 1)
        throw internal_error("tent_abundant: element misses more than one minimal node");

    // the final family F u T and its x-partition
    SetFamily combined = g;
    if (f_has_empty) {
        auto all = g.members();
        all.push_back(ESet(g.universe_size()));
        combined = SetFamily::from_members(g.labels(), std::move(all));
    }

    InjectionWitness w{x, WitnessMethod::tent, {}};
    if (missing.empty()) {
        // x lies in every minimal node, hence in every nonempty member
        if (f_has_empty) w.pairs.emplace_back(ESet(g.universe_size()), apex);
    } else {
        const ESet& chosen_n = missing.front();
        // G_x^c sits inside N^up \ {apex}; the counting step backing the
        // pairing is asserted, not assumed
        std::vector<ESet> n_up, m_up;
        for (const auto& b : up_set(g, chosen_n))
            if (b != apex) n_up.push_back(b);
        for (const auto& b : up_set(g, chosen_m))
            if (b != apex) m_up.push_back(b);
        if (n_up.size() > m_up.size())
            throw internal_error("tent_abundant: |N^up| exceeds |M^up| for the chosen node");

        std::vector<ESet> domain;
        for (const auto& m : g.members())
            if (!m.test(x)) domain.push_back(m);
        for (const auto& a : domain)
            if (std::find(n_up.begin(), n_up.end(), a) == n_up.end())
                throw internal_error("tent_abundant: a member avoiding x is not above N");

        // pair both sides in canonical (size, mask) order
        for (std::size_t k = 0; k < domain.size(); ++k)
            w.pairs.emplace_back(domain[k], m_up[k]);
        if (f_has_empty) w.pairs.emplace_back(ESet(g.universe_size()), apex);
    }

    w = finish_witness(combined, std::move(w));
    ElementId id = combined.element(x);
    std::optional<ESet> n_out;
    if (!missing.empty()) n_out = missing.front();
    return {std::move(combined), std::move(id), std::move(w), std::move(chosen_m),
            std::move(n_out)};
}

// Derives the tent from a union-closed family of nonempty sets with a
// height-one member H above every minimal member, then runs the domination
// argument on G u {0}.  With a single minimal member no tent is needed: any
// of its elements lies in every member.
inline TentAbundanceResult abundant_via_tent(const SetFamily& g) {
    if (!g.nontrivial()) throw domain_error("abundant_via_tent: family must be nontrivial");
    for (const auto& m : g.members())
        if (m.empty())
            throw precondition_error("the derived-tent argument requires nonempty members");
    require_union_closed(g, "the derived-tent argument");

    auto minimals = minimal_members(g);
    std::vector<ESet> with_empty = g.members();
    with_empty.push_back(ESet(g.universe_size()));
    SetFamily extended = SetFamily::from_members(g.labels(), std::move(with_empty));

    if (minimals.size() == 1) {
        std::size_t x = minimals.front().indices().front();
        ElementId id = extended.element(x);
        InjectionWitness w = padding_witness(extended, x);
        return {std::move(extended), std::move(id), std::move(w), minimals.front(), std::nullopt};
    }

    // least height-one member above every minimal member
    auto dag = cover_dag(g);
    std::optional<ESet> h;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (dag.height[i] != 1) continue;
        bool above_all = true;
        for (const auto& m : minimals)
            if (!m.subset_of(g.member(i))) {
                above_all = false;
                break;
            }
        if (above_all) {
            h = g.member(i);
            break;  // members are scanned in canonical order
        }
    }
    if (!h)
        throw precondition_error(
            "the derived-tent argument needs a height-one member above every minimal member");

    std::vector<std::vector<std::string>> tent_sets;
    auto to_labels = [&](const ESet& s) {
        std::vector<std::string> out;
        for (auto i : s.indices()) out.push_back(g.label(i));
        return out;
    };
    tent_sets.push_back(to_labels(*h));
    for (const auto& m : minimals) tent_sets.push_back(to_labels(m));
    SetFamily tent_family = SetFamily::from_label_sets(tent_sets);

    TentCheck check = is_alpha_tent(tent_family, /*require_union_closed_flag=*/true);
    if (!check.ok())
        throw internal_error("abundant_via_tent: derived tent failed certification: " +
                             check.rejection);
    return tent_abundant(extended, *check.certificate);
}

} // namespace frankl
