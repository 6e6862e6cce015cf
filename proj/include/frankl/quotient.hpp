#pragma once

// The separating reduction: glue x ~ y whenever F_x = F_y.  The induced map
// on members is an order isomorphism onto a separating family over the
// class representatives, and it transports unions, intersections, abundance
// and optimality both ways.  verify_quotient re-checks all of that.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frankl/abundance.hpp"
#include "frankl/core.hpp"
#include "frankl/errors.hpp"
#include "frankl/poset.hpp"

namespace frankl {

struct QuotientResult {
    // classes[c] = ascending element indices of one ~-class; classes are
    // ordered by their representative (least) element
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> class_of;   // element index -> class id
    SetFamily quotient;                  // S, labelled by class representatives
    std::vector<std::size_t> forward;    // member index in F -> member index in S
    std::vector<std::size_t> backward;   // member index in S -> member index in F
    std::vector<std::size_t> element_forward;  // element index in F -> element index in S
};

inline QuotientResult separating_quotient(const SetFamily& f) {
    if (!f.nontrivial()) throw domain_error("separating_quotient: family must be nontrivial");
    auto nm = neighborhoods(f);
    const std::size_t u = f.universe_size();

    QuotientResult q;
    q.class_of.assign(u, static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < u; ++x) {
        if (q.class_of[x] != static_cast<std::size_t>(-1)) continue;
        std::size_t cid = q.classes.size();
        q.classes.push_back({x});
        q.class_of[x] = cid;
        for (std::size_t y = x + 1; y < u; ++y)
            if (q.class_of[y] == static_cast<std::size_t>(-1) &&
                nm.containing[x] == nm.containing[y]) {
                q.classes[cid].push_back(y);
                q.class_of[y] = cid;
            }
    }

    // Representative = least element of the class; element order is label
    // order, so representatives are already lexicographically sorted.
    std::vector<std::string> rep_labels;
    for (const auto& cls : q.classes) rep_labels.push_back(f.label(cls.front()));
    assert(std::is_sorted(rep_labels.begin(), rep_labels.end()));

    std::vector<ESet> mapped;
    for (const auto& m : f.members()) {
        ESet im(q.classes.size());
        for (std::size_t x : m.indices()) im.add(q.class_of[x]);
        mapped.push_back(std::move(im));
    }
    q.quotient = SetFamily::from_members(rep_labels, mapped);
    if (q.quotient.size() != f.size())
        throw internal_error("separating_quotient: member map is not injective");

    q.forward.resize(f.size());
    q.backward.assign(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto j = q.quotient.member_index(mapped[i]);
        assert(j);
        q.forward[i] = *j;
        q.backward[*j] = i;
    }
    q.element_forward.resize(u);
    for (std::size_t x = 0; x < u; ++x) {
        auto e = q.quotient.element_index(rep_labels[q.class_of[x]]);
        assert(e);
        q.element_forward[x] = *e;
    }
    if (!is_separating(q.quotient).separating)
        throw internal_error("separating_quotient: quotient family is not separating");
    return q;
}

// The five preservation checks, reported individually.
struct QuotientChecks {
    bool order_isomorphism = false;
    bool union_commutes = false;
    bool intersection_commutes = false;
    bool abundance_preserved = false;
    bool optimality_preserved = false;

    bool all() const {
        return order_isomorphism && union_commutes && intersection_commutes &&
               abundance_preserved && optimality_preserved;
    }
};

inline QuotientChecks verify_quotient(const SetFamily& f, const QuotientResult& q) {
    QuotientChecks out;
    const auto& s = q.quotient;

    auto map_set = [&](const ESet& a) {
        ESet im(s.universe_size());
        for (std::size_t x : a.indices()) im.add(q.element_forward[x]);
        return im;
    };

    // order isomorphism: bijective on members, preserving and reflecting inclusion
    out.order_isomorphism = s.size() == f.size();
    for (std::size_t i = 0; i < f.size() && out.order_isomorphism; ++i) {
        if (s.member(q.forward[i]) != map_set(f.member(i))) out.order_isomorphism = false;
        if (q.backward[q.forward[i]] != i) out.order_isomorphism = false;
        for (std::size_t j = 0; j < f.size() && out.order_isomorphism; ++j)
            if (f.member(i).subset_of(f.member(j)) !=
                s.member(q.forward[i]).subset_of(s.member(q.forward[j])))
                out.order_isomorphism = false;
    }

    // [A u B] = [A] u [B] and [A n B] = [A] n [B] over member pairs
    out.union_commutes = true;
    out.intersection_commutes = true;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (map_set(f.member(i) | f.member(j)) !=
                (map_set(f.member(i)) | map_set(f.member(j))))
                out.union_commutes = false;
            if (map_set(f.member(i) & f.member(j)) !=
                (map_set(f.member(i)) & map_set(f.member(j))))
                out.intersection_commutes = false;
        }

    // abundance and optimality transport both ways
    auto rf = classify_elements(f);
    auto rs = classify_elements(s);
    out.abundance_preserved = true;
    out.optimality_preserved = true;
    for (std::size_t x = 0; x < f.universe_size(); ++x) {
        const auto& rx = rf[x];
        const auto& ry = rs[q.element_forward[x]];
        if (rx.abundant != ry.abundant) out.abundance_preserved = false;
        if (rx.optimal != ry.optimal) out.optimality_preserved = false;
    }
    return out;
}

// Quotient report: classes, member bijection, check results.
inline nlohmann::ordered_json quotient_to_json(const SetFamily& f, const QuotientResult& q,
                                               const QuotientChecks& checks) {
    nlohmann::ordered_json doc;
    doc["separating_input"] = is_separating(f).separating;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& cls : q.classes) {
        nlohmann::ordered_json c;
        c["representative"] = "[" + f.label(cls.front()) + "]";
        std::vector<std::string> mem;
        for (std::size_t x : cls) mem.push_back(f.label(x));
        c["elements"] = mem;
        classes.push_back(std::move(c));
    }
    doc["classes"] = std::move(classes);
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        nlohmann::ordered_json m;
        m["member"] = f.set_to_string(f.member(i));
        m["image"] = q.quotient.set_to_string(q.quotient.member(q.forward[i]));
        members.push_back(std::move(m));
    }
    doc["member_map"] = std::move(members);
    doc["quotient"] = nlohmann::ordered_json::parse(serialize_family(q.quotient));
    doc["checks"] = {{"order_isomorphism", checks.order_isomorphism},
                     {"union_commutes", checks.union_commutes},
                     {"intersection_commutes", checks.intersection_commutes},
                     {"abundance_preserved", checks.abundance_preserved},
                     {"optimality_preserved", checks.optimality_preserved}};
    return doc;
}

} // namespace frankl
