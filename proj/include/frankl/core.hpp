#pragma once

// Canonical representation of finite families of sets: interned element
// labels, members as block bitsets, and the elementary predicates
// (union-closedness, separation, neighborhoods) everything else builds on.
//
// Conventions used throughout the library:
//   * labels are sorted lexicographically and element index == rank in that
//     order, so all label-based tie-breaks are deterministic;
//   * members are kept deduplicated and sorted by (cardinality, mask value),
//     the "canonical order"; whenever an operation must pick an arbitrary
//     set, it picks the least one in this order.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frankl/errors.hpp"

namespace frankl {

// A subset of a family universe.  Word 0 holds indices 0..63; wider
// universes spill into further words, so there is no hard size limit
// (parsing applies a configurable cap, see ParseOptions).
class ESet {
public:
    ESet() = default;

    explicit ESet(std::size_t universe_size)
        : nbits_(universe_size), words_((universe_size + 63) / 64, 0) {}

    static ESet of(std::size_t universe_size, std::initializer_list<std::size_t> indices) {
        ESet s(universe_size);
        for (std::size_t i : indices) s.add(i);
        return s;
    }

    static ESet full(std::size_t universe_size) {
        ESet s(universe_size);
        for (std::size_t i = 0; i < universe_size; ++i) s.add(i);
        return s;
    }

    std::size_t universe_size() const { return nbits_; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void add(std::size_t i) {
        assert(i < nbits_);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void remove(std::size_t i) {
        assert(i < nbits_);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool subset_of(const ESet& other) const {
        assert(nbits_ == other.nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool proper_subset_of(const ESet& other) const {
        return subset_of(other) && *this != other;
    }

    ESet operator|(const ESet& other) const {
        assert(nbits_ == other.nbits_);
        ESet r(*this);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
        return r;
    }

    ESet operator&(const ESet& other) const {
        assert(nbits_ == other.nbits_);
        ESet r(*this);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
        return r;
    }

    // set difference
    ESet operator-(const ESet& other) const {
        assert(nbits_ == other.nbits_);
        ESet r(*this);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~other.words_[i];
        return r;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const ESet&, const ESet&) = default;

    // Canonical order: by cardinality, then by mask value (high word first).
    friend bool canonical_less(const ESet& a, const ESet& b) {
        assert(a.nbits_ == b.nbits_);
        std::size_t ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        for (std::size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    friend bool operator<(const ESet& a, const ESet& b) { return canonical_less(a, b); }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto w : words_) {
            h ^= static_cast<std::size_t>(w);
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ESetHash {
    std::size_t operator()(const ESet& s) const { return s.hash(); }
};

// An interned element: its rank in the lexicographic label order plus the label.
struct ElementId {
    std::size_t index = 0;
    std::string label;

    friend bool operator==(const ElementId&, const ElementId&) = default;
};

// A deduplicated family of sets over an interned universe.  The universe is
// always exactly the union of the members: a label no member uses cannot be
// represented (it would silently distort every per-element count).
class SetFamily {
public:
    SetFamily() = default;

    // `labels` must be sorted and unique; `members` are masks over that
    // order.  Deduplicates and canonically sorts the members.
    static SetFamily from_members(std::vector<std::string> labels, std::vector<ESet> members) {
        if (!std::is_sorted(labels.begin(), labels.end()) ||
            std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            throw domain_error("family labels must be sorted and unique");
        ESet used(labels.size());
        for (const auto& m : members) {
            if (m.universe_size() != labels.size())
                throw domain_error("member mask width does not match the label table");
            used = used | m;
        }
        if (!members.empty() && used != ESet::full(labels.size()))
            throw domain_error("universe must equal the union of members (unused label)");
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        SetFamily f;
        f.labels_ = std::move(labels);
        f.members_ = std::move(members);
        return f;
    }

    // Builds a family from members given as label lists; the universe is
    // collected from the sets themselves.
    static SetFamily from_label_sets(const std::vector<std::vector<std::string>>& sets) {
        std::vector<std::string> labels;
        for (const auto& s : sets)
            for (const auto& l : s) labels.push_back(l);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        std::vector<ESet> members;
        members.reserve(sets.size());
        for (const auto& s : sets) {
            ESet m(labels.size());
            for (const auto& l : s) {
                auto it = std::lower_bound(labels.begin(), labels.end(), l);
                m.add(static_cast<std::size_t>(it - labels.begin()));
            }
            members.push_back(std::move(m));
        }
        return from_members(std::move(labels), std::move(members));
    }

    std::size_t size() const { return members_.size(); }
    std::size_t universe_size() const { return labels_.size(); }

    const std::vector<ESet>& members() const { return members_; }
    const ESet& member(std::size_t i) const { return members_[i]; }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t e) const { return labels_[e]; }

    ElementId element(std::size_t e) const { return {e, labels_[e]}; }

    std::optional<std::size_t> member_index(const ESet& s) const {
        auto it = std::lower_bound(members_.begin(), members_.end(), s);
        if (it != members_.end() && *it == s)
            return static_cast<std::size_t>(it - members_.begin());
        return std::nullopt;
    }

    bool has_member(const ESet& s) const { return member_index(s).has_value(); }

    std::optional<std::size_t> element_index(std::string_view label) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it != labels_.end() && *it == label)
            return static_cast<std::size_t>(it - labels_.begin());
        return std::nullopt;
    }

    ESet set_from_labels(const std::vector<std::string>& labels) const {
        ESet s(universe_size());
        for (const auto& l : labels) {
            auto e = element_index(l);
            if (!e) throw domain_error("unknown element label: " + l);
            s.add(*e);
        }
        return s;
    }

    ESet universe_set() const { return ESet::full(labels_.size()); }

    // nonempty with a nonempty universe
    bool nontrivial() const { return !members_.empty() && !labels_.empty(); }

    std::string set_to_string(const ESet& s) const {
        std::string out = "{";
        bool first = true;
        for (std::size_t i : s.indices()) {
            if (!first) out += ",";
            out += labels_[i];
            first = false;
        }
        out += "}";
        return out;
    }

    // members as sorted label lists (the serialization and merge currency)
    std::vector<std::vector<std::string>> label_sets() const {
        std::vector<std::vector<std::string>> out;
        out.reserve(members_.size());
        for (const auto& m : members_) {
            std::vector<std::string> s;
            for (std::size_t i : m.indices()) s.push_back(labels_[i]);
            out.push_back(std::move(s));
        }
        return out;
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    std::vector<std::string> labels_;  // sorted lexicographically
    std::vector<ESet> members_;        // sorted canonically, unique
};

// The per-element partition of a family: containing[x] lists the member
// indices of F_x, avoiding[x] those of F_x^c, both ascending.
struct NeighborhoodMap {
    std::vector<std::vector<std::size_t>> containing;
    std::vector<std::vector<std::size_t>> avoiding;
};

inline NeighborhoodMap neighborhoods(const SetFamily& f) {
    if (!f.nontrivial()) throw domain_error("neighborhoods: family must be nontrivial");
    NeighborhoodMap nm;
    nm.containing.resize(f.universe_size());
    nm.avoiding.resize(f.universe_size());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t x = 0; x < f.universe_size(); ++x)
            (f.member(i).test(x) ? nm.containing[x] : nm.avoiding[x]).push_back(i);
    return nm;
}

struct UnionClosedCheck {
    bool closed = true;
    // first violating pair of member indices (canonical order) when not closed
    std::optional<std::pair<std::size_t, std::size_t>> violating;
};

inline UnionClosedCheck is_union_closed(const SetFamily& f) {
    if (f.size() == 0) throw domain_error("is_union_closed: family must be nonempty");
    std::unordered_set<ESet, ESetHash> present(f.members().begin(), f.members().end());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            if (!present.count(f.member(i) | f.member(j)))
                return {false, std::make_pair(i, j)};
    return {};
}

inline void require_union_closed(const SetFamily& f, const std::string& context) {
    auto c = is_union_closed(f);
    if (!c.closed)
        throw precondition_error(context + " requires a union-closed family (" +
                                 f.set_to_string(f.member(c.violating->first)) + " \xE2\x88\xAA " +
                                 f.set_to_string(f.member(c.violating->second)) +
                                 " is not a member)");
}

// Smallest union-closed superfamily (saturation of pairwise unions).
inline SetFamily union_closure(const SetFamily& f, std::size_t member_cap = std::size_t{1} << 20) {
    if (f.size() == 0) throw domain_error("union_closure: family must be nonempty");
    std::unordered_set<ESet, ESetHash> seen(f.members().begin(), f.members().end());
    std::vector<ESet> all(f.members());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            ESet u = all[i] | all[j];
            if (seen.insert(u).second) {
                all.push_back(std::move(u));
                if (all.size() > member_cap)
                    throw size_overflow_error("union_closure: closure exceeds the member cap of " +
                                              std::to_string(member_cap));
            }
        }
    }
    return SetFamily::from_members(f.labels(), std::move(all));
}

struct SeparatingCheck {
    bool separating = true;
    // first pair of element indices with equal neighborhoods when not separating
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

inline SeparatingCheck is_separating(const SetFamily& f) {
    if (!f.nontrivial()) throw domain_error("is_separating: family must be nontrivial");
    auto nm = neighborhoods(f);
    for (std::size_t x = 0; x < f.universe_size(); ++x)
        for (std::size_t y = x + 1; y < f.universe_size(); ++y)
            if (nm.containing[x] == nm.containing[y])
                return {false, std::make_pair(x, y)};
    return {};
}

// Family with the empty member (if any) removed; universe unchanged.
inline SetFamily without_empty_member(const SetFamily& f) {
    std::vector<ESet> kept;
    for (const auto& m : f.members())
        if (!m.empty()) kept.push_back(m);
    return SetFamily::from_members(f.labels(), std::move(kept));
}

// ---------------------------------------------------------------------------
// Family file format: {"sets": [["1","2"], ...]} with string labels and []
// for the empty set; an optional "points" array declares the universe and
// must equal the union of the sets.

struct ParseOptions {
    bool allow_trivial = false;      // permit the family {{}} (empty universe)
    std::size_t max_universe = 64;   // parse-time cap; raise via FRANKL_MAX_UNIVERSE in the CLI
};

struct RawFamilyFile {
    std::vector<std::vector<std::string>> sets;
    std::optional<std::vector<std::string>> points;
    std::vector<std::string> warnings;
};

// Syntax-only pass shared by the family and topology loaders.
inline RawFamilyFile parse_family_file(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sets"))
        throw parse_error("family file must be an object with a \"sets\" array");
    const auto& sets = doc["sets"];
    if (!sets.is_array())
        throw parse_error("\"sets\" must be an array of arrays of string labels");

    RawFamilyFile raw;
    for (const auto& s : sets) {
        if (!s.is_array())
            throw parse_error("each set must be an array of string labels");
        std::vector<std::string> labels;
        for (const auto& l : s) {
            if (!l.is_string())
                throw parse_error("element labels must be strings");
            std::string lab = l.get<std::string>();
            if (lab.empty())
                throw parse_error("element labels must be nonempty");
            if (std::find(labels.begin(), labels.end(), lab) != labels.end())
                raw.warnings.push_back("duplicate label \"" + lab + "\" inside a set (collapsed)");
            else
                labels.push_back(std::move(lab));
        }
        raw.sets.push_back(std::move(labels));
    }
    if (doc.contains("points")) {
        const auto& pts = doc["points"];
        if (!pts.is_array())
            throw parse_error("\"points\" must be an array of string labels");
        std::vector<std::string> points;
        for (const auto& p : pts) {
            if (!p.is_string())
                throw parse_error("point labels must be strings");
            points.push_back(p.get<std::string>());
        }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        raw.points = std::move(points);
    }
    return raw;
}

struct ParsedFamily {
    SetFamily family;
    std::vector<std::string> warnings;
};

inline ParsedFamily parse_family(std::string_view text, const ParseOptions& opts = {}) {
    RawFamilyFile raw = parse_family_file(text);
    if (raw.sets.empty())
        throw parse_error("family has no members");

    // detect duplicate sets before the constructor silently collapses them
    {
        std::vector<std::vector<std::string>> sorted_sets = raw.sets;
        for (auto& s : sorted_sets) std::sort(s.begin(), s.end());
        std::sort(sorted_sets.begin(), sorted_sets.end());
        for (std::size_t i = 1; i < sorted_sets.size(); ++i)
            if (sorted_sets[i] == sorted_sets[i - 1] &&
                (i + 1 == sorted_sets.size() || sorted_sets[i + 1] != sorted_sets[i])) {
                std::string desc = "{";
                for (std::size_t k = 0; k < sorted_sets[i].size(); ++k)
                    desc += (k ? "," : "") + sorted_sets[i][k];
                desc += "}";
                raw.warnings.push_back("duplicate set " + desc + " (collapsed)");
            }
    }

    SetFamily family = SetFamily::from_label_sets(raw.sets);
    if (raw.points) {
        if (*raw.points != family.labels()) {
            for (const auto& p : *raw.points)
                if (!family.element_index(p))
                    throw parse_error("declared point \"" + p +
                                      "\" occurs in no set; the universe must equal the union of members");
            for (const auto& l : family.labels())
                if (!std::binary_search(raw.points->begin(), raw.points->end(), l))
                    throw parse_error("label \"" + l + "\" occurs in the sets but is not declared in \"points\"");
        }
    }
    if (family.universe_size() == 0 && !opts.allow_trivial)
        throw parse_error("family is trivial (only the empty set); pass --allow-trivial to permit it");
    if (family.universe_size() > opts.max_universe)
        throw parse_error("universe has " + std::to_string(family.universe_size()) +
                          " elements, above the cap of " + std::to_string(opts.max_universe));
    return {std::move(family), std::move(raw.warnings)};
}

// Canonical serialization: sets ordered by (size, label tuple), labels
// sorted inside each set.  parse(serialize(F)) == F.
inline std::string serialize_family(const SetFamily& f) {
    auto sets = f.label_sets();
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    nlohmann::ordered_json doc;
    doc["sets"] = sets;
    return doc.dump(2) + "\n";
}

} // namespace frankl
