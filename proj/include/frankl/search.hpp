#pragma once

// Enumeration oracle over tiny universes.  Families over [n] are packed
// into a single 32-bit word: bit s is set iff the subset of [n] with
// element mask s is a member.  All predicates below run on that packed
// form with word operations; this is the hot loop that lets the full n=4
// sweep (65536 families, each checked against every claim) finish in well
// under the ten-second budget on one thread.
//
// n <= 4 is enumerated exhaustively (all 2^(2^n) packed masks, each exactly
// once).  n == 5 is reachable only through seeded sampling; when a query
// asks for union-closed samples, each sampled mask is saturated to its
// union closure first, which keeps the acceptance rate at one.  n > 5 is
// unsupported.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "frankl/core.hpp"
#include "frankl/errors.hpp"

namespace frankl::compact {

// A family over [n] (n <= 5), packed one bit per subset of [n].
struct Family {
    int n = 0;
    std::uint32_t members = 0;

    friend bool operator==(const Family&, const Family&) = default;
};

// subsets of [5] containing element x: the classic interleaved constants
inline constexpr std::uint32_t kElementMask[5] = {0xAAAAAAAAu, 0xCCCCCCCCu, 0xF0F0F0F0u,
                                                  0xFF00FF00u, 0xFFFF0000u};

inline constexpr std::uint32_t subset_space(int n) {
    return n == 5 ? 0xFFFFFFFFu : ((std::uint32_t{1} << (1u << n)) - 1u);
}

inline int member_count(const Family& f) { return std::popcount(f.members); }

// element mask of the universe U_F (union of all members)
inline std::uint32_t universe(const Family& f) {
    std::uint32_t u = 0;
    for (std::uint32_t rest = f.members; rest; rest &= rest - 1)
        u |= static_cast<std::uint32_t>(std::countr_zero(rest));
    return u;
}

inline bool nontrivial(const Family& f) { return universe(f) != 0; }

inline bool union_closed(const Family& f) {
    std::uint32_t sets[32];
    int m = 0;
    for (std::uint32_t rest = f.members; rest; rest &= rest - 1)
        sets[m++] = static_cast<std::uint32_t>(std::countr_zero(rest));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!(f.members >> (sets[i] | sets[j]) & 1u)) return false;
    return true;
}

// saturation under pairwise unions (always terminates: the mask only grows)
inline Family closure(Family f) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::uint32_t sets[32];
        int m = 0;
        for (std::uint32_t rest = f.members; rest; rest &= rest - 1)
            sets[m++] = static_cast<std::uint32_t>(std::countr_zero(rest));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                std::uint32_t u = sets[i] | sets[j];
                if (!(f.members >> u & 1u)) {
                    f.members |= std::uint32_t{1} << u;
                    changed = true;
                }
            }
    }
    return f;
}

// packed F_x: the members containing element x
inline std::uint32_t fx(const Family& f, int x) { return f.members & kElementMask[x]; }

inline bool abundant(const Family& f, int x) {
    return 2 * std::popcount(fx(f, x)) >= member_count(f);
}

inline bool optimal(const Family& f, int x) {
    std::uint32_t fxm = fx(f, x);
    std::uint32_t u = universe(f);
    for (int y = 0; y < f.n; ++y) {
        if (!(u >> y & 1)) continue;
        std::uint32_t fym = fx(f, y);
        if (fxm != fym && (fxm & ~fym) == 0) return false;
    }
    return true;
}

inline bool separating(const Family& f) {
    std::uint32_t u = universe(f);
    for (int x = 0; x < f.n; ++x) {
        if (!(u >> x & 1)) continue;
        for (int y = x + 1; y < f.n; ++y)
            if ((u >> y & 1) && fx(f, x) == fx(f, y)) return false;
    }
    return true;
}

// longest chain length |C| - 1 among the members
inline int dimension(const Family& f) {
    std::uint32_t sets[32];
    int m = 0;
    for (std::uint32_t rest = f.members; rest; rest &= rest - 1)
        sets[m++] = static_cast<std::uint32_t>(std::countr_zero(rest));
    std::sort(sets, sets + m,
              [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    int height[32];
    int best = 0;
    for (int i = 0; i < m; ++i) {
        height[i] = 0;
        for (int j = 0; j < i; ++j)
            if (sets[j] != sets[i] && (sets[j] & ~sets[i]) == 0)
                height[i] = std::max(height[i], height[j] + 1);
        best = std::max(best, height[i]);
    }
    return best;
}

// b covers a in (F, subseteq)
inline bool covers(const Family& f, std::uint32_t a, std::uint32_t b) {
    if (a == b || (a & ~b) != 0) return false;
    for (std::uint32_t rest = f.members; rest; rest &= rest - 1) {
        std::uint32_t c = static_cast<std::uint32_t>(std::countr_zero(rest));
        if (c != a && c != b && (a & ~c) == 0 && (c & ~b) == 0) return false;
    }
    return true;
}

// least packed image over all relabelings of [n]
inline std::uint32_t canonical_form(const Family& f) {
    std::array<int, 5> perm{};
    std::iota(perm.begin(), perm.begin() + f.n, 0);
    std::uint32_t best = ~std::uint32_t{0};
    do {
        std::uint32_t img = 0;
        for (std::uint32_t rest = f.members; rest; rest &= rest - 1) {
            std::uint32_t s = static_cast<std::uint32_t>(std::countr_zero(rest));
            std::uint32_t t = 0;
            for (int x = 0; x < f.n; ++x)
                if (s >> x & 1) t |= std::uint32_t{1} << perm[x];
            img |= std::uint32_t{1} << t;
        }
        best = std::min(best, img);
    } while (std::next_permutation(perm.begin(), perm.begin() + f.n));
    return best;
}

// expand to the full representation; elements are labelled "1".."n"
inline SetFamily to_family(const Family& f) {
    std::vector<std::vector<std::string>> sets;
    for (std::uint32_t rest = f.members; rest; rest &= rest - 1) {
        std::uint32_t s = static_cast<std::uint32_t>(std::countr_zero(rest));
        std::vector<std::string> labels;
        for (int x = 0; x < f.n; ++x)
            if (s >> x & 1) labels.push_back(std::to_string(x + 1));
        sets.push_back(std::move(labels));
    }
    return SetFamily::from_label_sets(sets);
}

} // namespace frankl::compact

namespace frankl {

struct EnumerationQuery {
    int n = 3;
    bool require_union_closed = false;
    bool require_separating = false;
    bool require_nontrivial = false;
    std::optional<int> dim_min;
    std::optional<int> dim_max;
    // n == 5 is only reachable through sampling; setting this on smaller n
    // switches them to sampling too
    std::optional<std::uint64_t> sample_count;
    std::uint64_t seed = 0;
    int workers = 1;  // exhaustive mode only; partitions the mask range
};

struct SearchFinding {
    std::string claim;
    int n = 0;
    bool pass = true;
    std::uint64_t enumerated = 0;  // families visited
    std::uint64_t checked = 0;     // families passing the filters
    std::uint64_t violations = 0;
    std::optional<compact::Family> counterexample;  // least packed mask violating the claim
    nlohmann::ordered_json details;
};

using FamilyPredicate = std::function<bool(const compact::Family&)>;

namespace detail {

inline bool passes_filters(const EnumerationQuery& q, const compact::Family& f) {
    if (q.require_nontrivial && !compact::nontrivial(f)) return false;
    if (q.require_union_closed && !compact::union_closed(f)) return false;
    if (f.members == 0) {
        // dimension and separation are undefined on the empty family
        return !q.require_separating && !q.dim_min && !q.dim_max;
    }
    if (q.require_separating && !compact::separating(f)) return false;
    if (q.dim_min || q.dim_max) {
        int d = compact::dimension(f);
        if (q.dim_min && d < *q.dim_min) return false;
        if (q.dim_max && d > *q.dim_max) return false;
    }
    return true;
}

inline void check_query(const EnumerationQuery& q) {
    if (q.n < 1 || q.n > 5)
        throw domain_error("enumeration supports universes of size 1 through 5");
    if (q.n == 5 && !q.sample_count)
        throw domain_error("n = 5 cannot be enumerated exhaustively; pass a sample count");
    if (q.workers < 1) throw domain_error("worker count must be positive");
}

} // namespace detail

// Applies `predicate` to every family passing the query's filters
// (exhaustively for n <= 4, by seeded sampling when sample_count is set)
// and reports the aggregate.  The predicate must be pure: exhaustive scans
// may run it from several worker threads, one contiguous mask range each,
// and the merged finding is independent of the partitioning.
inline SearchFinding enumerate(const EnumerationQuery& q, const std::string& claim,
                               const FamilyPredicate& predicate) {
    detail::check_query(q);
    SearchFinding finding;
    finding.claim = claim;
    finding.n = q.n;

    if (q.sample_count) {
        std::mt19937_64 rng(q.seed);
        std::uint32_t space = compact::subset_space(q.n);
        for (std::uint64_t k = 0; k < *q.sample_count; ++k) {
            compact::Family f{q.n, static_cast<std::uint32_t>(rng()) & space};
            if (q.require_union_closed) f = compact::closure(f);
            ++finding.enumerated;
            if (!detail::passes_filters(q, f)) continue;
            ++finding.checked;
            if (!predicate(f)) {
                ++finding.violations;
                if (!finding.counterexample || f.members < finding.counterexample->members)
                    finding.counterexample = f;
            }
        }
    } else {
        const std::uint64_t total = std::uint64_t{1} << (1u << q.n);
        const int workers = static_cast<int>(
            std::min<std::uint64_t>(static_cast<std::uint64_t>(q.workers), total));
        std::vector<SearchFinding> parts(workers);
        auto run = [&](int w) {
            std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
            SearchFinding& part = parts[w];
            for (std::uint64_t mask = lo; mask < hi; ++mask) {
                compact::Family f{q.n, static_cast<std::uint32_t>(mask)};
                ++part.enumerated;
                if (!detail::passes_filters(q, f)) continue;
                ++part.checked;
                if (!predicate(f)) {
                    ++part.violations;
                    if (!part.counterexample) part.counterexample = f;
                }
            }
        };
        if (workers == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
            for (auto& th : pool) th.join();
        }
        for (const auto& part : parts) {
            finding.enumerated += part.enumerated;
            finding.checked += part.checked;
            finding.violations += part.violations;
            if (part.counterexample &&
                (!finding.counterexample ||
                 part.counterexample->members < finding.counterexample->members))
                finding.counterexample = part.counterexample;
        }
    }

    finding.pass = finding.violations == 0;
    // a reported counterexample must re-violate the claim it refutes
    if (finding.counterexample && predicate(*finding.counterexample))
        throw internal_error("enumerate: counterexample does not re-validate");
    return finding;
}

// All union-closed packed families over [n], by exhaustive filtering.
inline std::vector<std::uint32_t> all_union_closed_exhaustive(int n) {
    if (n < 1 || n > 4) throw domain_error("exhaustive listing supports n <= 4");
    std::vector<std::uint32_t> out;
    const std::uint64_t total = std::uint64_t{1} << (1u << n);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        if (compact::union_closed({n, static_cast<std::uint32_t>(mask)}))
            out.push_back(static_cast<std::uint32_t>(mask));
    return out;
}

// The same set produced by a structurally different generator: the union
// closure of every seed family, deduplicated.  Every union-closed family is
// its own closure, so equality with the exhaustive listing is a
// completeness check on both.
inline std::vector<std::uint32_t> all_union_closed_by_closure(int n) {
    if (n < 1 || n > 4) throw domain_error("closure-generator listing supports n <= 4");
    std::vector<std::uint32_t> out;
    const std::uint64_t total = std::uint64_t{1} << (1u << n);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        out.push_back(compact::closure({n, static_cast<std::uint32_t>(mask)}).members);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

// the minimal 7-member separating union-closed family with an optimal
// element that is not abundant, packed over n = 3
inline constexpr std::uint32_t kMinimalNonAbundantMask = 253;  // {0,{2},{3},{12},{13},{23},{123}}

inline bool covert_full_check(const compact::Family& f, int x, std::uint32_t avoiding) {
    for (std::uint32_t rest = avoiding; rest; rest &= rest - 1) {
        std::uint32_t a = static_cast<std::uint32_t>(std::countr_zero(rest));
        if (!(f.members >> (a | (1u << x)) & 1u)) return false;
    }
    return true;
}

inline bool covert_min_check(const compact::Family& f, int x, std::uint32_t avoiding) {
    for (std::uint32_t rest = avoiding; rest; rest &= rest - 1) {
        std::uint32_t a = static_cast<std::uint32_t>(std::countr_zero(rest));
        bool is_min = true;
        for (std::uint32_t r2 = avoiding; r2; r2 &= r2 - 1) {
            std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(r2));
            if (b != a && (b & ~a) == 0) {
                is_min = false;
                break;
            }
        }
        if (is_min && !(f.members >> (a | (1u << x)) & 1u)) return false;
    }
    return true;
}

} // namespace detail

// Independent verification of the per-claim facts over every nontrivial
// union-closed family on [n], n <= 4.  One finding per claim; the last
// finding aggregates the minimality profile of optimal-not-abundant
// examples and, at n = 3, whether every smallest example is a relabeling of
// the reference family.
inline std::vector<SearchFinding> verify_claims(int n, int workers = 1) {
    if (n < 1 || n > 4) throw domain_error("claim verification supports n <= 4 only");
    std::vector<SearchFinding> out;

    EnumerationQuery uc{.n = n, .require_union_closed = true, .require_nontrivial = true,
                        .workers = workers};
    EnumerationQuery uc_sep = uc;
    uc_sep.require_separating = true;

    {
        EnumerationQuery q = uc_sep;
        q.dim_max = 2;
        out.push_back(enumerate(q, "dim2-optimal-abundant", [](const compact::Family& f) {
            std::uint32_t u = compact::universe(f);
            for (int x = 0; x < f.n; ++x)
                if ((u >> x & 1) && compact::optimal(f, x) && !compact::abundant(f, x))
                    return false;
            return true;
        }));
    }
    {
        EnumerationQuery q = uc;
        q.dim_max = 1;
        out.push_back(enumerate(q, "dim-le1-all-abundant", [](const compact::Family& f) {
            std::uint32_t u = compact::universe(f);
            int m = compact::member_count(f);
            for (int x = 0; x < f.n; ++x) {
                if (!(u >> x & 1)) continue;
                int in = std::popcount(compact::fx(f, x));
                if (2 * in < m || m - in > 1) return false;
            }
            return true;
        }));
    }
    out.push_back(enumerate(uc, "covert-min-equivalence", [](const compact::Family& f) {
        std::uint32_t u = compact::universe(f);
        for (int x = 0; x < f.n; ++x) {
            if (!(u >> x & 1)) continue;
            std::uint32_t avoiding = f.members & ~compact::kElementMask[x];
            if (detail::covert_min_check(f, x, avoiding) !=
                detail::covert_full_check(f, x, avoiding))
                return false;
        }
        return true;
    }));
    out.push_back(enumerate(uc, "cover-at-most-one", [](const compact::Family& f) {
        std::uint32_t u = compact::universe(f);
        for (int x = 0; x < f.n; ++x) {
            if (!(u >> x & 1)) continue;
            std::uint32_t avoiding = f.members & ~compact::kElementMask[x];
            for (std::uint32_t rb = compact::fx(f, x); rb; rb &= rb - 1) {
                std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(rb));
                int covered = 0;
                for (std::uint32_t ra = avoiding; ra; ra &= ra - 1) {
                    std::uint32_t a = static_cast<std::uint32_t>(std::countr_zero(ra));
                    if (compact::covers(f, a, b)) ++covered;
                }
                if (covered > 1) return false;
            }
        }
        return true;
    }));
    out.push_back(enumerate(uc_sep, "optimal-intersection-singleton",
                            [](const compact::Family& f) {
        std::uint32_t u = compact::universe(f);
        for (int x = 0; x < f.n; ++x) {
            if (!(u >> x & 1) || !compact::optimal(f, x)) continue;
            std::uint32_t acc = u;
            for (std::uint32_t rest = compact::fx(f, x); rest; rest &= rest - 1)
                acc &= static_cast<std::uint32_t>(std::countr_zero(rest));
            if (acc != (std::uint32_t{1} << x)) return false;
        }
        return true;
    }));
    out.push_back(enumerate(uc, "abundant-exists", [](const compact::Family& f) {
        std::uint32_t u = compact::universe(f);
        for (int x = 0; x < f.n; ++x)
            if ((u >> x & 1) && compact::abundant(f, x)) return true;
        return false;
    }));

    // minimality profile of optimal-not-abundant examples
    {
        SearchFinding finding;
        finding.claim = "optimal-not-abundant-minimality";
        finding.n = n;
        std::uint64_t instances = 0;
        int min_members = -1, min_fx = -1, min_universe = -1, min_dimension = -1;
        std::vector<std::uint32_t> smallest;
        const std::uint64_t total = std::uint64_t{1} << (1u << n);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            compact::Family f{n, static_cast<std::uint32_t>(mask)};
            ++finding.enumerated;
            if (!compact::nontrivial(f) || !compact::union_closed(f) || !compact::separating(f))
                continue;
            ++finding.checked;
            std::uint32_t u = compact::universe(f);
            int fam_min_fx = -1;
            for (int x = 0; x < f.n; ++x) {
                if (!(u >> x & 1)) continue;
                if (compact::optimal(f, x) && !compact::abundant(f, x)) {
                    int in = std::popcount(compact::fx(f, x));
                    if (fam_min_fx < 0 || in < fam_min_fx) fam_min_fx = in;
                }
            }
            if (fam_min_fx < 0) continue;
            ++instances;
            int m = compact::member_count(f);
            int us = std::popcount(u);
            int d = compact::dimension(f);
            if (min_members < 0 || m < min_members) {
                min_members = m;
                smallest.clear();
            }
            if (m == min_members) smallest.push_back(f.members);
            if (min_fx < 0 || fam_min_fx < min_fx) min_fx = fam_min_fx;
            if (min_universe < 0 || us < min_universe) min_universe = us;
            if (min_dimension < 0 || d < min_dimension) min_dimension = d;
            if (m < 7 || fam_min_fx < 3 || us < 3 || d < 3) {
                ++finding.violations;
                if (!finding.counterexample) finding.counterexample = f;
            }
        }
        finding.pass = finding.violations == 0;
        finding.details["instances"] = instances;
        if (instances > 0) {
            finding.details["min_members"] = min_members;
            finding.details["min_neighborhood"] = min_fx;
            finding.details["min_universe"] = min_universe;
            finding.details["min_dimension"] = min_dimension;
            if (n == 3) {
                std::uint32_t ref =
                    compact::canonical_form({3, detail::kMinimalNonAbundantMask});
                bool all_iso = true;
                for (std::uint32_t m : smallest)
                    if (compact::canonical_form({3, m}) != ref) all_iso = false;
                finding.details["smallest_all_isomorphic_to_reference"] = all_iso;
                finding.details["smallest_count"] = smallest.size();
            }
        }
        out.push_back(std::move(finding));
    }
    return out;
}

inline nlohmann::ordered_json finding_to_json(const SearchFinding& f) {
    nlohmann::ordered_json doc;
    doc["claim"] = f.claim;
    doc["n"] = f.n;
    doc["pass"] = f.pass;
    doc["enumerated"] = f.enumerated;
    doc["checked"] = f.checked;
    doc["violations"] = f.violations;
    if (f.counterexample)
        doc["counterexample"] =
            nlohmann::ordered_json::parse(serialize_family(compact::to_family(*f.counterexample)));
    if (!f.details.is_null()) doc["details"] = f.details;
    return doc;
}

} // namespace frankl
