#pragma once

// Order-theoretic layer over (F, subseteq): cover relation (transitive
// reduction), chain dimension, heights, min/max antichains, up/down sets.
//
// "Dimension" throughout is the longest chain length |C| - 1, not
// Dushnik-Miller order dimension.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "frankl/core.hpp"
#include "frankl/errors.hpp"

namespace frankl {

// Transitive reduction of (F, subseteq) plus longest-path heights.  Node i is
// member index i in canonical order (which is size-sorted, hence a valid
// topological order).
struct CoverDag {
    std::size_t node_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper), sorted
    std::vector<std::vector<std::size_t>> uppers;            // node -> nodes covering it
    std::vector<std::vector<std::size_t>> lowers;            // node -> nodes it covers
    std::vector<std::size_t> height;                         // longest path up from a minimal node
    std::vector<std::size_t> coheight;                       // longest path down from a maximal node
};

// Subset-sandwich filtering on the size-sorted members: i is covered by j
// iff i is maximal among the proper subsets of j.  O(m^2 * c) with
// word-parallel masks; this is the hot path when called per enumerated
// family, which is why the search module keeps its own compact variant.
inline CoverDag cover_dag(const SetFamily& f) {
    if (f.size() == 0) throw domain_error("cover_dag: family must be nonempty");
    const auto& mem = f.members();
    const std::size_t m = mem.size();
    CoverDag dag;
    dag.node_count = m;
    dag.uppers.resize(m);
    dag.lowers.resize(m);
    std::vector<std::size_t> below;  // proper subsets of mem[j]
    for (std::size_t j = 0; j < m; ++j) {
        below.clear();
        for (std::size_t i = 0; i < j; ++i)
            if (mem[i].proper_subset_of(mem[j])) below.push_back(i);
        for (std::size_t i : below) {
            bool maximal = true;
            for (std::size_t k : below)
                if (k != i && mem[i].proper_subset_of(mem[k])) {
                    maximal = false;
                    break;
                }
            if (maximal) {
                dag.edges.emplace_back(i, j);
                dag.uppers[i].push_back(j);
                dag.lowers[j].push_back(i);
            }
        }
    }
    std::sort(dag.edges.begin(), dag.edges.end());
    // longest-path DP; canonical (size-sorted) order is topological
    dag.height.assign(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i : dag.lowers[j])
            dag.height[j] = std::max(dag.height[j], dag.height[i] + 1);
    dag.coheight.assign(m, 0);
    for (std::size_t i = m; i-- > 0;)
        for (std::size_t j : dag.uppers[i])
            dag.coheight[i] = std::max(dag.coheight[i], dag.coheight[j] + 1);
    return dag;
}

// Longest chain length |C| - 1.
inline std::size_t dimension(const SetFamily& f) {
    auto dag = cover_dag(f);
    std::size_t d = 0;
    for (auto h : dag.height) d = std::max(d, h);
    return d;
}

// Minimal sets of an arbitrary collection, in canonical order.
inline std::vector<ESet> minimal_sets(std::span<const ESet> sets) {
    std::vector<ESet> out;
    for (const auto& a : sets) {
        bool minimal = true;
        for (const auto& b : sets)
            if (b.proper_subset_of(a)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<ESet> maximal_sets(std::span<const ESet> sets) {
    std::vector<ESet> out;
    for (const auto& a : sets) {
        bool maximal = true;
        for (const auto& b : sets)
            if (a.proper_subset_of(b)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<ESet> minimal_members(const SetFamily& f) {
    if (f.size() == 0) throw domain_error("minimal_members: family must be nonempty");
    return minimal_sets(f.members());
}

inline std::vector<ESet> maximal_members(const SetFamily& f) {
    if (f.size() == 0) throw domain_error("maximal_members: family must be nonempty");
    return maximal_sets(f.members());
}

// {B in F : B >= A}, canonical order.  A must be a member.
inline std::vector<ESet> up_set(const SetFamily& f, const ESet& a) {
    if (!f.has_member(a)) throw domain_error("up_set: " + f.set_to_string(a) + " is not a member");
    std::vector<ESet> out;
    for (const auto& b : f.members())
        if (a.subset_of(b)) out.push_back(b);
    return out;
}

// {B in F : B <= A}, canonical order.  A must be a member.
inline std::vector<ESet> down_set(const SetFamily& f, const ESet& a) {
    if (!f.has_member(a)) throw domain_error("down_set: " + f.set_to_string(a) + " is not a member");
    std::vector<ESet> out;
    for (const auto& b : f.members())
        if (b.subset_of(a)) out.push_back(b);
    return out;
}

// DOT text of the cover DAG for figure regeneration; node labels use set
// braces notation.
inline std::string to_dot(const SetFamily& f, const CoverDag& dag) {
    std::string out = "digraph family {\n  rankdir=BT;\n  node [shape=none];\n";
    for (std::size_t i = 0; i < dag.node_count; ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + f.set_to_string(f.member(i)) + "\"];\n";
    for (const auto& [lo, hi] : dag.edges)
        out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    out += "}\n";
    return out;
}

} // namespace frankl
