#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "frankl/abundance.hpp"
#include "frankl/search.hpp"
#include "fixtures.hpp"

using namespace frankl;

namespace {

const ElementReport& report_for(const std::vector<ElementReport>& reports, const SetFamily& f,
                                const std::string& label) {
    return reports[*f.element_index(label)];
}

std::set<std::string> label_set(const SetFamily& f, const std::vector<std::size_t>& elems) {
    std::set<std::string> out;
    for (auto e : elems) out.insert(f.label(e));
    return out;
}

std::set<std::pair<std::string, std::string>> pair_strings(const SetFamily& f,
                                                           const InjectionWitness& w) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [a, b] : w.pairs) out.insert({f.set_to_string(a), f.set_to_string(b)});
    return out;
}

} // namespace

TEST_CASE("element classification of the hexagon") {
    auto f = fixtures::dim2_family();
    auto reports = classify_elements(f);
    const auto& r1 = report_for(reports, f, "1");
    REQUIRE(r1.count_in == 3);
    REQUIRE(r1.count_out == 3);
    REQUIRE(r1.abundant);
    REQUIRE_FALSE(r1.optimal);
    const auto& r2 = report_for(reports, f, "2");
    REQUIRE(r2.count_in == 5);
    REQUIRE(r2.count_out == 1);
    REQUIRE(r2.abundant);
    REQUIRE(r2.optimal);
    REQUIRE(label_set(f, optimal_elements(f)) == std::set<std::string>{"2", "3"});
}

TEST_CASE("element classification of the seven-member family") {
    auto f = fixtures::optimal_not_abundant_family();
    auto reports = classify_elements(f);
    const auto& r1 = report_for(reports, f, "1");
    REQUIRE(r1.count_in == 3);
    REQUIRE(r1.count_out == 4);
    REQUIRE_FALSE(r1.abundant);
    REQUIRE(r1.optimal);
    REQUIRE(label_set(f, optimal_elements(f)) == std::set<std::string>{"1", "2", "3"});
    // elements 2 and 3 carry singleton members, hence are abundant
    REQUIRE(report_for(reports, f, "2").singleton_member);
    REQUIRE(report_for(reports, f, "2").abundant);
}

TEST_CASE("element classification of the five-cycle closure") {
    auto f = fixtures::five_cycle_family();
    auto reports = classify_elements(f);
    for (const auto& r : reports) {
        REQUIRE(r.count_in == 10);
        REQUIRE(r.count_out == 6);
        REQUIRE(r.abundant);
        REQUIRE(r.optimal);
    }
    REQUIRE(label_set(f, optimal_elements(f)) == std::set<std::string>{"1", "2", "3", "4", "5"});
}

TEST_CASE("covert element detection") {
    auto f = fixtures::covert_family();
    auto x3 = *f.element_index("3");
    auto check = is_covert(f, x3);
    REQUIRE(check.covert);
    REQUIRE(check.witness);
    REQUIRE(check.witness->method == WitnessMethod::covert);
    REQUIRE(pair_strings(f, *check.witness) ==
            std::set<std::pair<std::string, std::string>>{{"{1,2,4}", "{1,2,3,4}"},
                                                          {"{1,2}", "{1,2,3}"},
                                                          {"{2,4}", "{2,3,4}"}});
    REQUIRE(classify_elements(f)[x3].covert);

    // a singleton member disqualifies the element
    auto g = SetFamily::from_label_sets({{"1"}, {"1", "2"}});
    REQUIRE_FALSE(is_covert(g, *g.element_index("1")).covert);

    // the seven-member family: the empty set blocks covertness of 1
    auto h = fixtures::optimal_not_abundant_family();
    REQUIRE_FALSE(is_covert(h, *h.element_index("1")).covert);
}

TEST_CASE("covertness checked along the minimal row only") {
    auto f = fixtures::covert_family();
    REQUIRE(covert_min_check(f, *f.element_index("3")));

    auto h = fixtures::optimal_not_abundant_family();
    REQUIRE_FALSE(covert_min_check(h, *h.element_index("1")));

    // vacuous when nothing avoids x
    auto single = SetFamily::from_label_sets({{"a"}});
    REQUIRE(covert_min_check(single, 0));

    auto open = SetFamily::from_label_sets({{"1"}, {"2"}});
    REQUIRE_THROWS_AS(covert_min_check(open, 0), precondition_error);
}

TEST_CASE("minimal-row equivalence over every small union-closed family") {
    for (std::uint32_t mask : all_union_closed_exhaustive(3)) {
        compact::Family cf{3, mask};
        if (!compact::nontrivial(cf)) continue;
        auto f = compact::to_family(cf);
        auto nm = neighborhoods(f);
        for (std::size_t x = 0; x < f.universe_size(); ++x) {
            bool full = true;
            for (auto i : nm.avoiding[x]) {
                ESet b = f.member(i);
                b.add(x);
                if (!f.has_member(b)) full = false;
            }
            REQUIRE(covert_min_check(f, x) == full);
        }
    }
}

TEST_CASE("x-covers") {
    auto f5 = fixtures::five_cycle_family();
    REQUIRE(x_covers(f5, *f5.element_index("1"), f5.set_from_labels({"3", "4"})).empty());

    auto d2 = fixtures::dim2_family();
    auto covers = x_covers(d2, *d2.element_index("2"), d2.set_from_labels({"3", "4"}));
    REQUIRE(covers.size() == 1);
    REQUIRE(d2.set_to_string(covers[0]) == "{2,3,4}");

    auto two = SetFamily::from_label_sets({{"1"}, {"1", "2", "3"}});
    auto c2 = x_covers(two, *two.element_index("2"), two.set_from_labels({"1"}));
    REQUIRE(c2.size() == 1);
    REQUIRE(two.set_to_string(c2[0]) == "{1,2,3}");

    REQUIRE_THROWS_AS(x_covers(d2, *d2.element_index("2"), d2.set_from_labels({"2", "3"})),
                      domain_error);
    REQUIRE_THROWS_AS(x_covers(d2, *d2.element_index("2"), ESet::of(4, {0, 3})), domain_error);
}

TEST_CASE("no member covers two sets avoiding x in union-closed families") {
    for (std::uint32_t mask : all_union_closed_exhaustive(3)) {
        compact::Family cf{3, mask};
        if (!compact::nontrivial(cf)) continue;
        auto f = compact::to_family(cf);
        auto nm = neighborhoods(f);
        for (std::size_t x = 0; x < f.universe_size(); ++x) {
            for (auto bi : nm.containing[x]) {
                int covered = 0;
                for (auto ai : nm.avoiding[x]) {
                    auto cs = x_covers(f, x, f.member(ai));
                    if (std::find(cs.begin(), cs.end(), f.member(bi)) != cs.end()) ++covered;
                }
                REQUIRE(covered <= 1);
            }
        }
    }
}

TEST_CASE("cover injection") {
    SECTION("total on the covert fixture, pairs coincide with the covert map") {
        auto f = fixtures::covert_family();
        auto res = cover_injection(f, *f.element_index("3"));
        REQUIRE(res.witness);
        REQUIRE(res.witness->method == WitnessMethod::cover);
        REQUIRE(pair_strings(f, *res.witness) ==
                pair_strings(f, *is_covert(f, *f.element_index("3")).witness));
    }
    SECTION("fails on the five-cycle closure with the uncovered pair") {
        auto f = fixtures::five_cycle_family();
        auto res = cover_injection(f, *f.element_index("1"));
        REQUIRE_FALSE(res.witness);
        REQUIRE(res.uncovered);
        REQUIRE(f.set_to_string(*res.uncovered) == "{3,4}");
    }
    SECTION("union-closedness is required: one set may cover two otherwise") {
        auto f = SetFamily::from_label_sets({{"1"}, {"2"}, {"3"}, {"1", "2", "3"}});
        REQUIRE_THROWS_AS(cover_injection(f, *f.element_index("3")), precondition_error);
    }
}

TEST_CASE("dimension-two witness") {
    auto f = fixtures::dim2_family();
    SECTION("single pair for element 2") {
        auto w = dim2_witness(f, *f.element_index("2"));
        REQUIRE(w.method == WitnessMethod::dim2);
        REQUIRE(pair_strings(f, w) ==
                std::set<std::pair<std::string, std::string>>{{"{3,4}", "{2,3,4}"}});
    }
    SECTION("single pair for element 3") {
        auto w = dim2_witness(f, *f.element_index("3"));
        REQUIRE(pair_strings(f, w) ==
                std::set<std::pair<std::string, std::string>>{{"{1,2}", "{1,2,3}"}});
    }
    SECTION("empty witness when x lies in every member") {
        auto g = SetFamily::from_label_sets({{"1"}, {"1", "2"}, {"1", "2", "3"}});
        auto w = dim2_witness(g, *g.element_index("1"));
        REQUIRE(w.pairs.empty());
    }
    SECTION("hypotheses are named when violated") {
        REQUIRE_THROWS_AS(dim2_witness(f, *f.element_index("1")), precondition_error);
        REQUIRE_THROWS_MATCHES(dim2_witness(f, *f.element_index("1")), precondition_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("optimal")));
        auto dim1 = SetFamily::from_label_sets({{"1"}, {"1", "2"}});
        REQUIRE_THROWS_MATCHES(dim2_witness(dim1, 0), precondition_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("dimension")));
        auto glued = SetFamily::from_label_sets({{"1", "2"}, {"1", "2", "3"}, {"1", "2", "3", "4"}});
        REQUIRE_THROWS_MATCHES(dim2_witness(glued, 0), precondition_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("separating")));
        auto open = SetFamily::from_label_sets({{"1"}, {"3", "4"}, {"1", "2", "3", "4"}});
        REQUIRE_THROWS_MATCHES(dim2_witness(open, 0), precondition_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("union-closed")));
    }
}

TEST_CASE("every optimal element of a separating union-closed dim-2 family gets a dim2 witness") {
    for (std::uint32_t mask : all_union_closed_exhaustive(3)) {
        compact::Family cf{3, mask};
        if (!compact::nontrivial(cf) || !compact::separating(cf)) continue;
        if (compact::dimension(cf) != 2) continue;
        auto f = compact::to_family(cf);
        for (auto x : optimal_elements(f)) {
            auto w = dim2_witness(f, x);
            // each pair is an honest x-cover
            for (const auto& [a, b] : w.pairs) {
                auto cs = x_covers(f, x, a);
                REQUIRE(std::find(cs.begin(), cs.end(), b) != cs.end());
            }
            REQUIRE(classify_elements(f)[x].abundant);
        }
    }
}

TEST_CASE("dimension-at-most-one report") {
    auto point = SetFamily::from_label_sets({{"1", "2"}});
    for (const auto& r : dim_le1_report(point)) {
        REQUIRE(r.abundant);
        REQUIRE(r.count_out == 0);
    }
    auto chain = SetFamily::from_label_sets({{"1"}, {"1", "2"}});
    for (const auto& r : dim_le1_report(chain)) REQUIRE(r.abundant);

    auto tri = SetFamily::from_label_sets({{"1", "2"}, {"2", "3"}, {"1", "2", "3"}});
    for (const auto& r : dim_le1_report(tri)) {
        REQUIRE(r.abundant);
        REQUIRE(r.count_out <= 1);
    }
    REQUIRE_THROWS_AS(dim_le1_report(fixtures::dim2_family()), precondition_error);
}

TEST_CASE("neighborhood intersections") {
    auto f5 = fixtures::five_cycle_family();
    REQUIRE(f5.set_to_string(neighborhood_intersection(f5, *f5.element_index("1"))) == "{1}");

    auto d2 = fixtures::dim2_family();
    REQUIRE(d2.set_to_string(neighborhood_intersection(d2, *d2.element_index("1"))) == "{1,2}");

    auto single = SetFamily::from_label_sets({{"a"}});
    REQUIRE(single.set_to_string(neighborhood_intersection(single, 0)) == "{a}");
}

TEST_CASE("optimal elements of separating union-closed families pin their intersection") {
    for (std::uint32_t mask : all_union_closed_exhaustive(3)) {
        compact::Family cf{3, mask};
        if (!compact::nontrivial(cf) || !compact::separating(cf)) continue;
        auto f = compact::to_family(cf);
        for (auto x : optimal_elements(f))
            REQUIRE(neighborhood_intersection(f, x) == ESet::of(f.universe_size(), {x}));
    }
}

TEST_CASE("basis sets") {
    auto tent = SetFamily::from_label_sets({{"1"}, {"2"}, {"1", "2"}});
    auto basis = basis_sets(tent);
    REQUIRE(basis.size() == 2);
    REQUIRE(tent.set_to_string(basis[0]) == "{1}");
    REQUIRE(tent.set_to_string(basis[1]) == "{2}");

    auto f = fixtures::optimal_not_abundant_family();
    std::set<std::string> names;
    for (const auto& b : basis_sets(f)) names.insert(f.set_to_string(b));
    REQUIRE(names == std::set<std::string>{"{}", "{2}", "{3}", "{1,2}", "{1,3}"});

    auto single = SetFamily::from_label_sets({{"a", "b"}});
    REQUIRE(basis_sets(single) == single.members());

    // minimal members are always basis sets
    for (std::uint32_t mask : all_union_closed_exhaustive(3)) {
        compact::Family cf{3, mask};
        if (cf.members == 0) continue;
        auto fam = compact::to_family(cf);
        auto basis_of = basis_sets(fam);
        for (const auto& m : minimal_members(fam))
            REQUIRE(std::find(basis_of.begin(), basis_of.end(), m) != basis_of.end());
    }
}

TEST_CASE("padding witness") {
    auto f5 = fixtures::five_cycle_family();
    auto w = padding_witness(f5, *f5.element_index("1"));
    REQUIRE(w.method == WitnessMethod::padding);
    REQUIRE(w.pairs.size() == 6);  // |F_1^c| = 6, |F_1| = 10

    auto single = SetFamily::from_label_sets({{"a"}});
    REQUIRE(padding_witness(single, 0).pairs.empty());

    auto h = fixtures::optimal_not_abundant_family();
    REQUIRE_THROWS_AS(padding_witness(h, *h.element_index("1")), precondition_error);
    REQUIRE_THROWS_MATCHES(padding_witness(h, *h.element_index("1")), precondition_error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("not abundant")));
}

TEST_CASE("singleton members make their element abundant in union-closed families") {
    for (std::uint32_t mask : all_union_closed_exhaustive(3)) {
        compact::Family cf{3, mask};
        if (!compact::nontrivial(cf)) continue;
        auto f = compact::to_family(cf);
        for (const auto& r : classify_elements(f))
            if (r.singleton_member) REQUIRE(r.abundant);
    }
}

TEST_CASE("witness verification rejects corrupted witnesses") {
    auto f = fixtures::covert_family();
    auto x3 = *f.element_index("3");
    auto good = *is_covert(f, x3).witness;

    SECTION("image collision") {
        auto bad = good;
        bad.pairs[1].second = bad.pairs[0].second;
        REQUIRE_THROWS_AS(verify_witness(f, bad), internal_error);
    }
    SECTION("missing pair") {
        auto bad = good;
        bad.pairs.pop_back();
        REQUIRE_THROWS_AS(verify_witness(f, bad), internal_error);
    }
    SECTION("image outside F_x") {
        auto bad = good;
        bad.pairs[0].second = f.set_from_labels({"2", "4"});
        REQUIRE_THROWS_AS(verify_witness(f, bad), internal_error);
    }
    SECTION("non-member set") {
        auto bad = good;
        bad.pairs[0].second = ESet::of(4, {2});
        REQUIRE_THROWS_AS(verify_witness(f, bad), internal_error);
    }
}

TEST_CASE("witness JSON shape") {
    auto f = fixtures::covert_family();
    auto w = *is_covert(f, *f.element_index("3")).witness;
    auto doc = witness_to_json(f, w);
    REQUIRE(doc["element"] == "3");
    REQUIRE(doc["method"] == "covert");
    REQUIRE(doc["pairs"].size() == 3);
    // pairs ordered by (size, label tuple) of the domain set
    REQUIRE(doc["pairs"][0][0] == nlohmann::ordered_json::array({"1", "2"}));
    REQUIRE(doc["pairs"][0][1] == nlohmann::ordered_json::array({"1", "2", "3"}));
    REQUIRE(doc["pairs"][1][0] == nlohmann::ordered_json::array({"2", "4"}));
    REQUIRE(doc["pairs"][2][0] == nlohmann::ordered_json::array({"1", "2", "4"}));
}
