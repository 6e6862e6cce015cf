// Command-line front end: analyze family files, emit witnesses and reports,
// run the quotient / topology / tent workflows and the enumeration oracle.
//
// Exit codes: 0 success, 2 input or parse error, 3 a stated hypothesis does
// not hold for the input, 4 internal assertion (a theory-backed check
// failed; never expected).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frankl/frankl.hpp"

namespace {

using namespace frankl;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t universe_cap() {
    if (const char* env = std::getenv("FRANKL_MAX_UNIVERSE")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        std::cerr << "warning: ignoring invalid FRANKL_MAX_UNIVERSE value \"" << env << "\"\n";
    }
    return 64;
}

ParsedFamily load_family(const std::string& path, bool allow_trivial) {
    ParseOptions opts;
    opts.allow_trivial = allow_trivial;
    opts.max_universe = universe_cap();
    auto parsed = parse_family(read_file(path), opts);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    return parsed;
}

std::vector<std::vector<std::string>> sorted_label_sets(const SetFamily& f,
                                                        const std::vector<ESet>& sets) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : sets) {
        std::vector<std::string> labels;
        for (auto i : s.indices()) labels.push_back(f.label(i));
        out.push_back(std::move(labels));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// best available witness: cover, then covert, then dim2, then padding
std::optional<InjectionWitness> best_witness(const SetFamily& f, std::size_t x) {
    if (is_union_closed(f).closed) {
        auto cover = cover_injection(f, x);
        if (cover.witness) return cover.witness;
    }
    auto covert = is_covert(f, x);
    if (covert.covert) return covert.witness;
    try {
        return dim2_witness(f, x);
    } catch (const precondition_error&) {
    }
    auto nm = neighborhoods(f);
    if (nm.avoiding[x].size() <= nm.containing[x].size()) return padding_witness(f, x);
    return std::nullopt;
}

std::size_t resolve_element(const SetFamily& f, const std::string& label) {
    auto e = f.element_index(label);
    if (!e) throw parse_error("element \"" + label + "\" does not occur in the family");
    return *e;
}

InjectionWitness witness_or_fail(const SetFamily& f, std::size_t x) {
    auto w = best_witness(f, x);
    if (!w) {
        bool optimal = classify_elements(f)[x].optimal;
        auto nm = neighborhoods(f);
        throw precondition_error("element \"" + f.label(x) + "\" is " +
                                 (optimal ? "optimal but not abundant" : "not abundant") +
                                 " (|F_x| = " + std::to_string(nm.containing[x].size()) +
                                 ", |F_x^c| = " + std::to_string(nm.avoiding[x].size()) + ")");
    }
    return *w;
}

ordered_json analysis_json(const SetFamily& f) {
    ordered_json doc;
    doc["members"] = f.size();
    doc["universe"] = f.labels();
    bool closed = f.size() > 0 && is_union_closed(f).closed;
    doc["union_closed"] = closed;
    if (f.nontrivial()) {
        doc["separating"] = is_separating(f).separating;
        doc["dimension"] = dimension(f);
        doc["minimal_members"] = sorted_label_sets(f, minimal_members(f));
        doc["maximal_members"] = sorted_label_sets(f, maximal_members(f));
        if (closed) doc["basis_sets"] = sorted_label_sets(f, basis_sets(f));
        ordered_json elems = ordered_json::array();
        for (const auto& r : classify_elements(f)) {
            ordered_json e;
            e["label"] = f.label(r.element);
            e["in"] = r.count_in;
            e["out"] = r.count_out;
            e["abundant"] = r.abundant;
            e["optimal"] = r.optimal;
            e["covert"] = r.covert;
            e["singleton_member"] = r.singleton_member;
            elems.push_back(std::move(e));
        }
        doc["elements"] = std::move(elems);
    }
    return doc;
}

void print_sets_line(const SetFamily& f, const std::string& title,
                     const std::vector<ESet>& sets) {
    std::cout << title << ":";
    for (const auto& s : sorted_label_sets(f, sets)) {
        std::cout << " {";
        for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? "," : "") << s[i];
        std::cout << "}";
    }
    std::cout << "\n";
}

void print_analysis_table(const std::string& path, const SetFamily& f) {
    std::cout << "family: " << path << "\n";
    std::cout << "members: " << f.size() << "\n";
    std::cout << "universe: " << f.set_to_string(f.universe_set()) << " (" << f.universe_size()
              << " elements)\n";
    bool closed = f.size() > 0 && is_union_closed(f).closed;
    std::cout << "union-closed: " << (closed ? "yes" : "no") << "\n";
    if (!f.nontrivial()) return;
    std::cout << "separating: " << (is_separating(f).separating ? "yes" : "no") << "\n";
    std::cout << "dimension: " << dimension(f) << "\n";
    print_sets_line(f, "minimal members", minimal_members(f));
    print_sets_line(f, "maximal members", maximal_members(f));
    if (closed) print_sets_line(f, "basis sets", basis_sets(f));

    std::size_t width = 7;
    for (const auto& l : f.labels()) width = std::max(width, l.size());
    std::printf("%-*s  %5s  %5s  %-8s  %-7s  %-6s  %-9s\n", static_cast<int>(width), "element",
                "in", "out", "abundant", "optimal", "covert", "singleton");
    for (const auto& r : classify_elements(f)) {
        std::printf("%-*s  %5zu  %5zu  %-8s  %-7s  %-6s  %-9s\n", static_cast<int>(width),
                    f.label(r.element).c_str(), r.count_in, r.count_out,
                    r.abundant ? "yes" : "no", r.optimal ? "yes" : "no", r.covert ? "yes" : "no",
                    r.singleton_member ? "yes" : "no");
    }
}

int cmd_analyze(const std::string& path, bool json, bool allow_trivial,
                const std::string& witness_label, bool dot) {
    auto parsed = load_family(path, allow_trivial);
    const SetFamily& f = parsed.family;
    if (dot) {
        std::cout << to_dot(f, cover_dag(f));
        return 0;
    }
    std::optional<InjectionWitness> witness;
    if (!witness_label.empty()) witness = witness_or_fail(f, resolve_element(f, witness_label));
    if (json) {
        ordered_json doc = analysis_json(f);
        if (witness) doc["witness"] = witness_to_json(f, *witness);
        std::cout << doc.dump(2) << "\n";
    } else {
        print_analysis_table(path, f);
        if (witness) std::cout << "witness:\n" << witness_to_json(f, *witness).dump(2) << "\n";
    }
    return 0;
}

int cmd_witness(const std::string& path, const std::string& label, bool allow_trivial) {
    auto parsed = load_family(path, allow_trivial);
    auto w = witness_or_fail(parsed.family, resolve_element(parsed.family, label));
    std::cout << witness_to_json(parsed.family, w).dump(2) << "\n";
    return 0;
}

int cmd_quotient(const std::string& path, bool json) {
    auto parsed = load_family(path, false);
    auto q = separating_quotient(parsed.family);
    auto checks = verify_quotient(parsed.family, q);
    if (json) {
        std::cout << quotient_to_json(parsed.family, q, checks).dump(2) << "\n";
    } else {
        std::cout << "classes: " << q.classes.size() << "\n";
        for (const auto& cls : q.classes) {
            std::cout << "  [" << parsed.family.label(cls.front()) << "] = {";
            for (std::size_t i = 0; i < cls.size(); ++i)
                std::cout << (i ? "," : "") << parsed.family.label(cls[i]);
            std::cout << "}\n";
        }
        std::cout << "quotient members: " << q.quotient.size() << "\n";
        std::cout << "checks: order-isomorphism " << (checks.order_isomorphism ? "pass" : "FAIL")
                  << ", unions " << (checks.union_commutes ? "pass" : "FAIL") << ", intersections "
                  << (checks.intersection_commutes ? "pass" : "FAIL") << ", abundance "
                  << (checks.abundance_preserved ? "pass" : "FAIL") << ", optimality "
                  << (checks.optimality_preserved ? "pass" : "FAIL") << "\n";
    }
    return checks.all() ? 0 : 4;
}

int cmd_topology(const std::string& path, bool json) {
    auto space = parse_topology(read_file(path), universe_cap());
    auto r = abundant_point(space);
    auto nm = neighborhoods(space.opens);
    if (json) {
        ordered_json doc;
        doc["point"] = r.point.label;
        std::vector<std::string> cls;
        for (auto e : r.point_class) cls.push_back(space.opens.label(e));
        doc["point_class"] = cls;
        doc["open_sets"] = space.opens.size();
        doc["point_open_count"] = nm.containing[r.point.index].size();
        doc["witness"] = witness_to_json(space.opens, r.witness);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "abundant point: " << r.point.label << " (in "
                  << nm.containing[r.point.index].size() << " of " << space.opens.size()
                  << " open sets)\n";
        std::cout << "witness:\n" << witness_to_json(space.opens, r.witness).dump(2) << "\n";
    }
    return 0;
}

int cmd_tent(const std::string& family_path, const std::string& tent_path, bool json) {
    auto family = load_family(family_path, true);
    auto tent_parsed = load_family(tent_path, false);
    auto check = is_alpha_tent(tent_parsed.family, /*require_union_closed_flag=*/true);
    if (!check.ok()) throw precondition_error("not a union-closed tent: " + check.rejection);
    auto r = tent_abundant(family.family, *check.certificate);

    ordered_json doc = witness_to_json(r.combined, r.witness);
    std::vector<std::string> m_labels;
    for (auto i : r.chosen_m.indices()) m_labels.push_back(r.combined.label(i));
    doc["chosen_m"] = m_labels;
    if (r.chosen_n) {
        std::vector<std::string> n_labels;
        for (auto i : r.chosen_n->indices()) n_labels.push_back(r.combined.label(i));
        doc["chosen_n"] = n_labels;
    } else {
        doc["chosen_n"] = nullptr;
    }
    doc["combined_members"] = r.combined.size();
    if (!json) {
        auto nm = neighborhoods(r.combined);
        std::cout << "abundant element of F u T: " << r.element.label << " (in "
                  << nm.containing[r.element.index].size() << " of " << r.combined.size()
                  << " members)\n";
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_enumerate(int n, bool claims, std::optional<std::uint64_t> sample, std::uint64_t seed,
                  bool uc, bool sep, bool nontrivial, std::optional<int> dim_min,
                  std::optional<int> dim_max, int workers) {
    if (claims) {
        for (const auto& finding : verify_claims(n, workers))
            std::cout << finding_to_json(finding).dump() << "\n";
        return 0;
    }
    EnumerationQuery q;
    q.n = n;
    q.require_union_closed = uc;
    q.require_separating = sep;
    q.require_nontrivial = nontrivial;
    q.dim_min = dim_min;
    q.dim_max = dim_max;
    q.sample_count = sample;
    q.seed = seed;
    q.workers = workers;
    auto finding = enumerate(q, "count", [](const compact::Family&) { return true; });
    std::cout << finding_to_json(finding).dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"union-closed set family analyzer"};
    app.require_subcommand(1);

    std::string path, tent_path, witness_label, element_label;
    bool json = false, allow_trivial = false, dot = false;

    auto* analyze = app.add_subcommand("analyze", "full report on a family file");
    analyze->add_option("file", path, "family file")->required();
    analyze->add_flag("--json", json, "machine-readable output");
    analyze->add_flag("--allow-trivial", allow_trivial, "permit the family {{}}");
    analyze->add_flag("--dot", dot, "emit the cover DAG as DOT text instead");
    analyze->add_option("--witness", witness_label,
                        "attach the best injection witness for an element");

    auto* witness = app.add_subcommand("witness", "best injection witness for one element");
    witness->add_option("file", path, "family file")->required();
    witness->add_option("element", element_label, "element label")->required();
    witness->add_flag("--allow-trivial", allow_trivial, "permit the family {{}}");

    auto* quotient =
        app.add_subcommand("quotient", "separating reduction with preservation checks");
    quotient->add_option("file", path, "family file")->required();
    quotient->add_flag("--json", json, "machine-readable output");

    auto* topology = app.add_subcommand("topology", "abundant point of a finite topology");
    topology->add_option("file", path, "topology file")->required();
    topology->add_flag("--json", json, "machine-readable output");

    auto* tent = app.add_subcommand("tent", "abundant element of F u T for a dominated tent");
    tent->add_option("family", path, "family file F")->required();
    tent->add_option("tent", tent_path, "tent file T")->required();
    tent->add_flag("--json", json, "suppress the summary line");

    int n = 3, workers = 1;
    bool claims = false, uc = false, sep = false, nontrivial = false;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> sample;
    std::optional<int> dim_min, dim_max;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "enumeration oracle over tiny universes");
    enumerate_cmd->add_option("-n", n, "universe size (exhaustive through 4, sampled at 5)");
    enumerate_cmd->add_flag("--claims", claims, "verify the theorem claims and stream findings");
    enumerate_cmd->add_option("--sample", sample, "sample count (required for n = 5)");
    enumerate_cmd->add_option("--seed", seed, "sampling seed");
    enumerate_cmd->add_flag("--union-closed", uc, "filter: union-closed families");
    enumerate_cmd->add_flag("--separating", sep, "filter: separating families");
    enumerate_cmd->add_flag("--nontrivial", nontrivial, "filter: nontrivial families");
    enumerate_cmd->add_option("--dim-min", dim_min, "filter: minimum dimension");
    enumerate_cmd->add_option("--dim-max", dim_max, "filter: maximum dimension");
    enumerate_cmd->add_option("--workers", workers, "partitioned exhaustive scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(path, json, allow_trivial, witness_label, dot);
        if (*witness) return cmd_witness(path, element_label, allow_trivial);
        if (*quotient) return cmd_quotient(path, json);
        if (*topology) return cmd_topology(path, json);
        if (*tent) return cmd_tent(path, tent_path, json);
        if (*enumerate_cmd)
            return cmd_enumerate(n, claims, sample, seed, uc, sep, nontrivial, dim_min, dim_max,
                                 workers);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
