#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the built binary: output shapes, determinism, and
// the exit-code contract (0 ok, 2 input error, 3 violated hypothesis).

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string data(const std::string& name) { return std::string(FRANKL_DATA_DIR) + "/" + name; }

RunResult run(const std::string& args) {
    static int counter = 0;
    std::string outfile = "cli_out_" + std::to_string(counter++) + ".tmp";
    std::string cmd = std::string(FRANKL_CLI_PATH) + " " + args + " > " + outfile + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(outfile, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::remove(outfile.c_str());
    return {code, buf.str()};
}

} // namespace

TEST_CASE("analyze reports the covert fixture") {
    auto r = run("analyze " + data("covert_family.json") + " --json");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["members"] == 6);
    REQUIRE(doc["union_closed"] == true);
    REQUIRE(doc["separating"] == true);
    REQUIRE(doc["dimension"] == 2);
    bool found3 = false;
    for (const auto& e : doc["elements"])
        if (e["label"] == "3") {
            found3 = true;
            REQUIRE(e["covert"] == true);
            REQUIRE(e["in"] == 3);
            REQUIRE(e["out"] == 3);
        }
    REQUIRE(found3);
}

TEST_CASE("analyze human output is stable") {
    auto a = run("analyze " + data("dim2_family.json"));
    auto b = run("analyze " + data("dim2_family.json"));
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.find("dimension: 2") != std::string::npos);
    REQUIRE(a.out.find("union-closed: yes") != std::string::npos);
}

TEST_CASE("witness selection prefers covers") {
    auto r = run("witness " + data("covert_family.json") + " 3");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["element"] == "3");
    REQUIRE(doc["method"] == "cover");
    REQUIRE(doc["pairs"].size() == 3);
}

TEST_CASE("witness for a non-abundant element exits 3") {
    auto r = run("analyze " + data("optimal_not_abundant.json") + " --witness 1");
    REQUIRE(r.exit_code == 3);
    auto w = run("witness " + data("optimal_not_abundant.json") + " 1");
    REQUIRE(w.exit_code == 3);
}

TEST_CASE("dim2 witness through the CLI") {
    auto r = run("witness " + data("dim2_family.json") + " 2");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    // the hexagon admits a total cover injection for 2, which ranks first
    REQUIRE((doc["method"] == "cover" || doc["method"] == "dim2"));
    REQUIRE(doc["pairs"].size() == 1);
    REQUIRE(doc["pairs"][0][0] == nlohmann::json::array({"3", "4"}));
    REQUIRE(doc["pairs"][0][1] == nlohmann::json::array({"2", "3", "4"}));
}

TEST_CASE("input errors exit 2") {
    REQUIRE(run("analyze /nonexistent.json").exit_code == 2);
    REQUIRE(run("analyze " + data("") + "../CMakeLists.txt").exit_code == 2);
    REQUIRE(run("witness " + data("covert_family.json") + " 9").exit_code == 2);
    REQUIRE(run("nonsense").exit_code == 2);
}

TEST_CASE("quotient command") {
    auto r = run("quotient " + data("glued_pair.json") + " --json");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["classes"].size() == 2);
    REQUIRE(doc["checks"]["order_isomorphism"] == true);
    REQUIRE(doc["checks"]["abundance_preserved"] == true);
}

TEST_CASE("topology command") {
    auto r = run("topology " + data("chain_topology.json") + " --json");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["point"] == "1");
    REQUIRE(doc["open_sets"] == 4);
    REQUIRE(doc["point_open_count"] == 3);

    REQUIRE(run("topology " + data("discrete_pair_topology.json") + " --json").exit_code == 0);
    REQUIRE(run("topology " + data("sierpinski_topology.json") + " --json").exit_code == 0);
    // a family file that is not a topology is an input error
    REQUIRE(run("topology " + data("covert_family.json")).exit_code == 2);
}

TEST_CASE("tent command reproduces the worked example") {
    auto r = run("tent " + data("tent_family.json") + " " + data("tent_shape.json") + " --json");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["element"] == "1");
    REQUIRE(doc["method"] == "tent");
    REQUIRE(doc["pairs"] ==
            nlohmann::json::parse(R"([[[],["1","2"]],[["2"],["1"]],[["2","4"],["1","3"]]])"));
    REQUIRE(doc["chosen_m"] == nlohmann::json::array({"1"}));
    REQUIRE(doc["chosen_n"] == nlohmann::json::array({"2"}));

    // swapping the two files violates domination
    REQUIRE(run("tent " + data("tent_shape.json") + " " + data("tent_family.json")).exit_code ==
            3);
}

TEST_CASE("enumerate command") {
    auto r = run("enumerate -n 2 --union-closed --nontrivial");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["enumerated"] == 16);
    REQUIRE(doc["checked"] == 12);

    auto claims = run("enumerate -n 3 --claims");
    REQUIRE(claims.exit_code == 0);
    std::istringstream lines(claims.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        auto finding = nlohmann::json::parse(line);
        REQUIRE(finding["pass"] == true);
        ++count;
    }
    REQUIRE(count == 7);

    REQUIRE(run("enumerate -n 6").exit_code == 2);
    REQUIRE(run("enumerate -n 5").exit_code == 2);
    REQUIRE(run("enumerate -n 5 --sample 200 --seed 3 --union-closed --nontrivial").exit_code ==
            0);
}

TEST_CASE("dot export through the CLI") {
    auto r = run("analyze " + data("glued_pair.json") + " --dot");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("digraph") != std::string::npos);
    REQUIRE(r.out.find("{1,2}") != std::string::npos);
}

TEST_CASE("json output is byte-identical across runs") {
    for (const std::string& args :
         {std::string("analyze ") + data("five_cycle_closure.json") + " --json --witness 1",
          std::string("tent ") + data("tent_family.json") + " " + data("tent_shape.json") +
              " --json",
          std::string("enumerate -n 3 --claims")}) {
        auto a = run(args);
        auto b = run(args);
        REQUIRE(a.exit_code == 0);
        REQUIRE(a.out == b.out);
    }
}

TEST_CASE("trivial family handling") {
    std::string path = "trivial_family.tmp.json";
    {
        std::ofstream out(path);
        out << R"({"sets": [[]]})";
    }
    REQUIRE(run("analyze " + path).exit_code == 2);
    auto ok = run("analyze " + path + " --allow-trivial --json");
    REQUIRE(ok.exit_code == 0);
    auto doc = nlohmann::json::parse(ok.out);
    REQUIRE(doc["members"] == 1);
    REQUIRE(doc["union_closed"] == true);
    std::remove(path.c_str());
}
