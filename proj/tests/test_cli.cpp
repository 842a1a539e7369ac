// End-to-end checks against the built binary: exit codes, determinism,
// output formats.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

std::string data(const char* file) { return std::string(TEST_DATA_DIR) + "/" + file; }

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "seqelect_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, const fs::path& stdout_path) {
    std::string cmd = std::string(CLI_PATH) + " " + args + " > " + stdout_path.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("tabulate json and table outputs") {
    auto out = scratch() / "a.json";
    REQUIRE(run("tabulate " + data("blocs_k1.json") + " --method phragmen-sl --seats 3", out) == 0);
    auto text = slurp(out);
    CHECK(text.find("\"method\": \"phragmen-sl\"") != std::string::npos);
    CHECK(text.find("\"winners\"") != std::string::npos);

    auto table = scratch() / "a.txt";
    REQUIRE(run("tabulate " + data("blocs_k1.json") +
                    " --method phragmen-sl --seats 3 --output table",
                table) == 0);
    auto tt = slurp(table);
    CHECK(tt.find("seat  candidate") != std::string::npos);
    CHECK(tt.find("winners: A X C") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
    auto out1 = scratch() / "r1.json";
    auto out2 = scratch() / "r2.json";
    std::string args = "tabulate " + data("spillover.json") + " --method pareto-pointwise --trace";
    REQUIRE(run(args, out1) == 0);
    REQUIRE(run(args, out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK_FALSE(slurp(out1).empty());
}

TEST_CASE("exit codes") {
    auto sink = scratch() / "sink.json";
    // unknown method: input error
    CHECK(run("tabulate " + data("blocs_k1.json") + " --method nope", sink) == 1);
    // missing file: input error
    CHECK(run("tabulate /no/such/file.json --method phragmen-sl", sink) == 1);
    // score ballots through an approval-only method: precondition error
    CHECK(run("tabulate " + data("score_blocs_a.json") + " --method thiele", sink) == 2);
    // same with conversion: fine
    CHECK(run("tabulate " + data("score_blocs_a.json") + " --method thiele --convert 2", sink) ==
          0);
    // mode mismatch
    CHECK(run("tabulate " + data("parties_53_24_23.json") + " --mode ballots", sink) == 1);
}

TEST_CASE("partylist tabulation through the binary") {
    auto out = scratch() / "p.json";
    REQUIRE(run("tabulate " + data("parties_53_24_23.json") + " --divisors sainte-lague", out) ==
            0);
    auto text = slurp(out);
    CHECK(text.find("\"seats\": 3") != std::string::npos);
    REQUIRE(run("tabulate " + data("parties_53_24_23.json") +
                    " --divisors custom:1.4,3,5,7 --formulation divisor",
                out) == 0);
    CHECK(slurp(out).find("alpha_interval") != std::string::npos);
}
