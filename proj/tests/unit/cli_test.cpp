#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path data = DPCP_TEST_DATA;
const fs::path cli = DPCP_CLI;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const auto out = fs::temp_directory_path() / "dpcp_cli_test.out";
    const auto command = cli.string() + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(command.c_str());
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("solve the three-location tour with cabs and propagation") {
    auto r = run("solve --problem tsptw --algo cabs --propagation once " + (data / "tiny_tsptw.json").string());
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "Optimal");
    CHECK(j["cost"] == 9);
}

TEST_CASE("a forced timeout exits with 2") {
    const auto dir = fs::temp_directory_path() / "dpcp_cli_gen_big";
    fs::remove_all(dir);
    auto g = run("generate --n 60 --seed 4 --output " + dir.string());
    REQUIRE(g.code == 0);
    const auto file = *fs::directory_iterator(dir);
    auto r = run("solve --algo astar --time-limit 0.001 " + file.path().string());
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["status"] == "TimeLimit");
}

TEST_CASE("malformed input exits with 1") {
    auto r = run("solve --problem smswt " + (data / "malformed.json").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("malformed.json") != std::string::npos);
}

TEST_CASE("generate writes the requested files deterministically") {
    const auto a = fs::temp_directory_path() / "dpcp_cli_gen_a";
    const auto b = fs::temp_directory_path() / "dpcp_cli_gen_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const std::string flags = "generate --problem smswt --n 50 --tau 0.2 --rho 0.25 --phi 0.9 --count 10 --seed 1 --output ";
    REQUIRE(run(flags + a.string()).code == 0);
    REQUIRE(run(flags + b.string()).code == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
    CHECK(files == 10);
    CHECK(fs::exists(a / "smswt_n50_tau0.2_rho0.25_phi0.9_s1_0.json"));
}

TEST_CASE("generate with tau 0 releases every job at 0") {
    const auto dir = fs::temp_directory_path() / "dpcp_cli_gen_tau0";
    fs::remove_all(dir);
    REQUIRE(run("generate --n 50 --tau 0 --count 3 --seed 2 --output " + dir.string()).code == 0);
    for (const auto& entry : fs::directory_iterator(dir)) {
        auto j = nlohmann::json::parse(slurp(entry.path()));
        for (const auto& job : j["jobs"]) CHECK(job["r"] == 0);
    }
}

TEST_CASE("generate refuses other problems") {
    CHECK(run("generate --problem rcpsp").code == 1);
}

TEST_CASE("oracle answers and refuses large instances") {
    auto sms = run("oracle --problem smswt " + (data / "two_jobs.json").string());
    CHECK(sms.code == 0);
    CHECK(sms.out == "3\n");
    auto tour = run("oracle --problem tsptw " + (data / "tiny_tsptw.json").string());
    CHECK(tour.out == "9\n");
    auto big = run("oracle --problem smswt " + (data / "eleven_jobs.json").string());
    CHECK(big.code == 1);
    CHECK(big.out.find("at most 10") != std::string::npos);
}

TEST_CASE("bench writes csv") {
    const auto dir = fs::temp_directory_path() / "dpcp_cli_bench";
    fs::remove_all(dir);
    fs::create_directories(dir);
    nlohmann::json manifest = {{"runs",
                                {{{"instance", (data / "two_jobs.json").string()}, {"problem", "smswt"}, {"propagation", "off"}},
                                 {{"instance", (data / "small.sm").string()}, {"problem", "rcpsp"}, {"propagation", "once"}}}}};
    std::ofstream(dir / "manifest.json") << manifest.dump();
    auto r = run("bench " + (dir / "manifest.json").string() + " --output " + (dir / "out.csv").string());
    REQUIRE(r.code == 0);
    const auto csv = slurp(dir / "out.csv");
    CHECK(csv.rfind("index,instance,problem,algo,mode,seed,status,cost", 0) == 0);
    CHECK(csv.find("smswt/cabs/off,1,1") != std::string::npos);
    CHECK(csv.find("rcpsp/cabs/once,1,1") != std::string::npos);
}
