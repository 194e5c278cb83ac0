#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dpcp/bench/runner.hpp"
#include "dpcp/io/instances.hpp"
#include "dpcp/oracle.hpp"

using namespace dpcp;

namespace {

const std::filesystem::path data = DPCP_TEST_DATA;

io::AnyInstance reparse(const io::AnyInstance& inst, io::Problem problem) {
    std::istringstream in(io::dump(inst));
    return io::parse_instance(in, problem, io::Format::Json, "<dump>");
}

std::optional<std::int64_t> solved_cost(const io::AnyInstance& inst) {
    bench::RunConfig config;
    config.mode = search::PropagationMode::Once;
    auto r = bench::solve(inst, config);
    if (!r.incumbent) return std::nullopt;
    return r.incumbent->cost.value();
}

}  // namespace

TEST_CASE("psplib dummies are stripped and precedences kept") {
    auto inst = std::get<rcpsp::Instance>(io::load_instance(data / "small.sm", io::Problem::Rcpsp));
    REQUIRE(inst.size() == 6);
    CHECK(inst.capacities == std::vector<std::int64_t>{3, 2});
    CHECK(inst.tasks[0] == rcpsp::Task{4, {2, 1}});
    CHECK(inst.tasks[5] == rcpsp::Task{3, {3, 1}});
    using P = std::pair<std::size_t, std::size_t>;
    CHECK(inst.precedences == std::vector<P>{{0, 3}, {1, 4}, {1, 5}, {2, 5}});
}

TEST_CASE("psplib contracts precedences through zero-duration tasks") {
    const std::string text =
        "jobs (incl. supersource/sink ):  5\n"
        "PRECEDENCE RELATIONS:\n"
        "jobnr.    #modes  #successors   successors\n"
        "   1        1          1           2\n"
        "   2        1          1           3\n"
        "   3        1          1           4\n"
        "   4        1          1           5\n"
        "   5        1          0\n"
        "****\n"
        "REQUESTS/DURATIONS:\n"
        "jobnr. mode duration  R 1\n"
        "------------------------------------\n"
        "  1      1     0       0\n"
        "  2      1     2       1\n"
        "  3      1     0       0\n"
        "  4      1     3       1\n"
        "  5      1     0       0\n"
        "****\n"
        "RESOURCEAVAILABILITIES:\n"
        "  R 1\n"
        "    1\n";
    std::istringstream in(text);
    auto inst = io::parse_psplib(in);
    REQUIRE(inst.size() == 2);
    CHECK(inst.precedences == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
}

TEST_CASE("psplib errors carry line numbers") {
    std::istringstream in("jobs (incl. supersource/sink ):  2\nPRECEDENCE RELATIONS:\nheader\n 1 1 x\n");
    try {
        io::parse_psplib(in, "bad.sm");
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("bad.sm:4") != std::string::npos);
    }
}

TEST_CASE("tsptw matrix without node ids") {
    auto inst = std::get<tsptw::Instance>(io::load_instance(data / "small.tsptw", io::Problem::Tsptw));
    CHECK(inst.n == 5);
    CHECK(inst.c(1, 2) == Cost(3));
    CHECK(inst.windows[4] == tsptw::Window{10, 40});
}

TEST_CASE("tsptw matrix with node ids") {
    auto inst = std::get<tsptw::Instance>(io::load_instance(data / "small_ids.tsptw", io::Problem::Tsptw));
    CHECK(inst.n == 4);
    CHECK(inst.c(2, 3) == Cost(3));
    CHECK(inst.windows[2] == tsptw::Window{4, 14});
}

TEST_CASE("tsptw matrix rejects fractional distances") {
    try {
        io::load_instance(data / "fractional.tsptw", io::Problem::Tsptw);
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("tsptw matrix rejects short files") {
    std::istringstream in("3\n0 1 2\n1 0 2\n");
    CHECK_THROWS_AS(io::parse_tsptw_matrix(in), io::ParseError);
}

TEST_CASE("malformed json is a parse error") {
    CHECK_THROWS_AS(io::load_instance(data / "malformed.json", io::Problem::Smswt), io::ParseError);
    std::istringstream missing(R"({"jobs": [{"p": 1}]})");
    CHECK_THROWS_AS(io::parse_instance(missing, io::Problem::Smswt, io::Format::Json, "x"), io::ParseError);
}

TEST_CASE("unknown formats are reported") {
    CHECK_THROWS_AS(io::parse_format("xml"), io::UnknownFormat);
    std::istringstream in("5 5 5");
    CHECK_THROWS_AS(io::parse_instance(in, io::Problem::Smswt, io::Format::Auto, "x"), io::UnknownFormat);
    std::istringstream sm("x");
    CHECK_THROWS_AS(io::parse_instance(sm, io::Problem::Smswt, io::Format::Psplib, "x"), io::UnknownFormat);
}

TEST_CASE("json round trips preserve instances") {
    auto sms = io::load_instance(data / "two_jobs.json", io::Problem::Smswt);
    CHECK(reparse(sms, io::Problem::Smswt) == sms);
    auto tour = io::load_instance(data / "tiny_tsptw.json", io::Problem::Tsptw);
    CHECK(reparse(tour, io::Problem::Tsptw) == tour);
    auto with_gap = std::get<tsptw::Instance>(tour);
    with_gap.travel[1] = Cost::infinity();
    const io::AnyInstance any = with_gap;
    CHECK(io::to_json(any)["c"][0][1].is_null());
    CHECK(reparse(any, io::Problem::Tsptw) == any);
}

TEST_CASE("fixtures survive conversion to json and solve identically") {
    auto sm = io::load_instance(data / "small.sm", io::Problem::Rcpsp);
    auto sm_json = reparse(sm, io::Problem::Rcpsp);
    CHECK(sm_json == sm);
    const auto sm_cost = solved_cost(sm);
    REQUIRE(sm_cost);
    CHECK(solved_cost(sm_json) == sm_cost);
    CHECK(oracle::rcpsp_orderings(std::get<rcpsp::Instance>(sm)) == sm_cost);

    for (auto name : {"small.tsptw", "small_ids.tsptw"}) {
        auto tour = io::load_instance(data / name, io::Problem::Tsptw);
        auto tour_json = reparse(tour, io::Problem::Tsptw);
        CHECK(tour_json == tour);
        CHECK(solved_cost(tour_json) == solved_cost(tour));
        CHECK(oracle::tsptw_permutations(std::get<tsptw::Instance>(tour)) == solved_cost(tour));
    }
}

TEST_CASE("problem names parse") {
    CHECK(io::parse_problem("rcpsp") == io::Problem::Rcpsp);
    CHECK(io::to_string(io::Problem::Tsptw) == "tsptw");
    CHECK_THROWS_AS(io::parse_problem("vrp"), std::invalid_argument);
}
