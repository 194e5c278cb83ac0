#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpcp/evaluate.hpp"
#include "dpcp/models/tsptw.hpp"
#include "dpcp/oracle.hpp"
#include "dpcp/search/search.hpp"
#include "support/instances.hpp"

using namespace dpcp;
using namespace dpcp::tsptw;

namespace {

Instance matrix(std::vector<std::vector<std::int64_t>> rows, std::vector<Window> windows) {
    Instance inst;
    inst.n = rows.size();
    for (const auto& row : rows) {
        for (auto v : row) inst.travel.push_back(v < 0 ? Cost::infinity() : Cost(v));
    }
    inst.windows = std::move(windows);
    return inst;
}

Instance three() { return matrix({{0, 2, 3}, {2, 0, 4}, {3, 4, 0}}, {{0, 100}, {0, 100}, {0, 100}}); }

State state_of(std::size_t n, std::initializer_list<std::size_t> unvisited, std::size_t at, std::int64_t t) {
    IndexSet u(n);
    for (auto j : unvisited) u.insert(j);
    return {u, at, t};
}

cp::CpModel built(const Model& model, const State& s, Cost g = Cost(0), Cost primal = Cost::infinity()) {
    return Adapter(model).build(s, {g, primal});
}

}  // namespace

TEST_CASE("target successors read the matrix") {
    Model model(three());
    auto succ = model.successors(model.target());
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].label == 1);
    CHECK(succ[0].weight == Cost(2));
    CHECK(succ[0].state.time == 2);
    CHECK(succ[1].label == 2);
    CHECK(succ[1].weight == Cost(3));
    CHECK(succ[1].state.time == 3);
}

TEST_CASE("an unreachable window kills the state") {
    auto inst = three();
    inst.windows[2] = {0, 2};
    Model model(inst);
    CHECK(model.successors(model.target()).empty());
}

TEST_CASE("waiting for a window is free") {
    auto inst = three();
    inst.windows[1] = {10, 20};
    Model model(inst);
    auto succ = model.successors(model.target());
    CHECK(succ[0].weight == Cost(2));
    CHECK(succ[0].state.time == 10);
}

TEST_CASE("base state returns to the depot") {
    Model model(three());
    auto s = state_of(3, {}, 1, 9);
    CHECK(model.is_base(s));
    CHECK(model.base_cost(s) == Cost(2));
    auto missing = three();
    missing.travel[1 * 3 + 0] = Cost::infinity();
    Model no_return(missing);
    CHECK(no_return.base_cost(s).is_infinite());
}

TEST_CASE("dominance compares times within a signature") {
    Model model(three());
    CHECK(model.dominates(state_of(3, {2}, 1, 4), state_of(3, {2}, 1, 9)));
    CHECK(model.dominates(state_of(3, {2}, 1, 4), state_of(3, {2}, 1, 4)));
    CHECK_FALSE(model.signature(state_of(3, {2}, 1, 4)) == model.signature(state_of(3, {1}, 2, 4)));
}

TEST_CASE("DP dual of the three-location target") {
    Model model(three());
    CHECK(model.dual(model.target()) == Cost(7));
    CHECK(oracle::tsptw_permutations(three()) == 9);
    auto s = state_of(3, {}, 1, 5);
    CHECK(model.dual(s) == max(model.min_to(0), model.min_from(1)));
    CHECK(model.dual(s) <= model.base_cost(s));
}

TEST_CASE("symmetric matrices give equal dual terms") {
    Model model(three());
    Cost into = model.min_to(0), out = model.min_from(0);
    for (std::size_t i = 1; i < 3; ++i) {
        into = into + model.min_to(i);
        out = out + model.min_from(i);
    }
    CHECK(into == out);
}

TEST_CASE("CP duration domains of the target") {
    Model model(three());
    Adapter adapter(model);
    auto m = built(model, model.target());
    CHECK(m.store[adapter.travel_var(0)].values() == std::vector<cp::Value>{2, 3});
    CHECK(m.store[adapter.travel_var(1)].values() == std::vector<cp::Value>{2, 4});
    CHECK(m.store[adapter.travel_var(2)].values() == std::vector<cp::Value>{3, 4});
    CHECK(adapter.dual_cp(model.target(), m.store) == Cost(7));
}

TEST_CASE("depot tightening can empty a duration domain") {
    // From 2 only the depot is reachable, yet 1 must be visited after 2.
    auto inst = matrix({{0, 10, 1}, {5, 0, -1}, {1, -1, 0}}, {{0, 100}, {20, 30}, {0, 5}});
    Model model(inst);
    Adapter adapter(model);
    auto m = built(model, model.target());
    CHECK(m.store.infeasible());
}

TEST_CASE("no incumbent leaves the sum cap vacuous") {
    Model model(three());
    auto m = built(model, model.target());
    auto sum = std::find_if(m.propagators.begin(), m.propagators.end(),
                            [](const auto& p) { return std::holds_alternative<cp::SumLe>(p); });
    REQUIRE(sum != m.propagators.end());
    CHECK_FALSE(std::get<cp::SumLe>(*sum).cap.has_value());
}

TEST_CASE("depot tightening raises the CP dual") {
    // At 1 with 2 still to visit. Leaving 1 costs 1 to the depot and 4 to 2.
    // When 2 opens after 1 closes, 1 cannot be last and its 1 disappears.
    auto late = matrix({{0, 2, 3}, {1, 0, 4}, {3, 4, 0}}, {{0, 100}, {0, 10}, {50, 60}});
    auto early = late;
    early.windows[2] = {0, 60};
    const auto s = state_of(3, {2}, 1, 3);
    Model tight(late), loose(early);
    auto mt = built(tight, s);
    auto ml = built(loose, s);
    Adapter at(tight), al(loose);
    CHECK(mt.store[at.travel_var(1)].values() == std::vector<cp::Value>{4});
    CHECK(ml.store[al.travel_var(1)].values() == std::vector<cp::Value>{1, 4});
    CHECK(al.dual_cp(s, ml.store) == Cost(1 + 3));
    CHECK(at.dual_cp(s, mt.store) == Cost(4 + 3));
}

TEST_CASE("depot tightening keeps a duration shared with another destination") {
    auto inst = matrix({{0, 2, 3}, {5, 0, 5}, {3, 4, 0}}, {{0, 100}, {0, 10}, {50, 60}});
    Model model(inst);
    Adapter adapter(model);
    const auto s = state_of(3, {2}, 1, 3);
    auto m = built(model, s);
    CHECK(m.store[adapter.travel_var(1)].values() == std::vector<cp::Value>{5});
    CHECK_FALSE(adapter.is_succ_infeasible(2, s, m.store));
}

TEST_CASE("a primal cap prunes long legs and their moves") {
    // Durations p_0 in {2,3}, p_1 in {2,4}, p_2 in {3,4}, lower bounds sum 7.
    // With primal 7 each leg keeps at most 7 - (7 - lb) = lb.
    Model model(three());
    Adapter adapter(model);
    auto m = built(model, model.target(), Cost(0), Cost(7));
    cp::propagate_once(m.store, m.propagators);
    REQUIRE_FALSE(m.store.infeasible());
    CHECK(m.store[adapter.travel_var(0)].values() == std::vector<cp::Value>{2});
    CHECK(m.store[adapter.travel_var(2)].values() == std::vector<cp::Value>{3});
    CHECK_FALSE(adapter.is_succ_infeasible(1, model.target(), m.store));
    CHECK(adapter.is_succ_infeasible(2, model.target(), m.store));
    CHECK(adapter.dual_cp(model.target(), m.store) == Cost(7));
}

TEST_CASE("CP dual of the last leg is its duration bound") {
    Model model(three());
    Adapter adapter(model);
    auto s = state_of(3, {}, 1, 5);
    auto m = built(model, s);
    CHECK(adapter.dual_cp(s, m.store) == Cost(m.store.lb(adapter.travel_var(1))));
}

TEST_CASE("a mandatory visit pushes an arrival past the direct one") {
    // 2 must start in [3,4] and occupy 2 time units; 1 opens at 4 and also
    // takes 2. Both cannot fit before 6, so 1 goes after 2: lb(s_1) = 5.
    // Direct travel 0 -> 1 arrives at 4, which is filtered.
    auto inst = matrix({{0, 4, 3}, {2, 0, 2}, {2, 2, 0}}, {{0, 100}, {4, 100}, {3, 4}});
    Model model(inst);
    Adapter adapter(model);
    auto m = built(model, model.target());
    cp::propagate_fixpoint(m.store, m.propagators);
    REQUIRE_FALSE(m.store.infeasible());
    CHECK(model.arrival(model.target(), 1) == 4);
    CHECK(m.store.lb(adapter.arrival_var(1)) == 5);
    CHECK(adapter.is_succ_infeasible(1, model.target(), m.store));
    CHECK_FALSE(adapter.is_succ_infeasible(2, model.target(), m.store));
    CHECK(oracle::tsptw_permutations(inst) == 3 + 2 + 2);
}

TEST_CASE("untouched domains filter nothing") {
    Model model(three());
    Adapter adapter(model);
    auto m = built(model, model.target());
    CHECK_FALSE(adapter.is_succ_infeasible(1, model.target(), m.store));
    CHECK_FALSE(adapter.is_succ_infeasible(2, model.target(), m.store));
}

TEST_CASE("bounds are admissible on enumerated states") {
    for (std::uint64_t k = 0; k < 40; ++k) {
        Model model(testing::small_tsptw(k));
        Adapter adapter(model);
        BruteForce<Model> bf(model, 16);
        bf.value(model.target());
        for (const auto& [s, v] : bf.visited()) {
            if (v.is_infinite()) continue;
            CHECK(model.dual(s) <= v);
            auto m = built(model, s);
            cp::propagate_fixpoint(m.store, m.propagators);
            REQUIRE_FALSE(m.store.infeasible());
            CHECK(adapter.dual_cp(s, m.store) <= v);
        }
    }
}

TEST_CASE("propagated arrival windows keep every realizable arrival") {
    for (std::uint64_t k = 0; k < 40; ++k) {
        Model model(testing::small_tsptw(k));
        Adapter adapter(model);
        BruteForce<Model> bf(model, 16);
        bf.value(model.target());
        for (const auto& [s, v] : bf.visited()) {
            if (v.is_infinite() || model.is_base(s)) continue;
            auto m = built(model, s);
            cp::propagate_fixpoint(m.store, m.propagators);
            for (const auto& t : model.successors(s)) {
                if (bf.value(t.state).is_infinite()) continue;
                CHECK(m.store[adapter.arrival_var(t.state.location)].contains(t.state.time));
                CHECK_FALSE(adapter.is_succ_infeasible(t.label, s, m.store));
            }
        }
    }
}

TEST_CASE("cost counts travel only") {
    auto inst = three();
    inst.windows[1] = {50, 60};
    Model model(inst);
    auto r = search::astar(model, SolveLimits{});
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.incumbent->cost == Cost(9));
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(matrix({{0, 1}, {1, 0}}, {{0, 10}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(matrix({{0, 1}, {1, 0}}, {{0, 10}, {5, 4}}).validate(), std::invalid_argument);
}
