#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpcp/evaluate.hpp"
#include "dpcp/models/rcpsp.hpp"
#include "dpcp/models/smswt.hpp"
#include "dpcp/models/tsptw.hpp"
#include "dpcp/oracle.hpp"
#include "dpcp/search/search.hpp"
#include "support/instances.hpp"

using namespace dpcp;
using search::PropagationMode;

namespace {

smswt::Instance two_jobs() { return {{{2, 0, 2, 10, 1}, {3, 0, 3, 10, 2}}}; }
smswt::Instance unfit_job() { return {{{3, 5, 5, 7, 1}}}; }

// J1 (r=0, p=5, deadline 20) and J2 (r=1, p=3, deadline 5).
smswt::Instance edge_finding_pair() { return {{{5, 0, 4, 20, 2}, {3, 1, 5, 5, 1}}}; }

constexpr std::array modes{PropagationMode::Off, PropagationMode::Once, PropagationMode::FixPoint};

}  // namespace

TEST_CASE("astar solves the two-job instance") {
    smswt::Model model(two_jobs());
    smswt::Adapter adapter(model);
    for (auto mode : modes) {
        auto r = search::astar(model, &adapter, {}, mode);
        CHECK(r.status == SolveStatus::Optimal);
        REQUIRE(r.incumbent);
        CHECK(r.incumbent->cost == Cost(3));
        CHECK(r.incumbent->labels == std::vector<TransitionLabel>{1, 0});
        CHECK(r.metrics.final_gap == 0.0);
    }
}

TEST_CASE("astar reports an unfit job as infeasible") {
    smswt::Model model(unfit_job());
    smswt::Adapter adapter(model);
    for (auto mode : modes) {
        auto r = search::astar(model, &adapter, {}, mode);
        CHECK(r.status == SolveStatus::Infeasible);
        CHECK_FALSE(r.incumbent);
    }
}

TEST_CASE("an expansion cap of zero stops before any work") {
    smswt::Model model(two_jobs());
    smswt::Adapter adapter(model);
    SolveLimits limits;
    limits.expansion_cap = 0;
    auto a = search::astar(model, &adapter, limits, PropagationMode::Once);
    CHECK(a.status == SolveStatus::ExpansionLimit);
    CHECK_FALSE(a.incumbent);
    CHECK(a.metrics.expansions == 0);
    auto c = search::cabs(model, &adapter, limits, {}, PropagationMode::Once);
    CHECK(c.status == SolveStatus::ExpansionLimit);
    CHECK_FALSE(c.incumbent);
}

TEST_CASE("cabs solves the two-job instance with a non-increasing trace") {
    smswt::Model model(two_jobs());
    smswt::Adapter adapter(model);
    for (auto mode : modes) {
        auto r = search::cabs(model, &adapter, {}, {}, mode);
        CHECK(r.status == SolveStatus::Optimal);
        REQUIRE(r.incumbent);
        CHECK(r.incumbent->cost == Cost(3));
        const auto& trace = r.metrics.incumbent_trace;
        REQUIRE_FALSE(trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].value < trace[i - 1].value);
        CHECK(trace.back().value == Cost(3));
    }
}

TEST_CASE("cabs widths grow 1, 2, 4, 8 with the defaults") {
    // A width-1 pass cannot settle this instance, so several passes run.
    smswt::GeneratorConfig cfg;
    cfg.n = 9;
    cfg.tau = 0.4;
    cfg.rho = 0.05;
    cfg.phi = 1.5;
    cfg.seed = 3;
    smswt::Model model(smswt::generate(cfg).front());
    auto r = search::cabs(model, SolveLimits{});
    const auto& w = r.metrics.beam_widths;
    REQUIRE(w.size() >= 4);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == (std::uint64_t{1} << i));
}

TEST_CASE("cabs reports an unfit job as infeasible") {
    smswt::Model model(unfit_job());
    smswt::Adapter adapter(model);
    for (auto mode : modes) CHECK(search::cabs(model, &adapter, {}, {}, mode).status == SolveStatus::Infeasible);
}

TEST_CASE("beam configuration is validated") {
    CHECK_THROWS_AS(search::BeamConfig({0, 2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(search::BeamConfig({1, 1}).validate(), std::invalid_argument);
    CHECK_NOTHROW(search::BeamConfig{}.validate());
}

TEST_CASE("register admits into an empty registry") {
    smswt::Model model(two_jobs());
    search::Registry<smswt::Model> reg(model);
    CHECK(search::register_state(reg, model.target(), Cost(0)));
}

TEST_CASE("register rejects an identical state with larger g") {
    smswt::Model model(two_jobs());
    search::Registry<smswt::Model> reg(model);
    CHECK(search::register_state(reg, model.target(), Cost(4)));
    CHECK_FALSE(search::register_state(reg, model.target(), Cost(5)));
}

TEST_CASE("register rejects a later state with equal g") {
    smswt::Model model(two_jobs());
    search::Registry<smswt::Model> reg(model);
    IndexSet u(2);
    u.insert(1);
    CHECK(search::register_state(reg, smswt::State{u, 3}, Cost(2)));
    CHECK_FALSE(search::register_state(reg, smswt::State{u, 5}, Cost(2)));
}

TEST_CASE("register supersedes entries the newcomer dominates") {
    smswt::Model model(two_jobs());
    search::Registry<smswt::Model> reg(model);
    IndexSet u(2);
    u.insert(1);
    std::vector<search::NodeId> superseded;
    CHECK(reg.insert(smswt::State{u, 5}, Cost(2), 7));
    CHECK(reg.insert(smswt::State{u, 3}, Cost(2), 8, &superseded));
    CHECK(superseded == std::vector<search::NodeId>{7});
    CHECK(reg.size() == 1);
}

TEST_CASE("propagation that empties a domain yields no successors") {
    // Both jobs need [0, 5) exclusively.
    smswt::Model model({{{5, 0, 5, 5, 1}, {5, 0, 5, 5, 1}}});
    smswt::Adapter adapter(model);
    auto out = search::gen_succ_propagation(model, adapter, model.target(), Cost(0), Cost::infinity(),
                                            PropagationMode::Once);
    CHECK(out.pruned == search::PruneReason::Infeasible);
    CHECK(out.successors.empty());
    CHECK(out.cp_dual.is_infinite());
}

TEST_CASE("propagation prunes a state whose bound reaches the primal") {
    smswt::Model model(edge_finding_pair());
    smswt::Adapter adapter(model);
    auto open = search::gen_succ_propagation(model, adapter, model.target(), Cost(0), Cost::infinity(),
                                             PropagationMode::Once);
    REQUIRE(open.pruned == search::PruneReason::None);
    auto closed = search::gen_succ_propagation(model, adapter, model.target(), Cost(0), open.cp_dual,
                                               PropagationMode::Once);
    CHECK(closed.pruned == search::PruneReason::Bound);
    CHECK(closed.successors.empty());
    CHECK(closed.cp_dual == open.cp_dual);
}

TEST_CASE("edge-finding filters scheduling J1 first") {
    // Feasible start pairs, enumerated: s_J2 in {1, 2} and s_J1 >= s_J2 + 3,
    // so the smallest feasible s_J1 is 4.
    smswt::Model model(edge_finding_pair());
    smswt::Adapter adapter(model);
    std::int64_t min_start = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t s1 = 0; s1 <= 15; ++s1) {
        for (std::int64_t s2 = 1; s2 <= 2; ++s2) {
            if (s1 + 5 <= s2 || s2 + 3 <= s1) min_start = std::min(min_start, s1);
        }
    }
    REQUIRE(min_start == 4);

    for (auto mode : {PropagationMode::Once, PropagationMode::FixPoint}) {
        auto out = search::gen_succ_propagation(model, adapter, model.target(), Cost(0), Cost::infinity(), mode);
        REQUIRE(out.pruned == search::PruneReason::None);
        CHECK(out.store.lb(0) == min_start);
        REQUIRE(out.successors.size() == 1);
        CHECK(out.successors[0].label == 1);
        CHECK(out.filtered == 1);
    }
}

TEST_CASE("adapter failures surface as exceptions") {
    struct BadAdapter {
        cp::CpModel build(const smswt::State&, search::BuildContext) const {
            cp::CpModel m;
            m.store.add_interval(0, 1);
            m.propagators.emplace_back(cp::PrecedenceLe{0, 1, 3});
            return m;
        }
        bool is_infeasible(const smswt::State&, const cp::DomainStore&) const { return false; }
        Cost dual_cp(const smswt::State&, const cp::DomainStore&) const { return Cost(0); }
        bool is_succ_infeasible(TransitionLabel, const smswt::State&, const cp::DomainStore&) const { return false; }
    };
    smswt::Model model(two_jobs());
    BadAdapter bad;
    CHECK_THROWS_AS(search::astar(model, &bad, {}, PropagationMode::Once), search::AdapterFailure);
}

TEST_CASE("all algorithms and modes agree with the oracles") {
    for (std::uint64_t k = 0; k < 30; ++k) {
        auto sms = testing::small_sms(k);
        auto tour = testing::small_tsptw(k);
        auto proj = testing::small_rcpsp(k);
        const auto want_sms = oracle::smswt_permutations(sms);
        const auto want_tour = oracle::tsptw_permutations(tour);
        const auto want_proj = oracle::rcpsp_orderings(proj);
        smswt::Model ms(sms);
        smswt::Adapter as(ms);
        tsptw::Model mt(tour);
        tsptw::Adapter at(mt);
        rcpsp::Model mr(proj);
        rcpsp::Adapter ar(mr);
        auto cost = [](const SolveResult& r) -> std::optional<std::int64_t> {
            if (r.status != SolveStatus::Optimal) return std::nullopt;
            return r.incumbent->cost.value();
        };
        for (auto mode : modes) {
            CHECK(cost(search::astar(ms, &as, {}, mode)) == want_sms);
            CHECK(cost(search::cabs(ms, &as, {}, {}, mode)) == want_sms);
            CHECK(cost(search::astar(mt, &at, {}, mode)) == want_tour);
            CHECK(cost(search::cabs(mt, &at, {}, {}, mode)) == want_tour);
            CHECK(cost(search::astar(mr, &ar, {}, mode)) == want_proj);
            CHECK(cost(search::cabs(mr, &ar, {}, {}, mode)) == want_proj);
        }
    }
}

TEST_CASE("registry buckets never hold mutually rejecting entries") {
    smswt::Model model(testing::small_sms(13));
    search::Registry<smswt::Model> reg(model);
    BruteForce<smswt::Model> bf(model, 16);
    bf.value(model.target());
    std::int64_t g = 0;
    for (const auto& [state, v] : bf.visited()) reg.insert(state, Cost(g++ % 5), 0);
    reg.for_each_bucket([&](const auto& bucket) {
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            for (std::size_t j = 0; j < bucket.size(); ++j) {
                if (i == j) continue;
                CHECK_FALSE((model.dominates(bucket[i].state, bucket[j].state) && bucket[i].g <= bucket[j].g));
            }
        }
    });
}

TEST_CASE("heuristic values under propagation are admissible") {
    for (std::uint64_t k = 0; k < 30; ++k) {
        smswt::Model model(testing::small_sms(k));
        smswt::Adapter adapter(model);
        BruteForce<smswt::Model> bf(model, 16);
        bf.value(model.target());
        for (const auto& [state, v] : bf.visited()) {
            if (model.is_base(state) || v.is_infinite()) continue;
            auto out = search::gen_succ_propagation(model, adapter, state, Cost(0), Cost::infinity(),
                                                    PropagationMode::FixPoint);
            REQUIRE(out.pruned == search::PruneReason::None);
            CHECK(out.cp_dual <= v);
            for (std::size_t i = 0; i < out.successors.size(); ++i) {
                const auto& t = out.successors[i];
                CHECK(max(model.dual(t.state), out.successor_cp_dual[i]) <= bf.value(t.state));
            }
        }
    }
}

TEST_CASE("time and memory limits map to statuses") {
    smswt::GeneratorConfig cfg;
    cfg.n = 40;
    cfg.seed = 11;
    smswt::Model model(smswt::generate(cfg).front());
    SolveLimits mem;
    mem.memory_limit = 1024;
    CHECK(search::astar(model, mem).status == SolveStatus::MemoryLimit);
    SolveLimits time;
    time.time_limit = 1e-6;
    CHECK(search::astar(model, time).status == SolveStatus::TimeLimit);
    SolveLimits cap;
    cap.expansion_cap = 5;
    auto r = search::cabs(model, cap);
    CHECK(r.status == SolveStatus::ExpansionLimit);
    CHECK(r.metrics.expansions == 5);
}
