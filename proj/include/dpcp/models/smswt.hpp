#pragma once

#include <cstdint>
#include <vector>

#include "dpcp/cp/propagators.hpp"
#include "dpcp/index_set.hpp"
#include "dpcp/model.hpp"
#include "dpcp/search/propagation.hpp"

/// Single machine scheduling with release dates and deadlines, minimising
/// total weighted tardiness.
namespace dpcp::smswt {

struct Job {
    std::int64_t p = 1;         // processing time, >= 1
    std::int64_t r = 0;         // release date
    std::int64_t d = 0;         // due date
    std::int64_t deadline = 0;  // latest finish
    std::int64_t w = 0;         // tardiness weight

    friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
    std::vector<Job> jobs;

    std::size_t size() const { return jobs.size(); }
    void validate() const;
    friend bool operator==(const Instance&, const Instance&) = default;
};

struct State {
    IndexSet unscheduled;
    std::int64_t time = 0;

    friend bool operator==(const State&, const State&) = default;
};

class Model {
public:
    using State = smswt::State;
    using Signature = IndexSet;

    explicit Model(Instance instance);

    const Instance& instance() const { return instance_; }

    State target() const;
    bool is_base(const State& s) const { return s.unscheduled.empty(); }
    Cost base_cost(const State&) const { return Cost(0); }
    Cost root_cost() const { return Cost(0); }
    std::vector<Transition<State>> successors(const State& s) const;
    bool dominates(const State& a, const State& b) const { return a.time <= b.time; }
    Cost dual(const State& s) const;
    Signature signature(const State& s) const { return s.unscheduled; }

    /// Completion time when job i is scheduled next at time t.
    std::int64_t next_time(std::int64_t t, std::size_t i) const;

    /// True when every unscheduled job can still meet its deadline from s.
    bool all_schedulable(const State& s) const;

private:
    Instance instance_;
};

/// CP view of a state: one start variable per job (variable id = job index),
/// a Disjunctive over the unscheduled jobs.
class Adapter {
public:
    explicit Adapter(const Model& model) : model_(model) {}

    cp::CpModel build(const State& s, search::BuildContext ctx) const;
    bool is_infeasible(const State&, const cp::DomainStore& store) const { return store.infeasible(); }
    Cost dual_cp(const State& s, const cp::DomainStore& store) const;
    bool is_succ_infeasible(TransitionLabel job, const State& s, const cp::DomainStore& store) const;

private:
    const Model& model_;
};

struct GeneratorConfig {
    std::size_t n = 50;
    double tau = 0.0;
    double rho = 0.05;
    double phi = 0.9;
    std::uint64_t seed = 0;
    std::size_t count = 1;

    void validate() const;
};

/// Random instances: p in [1,10], P = sum p, r in [0, tau P],
/// d in [r+p, r+p+rho P], deadline in [d, d+phi P], w in [1,10].
std::vector<Instance> generate(const GeneratorConfig& config);

}  // namespace dpcp::smswt

template <>
struct std::hash<dpcp::smswt::State> {
    std::size_t operator()(const dpcp::smswt::State& s) const noexcept {
        return dpcp::hash_combine(s.unscheduled.hash(), std::hash<std::int64_t>{}(s.time));
    }
};
