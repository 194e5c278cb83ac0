#include "dpcp/models/smswt.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "dpcp/random.hpp"

namespace dpcp::smswt {

void Instance::validate() const {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        if (j.p < 1) throw std::invalid_argument("job " + std::to_string(i) + ": duration must be >= 1");
        if (j.r < 0 || j.w < 0) throw std::invalid_argument("job " + std::to_string(i) + ": negative release or weight");
    }
}

Model::Model(Instance instance) : instance_(std::move(instance)) { instance_.validate(); }

State Model::target() const { return State{IndexSet::full(instance_.size()), 0}; }

std::int64_t Model::next_time(std::int64_t t, std::size_t i) const {
    const auto& j = instance_.jobs[i];
    return std::max(t, j.r) + j.p;
}

bool Model::all_schedulable(const State& s) const {
    bool ok = true;
    s.unscheduled.for_each([&](std::size_t i) { ok = ok && next_time(s.time, i) <= instance_.jobs[i].deadline; });
    return ok;
}

std::vector<Transition<State>> Model::successors(const State& s) const {
    std::vector<Transition<State>> out;
    if (!all_schedulable(s)) return out;
    s.unscheduled.for_each([&](std::size_t i) {
        const auto& j = instance_.jobs[i];
        const auto done = next_time(s.time, i);
        const auto tardiness = std::max<std::int64_t>(0, done - j.d);
        out.push_back({Cost(j.w * tardiness), static_cast<TransitionLabel>(i), State{s.unscheduled.without(i), done}});
    });
    return out;
}

Cost Model::dual(const State& s) const {
    std::int64_t sum = 0;
    s.unscheduled.for_each([&](std::size_t i) {
        const auto& j = instance_.jobs[i];
        sum += j.w * std::max<std::int64_t>(0, std::max(j.r, s.time) + j.p - j.d);
    });
    return Cost(sum);
}

cp::CpModel Adapter::build(const State& s, search::BuildContext) const {
    const auto& jobs = model_.instance().jobs;
    cp::CpModel m;
    cp::Disjunctive disjunctive;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!s.unscheduled.contains(i)) {
            m.store.add_interval(0, 0);
            continue;
        }
        const auto& j = jobs[i];
        auto x = m.store.add_interval(std::max(j.r, s.time), j.deadline - j.p);
        disjunctive.items.push_back({x, cp::DurationSpec::fixed(j.p)});
    }
    m.propagators.emplace_back(std::move(disjunctive));
    return m;
}

Cost Adapter::dual_cp(const State& s, const cp::DomainStore& store) const {
    const auto& jobs = model_.instance().jobs;
    std::int64_t sum = 0;
    s.unscheduled.for_each([&](std::size_t i) {
        const auto& j = jobs[i];
        sum += j.w * std::max<std::int64_t>(0, store.lb(i) + j.p - j.d);
    });
    return Cost(sum);
}

bool Adapter::is_succ_infeasible(TransitionLabel job, const State& s, const cp::DomainStore& store) const {
    const auto i = static_cast<std::size_t>(job);
    return !store[i].contains(std::max(s.time, model_.instance().jobs[i].r));
}

void GeneratorConfig::validate() const {
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau must lie in [0,1]");
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
}

std::vector<Instance> generate(const GeneratorConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<Instance> out;
    for (std::size_t k = 0; k < config.count; ++k) {
        Instance inst;
        inst.jobs.resize(config.n);
        std::int64_t total = 0;
        for (auto& j : inst.jobs) {
            j.p = uniform_int(rng, 1, 10);
            total += j.p;
        }
        const auto release_span = static_cast<std::int64_t>(config.tau * static_cast<double>(total));
        const auto due_span = static_cast<std::int64_t>(config.rho * static_cast<double>(total));
        const auto deadline_span = static_cast<std::int64_t>(config.phi * static_cast<double>(total));
        for (auto& j : inst.jobs) {
            j.r = uniform_int(rng, 0, release_span);
            j.d = uniform_int(rng, j.r + j.p, j.r + j.p + due_span);
            j.deadline = uniform_int(rng, j.d, j.d + deadline_span);
            j.w = uniform_int(rng, 1, 10);
        }
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace dpcp::smswt
