#include "dpcp/models/tsptw.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dpcp::tsptw {

void Instance::validate() const {
    if (n < 1) throw std::invalid_argument("instance needs at least the depot");
    if (travel.size() != n * n) throw std::invalid_argument("travel matrix must be n x n");
    if (windows.size() != n) throw std::invalid_argument("one time window per location required");
    for (std::size_t i = 0; i < n; ++i) {
        if (windows[i].open > windows[i].close || windows[i].open < 0) {
            throw std::invalid_argument("location " + std::to_string(i) + ": invalid time window");
        }
    }
}

Model::Model(Instance instance) : instance_(std::move(instance)) {
    instance_.validate();
    const auto n = instance_.n;
    shortest_.assign(n * n, Cost::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                shortest_[i * n + j] = Cost(0);
            } else {
                shortest_[i * n + j] = c(i, j);
                if (c(i, j) == Cost(0)) has_zero_arc_ = true;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                auto via = shortest_[i * n + k] + shortest_[k * n + j];
                if (via < shortest_[i * n + j]) shortest_[i * n + j] = via;
            }
        }
    }
    min_to_.assign(n, Cost::infinity());
    min_from_.assign(n, Cost::infinity());
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == l) continue;
            min_to_[l] = min(min_to_[l], c(i, l));
            min_from_[l] = min(min_from_[l], c(l, i));
        }
    }
}

State Model::target() const {
    auto u = IndexSet::full(instance_.n);
    u.erase(0);
    return State{std::move(u), 0, 0};
}

std::int64_t Model::arrival(const State& s, std::size_t j) const {
    return std::max(s.time + c(s.location, j).value(), instance_.windows[j].open);
}

std::vector<Transition<State>> Model::successors(const State& s) const {
    std::vector<Transition<State>> out;
    bool doomed = false;
    s.unvisited.for_each([&](std::size_t j) {
        auto reach = Cost(s.time) + shortest(s.location, j);
        if (reach > Cost(instance_.windows[j].close)) doomed = true;
    });
    if (doomed) return out;
    s.unvisited.for_each([&](std::size_t j) {
        const Cost arc = c(s.location, j);
        if (arc.is_infinite() || s.time + arc.value() > instance_.windows[j].close) return;
        out.push_back({arc, static_cast<TransitionLabel>(j), State{s.unvisited.without(j), j, arrival(s, j)}});
    });
    return out;
}

Cost Model::dual(const State& s) const {
    Cost into = min_to(0);
    Cost out = min_from(s.location);
    s.unvisited.for_each([&](std::size_t i) {
        into += min_to(i);
        out += min_from(i);
    });
    return max(into, out);
}

cp::CpModel Adapter::build(const State& s, search::BuildContext ctx) const {
    const auto& inst = model_.instance();
    const auto n = inst.n;
    auto members = s.unvisited;
    members.insert(s.location);

    cp::CpModel m;
    for (std::size_t i = 0; i < n; ++i) {
        if (members.contains(i)) {
            m.store.add_interval(std::max(s.time, inst.windows[i].open), inst.windows[i].close);
        } else {
            m.store.add_interval(0, 0);
        }
    }
    if (m.store.infeasible()) {
        // Keep variable ids stable even when a window is already empty.
        for (std::size_t i = 0; i <= n; ++i) m.store.add_interval(0, 0);
        return m;
    }

    // A location cannot be last when another member must be visited after it.
    const std::int64_t gap = model_.has_zero_arc() ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!members.contains(i)) {
            m.store.add(cp::Domain::finite_set({0}));
            continue;
        }
        bool not_last = false;
        if (i != 0) {
            s.unvisited.for_each([&](std::size_t j) {
                if (j != i && m.store.lb(j) >= m.store.ub(i) + gap) not_last = true;
            });
        }
        std::vector<cp::Value> durations;
        std::vector<cp::Value> without_depot;
        auto consider = [&](std::size_t j, bool depot) {
            const Cost arc = inst.c(i, j);
            if (j == i || arc.is_infinite()) return;
            durations.push_back(arc.value());
            if (!depot) without_depot.push_back(arc.value());
        };
        s.unvisited.for_each([&](std::size_t j) { consider(j, false); });
        consider(0, true);
        m.store.add(cp::Domain::finite_set(not_last ? without_depot : durations));
    }

    std::int64_t horizon = 0;
    members.for_each([&](std::size_t i) {
        const Cost back = inst.c(i, 0);
        if (back.is_finite()) horizon = std::max(horizon, inst.windows[i].close + back.value());
    });
    m.store.add_interval(0, horizon);

    cp::Disjunctive disjunctive;
    cp::SumLe objective;
    objective.constant = ctx.g.value();
    if (ctx.primal.is_finite()) objective.cap = ctx.primal.value();
    members.for_each([&](std::size_t i) {
        disjunctive.items.push_back({arrival_var(i), cp::DurationSpec::of(travel_var(i))});
        objective.terms.push_back(travel_var(i));
    });
    m.propagators.emplace_back(std::move(disjunctive));
    m.propagators.emplace_back(std::move(objective));
    return m;
}

Cost Adapter::dual_cp(const State& s, const cp::DomainStore& store) const {
    std::int64_t sum = store.lb(travel_var(s.location));
    s.unvisited.for_each([&](std::size_t i) { sum += store.lb(travel_var(i)); });
    return Cost(sum);
}

bool Adapter::is_succ_infeasible(TransitionLabel label, const State& s, const cp::DomainStore& store) const {
    const auto j = static_cast<std::size_t>(label);
    const Cost arc = model_.c(s.location, j);
    return !store[arrival_var(j)].contains(model_.arrival(s, j)) ||
           !store[travel_var(s.location)].contains(arc.value());
}

}  // namespace dpcp::tsptw
