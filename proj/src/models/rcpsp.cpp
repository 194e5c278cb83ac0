#include "dpcp/models/rcpsp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dpcp::rcpsp {

std::int64_t Instance::horizon() const {
    std::int64_t h = 0;
    for (const auto& t : tasks) h += t.p;
    return h;
}

namespace {

// Kahn's algorithm; nullopt when the precedences contain a cycle.
std::optional<std::vector<std::size_t>> topological_order(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& precedences) {
    std::vector<std::vector<std::size_t>> succs(n);
    std::vector<std::size_t> indegree(n, 0);
    for (auto [i, j] : precedences) {
        succs[i].push_back(j);
        ++indegree[j];
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) order.push_back(i);
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (auto j : succs[order[k]]) {
            if (--indegree[j] == 0) order.push_back(j);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

}  // namespace

void Instance::validate() const {
    for (auto c : capacities) {
        if (c < 1) throw std::invalid_argument("resource capacities must be >= 1");
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].p < 1) throw std::invalid_argument("task " + std::to_string(i) + ": duration must be >= 1");
        if (tasks[i].usage.size() != capacities.size()) {
            throw std::invalid_argument("task " + std::to_string(i) + ": one usage per resource required");
        }
        for (auto u : tasks[i].usage) {
            if (u < 0) throw std::invalid_argument("task " + std::to_string(i) + ": negative usage");
        }
    }
    for (auto [i, j] : precedences) {
        if (i >= tasks.size() || j >= tasks.size() || i == j) {
            throw std::invalid_argument("precedence (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        }
    }
    if (!topological_order(tasks.size(), precedences)) throw std::invalid_argument("precedence graph has a cycle");
}

Model::Model(Instance instance, bool left_shift) : instance_(std::move(instance)), left_shift_(left_shift) {
    instance_.validate();
    preds_.assign(instance_.size(), {});
    for (auto [i, j] : instance_.precedences) preds_[j].push_back(i);
    topo_ = *topological_order(instance_.size(), instance_.precedences);
    horizon_ = instance_.horizon();
}

State Model::target() const { return State{std::vector<std::int64_t>(instance_.size(), -1), 0}; }

bool Model::is_base(const State& s) const {
    return std::all_of(s.start.begin(), s.start.end(), [](auto v) { return v >= 0; });
}

IndexSet Model::signature(const State& s) const {
    IndexSet done(instance_.size());
    for (std::size_t i = 0; i < s.start.size(); ++i) {
        if (s.scheduled(i)) done.insert(i);
    }
    return done;
}

std::int64_t Model::makespan(const State& s) const {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < instance_.size(); ++i) {
        const auto p = instance_.tasks[i].p;
        m = std::max(m, s.scheduled(i) ? s.start[i] + p : s.time + p);
    }
    return m;
}

std::optional<std::int64_t> Model::earliest_time(const State& s, std::size_t task) const {
    const auto& tasks = instance_.tasks;
    std::int64_t from = s.time;
    for (auto j : preds_[task]) {
        if (!s.scheduled(j)) return std::nullopt;
        from = std::max(from, s.start[j] + tasks[j].p);
    }
    std::vector<std::int64_t> candidates{from};
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (s.scheduled(i) && s.start[i] + tasks[i].p > from) candidates.push_back(s.start[i] + tasks[i].p);
    }
    std::sort(candidates.begin(), candidates.end());

    const auto p = tasks[task].p;
    auto fits = [&](std::int64_t h) {
        // Occupancy only changes at scheduled start times inside [h, h + p).
        std::vector<std::int64_t> probes{h};
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (s.scheduled(i) && s.start[i] > h && s.start[i] < h + p) probes.push_back(s.start[i]);
        }
        for (std::size_t r = 0; r < instance_.resources(); ++r) {
            const auto need = tasks[task].usage[r];
            if (need == 0) continue;
            for (auto q : probes) {
                std::int64_t used = need;
                for (std::size_t i = 0; i < tasks.size(); ++i) {
                    if (s.scheduled(i) && s.start[i] <= q && q < s.start[i] + tasks[i].p) used += tasks[i].usage[r];
                }
                if (used > instance_.capacities[r]) return false;
            }
        }
        return true;
    };
    for (auto h : candidates) {
        if (h > horizon_) break;
        if (fits(h)) return h;
    }
    return std::nullopt;
}

std::vector<Transition<State>> Model::successors(const State& s) const {
    const auto& tasks = instance_.tasks;
    std::vector<std::pair<std::size_t, std::int64_t>> candidates;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (s.scheduled(i)) continue;
        if (auto at = earliest_time(s, i)) candidates.emplace_back(i, *at);
    }
    const auto before = makespan(s);
    std::vector<Transition<State>> out;
    for (const auto& [task, at] : candidates) {
        if (left_shift_) {
            bool shifted = std::any_of(candidates.begin(), candidates.end(), [&](const auto& other) {
                return other.first != task && other.second + tasks[other.first].p <= at;
            });
            if (shifted) continue;
        }
        State next = s;
        next.start[task] = at;
        next.time = at;
        out.push_back({Cost(makespan(next) - before), static_cast<TransitionLabel>(task), std::move(next)});
    }
    return out;
}

bool Model::dominates(const State& a, const State& b) const {
    if (a.time > b.time) return false;
    for (std::size_t i = 0; i < instance_.size(); ++i) {
        if (!a.scheduled(i)) continue;
        const auto p = instance_.tasks[i].p;
        if (std::max(a.start[i], b.start[i]) + p > b.time && a.start[i] > b.start[i]) return false;
    }
    return true;
}

Cost Model::critical_path_bound(const State& s) const {
    const auto& tasks = instance_.tasks;
    std::vector<std::int64_t> head(tasks.size(), 0);
    std::int64_t bound = 0;
    bool any = false;
    for (auto i : topo_) {
        if (s.scheduled(i)) continue;
        std::int64_t h = s.time;
        for (auto j : preds_[i]) h = std::max(h, s.scheduled(j) ? s.start[j] + tasks[j].p : head[j] + tasks[j].p);
        head[i] = h;
        bound = std::max(bound, h + tasks[i].p);
        any = true;
    }
    return any ? remaining(Cost(bound), makespan(s)) : Cost(0);
}

Cost Model::energy_bound(const State& s) const {
    const auto& tasks = instance_.tasks;
    std::int64_t bound = 0;
    bool any = false;
    for (std::size_t r = 0; r < instance_.resources(); ++r) {
        std::int64_t energy = 0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (!s.scheduled(i)) {
                energy += tasks[i].usage[r] * tasks[i].p;
                any = true;
            }
        }
        const auto cap = instance_.capacities[r];
        bound = std::max(bound, s.time + (energy + cap - 1) / cap);
    }
    return any ? remaining(Cost(bound), makespan(s)) : Cost(0);
}

Cost Model::dual(const State& s) const { return max(critical_path_bound(s), energy_bound(s)); }

cp::CpModel Adapter::build(const State& s, search::BuildContext ctx) const {
    const auto& inst = model_.instance();
    const auto& tasks = inst.tasks;
    const auto horizon = model_.horizon();
    cp::CpModel m;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (s.scheduled(i)) {
            m.store.add_interval(s.start[i], s.start[i]);
        } else {
            m.store.add_interval(s.time, horizon - tasks[i].p);
        }
    }
    std::int64_t cap = horizon;
    if (ctx.primal.is_finite()) cap = std::min(cap, ctx.primal.value());
    m.store.add_interval(0, cap);

    for (std::size_t r = 0; r < inst.resources(); ++r) {
        cp::Cumulative cumulative{{}, inst.capacities[r]};
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto u = tasks[i].usage[r];
            if (u == 0) continue;
            // Scheduled tasks still running at t enter as fixed blocks.
            if (s.scheduled(i) && s.start[i] + tasks[i].p <= s.time) continue;
            cumulative.tasks.push_back({i, tasks[i].p, u});
        }
        m.propagators.emplace_back(std::move(cumulative));
    }
    for (auto [i, j] : inst.precedences) m.propagators.emplace_back(cp::PrecedenceLe{i, tasks[i].p, j});
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!s.scheduled(i)) m.propagators.emplace_back(cp::PrecedenceLe{i, tasks[i].p, objective_var()});
    }
    return m;
}

Cost Adapter::ect_bound(const State& s, const cp::DomainStore& store) const {
    const auto& inst = model_.instance();
    std::int64_t bound = 0;
    bool any = false;
    for (std::size_t r = 0; r < inst.resources(); ++r) {
        std::vector<cp::EnvelopeTask> envelope;
        for (std::size_t i = 0; i < inst.size(); ++i) {
            if (!s.scheduled(i)) envelope.push_back({store.lb(i), inst.tasks[i].p, inst.tasks[i].usage[r]});
        }
        if (envelope.empty()) continue;
        any = true;
        bound = std::max(bound, cp::ect_envelope(envelope, inst.capacities[r]));
    }
    return any ? remaining(Cost(bound), model_.makespan(s)) : Cost(0);
}

Cost Adapter::finish_bound(const State& s, const cp::DomainStore& store) const {
    const auto& inst = model_.instance();
    std::int64_t bound = 0;
    bool any = false;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (s.scheduled(i)) continue;
        bound = std::max(bound, store.lb(i) + inst.tasks[i].p);
        any = true;
    }
    return any ? remaining(Cost(bound), model_.makespan(s)) : Cost(0);
}

Cost Adapter::dual_cp(const State& s, const cp::DomainStore& store) const {
    if (model_.is_base(s)) return Cost(0);
    const Cost objective = remaining(Cost(store.lb(objective_var())), model_.makespan(s));
    return max(max(ect_bound(s, store), finish_bound(s, store)), objective);
}

bool Adapter::is_succ_infeasible(TransitionLabel label, const State& s, const cp::DomainStore& store) const {
    const auto task = static_cast<std::size_t>(label);
    auto at = model_.earliest_time(s, task);
    return !at || !store[task].contains(*at);
}

}  // namespace dpcp::rcpsp
