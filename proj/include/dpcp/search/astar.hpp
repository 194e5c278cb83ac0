#pragma once

#include <queue>
#include <tuple>

#include "dpcp/search/driver.hpp"

namespace dpcp::search {

/// Best-first search on f = g + h with dominance-aware duplicate detection.
///
/// Ties on f prefer larger g, then insertion order. Superseded nodes stay in
/// the open list and are skipped when popped.
template <DpModel M, class A>
SolveResult astar(const M& model, const A* adapter, const SolveLimits& limits, PropagationMode mode) {
    using State = typename M::State;
    using Node = detail::Node<State>;
    detail::Driver<M, A> run(model, adapter, limits, mode);
    auto& metrics = run.metrics();
    if (run.cap_is_zero()) return run.finish(SolveStatus::ExpansionLimit);

    std::vector<Node> arena;
    Registry<M> registry(model);

    struct Key {
        Cost f;
        Cost g;
        std::uint64_t seq;
        NodeId id;
    };
    auto later = [](const Key& a, const Key& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.seq > b.seq;
    };
    std::priority_queue<Key, std::vector<Key>, decltype(later)> open(later);
    std::uint64_t seq = 0;

    const State root = model.target();
    const Cost root_g = model.root_cost();
    std::optional<typename detail::Driver<M, A>::Generated> root_expansion;
    Cost root_h = run.heuristic(root, std::nullopt);
    if (mode != PropagationMode::Off && !model.is_base(root)) {
        root_expansion = run.generate(root, root_g);
        if (root_expansion->pruned != PruneReason::None) return run.finish(SolveStatus::Infeasible);
        root_h = max(root_h, root_expansion->cp_dual);
    }
    if ((root_g + root_h).is_infinite()) return run.finish(SolveStatus::Infeasible);
    run.set_root_dual(root_g + root_h);

    arena.push_back({root, root_g, root_h, root_g + root_h, std::nullopt, -1, false});
    registry.insert(root, root_g, 0);
    open.push({arena[0].f, root_g, seq++, 0});

    std::vector<NodeId> superseded;
    while (!open.empty()) {
        const Key top = open.top();
        if (arena[top.id].dead) {
            open.pop();
            ++metrics.skipped;
            continue;
        }
        if (top.f >= run.primal()) break;
        if (model.is_base(arena[top.id].state)) {
            open.pop();
            ++metrics.base_pops;
            const Node& node = arena[top.id];
            Cost cost = node.g + model.base_cost(node.state);
            if (cost < run.primal()) run.improve(cost, detail::path_to(arena, top.id));
            continue;
        }
        if (auto hit = run.limit_reached(arena.size() + registry.size())) return run.finish(*hit);
        open.pop();
        run.raise_dual(top.f);
        ++metrics.expansions;

        auto gen = (top.id == 0 && root_expansion) ? std::move(*root_expansion)
                                                   : run.generate(arena[top.id].state, arena[top.id].g);
        if (gen.pruned != PruneReason::None) continue;
        const bool with_cp = !gen.successor_cp_dual.empty();
        for (std::size_t k = 0; k < gen.successors.size(); ++k) {
            auto& t = gen.successors[k];
            ++metrics.generated;
            const Cost g = arena[top.id].g + t.weight;
            const Cost h = run.heuristic(t.state, with_cp ? std::optional(gen.successor_cp_dual[k]) : std::nullopt);
            const Cost f = g + h;
            if (f.is_infinite() || f > run.primal()) continue;
            const NodeId id = arena.size();
            superseded.clear();
            if (!registry.insert(t.state, g, id, &superseded)) continue;
            for (auto old : superseded) arena[old].dead = true;
            arena.push_back({std::move(t.state), g, h, f, top.id, t.label, false});
            open.push({f, g, seq++, id});
        }
    }
    return run.finish(run.primal().is_finite() ? SolveStatus::Optimal : SolveStatus::Infeasible);
}

template <DpModel M>
SolveResult astar(const M& model, const SolveLimits& limits = {}) {
    return astar<M, NoAdapter>(model, nullptr, limits, PropagationMode::Off);
}

}  // namespace dpcp::search
