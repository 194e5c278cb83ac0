#pragma once

#include <algorithm>
#include <stdexcept>

#include "dpcp/search/driver.hpp"

namespace dpcp::search {

struct BeamConfig {
    std::uint64_t initial_width = 1;
    std::uint64_t growth_factor = 2;

    void validate() const {
        if (initial_width < 1) throw std::invalid_argument("beam width must be at least 1");
        if (growth_factor < 2) throw std::invalid_argument("beam growth factor must be at least 2");
    }
};

/// Complete anytime beam search: layered beam passes of width
/// initial_width * growth_factor^k. A pass that never cuts a layer by width
/// proves its final incumbent optimal, or the instance infeasible.
template <DpModel M, class A>
SolveResult cabs(const M& model, const A* adapter, const SolveLimits& limits, const BeamConfig& beam,
                 PropagationMode mode) {
    using State = typename M::State;
    using Node = detail::Node<State>;
    beam.validate();
    detail::Driver<M, A> run(model, adapter, limits, mode);
    auto& metrics = run.metrics();
    if (run.cap_is_zero()) return run.finish(SolveStatus::ExpansionLimit);

    const State root = model.target();
    const Cost root_g = model.root_cost();
    if (model.is_base(root)) {
        run.improve(root_g + model.base_cost(root), {});
        return run.finish(SolveStatus::Optimal);
    }
    std::optional<typename detail::Driver<M, A>::Generated> root_expansion;
    Cost root_h = run.heuristic(root, std::nullopt);
    if (mode != PropagationMode::Off) {
        root_expansion = run.generate(root, root_g);
        if (root_expansion->pruned != PruneReason::None) return run.finish(SolveStatus::Infeasible);
        root_h = max(root_h, root_expansion->cp_dual);
    }
    if ((root_g + root_h).is_infinite()) return run.finish(SolveStatus::Infeasible);
    run.set_root_dual(root_g + root_h);

    std::vector<Node> arena;
    Registry<M> registry(model);
    std::vector<NodeId> layer, next, superseded;

    for (std::uint64_t width = beam.initial_width;; width *= beam.growth_factor) {
        metrics.beam_widths.push_back(width);
        arena.clear();
        registry.clear();
        arena.push_back({root, root_g, root_h, root_g + root_h, std::nullopt, -1, false});
        registry.insert(root, root_g, 0);
        layer.assign(1, 0);
        bool complete = true;

        while (!layer.empty()) {
            next.clear();
            for (NodeId id : layer) {
                if (arena[id].dead) {
                    ++metrics.skipped;
                    continue;
                }
                if (arena[id].f >= run.primal()) continue;
                if (auto hit = run.limit_reached(arena.size() + registry.size())) return run.finish(*hit);
                ++metrics.expansions;

                // The cached root expansion is valid while no incumbent exists.
                auto gen = (id == 0 && root_expansion && run.primal().is_infinite())
                               ? *root_expansion
                               : run.generate(arena[id].state, arena[id].g);
                if (gen.pruned != PruneReason::None) continue;
                const bool with_cp = !gen.successor_cp_dual.empty();
                for (std::size_t k = 0; k < gen.successors.size(); ++k) {
                    auto& t = gen.successors[k];
                    ++metrics.generated;
                    const Cost g = arena[id].g + t.weight;
                    if (model.is_base(t.state)) {
                        ++metrics.base_pops;
                        const Cost cost = g + model.base_cost(t.state);
                        if (cost < run.primal()) {
                            auto labels = detail::path_to(arena, id);
                            labels.push_back(t.label);
                            run.improve(cost, std::move(labels));
                        }
                        continue;
                    }
                    const Cost h =
                        run.heuristic(t.state, with_cp ? std::optional(gen.successor_cp_dual[k]) : std::nullopt);
                    const Cost f = g + h;
                    if (f.is_infinite() || f > run.primal()) continue;
                    const NodeId child = arena.size();
                    superseded.clear();
                    if (!registry.insert(t.state, g, child, &superseded)) continue;
                    for (auto old : superseded) arena[old].dead = true;
                    arena.push_back({std::move(t.state), g, h, f, id, t.label, false});
                    next.push_back(child);
                }
            }
            std::erase_if(next, [&](NodeId n) { return arena[n].dead || arena[n].f >= run.primal(); });
            std::stable_sort(next.begin(), next.end(), [&](NodeId a, NodeId b) {
                if (arena[a].f != arena[b].f) return arena[a].f < arena[b].f;
                return arena[a].g > arena[b].g;
            });
            if (next.size() > width) {
                complete = false;
                next.resize(width);
            }
            layer.swap(next);
        }
        if (complete) break;
    }
    return run.finish(run.primal().is_finite() ? SolveStatus::Optimal : SolveStatus::Infeasible);
}

template <DpModel M>
SolveResult cabs(const M& model, const SolveLimits& limits = {}, const BeamConfig& beam = {}) {
    return cabs<M, NoAdapter>(model, nullptr, limits, beam, PropagationMode::Off);
}

}  // namespace dpcp::search
