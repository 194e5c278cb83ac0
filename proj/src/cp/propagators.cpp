#include "dpcp/cp/propagators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace dpcp::cp {
namespace {

constexpr Value kNegInf = std::numeric_limits<Value>::min() / 4;

struct Window {
    Value est;
    Value lct;
    Value p;
};

// Edge-finding on earliest start times. For each lct bound L the candidate
// sets are O(a) = {k : lct_k <= L, est_k >= a}; a job i with lct_i > L must
// follow O(a) when min(est_i, a) + p(O) + p_i > L, which lifts est_i to the
// earliest completion of O. Returns false on overload.
bool edge_find_lower(const std::vector<Window>& jobs, std::vector<Value>& new_est) {
    const std::size_t n = jobs.size();
    std::vector<std::size_t> by_est(n);
    std::iota(by_est.begin(), by_est.end(), 0);
    std::sort(by_est.begin(), by_est.end(), [&](auto a, auto b) { return jobs[a].est > jobs[b].est; });

    std::vector<Value> bounds;
    for (const auto& j : jobs) bounds.push_back(j.lct);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    std::vector<Value> starts, energy, ect;
    for (Value bound : bounds) {
        starts.clear();
        energy.clear();
        ect.clear();
        Value total = 0;
        Value best = kNegInf;
        for (auto k : by_est) {
            if (jobs[k].lct > bound) continue;
            total += jobs[k].p;
            best = std::max(best, jobs[k].est + total);
            if (jobs[k].est + total > bound) return false;
            starts.push_back(jobs[k].est);
            energy.push_back(total);
            ect.push_back(best);
        }
        if (starts.empty()) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (jobs[i].lct <= bound) continue;
            for (std::size_t k = starts.size(); k-- > 0;) {
                if (std::min(jobs[i].est, starts[k]) + energy[k] + jobs[i].p > bound) {
                    new_est[i] = std::max(new_est[i], ect[k]);
                    break;
                }
            }
        }
    }
    return true;
}

struct Segment {
    Value start;
    Value end;
    Value height;
};

std::vector<Segment> compulsory_profile(const DomainStore& store, std::span<const CumulativeTask> tasks) {
    std::vector<std::pair<Value, Value>> events;
    for (const auto& t : tasks) {
        if (t.duration <= 0 || t.usage <= 0) continue;
        Value from = store.ub(t.start);
        Value to = store.lb(t.start) + t.duration;
        if (from < to) {
            events.emplace_back(from, t.usage);
            events.emplace_back(to, -t.usage);
        }
    }
    std::sort(events.begin(), events.end());
    std::vector<Segment> profile;
    Value height = 0;
    for (std::size_t e = 0; e < events.size();) {
        Value at = events[e].first;
        while (e < events.size() && events[e].first == at) height += events[e++].second;
        if (e < events.size() && height > 0) profile.push_back({at, events[e].first, height});
    }
    return profile;
}

}  // namespace

void edge_finding_disjunctive(DomainStore& store, std::span<const DisjunctiveItem> items) {
    if (store.infeasible()) return;
    std::vector<const DisjunctiveItem*> active;
    std::vector<Window> jobs;
    for (const auto& item : items) {
        Value p = item.duration.min(store);
        if (p <= 0) continue;
        active.push_back(&item);
        jobs.push_back({store.lb(item.start), store.ub(item.start) + p, p});
    }
    if (jobs.size() < 2) return;

    std::vector<Value> new_est(jobs.size(), kNegInf);
    if (!edge_find_lower(jobs, new_est)) {
        store.fail();
        return;
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (new_est[i] > jobs[i].est) {
            store.tighten_lb(active[i]->start, new_est[i]);
            if (store.infeasible()) return;
            jobs[i].est = new_est[i];
        }
    }

    // Mirror image: latest completion times become earliest starts.
    std::vector<Window> mirrored;
    for (const auto& j : jobs) mirrored.push_back({-j.lct, -j.est, j.p});
    std::vector<Value> new_mirror_est(jobs.size(), kNegInf);
    if (!edge_find_lower(mirrored, new_mirror_est)) {
        store.fail();
        return;
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (new_mirror_est[i] > mirrored[i].est) {
            Value lct = -new_mirror_est[i];
            store.tighten_ub(active[i]->start, lct - jobs[i].p);
            if (store.infeasible()) return;
        }
    }
}

void time_table_cumulative(DomainStore& store, std::span<const CumulativeTask> tasks, Value capacity) {
    if (store.infeasible()) return;
    for (const auto& t : tasks) {
        if (t.duration > 0 && t.usage > capacity) {
            store.fail();
            return;
        }
    }
    const auto profile = compulsory_profile(store, tasks);
    for (const auto& seg : profile) {
        if (seg.height > capacity) {
            store.fail();
            return;
        }
    }
    if (profile.empty()) return;

    struct Bounds {
        Value lb, ub;
    };
    std::vector<Bounds> original;
    for (const auto& t : tasks) original.push_back({store.lb(t.start), store.ub(t.start)});

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& t = tasks[i];
        if (t.duration <= 0 || t.usage <= 0) continue;
        const Value own_from = original[i].ub;
        const Value own_to = original[i].lb + t.duration;
        auto others = [&](const Segment& seg) {
            bool own = own_from < own_to && seg.start >= own_from && seg.end <= own_to;
            return seg.height - (own ? t.usage : 0);
        };

        Value start = original[i].lb;
        for (const auto& seg : profile) {
            if (seg.end <= start) continue;
            if (seg.start >= start + t.duration) break;
            if (others(seg) + t.usage > capacity) start = seg.end;
        }
        if (start > original[i].lb) {
            store.tighten_lb(t.start, start);
            if (store.infeasible()) return;
        }

        Value end = original[i].ub + t.duration;
        for (auto it = profile.rbegin(); it != profile.rend(); ++it) {
            if (it->start >= end) continue;
            if (it->end <= end - t.duration) break;
            if (others(*it) + t.usage > capacity) end = it->start;
        }
        if (end - t.duration < original[i].ub) {
            store.tighten_ub(t.start, end - t.duration);
            if (store.infeasible()) return;
        }
    }
}

void precedence_le(DomainStore& store, const PrecedenceLe& c) {
    if (store.infeasible()) return;
    store.tighten_lb(c.after, store.lb(c.before) + c.offset);
    if (store.infeasible()) return;
    store.tighten_ub(c.before, store.ub(c.after) - c.offset);
}

void sum_le(DomainStore& store, std::span<const VarId> terms, Value constant, std::optional<Value> cap) {
    if (store.infeasible() || !cap) return;
    Value lower = constant;
    for (auto x : terms) lower += store.lb(x);
    if (lower > *cap) {
        store.fail();
        return;
    }
    for (auto x : terms) {
        const Value slack = *cap - (lower - store.lb(x));
        store.tighten_ub(x, slack);
        if (store.infeasible()) return;
    }
}

void propagate(DomainStore& store, const Propagator& p) {
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Disjunctive>) {
                edge_finding_disjunctive(store, c.items);
            } else if constexpr (std::is_same_v<T, Cumulative>) {
                time_table_cumulative(store, c.tasks, c.capacity);
            } else if constexpr (std::is_same_v<T, PrecedenceLe>) {
                precedence_le(store, c);
            } else {
                sum_le(store, c.terms, c.constant, c.cap);
            }
        },
        p);
}

void propagate_once(DomainStore& store, std::span<const Propagator> props) {
    for (const auto& p : props) {
        if (store.infeasible()) return;
        propagate(store, p);
    }
}

void propagate_fixpoint(DomainStore& store, std::span<const Propagator> props) {
    while (!store.infeasible()) {
        const auto before = store.revision();
        propagate_once(store, props);
        if (store.revision() == before) return;
    }
}

std::optional<VarId> max_var(const Propagator& p) {
    std::optional<VarId> top;
    auto see = [&](VarId x) { top = top ? std::max(*top, x) : x; };
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Disjunctive>) {
                for (const auto& item : c.items) {
                    see(item.start);
                    if (item.duration.is_variable()) see(item.duration.var());
                }
            } else if constexpr (std::is_same_v<T, Cumulative>) {
                for (const auto& t : c.tasks) see(t.start);
            } else if constexpr (std::is_same_v<T, PrecedenceLe>) {
                see(c.before);
                see(c.after);
            } else {
                for (auto x : c.terms) see(x);
            }
        },
        p);
    return top;
}

Value ect_envelope(std::span<const EnvelopeTask> tasks, Value capacity) {
    if (tasks.empty()) return 0;
    std::vector<EnvelopeTask> sorted(tasks.begin(), tasks.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lb_start > b.lb_start; });
    Value best = std::numeric_limits<Value>::min();
    Value energy = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        energy += sorted[k].usage * sorted[k].duration;
        // Only evaluate once every task sharing this lower bound is included.
        if (k + 1 < sorted.size() && sorted[k + 1].lb_start == sorted[k].lb_start) continue;
        best = std::max(best, sorted[k].lb_start + (energy + capacity - 1) / capacity);
    }
    return best;
}

}  // namespace dpcp::cp
