#include "dpcp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace dpcp::oracle {

std::optional<std::int64_t> smswt_permutations(const smswt::Instance& inst) {
    const auto n = inst.jobs.size();
    if (n > max_jobs) throw TooLarge("smswt oracle handles at most 10 jobs");
    std::optional<std::int64_t> best;
    std::vector<bool> used(n, false);
    std::function<void(std::size_t, std::int64_t, std::int64_t)> dfs = [&](std::size_t depth, std::int64_t t,
                                                                          std::int64_t cost) {
        if (depth == n) {
            if (!best || cost < *best) best = cost;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const auto& job = inst.jobs[i];
            const auto finish = std::max(t, job.r) + job.p;
            if (finish > job.deadline) continue;
            used[i] = true;
            dfs(depth + 1, finish, cost + job.w * std::max<std::int64_t>(0, finish - job.d));
            used[i] = false;
        }
    };
    dfs(0, 0, 0);
    return best;
}

std::optional<std::int64_t> tsptw_permutations(const tsptw::Instance& inst) {
    const auto n = inst.n;
    if (n > max_locations) throw TooLarge("tsptw oracle handles at most 10 locations");
    std::optional<std::int64_t> best;
    std::vector<bool> used(n, false);
    std::function<void(std::size_t, std::size_t, std::int64_t, std::int64_t)> dfs =
        [&](std::size_t depth, std::size_t at, std::int64_t t, std::int64_t cost) {
            if (depth + 1 == n) {
                const auto back = inst.c(at, 0);
                if (back.is_infinite()) return;
                const auto total = cost + back.value();
                if (!best || total < *best) best = total;
                return;
            }
            for (std::size_t j = 1; j < n; ++j) {
                if (used[j] || inst.c(at, j).is_infinite()) continue;
                const auto travel = inst.c(at, j).value();
                const auto arrive = t + travel;
                if (arrive > inst.windows[j].close) continue;
                used[j] = true;
                dfs(depth + 1, j, std::max(arrive, inst.windows[j].open), cost + travel);
                used[j] = false;
            }
        };
    dfs(0, 0, 0, 0);
    return best;
}

std::optional<std::int64_t> rcpsp_orderings(const rcpsp::Instance& inst) {
    const auto n = inst.tasks.size();
    if (n > max_tasks) throw TooLarge("rcpsp oracle handles at most 10 tasks");
    const auto m = inst.capacities.size();
    std::int64_t horizon = 0;
    std::int64_t longest = 0;
    for (const auto& task : inst.tasks) {
        horizon += task.p;
        longest = std::max(longest, task.p);
    }
    const auto slots = static_cast<std::size_t>(horizon + longest + 1);
    // load[r * slots + u]: usage of resource r during [u, u+1).
    std::vector<std::int64_t> load(m * slots, 0);
    std::vector<std::int64_t> start(n, -1);
    std::optional<std::int64_t> best;

    auto fits = [&](std::size_t i, std::int64_t h) {
        for (std::size_t r = 0; r < m; ++r) {
            for (auto u = h; u < h + inst.tasks[i].p; ++u) {
                if (load[r * slots + static_cast<std::size_t>(u)] + inst.tasks[i].usage[r] > inst.capacities[r]) {
                    return false;
                }
            }
        }
        return true;
    };
    auto place = [&](std::size_t i, std::int64_t h, int sign) {
        for (std::size_t r = 0; r < m; ++r) {
            for (auto u = h; u < h + inst.tasks[i].p; ++u) load[r * slots + static_cast<std::size_t>(u)] += sign * inst.tasks[i].usage[r];
        }
    };

    std::function<void(std::size_t, std::int64_t, std::int64_t)> dfs = [&](std::size_t depth, std::int64_t t,
                                                                          std::int64_t end) {
        if (depth == n) {
            if (!best || end < *best) best = end;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (start[i] >= 0) continue;
            std::int64_t from = t;
            bool ready = true;
            for (auto [a, b] : inst.precedences) {
                if (b != i) continue;
                if (start[a] < 0) {
                    ready = false;
                    break;
                }
                from = std::max(from, start[a] + inst.tasks[a].p);
            }
            if (!ready) continue;
            std::optional<std::int64_t> at;
            for (auto h = from; h <= horizon; ++h) {
                if (fits(i, h)) {
                    at = h;
                    break;
                }
            }
            if (!at) continue;
            start[i] = *at;
            place(i, *at, 1);
            dfs(depth + 1, *at, std::max(end, *at + inst.tasks[i].p));
            place(i, *at, -1);
            start[i] = -1;
        }
    };
    dfs(0, 0, 0);
    return best;
}

}  // namespace dpcp::oracle
