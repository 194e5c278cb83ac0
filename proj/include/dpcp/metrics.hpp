#pragma once

#include <cstdint>
#include <vector>

#include "dpcp/cost.hpp"

namespace dpcp {

struct TracePoint {
    double seconds = 0.0;
    Cost value;
};

/// Counters and traces collected during one solve.
///
/// One expansion is one pop of a state that is neither a base state nor a
/// stale (superseded) node. CABS counts expansions cumulatively over passes.
struct RunMetrics {
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    std::uint64_t base_pops = 0;
    std::uint64_t skipped = 0;
    std::uint64_t pruned_by_cp = 0;
    std::uint64_t propagation_calls = 0;
    double propagation_time = 0.0;
    double wall_time = 0.0;
    std::vector<TracePoint> incumbent_trace;
    std::vector<TracePoint> dual_trace;
    std::vector<std::uint64_t> beam_widths;
    double final_gap = 1.0;
};

}  // namespace dpcp
