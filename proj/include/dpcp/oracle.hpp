#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "dpcp/models/rcpsp.hpp"
#include "dpcp/models/smswt.hpp"
#include "dpcp/models/tsptw.hpp"

/// Exhaustive reference solvers for tiny instances. They share no code with
/// the DP models. nullopt means the instance is infeasible.
namespace dpcp::oracle {

class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t max_jobs = 10;
inline constexpr std::size_t max_tasks = 10;
inline constexpr std::size_t max_locations = 10;

/// Best weighted tardiness over all job permutations.
std::optional<std::int64_t> smswt_permutations(const smswt::Instance& inst);

/// Best tour over all visiting orders of the non-depot locations.
std::optional<std::int64_t> tsptw_permutations(const tsptw::Instance& inst);

/// Best makespan over all precedence-feasible task orderings, each task
/// started at its earliest feasible time no earlier than the previous start.
std::optional<std::int64_t> rcpsp_orderings(const rcpsp::Instance& inst);

}  // namespace dpcp::oracle
