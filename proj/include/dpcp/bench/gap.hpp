#pragma once

#include <optional>
#include <stdexcept>

#include "dpcp/cost.hpp"

namespace dpcp::bench {

class NegativeGap : public std::logic_error {
public:
    NegativeGap() : std::logic_error("dual bound exceeds primal bound") {}
};

/// (Primal - Dual) / max{1, Primal}; 1.0 while no primal bound exists.
inline double optimality_gap(std::optional<Cost> primal, Cost dual) {
    if (!primal || primal->is_infinite()) return 1.0;
    if (dual > *primal) throw NegativeGap();
    const auto p = primal->value();
    const auto d = dual.value();
    return static_cast<double>(p - d) / static_cast<double>(p > 1 ? p : 1);
}

}  // namespace dpcp::bench
