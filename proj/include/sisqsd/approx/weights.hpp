#pragma once

#include <string_view>
#include <vector>

#include "sisqsd/numerics/real.hpp"

namespace sisqsd {

enum class WeightKind { pi, rho, ovb, ov1, ov2 };

constexpr std::string_view to_string(WeightKind k) {
    switch (k) {
        case WeightKind::pi: return "pi";
        case WeightKind::rho: return "rho";
        case WeightKind::ovb: return "ovb";
        case WeightKind::ov1: return "ov1";
        case WeightKind::ov2: return "ov2";
    }
    return "?";
}

/// Unnormalized masses on states 1..N. weights[0] belongs to state 1.
struct WeightVector {
    std::vector<Real> weights;
    WeightKind kind;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
    [[nodiscard]] const Real& at_state(long n) const { return weights.at(static_cast<std::size_t>(n - 1)); }
};

}  // namespace sisqsd
