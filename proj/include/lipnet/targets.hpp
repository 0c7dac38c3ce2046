#pragma once

#include <string>

#include "lipnet/approximation.hpp"

namespace lipnet {

// Built-in target families with analytically known Lipschitz constants and
// ranges, so hypothesis checks are exact.
//   abs-dist : x -> scale * ||x - center||_1
//   l1-norm  : x -> ||x||_1
//   sin-ridge: x -> sin(omega * sum_i x_i) / omega
//   constant : x -> value
struct TargetConfig {
    std::string family = "abs-dist";
    double scale = 1.0;
    std::vector<double> center;  // abs-dist; defaults to the domain midpoint
    double omega = 3.0;          // sin-ridge
    double value = 0.5;          // constant

    static bool known_family(const std::string& name);
};

TargetOracle make_target(const TargetConfig& cfg, const HypercubeDomain& dom);

}  // namespace lipnet
