#pragma once

#include "lipnet/network.hpp"

// Operator calculus on structured networks. Composition follows the
// explicit four-case formula so that structural identities (layer counts,
// associativity) hold exactly, not just up to realization.
namespace lipnet {

// f after g; requires input_dim(f) == output_dim(g).
StructuredNetwork compose(const StructuredNetwork& f, const StructuredNetwork& g);

// Block-diagonal stacking of equal-depth networks.
StructuredNetwork parallelize(const std::vector<StructuredNetwork>& nets);

// Single-layer network realizing x -> W x + B under any activation.
StructuredNetwork affine_net(const Matrix& w, const std::vector<double>& b);

// (y_1, ..., y_n) in (R^m)^n  ->  sum_k y_k; architecture (mn, m).
StructuredNetwork sum_net(int m, int n);

// x in R^n -> (x, x, ..., x) with m copies; architecture (n, mn).
StructuredNetwork concat_net(int m, int n);

// The scalar identity as a rectifier network, architecture (1, 2, 1).
StructuredNetwork identity_net();

}  // namespace lipnet
