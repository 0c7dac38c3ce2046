#pragma once

#include "lipnet/network.hpp"

namespace lipnet {

// Inputs for the maximum-convolution network
//   F(x) = max_k (values[k] - lipschitz * ||x - centers[k]||_1).
struct MaxConvSpec {
    double lipschitz = 0.0;
    std::vector<std::vector<double>> centers;  // K >= 2 points in R^d
    std::vector<double> values;                // K values

    void validate() const;
    int dim() const { return centers.empty() ? 0 : static_cast<int>(centers.front().size()); }
    int count() const { return static_cast<int>(centers.size()); }

    double evaluate(const std::vector<double>& x) const;  // F(x) directly
};

// Inputs for the one-hidden-layer interpolation network on [a, b]:
// node values f_0..f_K at the uniform grid r_k = a + k(b-a)/K, K = ceil(A).
struct Interp1dSpec {
    double a = 0.0;
    double b = 1.0;
    double A = 1.0;
    std::vector<double> node_values;  // K + 1 entries

    void validate() const;
    int segments() const { return static_cast<int>(node_values.size()) - 1; }  // K
    double node(int k) const { return a + static_cast<double>(k) * (b - a) / segments(); }
};

// Rectifier network computing ||x||_1; architecture (d, 2d, 1), weights in
// {-1, 0, 1}, biases zero.
StructuredNetwork l1_norm_net(int d);

// Rectifier network computing max{x_1, ..., x_d} with ceil(log2 d) hidden
// layers; weights in {-1, 0, 1}, biases zero.
StructuredNetwork max_net(int d);

StructuredNetwork max_convolution_net(const MaxConvSpec& spec);

// Piecewise-linear interpolant of the node values, exact at every node;
// architecture (1, K+1, 1).
StructuredNetwork interp1d_net(const Interp1dSpec& spec);

}  // namespace lipnet
