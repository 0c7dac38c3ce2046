#include "lipnet/algebra.hpp"

namespace lipnet {

StructuredNetwork compose(const StructuredNetwork& f, const StructuredNetwork& g) {
    if (f.input_dim() != g.output_dim())
        throw std::invalid_argument("compose: input_dim(f) != output_dim(g)");

    // All four cases of the composition formula amount to: keep g's layers
    // up to its last, merge g's last layer into f's first, keep f's rest.
    std::vector<Layer> layers;
    layers.reserve(static_cast<size_t>(f.depth() + g.depth()) - 1);
    for (int k = 0; k + 1 < g.depth(); ++k) layers.push_back(g.layers[static_cast<size_t>(k)]);

    const Layer& glast = g.layers.back();
    const Layer& ffirst = f.layers.front();
    Matrix merged_w = ffirst.weights.multiply(glast.weights);
    std::vector<double> merged_b = ffirst.weights.apply(glast.bias);
    for (size_t i = 0; i < merged_b.size(); ++i) merged_b[i] += ffirst.bias[i];
    layers.emplace_back(std::move(merged_w), std::move(merged_b));

    for (int k = 1; k < f.depth(); ++k) layers.push_back(f.layers[static_cast<size_t>(k)]);
    return StructuredNetwork(std::move(layers));
}

StructuredNetwork parallelize(const std::vector<StructuredNetwork>& nets) {
    if (nets.empty()) throw std::invalid_argument("parallelize: empty list");
    const int L = nets.front().depth();
    for (const auto& n : nets)
        if (n.depth() != L) throw std::invalid_argument("parallelize: depth mismatch");
    if (nets.size() == 1) return nets.front();

    std::vector<Layer> layers;
    layers.reserve(static_cast<size_t>(L));
    for (int k = 0; k < L; ++k) {
        int rows = 0, cols = 0;
        for (const auto& n : nets) {
            rows += n.layers[static_cast<size_t>(k)].out_dim();
            cols += n.layers[static_cast<size_t>(k)].in_dim();
        }
        Matrix w(rows, cols);
        std::vector<double> b;
        b.reserve(static_cast<size_t>(rows));
        int ro = 0, co = 0;
        for (const auto& n : nets) {
            const Layer& src = n.layers[static_cast<size_t>(k)];
            for (int i = 0; i < src.out_dim(); ++i)
                for (int j = 0; j < src.in_dim(); ++j) w.at(ro + i, co + j) = src.weights.at(i, j);
            b.insert(b.end(), src.bias.begin(), src.bias.end());
            ro += src.out_dim();
            co += src.in_dim();
        }
        layers.emplace_back(std::move(w), std::move(b));
    }
    return StructuredNetwork(std::move(layers));
}

StructuredNetwork affine_net(const Matrix& w, const std::vector<double>& b) {
    return StructuredNetwork({Layer(w, b)});
}

StructuredNetwork sum_net(int m, int n) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("sum_net: m, n must be positive");
    Matrix w(m, m * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < m; ++i) w.at(i, k * m + i) = 1.0;
    return affine_net(w, std::vector<double>(static_cast<size_t>(m), 0.0));
}

StructuredNetwork concat_net(int m, int n) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("concat_net: m, n must be positive");
    Matrix w(m * n, n);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i) w.at(k * n + i, i) = 1.0;
    return affine_net(w, std::vector<double>(static_cast<size_t>(m) * n, 0.0));
}

StructuredNetwork identity_net() {
    Matrix w1(2, 1, {1.0, -1.0});
    Matrix w2(1, 2, {1.0, -1.0});
    return StructuredNetwork({Layer(w1, {0.0, 0.0}), Layer(w2, {0.0})});
}

}  // namespace lipnet
