#include "lipnet/network.hpp"

#include <algorithm>
#include <cmath>

#include "lipnet/algebra.hpp"

namespace lipnet {

// Dot products accumulate in extended precision. Composition merges two
// affine layers into one matrix product, so the merged network evaluates
// sums in a different association order than the layer-by-layer pass;
// extended accumulators keep that reassociation gap near one ulp instead of
// letting it grow with width and depth.
std::vector<double> Matrix::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols)
        throw std::invalid_argument("Matrix::apply: input length " + std::to_string(x.size()) +
                                    " does not match cols " + std::to_string(cols));
    std::vector<double> y(static_cast<size_t>(rows), 0.0);
    const double* row = data.data();
    for (int i = 0; i < rows; ++i, row += cols) {
        long double acc = 0.0L;
        for (int j = 0; j < cols; ++j)
            acc += static_cast<long double>(row[j]) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = static_cast<double>(acc);
    }
    return y;
}

std::vector<double> Layer::affine(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != in_dim())
        throw std::invalid_argument("Layer::affine: input dimension mismatch");
    std::vector<double> y(static_cast<size_t>(out_dim()));
    const double* row = weights.data.data();
    for (int i = 0; i < out_dim(); ++i, row += in_dim()) {
        long double acc = 0.0L;
        for (int j = 0; j < in_dim(); ++j)
            acc += static_cast<long double>(row[j]) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = static_cast<double>(acc + bias[static_cast<size_t>(i)]);
    }
    return y;
}

Matrix Matrix::multiply(const Matrix& other) const {
    if (cols != other.rows) throw std::invalid_argument("Matrix::multiply: shape mismatch");
    Matrix out(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < other.cols; ++j) {
            long double acc = 0.0L;
            for (int k = 0; k < cols; ++k)
                acc += static_cast<long double>(at(i, k)) * other.at(k, j);
            out.at(i, j) = static_cast<double>(acc);
        }
    return out;
}

double norm(const std::vector<double>& x, double p) {
    if (x.empty()) throw std::invalid_argument("norm: empty vector");
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("norm: p must be in [1, inf]");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

std::vector<double> activation_apply(const Activation& a, const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = a(x[i]);
    return y;
}

Architecture arch_of(const StructuredNetwork& net) {
    std::vector<int> dims;
    dims.reserve(net.layers.size() + 1);
    dims.push_back(net.input_dim());
    for (const Layer& l : net.layers) dims.push_back(l.out_dim());
    return Architecture(std::move(dims));
}

std::vector<double> realize(const StructuredNetwork& net, const Activation& a,
                            const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != net.input_dim())
        throw std::invalid_argument("realize: input dimension mismatch");
    std::vector<double> cur = x;
    const int L = net.depth();
    for (int k = 0; k < L; ++k) {
        std::vector<double> z = net.layers[static_cast<size_t>(k)].affine(cur);
        if (k + 1 < L)
            for (double& v : z) v = a(v);
        cur = std::move(z);
    }
    return cur;
}

std::vector<double> affine_eval(const std::vector<double>& theta, long long s, int m, int n,
                                const std::vector<double>& x) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("affine_eval: m, n must be positive");
    if (s < 0) throw std::invalid_argument("affine_eval: offset must be nonnegative");
    if (static_cast<long long>(theta.size()) < s + static_cast<long long>(m) * n + m)
        throw std::invalid_argument("affine_eval: theta too short for offset and shape");
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("affine_eval: input length != n");
    std::vector<double> y(static_cast<size_t>(m));
    const double* w = theta.data() + s;
    for (int i = 0; i < m; ++i, w += n) {
        long double acc = 0.0L;
        for (int j = 0; j < n; ++j)
            acc += static_cast<long double>(w[j]) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = static_cast<double>(
            acc + theta[static_cast<size_t>(s + static_cast<long long>(m) * n + i)]);
    }
    return y;
}

std::vector<double> realize_clipped(const std::vector<double>& theta, const Architecture& l,
                                    const ClipBounds& bounds, const std::vector<double>& x) {
    if (static_cast<long long>(theta.size()) < l.param_count())
        throw std::invalid_argument("realize_clipped: theta shorter than the architecture requires");
    if (static_cast<int>(x.size()) != l.input_dim())
        throw std::invalid_argument("realize_clipped: input dimension mismatch");
    std::vector<double> cur = x;
    long long offset = 0;
    const int L = l.depth();
    for (int k = 1; k <= L; ++k) {
        const int m = l.width(k), n = l.width(k - 1);
        cur = affine_eval(theta, offset, m, n, cur);
        offset += static_cast<long long>(m) * (n + 1);
        if (k < L) {
            for (double& v : cur) v = v > 0.0 ? v : 0.0;
        } else {
            for (double& v : cur) v = bounds.apply(v);
        }
    }
    return cur;
}

std::vector<double> realize_clipped(const ParamVector& theta, const ClipBounds& bounds,
                                    const std::vector<double>& x) {
    return realize_clipped(theta.values, theta.arch, bounds, x);
}

ParamVector flatten(const StructuredNetwork& net) {
    Architecture a = arch_of(net);
    std::vector<double> values;
    values.reserve(static_cast<size_t>(a.param_count()));
    for (const Layer& layer : net.layers) {
        values.insert(values.end(), layer.weights.data.begin(), layer.weights.data.end());
        values.insert(values.end(), layer.bias.begin(), layer.bias.end());
    }
    return ParamVector(std::move(values), std::move(a));
}

StructuredNetwork unflatten(const std::vector<double>& theta, const Architecture& l) {
    if (static_cast<long long>(theta.size()) < l.param_count())
        throw std::invalid_argument("unflatten: theta shorter than the architecture requires");
    std::vector<Layer> layers;
    layers.reserve(static_cast<size_t>(l.depth()));
    size_t offset = 0;
    for (int k = 1; k <= l.depth(); ++k) {
        const int m = l.width(k), n = l.width(k - 1);
        Matrix w(m, n, std::vector<double>(theta.begin() + offset,
                                           theta.begin() + offset + static_cast<size_t>(m) * n));
        offset += static_cast<size_t>(m) * n;
        std::vector<double> b(theta.begin() + offset, theta.begin() + offset + m);
        offset += static_cast<size_t>(m);
        layers.emplace_back(std::move(w), std::move(b));
    }
    return StructuredNetwork(std::move(layers));
}

StructuredNetwork unflatten(const ParamVector& theta) { return unflatten(theta.values, theta.arch); }

namespace {

// Zero-pad hidden layers so the architecture matches `target` (same depth).
StructuredNetwork widen(const StructuredNetwork& net, const Architecture& target) {
    std::vector<Layer> layers;
    layers.reserve(net.layers.size());
    for (int k = 1; k <= net.depth(); ++k) {
        const Layer& src = net.layers[static_cast<size_t>(k) - 1];
        const int rows = target.width(k), cols = target.width(k - 1);
        Matrix w(rows, cols);
        for (int i = 0; i < src.out_dim(); ++i)
            for (int j = 0; j < src.in_dim(); ++j) w.at(i, j) = src.weights.at(i, j);
        std::vector<double> b(static_cast<size_t>(rows), 0.0);
        for (int i = 0; i < src.out_dim(); ++i) b[static_cast<size_t>(i)] = src.bias[static_cast<size_t>(i)];
        layers.emplace_back(std::move(w), std::move(b));
    }
    return StructuredNetwork(std::move(layers));
}

}  // namespace

StructuredNetwork embed(const StructuredNetwork& net, const Architecture& target) {
    const Architecture src = arch_of(net);
    if (target.input_dim() != src.input_dim())
        throw std::invalid_argument("embed: target input dimension mismatch");
    if (target.output_dim() != src.output_dim())
        throw std::invalid_argument("embed: target output dimension mismatch");
    if (target.depth() < src.depth())
        throw std::invalid_argument("embed: target depth below source depth");

    const int extra = target.depth() - src.depth();
    if (extra > 0 && src.output_dim() != 1)
        throw std::invalid_argument("embed: depth extension supported for scalar outputs only");

    for (int i = 1; i < src.depth(); ++i)
        if (target.width(i) < src.width(i))
            throw std::invalid_argument("embed: target width below source width at layer " +
                                        std::to_string(i));
    for (int i = src.depth(); i < target.depth(); ++i)
        if (target.width(i) < 2 * src.output_dim())
            throw std::invalid_argument("embed: inserted layer " + std::to_string(i) +
                                        " too narrow for an identity block");

    StructuredNetwork extended = net;
    for (int k = 0; k < extra; ++k) extended = compose(identity_net(), extended);
    return widen(extended, target);
}

}  // namespace lipnet
