#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipnet {

// Thrown when a configuration violates the hypotheses of the bound or
// construction it invokes. The message names the failing clause.
struct HypothesisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix of doubles.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // rows*cols entries, row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    Matrix(int r, int c, std::vector<double> entries)
        : rows(r), cols(c), data(std::move(entries)) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("Matrix: dimensions must be positive");
        if (data.size() != static_cast<size_t>(r) * c)
            throw std::invalid_argument("Matrix: entry count does not match rows*cols");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    std::vector<double> apply(const std::vector<double>& x) const;
    Matrix multiply(const Matrix& other) const;  // this * other

    bool operator==(const Matrix&) const = default;
};

// One affine layer: x -> W x + b.
struct Layer {
    Matrix weights;
    std::vector<double> bias;

    Layer() = default;
    Layer(Matrix w, std::vector<double> b) : weights(std::move(w)), bias(std::move(b)) {
        if (bias.size() != static_cast<size_t>(weights.rows))
            throw std::invalid_argument("Layer: bias length must equal weight rows");
    }

    int out_dim() const { return weights.rows; }
    int in_dim() const { return weights.cols; }

    std::vector<double> affine(const std::vector<double>& x) const;  // W x + b

    bool operator==(const Layer&) const = default;
};

// Layer dimensions (l_0, l_1, ..., l_L), L >= 1.
struct Architecture {
    std::vector<int> dims;

    Architecture() = default;
    explicit Architecture(std::vector<int> d) : dims(std::move(d)) { validate(); }
    Architecture(std::initializer_list<int> d) : dims(d) { validate(); }

    void validate() const {
        if (dims.size() < 2) throw std::invalid_argument("Architecture: needs at least (l_0, l_1)");
        for (int v : dims)
            if (v <= 0) throw std::invalid_argument("Architecture: dimensions must be positive");
    }

    int depth() const { return static_cast<int>(dims.size()) - 1; }  // L
    int hidden_layers() const { return depth() - 1; }                // H
    int input_dim() const { return dims.front(); }                   // I
    int output_dim() const { return dims.back(); }                   // O
    int width(int i) const {                                         // D_i, 0 for i > L
        return (i >= 0 && i <= depth()) ? dims[static_cast<size_t>(i)] : 0;
    }
    int max_width() const {
        int m = 0;
        for (int v : dims) m = std::max(m, v);
        return m;
    }
    long long param_count() const {  // P = sum_i l_i (l_{i-1} + 1)
        long long p = 0;
        for (size_t i = 1; i < dims.size(); ++i)
            p += static_cast<long long>(dims[i]) * (dims[i - 1] + 1);
        return p;
    }

    bool operator==(const Architecture&) const = default;
};

// A network in the structured description: a nonempty chain of layers
// with matching interface dimensions.
struct StructuredNetwork {
    std::vector<Layer> layers;

    StructuredNetwork() = default;
    explicit StructuredNetwork(std::vector<Layer> ls) : layers(std::move(ls)) { validate(); }

    void validate() const {
        if (layers.empty()) throw std::invalid_argument("StructuredNetwork: needs at least one layer");
        for (size_t k = 1; k < layers.size(); ++k)
            if (layers[k].in_dim() != layers[k - 1].out_dim())
                throw std::invalid_argument("StructuredNetwork: layer interface mismatch at layer " +
                                            std::to_string(k + 1));
    }

    int depth() const { return static_cast<int>(layers.size()); }
    int input_dim() const { return layers.front().in_dim(); }
    int output_dim() const { return layers.back().out_dim(); }

    // 1-indexed accessors; absent (rather than the scalar 0) beyond depth
    std::optional<Matrix> weight(int i) const {
        if (i < 1 || i > depth()) return std::nullopt;
        return layers[static_cast<size_t>(i) - 1].weights;
    }
    std::optional<std::vector<double>> bias(int i) const {
        if (i < 1 || i > depth()) return std::nullopt;
        return layers[static_cast<size_t>(i) - 1].bias;
    }

    bool operator==(const StructuredNetwork&) const = default;
};

// Clipping interval; IEEE infinities give one- or no-sided clipping.
struct ClipBounds {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    ClipBounds() = default;
    ClipBounds(double u, double v) : lo(u), hi(v) {
        if (!(u < v)) throw std::invalid_argument("ClipBounds: need u < v");
    }

    static ClipBounds unbounded() { return ClipBounds(); }

    double apply(double x) const { return std::max(std::min(x, hi), lo); }

    bool operator==(const ClipBounds&) const = default;
};

struct Activation {
    enum class Kind { Rectifier, Clip, Identity };

    Kind kind = Kind::Rectifier;
    ClipBounds bounds;  // meaningful only for Kind::Clip

    static Activation rectifier() { return {Kind::Rectifier, {}}; }
    static Activation clip(ClipBounds b) { return {Kind::Clip, b}; }
    static Activation clip(double u, double v) { return {Kind::Clip, ClipBounds(u, v)}; }
    static Activation identity() { return {Kind::Identity, {}}; }

    double operator()(double x) const {
        switch (kind) {
            case Kind::Rectifier: return x > 0.0 ? x : 0.0;
            case Kind::Clip: return bounds.apply(x);
            case Kind::Identity: return x;
        }
        return x;
    }
};

// Flat parameter vector bound to an architecture. values.size() may exceed
// the architecture's parameter count; the surplus tail is ignored.
struct ParamVector {
    std::vector<double> values;
    Architecture arch;

    ParamVector() = default;
    ParamVector(std::vector<double> v, Architecture a) : values(std::move(v)), arch(std::move(a)) {
        if (static_cast<long long>(values.size()) < arch.param_count())
            throw std::invalid_argument("ParamVector: fewer values than the architecture requires");
    }
};

// --- network-core operations ---

// p-norm of a vector, p in [1, inf]; p = infinity() gives the max norm.
double norm(const std::vector<double>& x, double p);

std::vector<double> activation_apply(const Activation& a, const std::vector<double>& x);

Architecture arch_of(const StructuredNetwork& net);

// Forward pass: activation after every layer except the last.
std::vector<double> realize(const StructuredNetwork& net, const Activation& a,
                            const std::vector<double>& x);

// W x + b with W read row-major from theta at offset s (m x n) and the m
// bias entries directly after it.
std::vector<double> affine_eval(const std::vector<double>& theta, long long s, int m, int n,
                                const std::vector<double>& x);

// The clipped rectifier network x -> N^{theta,l}_{u,v}(x).
std::vector<double> realize_clipped(const ParamVector& theta, const ClipBounds& bounds,
                                    const std::vector<double>& x);
std::vector<double> realize_clipped(const std::vector<double>& theta, const Architecture& l,
                                    const ClipBounds& bounds, const std::vector<double>& x);

ParamVector flatten(const StructuredNetwork& net);
StructuredNetwork unflatten(const ParamVector& theta);
StructuredNetwork unflatten(const std::vector<double>& theta, const Architecture& l);

// Embed a network into a larger architecture without changing its rectifier
// realization. Widening pads with zeros; added depth (scalar outputs only)
// is realized by r(x) - r(-x) identity blocks.
StructuredNetwork embed(const StructuredNetwork& net, const Architecture& target);

}  // namespace lipnet
