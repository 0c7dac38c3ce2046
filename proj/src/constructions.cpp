#include "lipnet/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lipnet/algebra.hpp"

namespace lipnet {

void MaxConvSpec::validate() const {
    if (lipschitz < 0.0) throw std::invalid_argument("MaxConvSpec: Lipschitz constant must be >= 0");
    if (centers.size() < 2) throw std::invalid_argument("MaxConvSpec: need K >= 2 centers");
    if (values.size() != centers.size())
        throw std::invalid_argument("MaxConvSpec: values/centers count mismatch");
    const size_t d = centers.front().size();
    if (d == 0) throw std::invalid_argument("MaxConvSpec: centers must be nonempty points");
    for (const auto& c : centers)
        if (c.size() != d) throw std::invalid_argument("MaxConvSpec: center dimension mismatch");
}

double MaxConvSpec::evaluate(const std::vector<double>& x) const {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < centers.size(); ++k) {
        double dist = 0.0;
        for (size_t i = 0; i < x.size(); ++i) dist += std::abs(x[i] - centers[k][i]);
        best = std::max(best, values[k] - lipschitz * dist);
    }
    return best;
}

void Interp1dSpec::validate() const {
    if (!(b > a)) throw std::invalid_argument("Interp1dSpec: need b > a");
    if (!(A > 0.0)) throw std::invalid_argument("Interp1dSpec: need A > 0");
    const int K = static_cast<int>(std::ceil(A));
    if (static_cast<int>(node_values.size()) != K + 1)
        throw std::invalid_argument("Interp1dSpec: need ceil(A) + 1 node values");
}

StructuredNetwork l1_norm_net(int d) {
    if (d < 1) throw std::invalid_argument("l1_norm_net: d must be >= 1");
    Matrix w1(2, 1, {1.0, -1.0});
    Matrix w2(1, 2, {1.0, 1.0});
    StructuredNetwork abs1({Layer(w1, {0.0, 0.0}), Layer(w2, {0.0})});
    if (d == 1) return abs1;
    return compose(sum_net(1, d), parallelize(std::vector<StructuredNetwork>(static_cast<size_t>(d), abs1)));
}

namespace {

StructuredNetwork max2_net() {
    Matrix w1(3, 2, {1.0, -1.0, 0.0, 1.0, 0.0, -1.0});
    Matrix w2(1, 3, {1.0, 1.0, -1.0});
    return StructuredNetwork({Layer(w1, {0.0, 0.0, 0.0}), Layer(w2, {0.0})});
}

// The recursion halves d each level and re-uses the same sub-networks, so
// results are memoized by d within one build.
StructuredNetwork max_net_memo(int d, std::map<int, StructuredNetwork>& cache) {
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    StructuredNetwork result = [&] {
        if (d == 2) return max2_net();
        if (d % 2 == 0) {
            const int half = d / 2;
            std::vector<StructuredNetwork> blocks(static_cast<size_t>(half), max2_net());
            return compose(max_net_memo(half, cache), parallelize(blocks));
        }
        const int half = (d + 1) / 2;
        std::vector<StructuredNetwork> blocks(static_cast<size_t>(half) - 1, max2_net());
        blocks.push_back(identity_net());
        return compose(max_net_memo(half, cache), parallelize(blocks));
    }();
    cache.emplace(d, result);
    return result;
}

}  // namespace

StructuredNetwork max_net(int d) {
    if (d < 2) throw std::invalid_argument("max_net: d must be >= 2");
    std::map<int, StructuredNetwork> cache;
    return max_net_memo(d, cache);
}

StructuredNetwork max_convolution_net(const MaxConvSpec& spec) {
    spec.validate();
    const int d = spec.dim();
    const int K = spec.count();

    std::vector<StructuredNetwork> shifted;
    shifted.reserve(static_cast<size_t>(K));
    const StructuredNetwork l1 = l1_norm_net(d);
    for (int k = 0; k < K; ++k) {
        std::vector<double> nb(spec.centers[static_cast<size_t>(k)]);
        for (double& v : nb) v = -v;
        shifted.push_back(compose(l1, affine_net(Matrix::identity(d), nb)));
    }

    Matrix neg_lip(K, K);
    for (int i = 0; i < K; ++i) neg_lip.at(i, i) = -spec.lipschitz;

    StructuredNetwork inner = compose(parallelize(shifted), concat_net(K, d));
    inner = compose(affine_net(neg_lip, spec.values), inner);
    return compose(max_net(K), inner);
}

StructuredNetwork interp1d_net(const Interp1dSpec& spec) {
    spec.validate();
    const int K = spec.segments();
    const auto& f = spec.node_values;

    // Slope-difference coefficients, with min/max-guarded indices so the
    // same formula covers k = 0 and k = K.
    auto r = [&](int k) { return spec.node(k); };
    std::vector<double> c(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        const double right = (f[static_cast<size_t>(std::min(k + 1, K))] - f[static_cast<size_t>(k)]) /
                             (r(std::min(k + 1, K)) - r(std::min(k, K - 1)));
        const double left = (f[static_cast<size_t>(k)] - f[static_cast<size_t>(std::max(k - 1, 0))]) /
                            (r(std::max(k, 1)) - r(std::max(k - 1, 0)));
        c[static_cast<size_t>(k)] = right - left;
    }

    Matrix w1(K + 1, 1, std::vector<double>(static_cast<size_t>(K) + 1, 1.0));
    std::vector<double> b1(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) b1[static_cast<size_t>(k)] = -r(k);
    Matrix w2(1, K + 1, c);
    return StructuredNetwork({Layer(std::move(w1), std::move(b1)), Layer(std::move(w2), {f[0]})});
}

}  // namespace lipnet
