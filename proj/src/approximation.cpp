#include "lipnet/approximation.hpp"

#include <cmath>
#include <cstdio>

#include "lipnet/algebra.hpp"
#include "lipnet/constructions.hpp"
#include "lipnet/rng.hpp"

namespace lipnet {

namespace {

// smallest k with 2^k >= x, for x > 0 (exact double comparisons)
int ceil_log2(double x) {
    int k = static_cast<int>(std::floor(std::log2(x))) - 2;
    while (std::ldexp(1.0, k) < x) ++k;
    return k;
}

bool large_regime(int d, double A) { return A > std::pow(6.0, d); }

// largest integer z with 2 d z^d <= A, i.e. floor((A/2d)^(1/d)), with an
// exact integer adjustment around pow's rounding
int grid_scale(int d, double A) {
    auto fits = [&](long long z) {
        double p = 1.0;
        for (int i = 0; i < d; ++i) p *= static_cast<double>(z);
        return 2.0 * d * p <= A;
    };
    long long z = static_cast<long long>(std::floor(std::pow(A / (2.0 * d), 1.0 / d)));
    z = std::max(z, 1LL);
    while (!fits(z)) --z;
    while (fits(z + 1)) ++z;
    return static_cast<int>(z);
}

void check_prop_hypotheses(int d, double A, const Architecture& l) {
    if (l.input_dim() != d) throw HypothesisError("architecture: l_0 must equal d");
    if (l.output_dim() != 1) throw HypothesisError("architecture: l_L must equal 1");
    if (!large_regime(d, A)) return;
    const int min_depth = ceil_log2(A / (2.0 * d)) + 2;
    if (l.depth() < min_depth)
        throw HypothesisError("architecture: depth " + std::to_string(l.depth()) +
                              " below required " + std::to_string(min_depth));
    if (l.width(1) < A) throw HypothesisError("architecture: l_1 below A");
    for (int i = 2; i <= l.depth() - 1; ++i) {
        const double need = 3.0 * std::ceil(A / (std::ldexp(1.0, i) * d));
        if (l.width(i) < need)
            throw HypothesisError("architecture: l_" + std::to_string(i) + " below 3*ceil(A/(2^i d))");
    }
}

void spot_check_lipschitz(const TargetOracle& f, const HypercubeDomain& dom) {
    rng::Stream stream(0x11f5c417ULL);
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> x(static_cast<size_t>(dom.d)), y(static_cast<size_t>(dom.d));
        double dist = 0.0;
        for (int i = 0; i < dom.d; ++i) {
            x[static_cast<size_t>(i)] = stream.next_uniform(dom.a, dom.b);
            y[static_cast<size_t>(i)] = stream.next_uniform(dom.a, dom.b);
            dist += std::abs(x[static_cast<size_t>(i)] - y[static_cast<size_t>(i)]);
        }
        const double gap = std::abs(f.eval(x) - f.eval(y));
        if (gap > f.lipschitz * dist * (1.0 + 1e-9) + 1e-12) ++violations;
    }
    if (violations > 0)
        std::fprintf(stderr,
                     "warning: target violated its declared Lipschitz constant on %d of 1000 "
                     "sampled pairs\n",
                     violations);
}

ParamVector constant_network(const TargetOracle& f, const HypercubeDomain& dom,
                             const Architecture& l) {
    std::vector<double> theta(static_cast<size_t>(l.param_count()), 0.0);
    theta.back() = f.eval(dom.midpoint());  // output-layer bias is the last entry
    return ParamVector(std::move(theta), l);
}

}  // namespace

int covering_grid_subdivisions(const HypercubeDomain& dom, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("covering_grid: need r > 0");
    return std::max(1, static_cast<int>(std::ceil(dom.d * (dom.b - dom.a) / (2.0 * r))));
}

std::vector<std::vector<double>> midpoint_grid(const HypercubeDomain& dom, int subdivisions) {
    if (subdivisions < 1) throw std::invalid_argument("midpoint_grid: need >= 1 subdivision");
    const int m = subdivisions;
    const double count = std::pow(static_cast<double>(m), dom.d);
    if (count * dom.d > 5e7) throw std::length_error("midpoint_grid: grid too large");

    std::vector<std::vector<double>> points;
    points.reserve(static_cast<size_t>(std::llround(count)));
    std::vector<int> idx(static_cast<size_t>(dom.d), 0);
    const double step = (dom.b - dom.a) / m;
    while (true) {
        std::vector<double> p(static_cast<size_t>(dom.d));
        for (int i = 0; i < dom.d; ++i)
            p[static_cast<size_t>(i)] = dom.a + (idx[static_cast<size_t>(i)] + 0.5) * step;
        points.push_back(std::move(p));
        int axis = 0;
        while (axis < dom.d && ++idx[static_cast<size_t>(axis)] == m) {
            idx[static_cast<size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == dom.d) break;
    }
    return points;
}

std::vector<std::vector<double>> covering_grid(const HypercubeDomain& dom, double r) {
    return midpoint_grid(dom, covering_grid_subdivisions(dom, r));
}

double approx_bound(int d, double lipschitz, double a, double b, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("approx_bound: need A > 0");
    return 3.0 * d * lipschitz * (b - a) / std::pow(A, 1.0 / d);
}

Architecture minimal_architecture(int d, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("minimal_architecture: need A > 0");
    if (!large_regime(d, A)) return Architecture({d, 1});
    const int L = ceil_log2(A / (2.0 * d)) + 2;
    std::vector<int> dims;
    dims.reserve(static_cast<size_t>(L) + 1);
    dims.push_back(d);
    dims.push_back(static_cast<int>(std::ceil(A)));
    for (int i = 2; i <= L - 1; ++i)
        dims.push_back(static_cast<int>(3.0 * std::ceil(A / (std::ldexp(1.0, i) * d))));
    dims.push_back(1);
    return Architecture(std::move(dims));
}

ParamVector build_approximator(const TargetOracle& f, const HypercubeDomain& dom, double A,
                               const Architecture& l, const ClipBounds& bounds) {
    if (!(A > 0.0)) throw std::invalid_argument("build_approximator: need A > 0");
    if (f.range_lo < bounds.lo || f.range_hi > bounds.hi)
        throw HypothesisError("target range not contained in the clipping interval");
    check_prop_hypotheses(dom.d, A, l);
    spot_check_lipschitz(f, dom);

    if (!large_regime(dom.d, A)) return constant_network(f, dom, l);

    // zeta subdivisions per axis cover the cube within 1-norm radius
    // d(b-a)/(2 zeta); the grid is built from the integer count so the
    // architecture facts (first width 2dK with K = zeta^d) are exact
    const int zeta = grid_scale(dom.d, A);
    MaxConvSpec spec;
    spec.lipschitz = f.lipschitz;
    spec.centers = midpoint_grid(dom, zeta);
    spec.values.reserve(spec.centers.size());
    for (const auto& center : spec.centers) spec.values.push_back(f.eval(center));

    StructuredNetwork net = max_convolution_net(spec);
    return flatten(embed(net, l));
}

ParamVector build_interp1d_approximator(const TargetOracle& f, const HypercubeDomain& dom,
                                        double A, const Architecture& l,
                                        const ClipBounds& bounds) {
    if (dom.d != 1) throw std::invalid_argument("build_interp1d_approximator: d must be 1");
    if (!(A > 0.0)) throw std::invalid_argument("build_interp1d_approximator: need A > 0");
    if (f.range_lo < bounds.lo || f.range_hi > bounds.hi)
        throw HypothesisError("target range not contained in the clipping interval");
    if (l.depth() < 2) throw HypothesisError("architecture: depth must be >= 2");
    if (l.input_dim() != 1 || l.output_dim() != 1)
        throw HypothesisError("architecture: l_0 and l_L must equal 1");
    if (l.width(1) < A + 2.0) throw HypothesisError("architecture: l_1 below A + 2");
    for (int i = 2; i <= l.depth() - 1; ++i)
        if (l.width(i) < 2)
            throw HypothesisError("architecture: l_" + std::to_string(i) + " below 2");
    spot_check_lipschitz(f, dom);

    Interp1dSpec spec;
    spec.a = dom.a;
    spec.b = dom.b;
    spec.A = A;
    const int K = static_cast<int>(std::ceil(A));
    spec.node_values.resize(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k)
        spec.node_values[static_cast<size_t>(k)] = f.eval({spec.node(k)});

    return flatten(embed(interp1d_net(spec), l));
}

EpsArchitecture eps_architecture(int d, double lipschitz, double a, double b, double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("eps_architecture: eps must lie in (0, 1]");
    if (!(b > a)) throw std::invalid_argument("eps_architecture: need b > a");
    if (d < 1) throw std::invalid_argument("eps_architecture: need d >= 1");
    if (lipschitz < 0.0) throw std::invalid_argument("eps_architecture: need L >= 0");

    EpsArchitecture out;
    const double base = 3.0 * d * lipschitz * (b - a);
    out.A = lipschitz > 0.0 ? std::pow(base / eps, d) : 0.0;
    out.C = 9.0 / 8.0 * std::pow(base, 2 * d) + (d + 19) * std::pow(base, d) + d + 11;
    out.log_constant =
        lipschitz > 0.0 ? std::max(std::log2(3.0 * lipschitz * (b - a)) + 1.0, 0.0) : 0.0;
    out.param_bound = out.C * std::pow(eps, -2.0 * d);
    out.hidden_bound = d * (std::log2(1.0 / eps) + std::log2(static_cast<double>(d)) + out.log_constant);

    const int L = out.A > 0.0 ? std::max(2 + ceil_log2(out.A / (2.0 * d)), 1) : 1;
    if (L == 1) {
        out.arch = Architecture({d, 1});
        return out;
    }
    std::vector<int> dims;
    dims.reserve(static_cast<size_t>(L) + 1);
    dims.push_back(d);
    dims.push_back(static_cast<int>(std::ceil(out.A)));
    for (int i = 2; i <= L - 1; ++i)
        dims.push_back(static_cast<int>(3.0 * std::ceil(out.A / (std::ldexp(1.0, i) * d))));
    dims.push_back(1);
    out.arch = Architecture(std::move(dims));
    return out;
}

double sup_error_estimate(const ParamVector& theta, const ClipBounds& bounds,
                          const TargetOracle& f, const HypercubeDomain& dom, int points_per_axis,
                          long long point_budget) {
    if (points_per_axis < 2) throw std::invalid_argument("sup_error_estimate: need >= 2 points per axis");
    const double total = std::pow(static_cast<double>(points_per_axis), dom.d);
    if (total * dom.d > static_cast<double>(point_budget))
        throw std::length_error("sup_error_estimate: evaluation budget exceeded");

    std::vector<int> idx(static_cast<size_t>(dom.d), 0);
    std::vector<double> x(static_cast<size_t>(dom.d));
    const double step = (dom.b - dom.a) / (points_per_axis - 1);
    double worst = 0.0;
    while (true) {
        for (int i = 0; i < dom.d; ++i) x[static_cast<size_t>(i)] = dom.a + idx[static_cast<size_t>(i)] * step;
        const double out = realize_clipped(theta, bounds, x)[0];
        worst = std::max(worst, std::abs(out - f.eval(x)));
        int axis = 0;
        while (axis < dom.d && ++idx[static_cast<size_t>(axis)] == points_per_axis) {
            idx[static_cast<size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == dom.d) break;
    }
    return worst;
}

}  // namespace lipnet
