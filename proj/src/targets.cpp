#include "lipnet/targets.hpp"

#include <cmath>
#include <numbers>

namespace lipnet {

namespace {

// exact range of sin over [t0, t1]
std::pair<double, double> sin_range(double t0, double t1) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto attains = [&](double peak) {  // some peak + 2k*pi inside [t0, t1]?
        const double k = std::ceil((t0 - peak) / two_pi);
        return peak + k * two_pi <= t1;
    };
    double lo = std::min(std::sin(t0), std::sin(t1));
    double hi = std::max(std::sin(t0), std::sin(t1));
    if (attains(std::numbers::pi / 2.0)) hi = 1.0;
    if (attains(-std::numbers::pi / 2.0)) lo = -1.0;
    return {lo, hi};
}

}  // namespace

bool TargetConfig::known_family(const std::string& name) {
    return name == "abs-dist" || name == "l1-norm" || name == "sin-ridge" ||
           name == "ridge-sin" || name == "constant";
}

TargetOracle make_target(const TargetConfig& cfg, const HypercubeDomain& dom) {
    TargetOracle oracle;
    const double a = dom.a, b = dom.b;
    const int d = dom.d;

    if (cfg.family == "abs-dist") {
        std::vector<double> center = cfg.center.empty() ? dom.midpoint() : cfg.center;
        if (static_cast<int>(center.size()) != d)
            throw std::invalid_argument("abs-dist: center dimension mismatch");
        const double s = cfg.scale;
        if (s < 0.0) throw std::invalid_argument("abs-dist: scale must be >= 0");
        oracle.eval = [s, center](const std::vector<double>& x) {
            double acc = 0.0;
            for (size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - center[i]);
            return s * acc;
        };
        oracle.lipschitz = s;
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < d; ++i) {
            const double m = center[static_cast<size_t>(i)];
            lo += std::max({a - m, m - b, 0.0});
            hi += std::max(std::abs(a - m), std::abs(b - m));
        }
        oracle.range_lo = s * lo;
        oracle.range_hi = s * hi;
        return oracle;
    }

    if (cfg.family == "l1-norm") {
        oracle.eval = [](const std::vector<double>& x) {
            double acc = 0.0;
            for (double v : x) acc += std::abs(v);
            return acc;
        };
        oracle.lipschitz = 1.0;
        const double axis_lo = (a <= 0.0 && 0.0 <= b) ? 0.0 : std::min(std::abs(a), std::abs(b));
        oracle.range_lo = d * axis_lo;
        oracle.range_hi = d * std::max(std::abs(a), std::abs(b));
        return oracle;
    }

    if (cfg.family == "sin-ridge" || cfg.family == "ridge-sin") {
        const double omega = cfg.omega;
        if (!(omega > 0.0)) throw std::invalid_argument("sin-ridge: omega must be positive");
        oracle.eval = [omega](const std::vector<double>& x) {
            double acc = 0.0;
            for (double v : x) acc += v;
            return std::sin(omega * acc) / omega;
        };
        oracle.lipschitz = 1.0;  // |cos| <= 1 bounds every partial derivative
        auto [lo, hi] = sin_range(omega * d * a, omega * d * b);
        oracle.range_lo = lo / omega;
        oracle.range_hi = hi / omega;
        return oracle;
    }

    if (cfg.family == "constant") {
        const double v = cfg.value;
        oracle.eval = [v](const std::vector<double>&) { return v; };
        oracle.lipschitz = 0.0;
        oracle.range_lo = v;
        oracle.range_hi = v;
        return oracle;
    }

    throw std::invalid_argument("unknown target family: " + cfg.family);
}

}  // namespace lipnet
