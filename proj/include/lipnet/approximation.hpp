#pragma once

#include <functional>

#include "lipnet/network.hpp"

namespace lipnet {

// The cube [a, b]^d.
struct HypercubeDomain {
    double a = 0.0;
    double b = 1.0;
    int d = 1;

    HypercubeDomain() = default;
    HypercubeDomain(double a_, double b_, int d_) : a(a_), b(b_), d(d_) {
        if (!(b > a)) throw std::invalid_argument("HypercubeDomain: need b > a");
        if (d < 1) throw std::invalid_argument("HypercubeDomain: need d >= 1");
    }

    double midpoint_coord() const { return 0.5 * (a + b); }
    std::vector<double> midpoint() const {
        return std::vector<double>(static_cast<size_t>(d), midpoint_coord());
    }
};

// A target function together with its caller-asserted Lipschitz constant
// (w.r.t. the 1-norm) and exact range over the domain of interest. The
// Lipschitz claim is spot-checked, not proven.
struct TargetOracle {
    std::function<double(const std::vector<double>&)> eval;
    double lipschitz = 0.0;
    double range_lo = 0.0;
    double range_hi = 1.0;
    bool serial = false;  // callback not safe for concurrent invocation

    double sup_abs() const { return std::max(std::abs(range_lo), std::abs(range_hi)); }
};

struct ApproxReport {
    Architecture architecture;
    double param_inf_norm = 0.0;
    double theoretical_bound = 0.0;
    double measured_sup_error = 0.0;
    int grid_resolution = 0;  // measurement points per axis
};

// Architecture sized for a requested accuracy, together with the parameter
// and depth budgets it certifies.
struct EpsArchitecture {
    Architecture arch;
    double A = 0.0;            // architecture parameter (3dL(b-a)/eps)^d
    double hidden_bound = 0.0; // certified bound on the hidden-layer count
    double param_bound = 0.0;  // C * eps^{-2d}
    double C = 0.0;
    double log_constant = 0.0; // the additive constant in the depth bound
};

// Midpoint grid with ceil(d(b-a)/(2r)) subdivisions per axis; every point of
// the cube is within 1-norm distance r of some grid point.
std::vector<std::vector<double>> covering_grid(const HypercubeDomain& dom, double r);

int covering_grid_subdivisions(const HypercubeDomain& dom, double r);

// Midpoint grid with an explicit subdivision count per axis; covers within
// 1-norm radius d(b-a)/(2m).
std::vector<std::vector<double>> midpoint_grid(const HypercubeDomain& dom, int subdivisions);

// 3 d L (b-a) / A^(1/d)
double approx_bound(int d, double lipschitz, double a, double b, double A);

// The smallest architecture admissible for build_approximator at this A.
Architecture minimal_architecture(int d, double A);

// Parameters realizing the maximum-convolution approximant of f on the grid
// dictated by A, embedded into the architecture l. For A <= 6^d emits the
// constant network at f(midpoint), whose error also meets the bound.
ParamVector build_approximator(const TargetOracle& f, const HypercubeDomain& dom, double A,
                               const Architecture& l, const ClipBounds& bounds);

// One-dimensional interpolation variant with error L(b-a)/A.
ParamVector build_interp1d_approximator(const TargetOracle& f, const HypercubeDomain& dom,
                                        double A, const Architecture& l, const ClipBounds& bounds);

EpsArchitecture eps_architecture(int d, double lipschitz, double a, double b, double eps);

// Max |N(x) - f(x)| over the uniform grid with endpoints; a lower bound on
// the true sup error.
double sup_error_estimate(const ParamVector& theta, const ClipBounds& bounds,
                          const TargetOracle& f, const HypercubeDomain& dom, int points_per_axis,
                          long long point_budget = 20'000'000);

}  // namespace lipnet
