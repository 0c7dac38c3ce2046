#pragma once

#include <optional>
#include <string>

#include "lipnet/network.hpp"

namespace lipnet {

// Everything the closed-form error bounds depend on.
struct BoundInputs {
    int d = 1;
    Architecture arch;  // l; depth L and max width derive from it
    long long M = 1;    // training sample count
    long long K = 1;    // random restarts
    long long N = 0;    // gradient steps (not used by any bound value)
    double p = 1.0;     // moment order
    double c = 1.0;     // initialization radius
    double beta = 1.0;  // selection radius
    double u = 0.0, v = 1.0;
    double lipschitz = 0.0;  // L of the target
    double a = 0.0, b = 1.0;
    double A = 1.0;  // architecture parameter of the approximation bounds
};

enum class BoundVariant {
    Intro,     // expected L1 error; unit cube, beta = c, Lipschitz <= c
    Theo1d,    // p-th moment of the squared L2 error, d = 1
    Cor1d,     // simplified d = 1 form for architecture (1, ell, 1)
    TheoMain,  // p-th moment of the squared L2 error, general d
    CorMain,   // simplified multidimensional form (same display as CorSimple)
    CorSimple  // expected L1 error; unit cube, beta = c, Lipschitz <= c
};

BoundVariant bound_variant_from_string(const std::string& name);
std::string to_string(BoundVariant v);

struct BoundReport {
    std::string variant;
    double approximation_term = 0.0;
    double optimization_term = 0.0;
    double generalization_term = 0.0;
    double total = 0.0;  // approximation + optimization + generalization, in that order
    std::optional<double> measured_error;
    BoundInputs inputs;
};

// Uniform generalization gap bound over parameters in [-beta, beta]^dim:
// 5 (v-u)^2 L (W+1)^{3/2} max{p, ln(4 M beta c)} / sqrt(M).
double generalization_bound(const BoundInputs& in);

// 4 (v-u) L (W+1)^L c^{L+1} max{p, 1} / K^{1/(L (W+1)^2)}.
double optimization_bound(const BoundInputs& in);

// Both sides of ln(4 M beta c) <= (3 beta / 2) ln(e M).
std::pair<double, double> log_bound_check(double c, double M, double beta);

// Three-term right-hand side of the chosen overall error bound. Throws
// HypothesisError naming the violated clause.
BoundReport overall_bound(const BoundInputs& in, BoundVariant variant);

}  // namespace lipnet
