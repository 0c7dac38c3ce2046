#include "lipnet/bounds.hpp"

#include <cmath>

namespace lipnet {

namespace {

void require(bool ok, const std::string& clause) {
    if (!ok) throw HypothesisError("hypothesis violated: " + clause);
}

// min{first, l_1, ..., l_{L-1}}
double min_with_hidden(const Architecture& l, double first) {
    double m = first;
    for (int i = 1; i <= l.depth() - 1; ++i) m = std::min(m, static_cast<double>(l.width(i)));
    return m;
}

double euler_log(double m) { return std::log(std::exp(1.0) * m); }  // ln(e M)

void check_common(const BoundInputs& in) {
    if (in.arch.dims.empty()) throw HypothesisError("hypothesis violated: architecture missing");
    require(in.M >= 1, "M >= 1");
    require(in.K >= 1, "K >= 1");
    require(in.p > 0.0, "p > 0");
    require(in.v > in.u, "v > u");
    require(in.b > in.a, "b > a");
    require(in.lipschitz >= 0.0, "L >= 0");
}

void check_unit_cube(const BoundInputs& in, double c_floor) {
    require(in.c >= c_floor, "c >= " + std::to_string(c_floor));
    require(in.a == 0.0 && in.b == 1.0, "domain [0,1]^d");
    require(in.u == 0.0 && in.v == 1.0, "range [0,1]");
    require(in.lipschitz <= in.c, "Lipschitz constant <= c");
    require(in.beta == in.c, "beta = c (selection radius equals the initialization radius)");
    require(in.arch.input_dim() == in.d, "l_0 = d");
    require(in.arch.output_dim() == 1, "l_L = 1");
}

}  // namespace

BoundVariant bound_variant_from_string(const std::string& name) {
    if (name == "intro") return BoundVariant::Intro;
    if (name == "theo-1d") return BoundVariant::Theo1d;
    if (name == "cor-1d") return BoundVariant::Cor1d;
    if (name == "theo-main") return BoundVariant::TheoMain;
    if (name == "cor-main") return BoundVariant::CorMain;
    if (name == "cor-simple" || name == "cor-sgdsimple") return BoundVariant::CorSimple;
    throw std::invalid_argument("unknown bound variant: " + name);
}

std::string to_string(BoundVariant v) {
    switch (v) {
        case BoundVariant::Intro: return "intro";
        case BoundVariant::Theo1d: return "theo-1d";
        case BoundVariant::Cor1d: return "cor-1d";
        case BoundVariant::TheoMain: return "theo-main";
        case BoundVariant::CorMain: return "cor-main";
        case BoundVariant::CorSimple: return "cor-simple";
    }
    return "?";
}

double generalization_bound(const BoundInputs& in) {
    check_common(in);
    require(in.c >= 1.0, "c >= 1");
    require(in.beta >= 1.0, "beta >= 1");
    const double L = in.arch.depth();
    require(L >= 1.0, "depth >= 1");
    const double w1 = in.arch.max_width() + 1.0;
    const double log_term = std::log(4.0 * in.M * in.beta * in.c);
    return 5.0 * (in.v - in.u) * (in.v - in.u) * L * std::pow(w1, 1.5) *
           std::max(in.p, log_term) / std::sqrt(static_cast<double>(in.M));
}

double optimization_bound(const BoundInputs& in) {
    check_common(in);
    const double L = in.arch.depth();
    const double w1 = in.arch.max_width() + 1.0;
    const double numerator =
        4.0 * (in.v - in.u) * L * std::pow(w1, L) * std::pow(in.c, L + 1.0) * std::max(in.p, 1.0);
    return numerator / std::pow(static_cast<double>(in.K), 1.0 / (L * w1 * w1));
}

std::pair<double, double> log_bound_check(double c, double M, double beta) {
    if (!(c >= 1.0) || !(M >= 1.0)) throw HypothesisError("hypothesis violated: c, M >= 1");
    if (!(beta >= c)) throw HypothesisError("hypothesis violated: beta >= c");
    return {std::log(4.0 * M * beta * c), 1.5 * beta * euler_log(M)};
}

BoundReport overall_bound(const BoundInputs& in, BoundVariant variant) {
    check_common(in);
    BoundReport report;
    report.variant = to_string(variant);
    report.inputs = in;

    const double L = in.arch.depth();
    const double W = in.arch.max_width();
    const double Md = static_cast<double>(in.M);
    const double Kd = static_cast<double>(in.K);
    const double span = in.v - in.u;

    switch (variant) {
        case BoundVariant::Intro: {
            check_unit_cube(in, 2.0);
            report.approximation_term =
                6.0 * in.d * in.c /
                std::pow(min_with_hidden(in.arch, std::ldexp(1.0, in.arch.depth())), 1.0 / in.d);
            report.optimization_term = L * std::pow(W + 1.0, L) * std::pow(in.c, L + 1.0) /
                                       std::pow(Kd, 1.0 / (2.0 * L * (W + 1.0) * (W + 1.0)));
            report.generalization_term =
                4.0 * in.c * L * (W + 1.0) * euler_log(Md) / std::pow(Md, 0.25);
            break;
        }
        case BoundVariant::Theo1d: {
            require(in.d == 1, "d = 1");
            require(in.c >= std::max({1.0, std::abs(in.u), std::abs(in.v), std::abs(in.a),
                                      std::abs(in.b), 2.0 * in.lipschitz}),
                    "c >= max{1, |u|, |v|, |a|, |b|, 2L}");
            require(in.beta >= in.c, "beta >= c");
            require(in.arch.depth() >= 2, "depth >= 2");
            require(in.arch.input_dim() == 1 && in.arch.output_dim() == 1, "l_0 = l_L = 1");
            require(in.A > 0.0, "A > 0");
            require(in.arch.width(1) >= in.A + 2.0, "l_1 >= A + 2");
            for (int i = 2; i <= in.arch.depth() - 1; ++i)
                require(in.arch.width(i) >= 2, "l_i >= 2 for 2 <= i <= depth-1");
            report.approximation_term =
                in.lipschitz * in.lipschitz * (in.b - in.a) * (in.b - in.a) / (in.A * in.A);
            report.optimization_term = optimization_bound(in);
            report.generalization_term = 10.0 * std::pow(std::max(span, 1.0), 2.0) * L *
                                         std::pow(W + 1.0, 1.5) *
                                         std::max(in.p, std::log(4.0 * Md * in.beta * in.c)) /
                                         std::sqrt(Md);
            break;
        }
        case BoundVariant::Cor1d: {
            require(in.d == 1, "d = 1");
            require(in.c >= std::max({1.0, 2.0 * std::abs(in.u), 2.0 * std::abs(in.v),
                                      std::abs(in.a), std::abs(in.b), 2.0 * in.lipschitz}),
                    "c >= max{1, 2|u|, 2|v|, |a|, |b|, 2L}");
            require(in.beta >= in.c, "beta >= c");
            require(in.arch.depth() == 2 && in.arch.input_dim() == 1 && in.arch.output_dim() == 1,
                    "architecture (1, ell, 1)");
            const double ell = in.arch.width(1);
            require(ell >= 3.0, "ell >= 3");
            report.approximation_term = 3.0 * in.c * in.c / ell;
            report.optimization_term = 4.0 * in.c * in.c * ell * std::max(in.p, 1.0) /
                                       std::pow(Kd, 1.0 / (4.0 * (ell + 1.0) * (ell + 1.0)));
            report.generalization_term = 6.0 * in.beta * in.c * ell *
                                         std::max(in.p, euler_log(Md)) / std::pow(Md, 0.25);
            break;
        }
        case BoundVariant::TheoMain: {
            require(in.c >= std::max({1.0, 2.0 * std::abs(in.u), 2.0 * std::abs(in.v),
                                      std::abs(in.a), std::abs(in.b), in.lipschitz}),
                    "c >= max{1, 2|u|, 2|v|, |a|, |b|, L}");
            require(in.beta >= in.c, "beta >= c");
            require(in.arch.input_dim() == in.d, "l_0 = d");
            require(in.arch.output_dim() == 1, "l_L = 1");
            require(in.A > 0.0, "A > 0");
            if (in.A > std::pow(6.0, in.d)) {
                require(in.arch.depth() >=
                            2.0 + std::ceil(std::log2(in.A / (2.0 * in.d))),
                        "depth >= ceil(log2(A/2d)) + 2 when A > 6^d");
                require(in.arch.width(1) >= in.A, "l_1 >= A when A > 6^d");
                for (int i = 2; i <= in.arch.depth() - 1; ++i)
                    require(in.arch.width(i) >=
                                3.0 * std::ceil(in.A / (std::ldexp(1.0, i) * in.d)),
                            "l_i >= 3 ceil(A/(2^i d)) when A > 6^d");
            }
            report.approximation_term = 9.0 * in.d * in.d * in.lipschitz * in.lipschitz *
                                        (in.b - in.a) * (in.b - in.a) /
                                        std::pow(in.A, 2.0 / in.d);
            report.optimization_term = optimization_bound(in);
            report.generalization_term = 10.0 * std::pow(std::max(span, 1.0), 2.0) * L *
                                         std::pow(W + 1.0, 1.5) *
                                         std::max(in.p, std::log(4.0 * Md * in.beta * in.c)) /
                                         std::sqrt(Md);
            break;
        }
        case BoundVariant::CorMain:
        case BoundVariant::CorSimple: {
            check_unit_cube(in, 2.0);
            report.approximation_term =
                3.0 * in.d * in.c /
                std::pow(min_with_hidden(in.arch, std::ldexp(1.0, in.arch.depth() - 1)),
                         1.0 / in.d);
            report.optimization_term = L * std::pow(W + 1.0, L) * std::pow(in.c, L + 1.0) /
                                       std::pow(Kd, 1.0 / (2.0 * L * (W + 1.0) * (W + 1.0)));
            report.generalization_term = 4.0 * std::sqrt(in.c) * L * (W + 1.0) * euler_log(Md) /
                                         std::pow(2.0 * Md, 0.25);
            break;
        }
    }

    report.total = report.approximation_term + report.optimization_term + report.generalization_term;
    return report;
}

}  // namespace lipnet
