#include <doctest.h>

#include <cmath>

#include "lipnet/algebra.hpp"
#include "lipnet/constructions.hpp"
#include "lipnet/network.hpp"
#include "lipnet/rng.hpp"

using namespace lipnet;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

StructuredNetwork random_net(const std::vector<int>& dims, rng::Stream& stream) {
    std::vector<Layer> layers;
    for (size_t k = 1; k < dims.size(); ++k) {
        Matrix w(dims[k], dims[k - 1]);
        for (double& v : w.data) v = stream.next_uniform(-2.0, 2.0);
        std::vector<double> b(static_cast<size_t>(dims[k]));
        for (double& v : b) v = stream.next_uniform(-2.0, 2.0);
        layers.emplace_back(std::move(w), std::move(b));
    }
    return StructuredNetwork(std::move(layers));
}

std::vector<double> random_input(int d, rng::Stream& stream) {
    std::vector<double> x(static_cast<size_t>(d));
    for (double& v : x) v = stream.next_uniform(-2.0, 2.0);
    return x;
}

}  // namespace

TEST_CASE("p-norms") {
    CHECK(norm({3.0, -4.0}, 1.0) == doctest::Approx(7.0));
    CHECK(norm({3.0, -4.0}, kInf) == doctest::Approx(4.0));
    CHECK(norm({3.0, -4.0}, 2.0) == doctest::Approx(5.0));  // sqrt(9 + 16)
    CHECK(norm({1.0, 1.0, 1.0}, 3.0) == doctest::Approx(std::pow(3.0, 1.0 / 3.0)));
    CHECK_THROWS_AS(norm({1.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(norm({}, 2.0), std::invalid_argument);
}

TEST_CASE("componentwise activations") {
    CHECK(activation_apply(Activation::rectifier(), {-1.0, 2.0}) == std::vector<double>{0.0, 2.0});
    CHECK(activation_apply(Activation::clip(0.0, 1.0), {-0.5, 0.5, 2.0}) ==
          std::vector<double>{0.0, 0.5, 1.0});
    CHECK(activation_apply(Activation::identity(), {7.0}) == std::vector<double>{7.0});
    // clip with infinite bounds is the identity
    CHECK(activation_apply(Activation::clip(ClipBounds()), {-3.0, 9.0}) ==
          std::vector<double>{-3.0, 9.0});
}

TEST_CASE("architecture accessors") {
    rng::Stream stream(7);
    const StructuredNetwork net = random_net({2, 3, 1}, stream);
    const Architecture a = arch_of(net);
    CHECK(a.dims == std::vector<int>{2, 3, 1});
    CHECK(a.depth() == 2);
    CHECK(a.hidden_layers() == 1);
    CHECK(a.input_dim() == 2);
    CHECK(a.output_dim() == 1);
    CHECK(a.param_count() == 3 * 3 + 1 * 4);
    CHECK(a.width(1) == 3);
    CHECK(a.width(5) == 0);

    // single-layer 1x1 net: smallest possible
    const StructuredNetwork tiny(std::vector<Layer>{Layer(Matrix(1, 1, {2.0}), {0.5})});
    CHECK(arch_of(tiny).dims == std::vector<int>{1, 1});
    CHECK(arch_of(tiny).param_count() == 2);

    // out-of-range weight/bias accessors are typed-absent
    CHECK(net.weight(1).has_value());
    CHECK_FALSE(net.weight(3).has_value());
    CHECK_FALSE(net.bias(0).has_value());
}

TEST_CASE("l1 net architecture and parameter count") {
    const StructuredNetwork l3 = l1_norm_net(3);
    const Architecture a = arch_of(l3);
    CHECK(a.dims == std::vector<int>{3, 6, 1});
    CHECK(a.param_count() == 6 * 4 + 1 * 7);  // 31
}

TEST_CASE("realize") {
    CHECK(realize(identity_net(), Activation::rectifier(), {-3.0})[0] == doctest::Approx(-3.0));

    const StructuredNetwork m2 = max_net(2);
    CHECK(realize(m2, Activation::rectifier(), {1.0, 5.0})[0] == doctest::Approx(5.0));

    // zero input and zero biases give zero output
    rng::Stream stream(11);
    StructuredNetwork net = random_net({3, 4, 2}, stream);
    for (Layer& l : net.layers) std::fill(l.bias.begin(), l.bias.end(), 0.0);
    const std::vector<double> out = realize(net, Activation::rectifier(), {0.0, 0.0, 0.0});
    for (double v : out) CHECK(v == doctest::Approx(0.0));

    CHECK_THROWS_AS(realize(net, Activation::rectifier(), {1.0}), std::invalid_argument);
}

TEST_CASE("affine_eval layout") {
    CHECK(affine_eval({1, 2, 3, 4, 5, 6}, 0, 2, 2, {1.0, 1.0}) == std::vector<double>{8.0, 13.0});
    CHECK(affine_eval({0, 0, 0, 0, 0, 0}, 0, 2, 2, {3.0, -1.0}) == std::vector<double>{0.0, 0.0});
    CHECK(affine_eval({1, 0, 0, 1, 0, 0}, 0, 2, 2, {0.25, -9.0}) ==
          std::vector<double>{0.25, -9.0});
    CHECK_THROWS_AS(affine_eval({1, 2, 3}, 0, 2, 2, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("realize_clipped") {
    const StructuredNetwork m2 = max_net(2);
    const ParamVector theta = flatten(m2);
    CHECK(realize_clipped(theta, ClipBounds(), {1.0, 5.0})[0] == doctest::Approx(5.0));
    CHECK(realize_clipped(theta, ClipBounds(0.0, 1.0), {1.0, 3.0})[0] == doctest::Approx(1.0));

    // zero parameters, clip [0,1]: constantly 0
    const std::vector<double> zero(static_cast<size_t>(theta.arch.param_count()), 0.0);
    CHECK(realize_clipped(zero, theta.arch, ClipBounds(0.0, 1.0), {0.3, -2.0})[0] ==
          doctest::Approx(0.0));
}

TEST_CASE("flatten layout and roundtrip") {
    // W1 = ((1),(2)), B1 = (3,4), W2 = ((5,6)), B2 = (7)
    const StructuredNetwork net(std::vector<Layer>{Layer(Matrix(2, 1, {1.0, 2.0}), {3.0, 4.0}),
                                                   Layer(Matrix(1, 2, {5.0, 6.0}), {7.0})});
    const ParamVector theta = flatten(net);
    CHECK(theta.values == std::vector<double>{1, 2, 3, 4, 5, 6, 7});
    CHECK(theta.arch.dims == std::vector<int>{1, 2, 1});

    CHECK(unflatten(theta) == net);

    const StructuredNetwork zero(std::vector<Layer>{Layer(Matrix(1, 1, {0.0}), {0.0})});
    CHECK(flatten(zero).values == std::vector<double>{0.0, 0.0});

    // surplus entries are ignored
    std::vector<double> padded = theta.values;
    padded.push_back(99.0);
    CHECK(unflatten(ParamVector(padded, theta.arch)) == net);

    // flatten(unflatten(theta)) recovers the first P entries
    CHECK(flatten(unflatten(ParamVector(padded, theta.arch))).values == theta.values);

    // all-zero theta unflattens to all-zero layers
    const Architecture a231({2, 3, 1});
    const StructuredNetwork z = unflatten(std::vector<double>(13, 0.0), a231);
    for (const Layer& l : z.layers) {
        for (double v : l.weights.data) CHECK(v == 0.0);
        for (double v : l.bias) CHECK(v == 0.0);
    }
}

TEST_CASE("structured/vectorized equivalence") {
    rng::Stream stream(23);
    const std::vector<ClipBounds> bounds{ClipBounds(), ClipBounds(0.0, 1.0), ClipBounds(-1.0, 3.0)};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<int> dims;
        const int depth = 1 + static_cast<int>(stream.next_unit() * 4);
        for (int i = 0; i <= depth; ++i) dims.push_back(1 + static_cast<int>(stream.next_unit() * 6));
        const StructuredNetwork net = random_net(dims, stream);
        const ParamVector theta = flatten(net);
        for (const ClipBounds& cb : bounds) {
            const std::vector<double> x = random_input(dims.front(), stream);
            const std::vector<double> direct =
                activation_apply(Activation::clip(cb), realize(net, Activation::rectifier(), x));
            const std::vector<double> vect = realize_clipped(theta, cb, x);
            REQUIRE(direct.size() == vect.size());
            for (size_t i = 0; i < direct.size(); ++i)
                CHECK(std::abs(direct[i] - vect[i]) <= 1e-12);
        }
    }
}

TEST_CASE("embed preserves realization") {
    rng::Stream stream(37);

    SUBCASE("widening only") {
        const StructuredNetwork net = random_net({1, 3, 1}, stream);
        const StructuredNetwork wide = embed(net, Architecture({1, 5, 1}));
        CHECK(arch_of(wide).dims == std::vector<int>{1, 5, 1});
        for (int t = 0; t < 100; ++t) {
            const std::vector<double> x = random_input(1, stream);
            CHECK(std::abs(realize(wide, Activation::rectifier(), x)[0] -
                           realize(net, Activation::rectifier(), x)[0]) <= 1e-12);
        }
    }

    SUBCASE("depth extension") {
        const StructuredNetwork net = random_net({1, 3, 1}, stream);
        const StructuredNetwork deep = embed(net, Architecture({1, 3, 2, 1}));
        CHECK(arch_of(deep).dims == std::vector<int>{1, 3, 2, 1});
        for (int t = 0; t < 100; ++t) {
            const std::vector<double> x = random_input(1, stream);
            CHECK(std::abs(realize(deep, Activation::rectifier(), x)[0] -
                           realize(net, Activation::rectifier(), x)[0]) <= 1e-12);
        }
    }

    SUBCASE("no-op embed is layer-wise identical") {
        const StructuredNetwork net = random_net({2, 4, 3}, stream);
        CHECK(embed(net, arch_of(net)) == net);
    }

    SUBCASE("rejections") {
        const StructuredNetwork net = random_net({2, 4, 3}, stream);
        // multi-output depth extension is unsupported
        CHECK_THROWS_AS(embed(net, Architecture({2, 4, 6, 3})), std::invalid_argument);
        // narrowing is not an embedding
        CHECK_THROWS_AS(embed(net, Architecture({2, 3, 3})), std::invalid_argument);
        // interface mismatch
        CHECK_THROWS_AS(embed(net, Architecture({3, 4, 3})), std::invalid_argument);
    }
}
