#include <doctest.h>

#include <cmath>

#include "lipnet/algebra.hpp"
#include "lipnet/constructions.hpp"
#include "lipnet/rng.hpp"

using namespace lipnet;

namespace {

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

std::vector<int> random_dims(rng::Stream& stream, int in_dim, int out_dim) {
    std::vector<int> dims{in_dim};
    const int hidden = static_cast<int>(stream.next_unit() * 3);
    for (int i = 0; i < hidden; ++i) dims.push_back(1 + static_cast<int>(stream.next_unit() * 6));
    dims.push_back(out_dim);
    return dims;
}

}  // namespace

TEST_CASE("compose: architecture arithmetic") {
    rng::Stream stream(101);
    const StructuredNetwork f = random_net({2, 3, 1}, stream);
    const StructuredNetwork g = random_net({4, 5, 2}, stream);
    const StructuredNetwork fg = compose(f, g);
    CHECK(arch_of(fg).dims == std::vector<int>{4, 5, 3, 1});
    CHECK(fg.depth() == f.depth() + g.depth() - 1);

    CHECK_THROWS_AS(compose(g, f), std::invalid_argument);  // interface mismatch
}

TEST_CASE("compose: single layers merge into one affine map") {
    const StructuredNetwork f(std::vector<Layer>{Layer(Matrix(1, 2, {1.0, 2.0}), {3.0})});
    const StructuredNetwork g(std::vector<Layer>{Layer(Matrix(2, 1, {4.0, 5.0}), {6.0, 7.0})});
    const StructuredNetwork fg = compose(f, g);
    REQUIRE(fg.depth() == 1);
    // W = W_1 * frak W_1, B = W_1 frak B_1 + B_1
    CHECK(fg.layers[0].weights.data == std::vector<double>{1.0 * 4 + 2 * 5});
    CHECK(fg.layers[0].bias == std::vector<double>{1.0 * 6 + 2 * 7 + 3});
}

TEST_CASE("compose: realization composes for any activation") {
    rng::Stream stream(303);
    const std::vector<Activation> acts{Activation::rectifier(), Activation::identity(),
                                       Activation::clip(-0.5, 0.5)};
    for (int trial = 0; trial < 100; ++trial) {
        const int mid = 1 + static_cast<int>(stream.next_unit() * 4);
        const int in = 1 + static_cast<int>(stream.next_unit() * 4);
        const int out = 1 + static_cast<int>(stream.next_unit() * 4);
        const StructuredNetwork f = random_net(random_dims(stream, mid, out), stream);
        const StructuredNetwork g = random_net(random_dims(stream, in, mid), stream);
        const StructuredNetwork fg = compose(f, g);
        for (const Activation& a : acts) {
            const std::vector<double> x = random_input(in, stream);
            const std::vector<double> expect = realize(f, a, realize(g, a, x));
            const std::vector<double> got = realize(fg, a, x);
            REQUIRE(expect.size() == got.size());
            for (size_t i = 0; i < got.size(); ++i) CHECK(std::abs(expect[i] - got[i]) <= 1e-12);
        }
    }
}

TEST_CASE("compose: associativity is layer-wise exact") {
    // Both associations produce the same layer structure; entries agree up
    // to reassociation rounding of the merged matrix products (bitwise when
    // the middle factor has depth > 1, where no product is reassociated).
    rng::Stream stream(404);
    for (int trial = 0; trial < 40; ++trial) {
        const int d1 = 1 + static_cast<int>(stream.next_unit() * 3);
        const int d2 = 1 + static_cast<int>(stream.next_unit() * 3);
        const int d3 = 1 + static_cast<int>(stream.next_unit() * 3);
        const int d4 = 1 + static_cast<int>(stream.next_unit() * 3);
        const StructuredNetwork f = random_net(random_dims(stream, d2, d1), stream);
        const StructuredNetwork g = random_net(random_dims(stream, d3, d2), stream);
        const StructuredNetwork h = random_net(random_dims(stream, d4, d3), stream);
        const StructuredNetwork left = compose(compose(f, g), h);
        const StructuredNetwork right = compose(f, compose(g, h));
        REQUIRE(arch_of(left) == arch_of(right));
        if (g.depth() > 1) {
            CHECK(left == right);
        } else {
            for (size_t k = 0; k < left.layers.size(); ++k) {
                const Layer& a = left.layers[k];
                const Layer& b = right.layers[k];
                for (size_t i = 0; i < a.weights.data.size(); ++i)
                    CHECK(std::abs(a.weights.data[i] - b.weights.data[i]) <= 1e-12);
                for (size_t i = 0; i < a.bias.size(); ++i)
                    CHECK(std::abs(a.bias[i] - b.bias[i]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("compose never mutates inputs") {
    rng::Stream stream(505);
    const StructuredNetwork f = random_net({3, 2}, stream);
    const StructuredNetwork g = random_net({1, 4, 3}, stream);
    const StructuredNetwork f_copy = f, g_copy = g;
    (void)compose(f, g);
    CHECK(f == f_copy);
    CHECK(g == g_copy);
}

TEST_CASE("parallelize: shapes and tuple evaluation") {
    rng::Stream stream(606);
    const StructuredNetwork m2 = max_net(2);
    const StructuredNetwork pair = parallelize({m2, m2});
    CHECK(arch_of(pair).dims == std::vector<int>{4, 6, 2});

    const StructuredNetwork single = parallelize({m2});
    CHECK(single == m2);

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<StructuredNetwork> nets;
        const int n = 1 + static_cast<int>(stream.next_unit() * 3);
        const int depth = 1 + static_cast<int>(stream.next_unit() * 3);
        std::vector<std::vector<double>> inputs;
        for (int i = 0; i < n; ++i) {
            std::vector<int> dims;
            for (int j = 0; j <= depth; ++j) dims.push_back(1 + static_cast<int>(stream.next_unit() * 4));
            nets.push_back(random_net(dims, stream));
            inputs.push_back(random_input(dims.front(), stream));
        }
        const StructuredNetwork block = parallelize(nets);

        std::vector<double> joint;
        for (const auto& x : inputs) joint.insert(joint.end(), x.begin(), x.end());
        const std::vector<double> got = realize(block, Activation::rectifier(), joint);

        std::vector<double> expect;
        for (int i = 0; i < n; ++i) {
            const std::vector<double> yi = realize(nets[static_cast<size_t>(i)], Activation::rectifier(),
                                                   inputs[static_cast<size_t>(i)]);
            expect.insert(expect.end(), yi.begin(), yi.end());
        }
        REQUIRE(got.size() == expect.size());
        for (size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expect[i]) <= 1e-12);
    }

    const StructuredNetwork deep = random_net({1, 2, 1}, stream);
    const StructuredNetwork shallow = random_net({1, 1}, stream);
    CHECK_THROWS_AS(parallelize({deep, shallow}), std::invalid_argument);
}

TEST_CASE("affine_net") {
    const StructuredNetwork id3 = affine_net(Matrix::identity(3), {0.0, 0.0, 0.0});
    CHECK(arch_of(id3).dims == std::vector<int>{3, 3});
    CHECK(realize(id3, Activation::rectifier(), {1.0, -2.0, 0.5}) ==
          std::vector<double>{1.0, -2.0, 0.5});

    const StructuredNetwork scalar = affine_net(Matrix(1, 1, {2.0}), {1.0});
    CHECK(realize(scalar, Activation::rectifier(), {3.0})[0] == doctest::Approx(7.0));

    Matrix w(2, 3);
    CHECK(arch_of(affine_net(w, {0.0, 0.0})).dims == std::vector<int>{3, 2});
    CHECK_THROWS_AS(affine_net(w, {0.0}), std::invalid_argument);
}

TEST_CASE("sum_net") {
    CHECK(realize(sum_net(1, 3), Activation::rectifier(), {1.0, 2.0, 3.0})[0] == doctest::Approx(6.0));
    CHECK(realize(sum_net(2, 2), Activation::rectifier(), {1.0, 0.0, 0.0, 1.0}) ==
          std::vector<double>{1.0, 1.0});
    CHECK(arch_of(sum_net(3, 4)).dims == std::vector<int>{12, 3});
}

TEST_CASE("concat_net") {
    CHECK(realize(concat_net(2, 1), Activation::rectifier(), {5.0}) == std::vector<double>{5.0, 5.0});
    CHECK(arch_of(concat_net(3, 4)).dims == std::vector<int>{4, 12});

    // sum of m copies realizes x -> m x
    rng::Stream stream(707);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + static_cast<int>(stream.next_unit() * 4);
        const int n = 1 + static_cast<int>(stream.next_unit() * 4);
        const StructuredNetwork scaled = compose(sum_net(n, m), concat_net(m, n));
        const std::vector<double> x = random_input(n, stream);
        const std::vector<double> y = realize(scaled, Activation::rectifier(), x);
        for (int i = 0; i < n; ++i)
            CHECK(y[static_cast<size_t>(i)] == doctest::Approx(m * x[static_cast<size_t>(i)]));
    }
}

TEST_CASE("identity_net") {
    const StructuredNetwork id = identity_net();
    CHECK(arch_of(id).dims == std::vector<int>{1, 2, 1});
    CHECK(realize(id, Activation::rectifier(), {-3.0})[0] == doctest::Approx(-3.0));
    CHECK(realize(id, Activation::rectifier(), {0.0})[0] == doctest::Approx(0.0));
    CHECK(realize(id, Activation::rectifier(), {2.5})[0] == doctest::Approx(2.5));
}
