#include <doctest.h>

#include <cmath>

#include "lipnet/constructions.hpp"
#include "lipnet/rng.hpp"
#include "lipnet/serialize.hpp"

using namespace lipnet;

TEST_CASE("network JSON schema") {
    const StructuredNetwork net(std::vector<Layer>{Layer(Matrix(2, 1, {1.0, 2.0}), {3.0, 4.0}),
                                                   Layer(Matrix(1, 2, {5.0, 6.0}), {7.0})});
    const json j = to_json(net);
    CHECK(j["layers"].size() == 2);
    CHECK(j["layers"][0]["weights"]["rows"] == 2);
    CHECK(j["layers"][0]["weights"]["cols"] == 1);
    CHECK(j["layers"][0]["weights"]["data"] == json({1.0, 2.0}));
    CHECK(j["layers"][0]["bias"] == json({3.0, 4.0}));
    CHECK(network_from_json(j) == net);
}

TEST_CASE("round trip is bit-faithful for awkward doubles") {
    rng::Stream stream(1234);
    std::vector<double> values{0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 4.9e-324};
    for (int i = 0; i < 40; ++i)
        values.push_back(std::ldexp(stream.next_uniform(-1.0, 1.0), static_cast<int>(stream.next_unit() * 60) - 30));

    Matrix w(static_cast<int>(values.size()), 1, values);
    const StructuredNetwork net(
        std::vector<Layer>{Layer(w, std::vector<double>(values.size(), 0.0))});
    const std::string text = to_json(net).dump();
    const StructuredNetwork back = network_from_json(json::parse(text));
    REQUIRE(back.layers[0].weights.data.size() == values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        // bit-level equality, not approximate
        CHECK(std::memcmp(&back.layers[0].weights.data[i], &values[i], sizeof(double)) == 0);
    }
}

TEST_CASE("param vector JSON schema") {
    const ParamVector theta = flatten(l1_norm_net(2));
    const json j = to_json(theta);
    CHECK(j["arch"] == json({2, 4, 1}));
    CHECK(j["theta"].size() == theta.values.size());
    const ParamVector back = param_vector_from_json(j);
    CHECK(back.values == theta.values);
    CHECK(back.arch == theta.arch);
}
