#include "lipnet/serialize.hpp"

#include <fstream>

namespace lipnet {

json to_json(const Matrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

json to_json(const StructuredNetwork& net) {
    json layers = json::array();
    for (const Layer& l : net.layers)
        layers.push_back(json{{"weights", to_json(l.weights)}, {"bias", l.bias}});
    return json{{"layers", std::move(layers)}};
}

json to_json(const ParamVector& theta) {
    return json{{"arch", theta.arch.dims}, {"theta", theta.values}};
}

json to_json(const Architecture& a) { return json(a.dims); }

Matrix matrix_from_json(const json& j) {
    return Matrix(j.at("rows").get<int>(), j.at("cols").get<int>(),
                  j.at("data").get<std::vector<double>>());
}

StructuredNetwork network_from_json(const json& j) {
    std::vector<Layer> layers;
    for (const json& l : j.at("layers"))
        layers.emplace_back(matrix_from_json(l.at("weights")), l.at("bias").get<std::vector<double>>());
    return StructuredNetwork(std::move(layers));
}

ParamVector param_vector_from_json(const json& j) {
    return ParamVector(j.at("theta").get<std::vector<double>>(),
                       Architecture(j.at("arch").get<std::vector<int>>()));
}

Architecture architecture_from_json(const json& j) {
    return Architecture(j.get<std::vector<int>>());
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace lipnet
