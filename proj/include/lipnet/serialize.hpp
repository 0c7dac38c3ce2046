#pragma once

#include <string>

#include <json.hpp>

#include "lipnet/network.hpp"

// JSON interchange for networks and parameter vectors. Doubles are written
// with the shortest decimal form that round-trips, so serialize/parse is
// bit-faithful for finite values.
namespace lipnet {

using json = nlohmann::ordered_json;

json to_json(const Matrix& m);
json to_json(const StructuredNetwork& net);
json to_json(const ParamVector& theta);
json to_json(const Architecture& a);

Matrix matrix_from_json(const json& j);
StructuredNetwork network_from_json(const json& j);
ParamVector param_vector_from_json(const json& j);
Architecture architecture_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace lipnet
