#pragma once

#include "mirror_torus/cech.hpp"
#include "mirror_torus/complexes.hpp"
#include "mirror_torus/mirror.hpp"

#include <json.hpp>

namespace mtorus {

using Json = nlohmann::ordered_json;

Json to_json(const RatMatrix& m);
RatMatrix rat_matrix_from_json(const Json& j);

Json to_json(const BoundedComplex& x);
BoundedComplex complex_from_json(const Json& j);
Json to_json(const ChainMap& f);
ChainMap chain_map_from_json(const Json& j);

Json to_json(const CoverModel& m);
CoverModel cover_model_from_json(const Json& j);

Json to_json(const QSeries& s);
Json to_json(const FourierQSeries& s);

Json to_json(const SheafObject& e);
SheafObject sheaf_object_from_json(const Json& j);

Json to_json(const LagrangianObject& l);
LagrangianObject lagrangian_from_json(const Json& j);

Json to_json(const MirrorReport& r, const SheafObject& e0, const SheafObject& e1,
             const SheafObject& e2);

}  // namespace mtorus
