#ifndef TUBESTAB_JSON_IO_HPP
#define TUBESTAB_JSON_IO_HPP

#include <json.hpp>

#include "tubestab/detrep.hpp"

namespace tubestab {

using json = nlohmann::json;

inline constexpr const char* kSchemaTag = "tubestab/1";

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const json& j);

json domain_to_json(const DomainSpec& spec);
DomainSpec domain_from_json(const json& j);

json structure_to_json(const StructureMap& sm);
StructureMap structure_from_json(const json& j);

json detrep_to_json(const DetRep& rep);
DetRep detrep_from_json(const json& j);

// round every float to 12 significant digits so reruns emit identical bytes
json round_floats(const json& j, int significant = 12);

}  // namespace tubestab

#endif
