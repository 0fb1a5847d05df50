#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tfg/group_element.hpp"
#include "tfg/kakutani.hpp"

namespace tfg {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers; every quantity the tool serializes
// fits in 64 bits (levels stay small).  parse accepts numbers or decimal
// strings for forward compatibility.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json rat_to_json(const Rat& r);  // "p/q" string, exact
Rat rat_from_json(const Json& j);

Json spec_to_json(const OdometerSpec& s);
SpecPtr spec_from_json(const Json& j);

Json clopen_to_json(const ClopenSet& s);
ClopenSet clopen_from_json(const Json& j, const SpecPtr& spec);

Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const Json& j, const SpecPtr& spec);

Json kr_to_json(const KRPartition& p);

Json prefix_to_json(const PointPrefix& p);
PointPrefix prefix_from_json(const Json& j);

/// Parses text as JSON, mapping syntax errors to parse_error.
Json parse_json(const std::string& text);

/// Canonical serialization used for files and stdout: 2-space indent,
/// sorted keys via nlohmann's ordered output, trailing newline.
std::string dump_canonical(const Json& j);

}  // namespace tfg
