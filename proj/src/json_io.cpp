#include "tfg/json_io.hpp"

#include <limits>

namespace tfg {

Json int_to_json(const Int& v) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    throw precondition_error("integer too large to serialize");
  return static_cast<std::int64_t>(v);
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw parse_error("malformed integer string");
    }
  }
  throw parse_error("expected an integer");
}

Json rat_to_json(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw parse_error("expected a rational \"p/q\" string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw parse_error("malformed rational string");
  }
}

namespace {

Json int_list_to_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

std::vector<Int> int_list_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array of integers");
  std::vector<Int> out;
  for (const Json& x : j) out.push_back(int_from_json(x));
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw parse_error(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::size_t level_from_json(const Json& j) {
  const Int lv = int_from_json(j);
  if (lv < 0) throw parse_error("negative level");
  return to_index(lv);
}

}  // namespace

Json spec_to_json(const OdometerSpec& s) {
  return Json{{"head", int_list_to_json(s.head())}, {"tail", int_list_to_json(s.tail())}};
}

SpecPtr spec_from_json(const Json& j) {
  std::vector<Int> head = int_list_from_json(field(j, "head"));
  std::vector<Int> tail = int_list_from_json(field(j, "tail"));
  try {
    return make_spec(std::move(head), std::move(tail));
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

Json clopen_to_json(const ClopenSet& s) {
  return Json{{"level", s.level()}, {"residues", int_list_to_json(s.residues())}};
}

ClopenSet clopen_from_json(const Json& j, const SpecPtr& spec) {
  const std::size_t level = level_from_json(field(j, "level"));
  std::vector<Int> residues = int_list_from_json(field(j, "residues"));
  try {
    return ClopenSet(spec, level, std::move(residues));
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

Json element_to_json(const GroupElement& g) {
  return Json{{"level", g.level()}, {"cocycle", int_list_to_json(g.cocycle())}};
}

GroupElement element_from_json(const Json& j, const SpecPtr& spec) {
  const std::size_t level = level_from_json(field(j, "level"));
  std::vector<Int> table = int_list_from_json(field(j, "cocycle"));
  try {
    return GroupElement::from_cocycle(spec, level, std::move(table));
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

Json kr_to_json(const KRPartition& p) {
  Json towers = Json::array();
  for (const Tower& t : p.towers) {
    towers.push_back(Json{{"base", clopen_to_json(t.base)}, {"height", int_to_json(t.height)}});
  }
  return Json{{"towers", towers}};
}

Json prefix_to_json(const PointPrefix& p) {
  return Json{{"level", p.level}, {"residue", int_to_json(p.residue)}};
}

PointPrefix prefix_from_json(const Json& j) {
  return {level_from_json(field(j, "level")), int_from_json(field(j, "residue"))};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw parse_error(e.what());
  }
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tfg
