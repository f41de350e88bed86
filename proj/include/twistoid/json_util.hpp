#pragma once

#include <nlohmann/json.hpp>

#include "twistoid/rational.hpp"
#include "twistoid/region.hpp"

namespace twistoid {

/// Ordered JSON keeps key insertion order so reports and exported artifacts
/// are byte-stable across runs.
using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& x) { return format_rational(x); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InvalidConfig("expected rational as \"p/q\" string");
}

/// An arc serializes as ["start","end"]; end - start == 1 denotes the whole
/// circle.
Json arc_to_json(const Arc& a);
Arc arc_from_json(const Json& j);

Json arc_product_to_json(const ArcProduct& p);
ArcProduct arc_product_from_json(const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

} // namespace twistoid
