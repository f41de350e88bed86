#include "twistoid/json_util.hpp"

namespace twistoid {

Json arc_to_json(const Arc& a) {
    if (a.full) return Json::array({"0", "1"});
    return Json::array({rational_to_json(a.start), rational_to_json(a.end())});
}

Arc arc_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidConfig("arc must be [start, end]");
    Rational from = rational_from_json(j[0]);
    Rational to = rational_from_json(j[1]);
    return Arc::open(from, to);
}

Json arc_product_to_json(const ArcProduct& p) {
    Json out = Json::array();
    for (const auto& a : p.arcs) out.push_back(arc_to_json(a));
    return out;
}

ArcProduct arc_product_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidConfig("arc product must be a nonempty array");
    ArcProduct p;
    for (const auto& item : j) p.arcs.push_back(arc_from_json(item));
    return p;
}

Json region_to_json(const Region& r) {
    Json out = Json::array();
    for (const auto& p : r.pieces) out.push_back(arc_product_to_json(p));
    return out;
}

Region region_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidConfig("region must be an array of arc products");
    Region r;
    for (const auto& item : j) r.pieces.push_back(arc_product_from_json(item));
    return r;
}

} // namespace twistoid
