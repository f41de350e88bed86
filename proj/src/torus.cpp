#include "twistoid/torus.hpp"

namespace twistoid {

GroupValue GroupValue::cyclic(std::int64_t residue, std::int64_t m) {
    if (m <= 0) throw InvalidConfig("cyclic group modulus must be positive");
    return {m, Phase(Rational(residue, m))};
}

GroupValue GroupValue::operator*(const GroupValue& o) const {
    if (modulus != o.modulus)
        throw ContextMismatch("group values from different groups");
    return {modulus, phase + o.phase};
}

TorusPoint::TorusPoint(std::vector<Rational> c, std::vector<bool> circ)
    : coords(std::move(c)), circular(std::move(circ)) {
    if (!circular.empty() && circular.size() != coords.size())
        throw InvalidConfig("circular flag count does not match dimension");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (circular.empty() || circular[i]) coords[i] = reduce_mod1(coords[i]);
    }
}

TorusPoint AffineTorusMap::apply(const TorusPoint& p) const {
    if (p.dim() != dim()) throw ContextMismatch("point/map dimension mismatch");
    std::vector<Rational> out(p.coords);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += translation[i];
    return TorusPoint(std::move(out), p.circular);
}

AffineTorusMap AffineTorusMap::inverse() const {
    AffineTorusMap inv;
    inv.translation.reserve(translation.size());
    for (const auto& t : translation) inv.translation.push_back(-t);
    return inv;
}

TorusPoint map_power(const AffineTorusMap& alpha, std::int64_t n, const TorusPoint& p) {
    if (n == 0) return p;
    if (p.dim() != alpha.dim()) throw ContextMismatch("point/map dimension mismatch");
    std::vector<Rational> out(p.coords);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha.translation[i] * n;
    return TorusPoint(std::move(out), p.circular);
}

} // namespace twistoid
