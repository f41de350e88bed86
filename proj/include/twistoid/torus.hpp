#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <numbers>
#include <vector>

#include "twistoid/rational.hpp"

namespace twistoid {

/// A point of the circle group written additively: the class of `value` in
/// R/Z, representing e(value) = exp(2*pi*i*value).
struct Phase {
    Rational value; // in [0,1)

    Phase() : value(0) {}
    explicit Phase(const Rational& v) : value(reduce_mod1(v)) {}

    Phase operator+(const Phase& o) const { return Phase(value + o.value); }
    Phase operator-() const { return Phase(-value); }
    Phase operator-(const Phase& o) const { return Phase(value - o.value); }
    Phase operator*(std::int64_t k) const { return Phase(value * k); }

    bool operator==(const Phase& o) const { return value == o.value; }
    std::strong_ordering operator<=>(const Phase& o) const {
        return rational_compare(value, o.value);
    }

    bool is_identity() const { return value.numerator() == 0; }

    /// exp(2*pi*i*value)
    std::complex<double> unit() const {
        double t = 2.0 * std::numbers::pi * to_double(value);
        return {std::cos(t), std::sin(t)};
    }
};

/// Element of the structure group: the circle T (modulus == 0) or a finite
/// cyclic group Z_m (modulus == m), stored as a phase r/m. Cyclic groups are
/// only used at the groupoid level, never for function algebras.
struct GroupValue {
    std::int64_t modulus = 0; // 0 means T
    Phase phase;

    GroupValue() = default;
    static GroupValue circle(const Phase& p) { return {0, p}; }
    static GroupValue circle(const Rational& v) { return {0, Phase(v)}; }
    static GroupValue cyclic(std::int64_t residue, std::int64_t m);
    static GroupValue identity_like(const GroupValue& g) { return {g.modulus, Phase()}; }

    bool is_identity() const { return phase.is_identity(); }

    GroupValue operator*(const GroupValue& o) const;
    GroupValue inverse() const { return {modulus, -phase}; }

    bool operator==(const GroupValue& o) const = default;
    std::strong_ordering operator<=>(const GroupValue& o) const {
        if (auto c = modulus <=> o.modulus; c != 0) return c;
        return phase <=> o.phase;
    }

    /// Unit complex value; only meaningful for the circle group.
    std::complex<double> unit() const { return phase.unit(); }
};

/// Exact point of a torus. Coordinates flagged circular are reduced mod 1 on
/// construction; a non-circular coordinate lives on the real line (used for
/// points of R x T).
struct TorusPoint {
    std::vector<Rational> coords;
    std::vector<bool> circular; // per coordinate; empty means all circular

    TorusPoint() = default;
    explicit TorusPoint(std::vector<Rational> c, std::vector<bool> circ = {});

    std::size_t dim() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }

    bool operator==(const TorusPoint& o) const { return coords == o.coords; }
    std::strong_ordering operator<=>(const TorusPoint& o) const {
        if (auto c = coords.size() <=> o.coords.size(); c != 0) return c;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (auto c = rational_compare(coords[i], o.coords[i]); c != 0) return c;
        return std::strong_ordering::equal;
    }
};

inline TorusPoint torus2(const Rational& x, const Rational& y) {
    return TorusPoint({x, y});
}

/// Affine self-map of the torus. Only translations occur here; they are
/// invertible and commute with mod-1 reduction.
struct AffineTorusMap {
    std::vector<Rational> translation;

    std::size_t dim() const { return translation.size(); }

    TorusPoint apply(const TorusPoint& p) const;
    AffineTorusMap inverse() const;

    bool operator==(const AffineTorusMap& o) const = default;
};

/// alpha^n applied to p; exact for any integer n, identity for n == 0.
TorusPoint map_power(const AffineTorusMap& alpha, std::int64_t n, const TorusPoint& p);

} // namespace twistoid
