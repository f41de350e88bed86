#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistoid/region.hpp"

namespace twistoid {

/// Finite indexed open cover of the 2-torus by arc-product regions.
/// Indices are totally ordered; the order is what canonical-representative
/// selection elsewhere relies on.
struct Cover {
    std::map<int, Region> charts;

    std::vector<int> indices() const;
    const Region& chart(int i) const;
    std::size_t dim() const { return 2; }
};

/// All chart indices containing p, in index order. Throws EmptyResult when
/// no chart contains p (i.e. the data is not a cover at p).
std::vector<int> charts_containing(const Cover& c, const TorusPoint& p);

struct CoverValidationReport {
    bool covered = true;
    std::vector<TorusPoint> uncovered_witnesses;
};

/// Exact cover check: sweeps the cell decomposition induced by all arc
/// endpoints, one y-fiber per x-piece, and records uncovered witnesses.
CoverValidationReport cover_validate(const Cover& c);

std::string cover_to_json(const Cover& c);
Cover cover_from_json(const std::string& text);

} // namespace twistoid
