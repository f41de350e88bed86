#include "twistoid/region.hpp"

#include <algorithm>

namespace twistoid {

Arc Arc::open(const Rational& from, const Rational& to) {
    Rational len = to - from;
    if (len <= 0) throw InvalidConfig("arc must have positive length");
    if (len > 1) throw InvalidConfig("arc longer than the circle");
    if (len == 1) return whole();
    return Arc{false, reduce_mod1(from), len};
}

bool Arc::contains(const Rational& x) const {
    if (full) return true;
    Rational t = reduce_mod1(x - start);
    return t > 0 && t < length;
}

Arc Arc::translated(const Rational& shift) const {
    if (full) return *this;
    return Arc{false, reduce_mod1(start + shift), length};
}

std::vector<Arc> arc_intersect(const Arc& a, const Arc& b) {
    if (a.full) return {b};
    if (b.full) return {a};
    // Work on the line: lift b near a's window [a.start, a.start + a.length].
    // Candidate lifts of b differ by integers; two can meet the window.
    std::vector<Arc> out;
    Rational delta = reduce_mod1(b.start - a.start); // b.start = a.start + delta + Z
    for (int k = -1; k <= 0; ++k) {
        Rational lo = delta + k;                 // b's start relative to a's start
        Rational hi = lo + b.length;
        Rational s = std::max(Rational(0), lo);
        Rational e = std::min(a.length, hi);
        if (s < e) out.push_back(Arc{false, reduce_mod1(a.start + s), e - s});
    }
    return out;
}

bool ArcProduct::contains(const TorusPoint& p) const {
    if (p.dim() != dim()) throw ContextMismatch("point/region dimension mismatch");
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (!arcs[i].contains(reduce_mod1(p.coords[i]))) return false;
    return true;
}

ArcProduct ArcProduct::translated(const std::vector<Rational>& shift) const {
    if (shift.size() != dim()) throw ContextMismatch("shift/region dimension mismatch");
    ArcProduct out;
    out.arcs.reserve(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) out.arcs.push_back(arcs[i].translated(shift[i]));
    return out;
}

Region Region::whole(std::size_t dim) {
    ArcProduct box;
    box.arcs.assign(dim, Arc::whole());
    return Region{{box}};
}

bool Region::contains(const TorusPoint& p) const {
    for (const auto& piece : pieces)
        if (piece.contains(p)) return true;
    return false;
}

Region Region::translated(const std::vector<Rational>& shift) const {
    Region out;
    out.pieces.reserve(pieces.size());
    for (const auto& piece : pieces) out.pieces.push_back(piece.translated(shift));
    return out;
}

Region region_intersect(const Region& a, const Region& b) {
    Region out;
    for (const auto& pa : a.pieces) {
        for (const auto& pb : b.pieces) {
            if (pa.dim() != pb.dim()) throw ContextMismatch("region dimension mismatch");
            // Per-dimension intersections, then the cross product of choices.
            std::vector<std::vector<Arc>> options(pa.dim());
            bool dead = false;
            for (std::size_t i = 0; i < pa.dim() && !dead; ++i) {
                options[i] = arc_intersect(pa.arcs[i], pb.arcs[i]);
                dead = options[i].empty();
            }
            if (dead) continue;
            std::vector<std::size_t> pick(pa.dim(), 0);
            while (true) {
                ArcProduct box;
                box.arcs.reserve(pa.dim());
                for (std::size_t i = 0; i < pa.dim(); ++i) box.arcs.push_back(options[i][pick[i]]);
                out.pieces.push_back(std::move(box));
                std::size_t d = 0;
                for (; d < pa.dim(); ++d) {
                    if (++pick[d] < options[d].size()) break;
                    pick[d] = 0;
                }
                if (d == pa.dim()) break;
            }
        }
    }
    return out;
}

Region region_union(Region a, const Region& b) {
    a.pieces.insert(a.pieces.end(), b.pieces.begin(), b.pieces.end());
    return a;
}

std::vector<Rational> circle_cell_representatives(std::vector<Rational> cuts) {
    for (auto& c : cuts) c = reduce_mod1(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) return {Rational(0)};
    std::vector<Rational> reps;
    reps.reserve(2 * cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        reps.push_back(cuts[i]);
        Rational next = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts.front() + 1;
        if (next > cuts[i]) reps.push_back(reduce_mod1((cuts[i] + next) / 2));
    }
    return reps;
}

std::vector<Rational> region_cuts(const Region& r, std::size_t dim_index) {
    std::vector<Rational> cuts;
    for (const auto& piece : r.pieces) {
        const Arc& a = piece.arcs.at(dim_index);
        if (a.full) continue;
        cuts.push_back(a.start);
        cuts.push_back(reduce_mod1(a.end()));
    }
    return cuts;
}

namespace {

// Representatives of the cell decomposition induced by both regions' cuts.
std::vector<TorusPoint> joint_cell_points(const Region& a, const Region& b, std::size_t dim) {
    std::vector<std::vector<Rational>> axis_reps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Rational> cuts = region_cuts(a, i);
        auto more = region_cuts(b, i);
        cuts.insert(cuts.end(), more.begin(), more.end());
        axis_reps[i] = circle_cell_representatives(std::move(cuts));
    }
    std::vector<TorusPoint> points;
    std::vector<std::size_t> pick(dim, 0);
    while (true) {
        std::vector<Rational> coords(dim);
        for (std::size_t i = 0; i < dim; ++i) coords[i] = axis_reps[i][pick[i]];
        points.emplace_back(std::move(coords));
        std::size_t d = 0;
        for (; d < dim; ++d) {
            if (++pick[d] < axis_reps[d].size()) break;
            pick[d] = 0;
        }
        if (d == dim) break;
    }
    return points;
}

} // namespace

bool region_is_empty(const Region& r) {
    if (r.pieces.empty()) return true;
    for (const auto& p : joint_cell_points(r, Region{}, r.dim()))
        if (r.contains(p)) return false;
    return true;
}

bool region_contains_region(const Region& outer, const Region& inner) {
    if (inner.pieces.empty()) return true;
    std::size_t dim = inner.dim();
    for (const auto& p : joint_cell_points(outer, inner, dim))
        if (inner.contains(p) && !outer.contains(p)) return false;
    return true;
}

} // namespace twistoid
