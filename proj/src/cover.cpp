#include "twistoid/cover.hpp"

#include "twistoid/json_util.hpp"

namespace twistoid {

std::vector<int> Cover::indices() const {
    std::vector<int> out;
    out.reserve(charts.size());
    for (const auto& [i, _] : charts) out.push_back(i);
    return out;
}

const Region& Cover::chart(int i) const {
    auto it = charts.find(i);
    if (it == charts.end()) throw DomainError("no chart with index " + std::to_string(i));
    return it->second;
}

std::vector<int> charts_containing(const Cover& c, const TorusPoint& p) {
    std::vector<int> out;
    for (const auto& [i, region] : c.charts)
        if (region.contains(p)) out.push_back(i);
    if (out.empty()) throw EmptyResult("point not covered by any chart");
    return out;
}

CoverValidationReport cover_validate(const Cover& c) {
    CoverValidationReport report;
    if (c.charts.empty()) {
        report.covered = false;
        report.uncovered_witnesses.push_back(torus2(Rational(0), Rational(0)));
        return report;
    }
    // Cut the x-circle by every x endpoint; on each x-piece the set of active
    // y-arcs is constant, so a 1-D sweep per fiber decides coverage exactly.
    std::vector<Rational> x_cuts, y_cuts;
    for (const auto& [i, region] : c.charts) {
        auto cx = region_cuts(region, 0);
        auto cy = region_cuts(region, 1);
        x_cuts.insert(x_cuts.end(), cx.begin(), cx.end());
        y_cuts.insert(y_cuts.end(), cy.begin(), cy.end());
    }
    auto x_reps = circle_cell_representatives(std::move(x_cuts));
    auto y_reps = circle_cell_representatives(std::move(y_cuts));
    for (const auto& x : x_reps) {
        for (const auto& y : y_reps) {
            TorusPoint p = torus2(x, y);
            bool hit = false;
            for (const auto& [i, region] : c.charts)
                if (region.contains(p)) { hit = true; break; }
            if (!hit) {
                report.covered = false;
                report.uncovered_witnesses.push_back(p);
            }
        }
    }
    return report;
}

std::string cover_to_json(const Cover& c) {
    Json out;
    Json charts = Json::array();
    for (const auto& [i, region] : c.charts) {
        Json entry;
        entry["index"] = i;
        entry["arcs"] = region_to_json(region);
        charts.push_back(std::move(entry));
    }
    out["charts"] = std::move(charts);
    return out.dump();
}

Cover cover_from_json(const std::string& text) {
    Json j = Json::parse(text);
    if (!j.contains("charts")) throw InvalidConfig("cover JSON missing \"charts\"");
    Cover c;
    for (const auto& entry : j["charts"]) {
        int index = entry.at("index").get<int>();
        if (c.charts.count(index)) throw InvalidConfig("duplicate chart index");
        c.charts[index] = region_from_json(entry.at("arcs"));
    }
    return c;
}

} // namespace twistoid
