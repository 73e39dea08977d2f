#pragma once

// Hand-built models shared by the unit suites and the acceptance binary.

#include <string>

#include <json.hpp>

#include "seshadri/models.hpp"

namespace fixtures {

using nlohmann::ordered_json;

/// Canonical document of a model, as mutable JSON.
inline ordered_json doc(const seshadri::SurfaceModel& m) { return seshadri::to_json(m); }

inline seshadri::SurfaceModel load(const ordered_json& j) { return seshadri::load_model(j.dump()); }

/*
 * F1 with the line H - E through the generic point dropped from the curve
 * table.  The nef path still sees it, so the two characterizations disagree.
 */
inline ordered_json f1_missing_line()
{
    auto j = doc(seshadri::f1_anticanonical());
    j["name"] = "f1_missing_line";
    auto& cands = j["strata"][0]["candidates"];
    ordered_json kept = ordered_json::array();
    for (const auto& c : cands)
        if (c["label"] != "H-E")
            kept.push_back(c);
    cands = kept;
    return j;
}

/*
 * Rank-1 lattice [[2]], L = 2H, d = 8.  The generic stratum has epsilon 2
 * while the special point claims sqrt(8): semicontinuity fails.
 */
inline ordered_json inverted_strata()
{
    ordered_json c{{"label", "conic"}, {"class", {1}}, {"t", 4}, {"m", 2}};
    ordered_json generic{{"label", "generic"},
                         {"closure_dim", 2},
                         {"specializes_from", ordered_json::array()},
                         {"oracle_complete_below", "2"},
                         {"candidates", {c}}};
    ordered_json special{{"label", "special"},
                         {"closure_dim", 0},
                         {"specializes_from", {"generic"}},
                         {"oracle_complete_below", "3"},
                         {"candidates", ordered_json::array()}};
    return ordered_json{{"schema_version", 1},
                        {"name", "inverted_strata"},
                        {"rank", 1},
                        {"gram", {{2}}},
                        {"basis_labels", {"H"}},
                        {"polarization", {2}},
                        {"rr", {{"d", 8}, {"c", 4}, {"c_prime", 1}, {"vanishing_multiplier", 1}}},
                        {"very_ample_multiplier", 1},
                        {"strata", {generic, special}},
                        {"blowup_gens", ordered_json::object()}};
}

/*
 * P^2 with O(2), d = 4, where the only blow-up generator misses the
 * exceptional curve: the nef path is bounded by the square constraint alone.
 */
inline ordered_json square_only()
{
    auto j = doc(seshadri::projective_plane(2));
    j["name"] = "square_only";
    j["strata"][0]["candidates"] = ordered_json::array();
    j["strata"][0]["oracle_complete_below"] = "2";
    j["blowup_gens"] = {{"generic", {{{"label", "H"}, {"class", {1, 0}}}}}};
    return j;
}

} // namespace fixtures
