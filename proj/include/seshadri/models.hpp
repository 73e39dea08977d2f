#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seshadri/error.hpp"
#include "seshadri/exact_arith.hpp"
#include "seshadri/lattice.hpp"
#include "seshadri/surface.hpp"

namespace seshadri {

using ordered_json = nlohmann::ordered_json;

namespace detail {

struct GenSpec
{
    std::string label;
    std::vector<std::int64_t> coords;
};

struct CandSpec
{
    std::string label;
    std::vector<std::int64_t> coords;
    std::int64_t m;
};

inline void attach_blowup(SurfaceModel& model, const std::map<std::string, std::vector<GenSpec>>& gens)
{
    model.blowup_lattice = extend_blowup(*model.lattice, exceptional_label(*model.lattice));
    for (const auto& [stratum, list] : gens) {
        std::vector<CurveGenerator> out;
        for (const auto& g : list)
            out.push_back({g.label, DivisorClass(model.blowup_lattice, g.coords)});
        model.blowup_gens.emplace(stratum, CurveGeneratorSet(std::move(out), true));
    }
}

inline std::vector<CurveCandidate> candidates(const SurfaceModel& model, const std::vector<CandSpec>& specs)
{
    std::vector<CurveCandidate> out;
    for (const auto& s : specs) {
        DivisorClass c(model.lattice, s.coords);
        const auto t = pair(model.polarization, c);
        out.push_back({s.label, std::move(c), t, s.m});
    }
    return out;
}

} // namespace detail

/*
 * P^2 with L = O(e).  chi(O(ne)) = (ne+1)(ne+2)/2 = n^2 e^2/2 + 3en/2 + 1,
 * and O(k) has no higher cohomology for k >= 0, so ell = 1.
 *
 * Curve table: an irreducible plane curve of degree k has a point of
 * multiplicity m only for m <= k-1, or (k, m) = (1, 1) (m = k forces a
 * union of lines).  Such a curve has ratio ek/m > e unless it is a line,
 * and ek/(k-1) -> e, so the table is complete exactly up to e.
 */
inline SurfaceModel projective_plane(std::int64_t e)
{
    if (e < 1)
        throw Error("projective_plane requires e >= 1, got " + std::to_string(e));
    auto lat = make_lattice({{1}}, {"H"});
    SurfaceModel m{"projective_plane(" + std::to_string(e) + ")",
                   lat,
                   DivisorClass(lat, {e}),
                   RRData{e * e, 3 * e, 1, 1},
                   1,
                   {},
                   {},
                   nullptr};
    PointStratum generic{"generic", 2, {}, Rational(e), {}};
    generic.candidates = detail::candidates(m, {{"line", {1}, 1},
                                                {"deg2_m1", {2}, 1},
                                                {"deg3_m1", {3}, 1},
                                                {"deg3_m2", {3}, 2}});
    m.strata.push_back(std::move(generic));
    // Bl_x P^2 = F_1: cone spanned by E_x and the line through x.
    detail::attach_blowup(m, {{"generic", {{"E_x", {0, 1}}, {"line-E_x", {1, -1}}}}});
    validate(m);
    return m;
}

/*
 * P^1 x P^1 with L = a f1 + b f2 (f1.f2 = 1, f_i^2 = 0), d = 2ab.
 * K = -2f1 - 2f2, so chi(nL) = n^2 ab + n(a+b) + 1: rr = (2ab, 2a+2b, 1).
 *
 * An irreducible curve p f1 + q f2 through x other than a ruling meets both
 * rulings through x, so q >= m and p >= m, and its ratio (aq+bp)/m is at
 * least a+b.  The listed ratios b, a, a+b are therefore complete up to a+b.
 */
inline SurfaceModel quadric(std::int64_t a, std::int64_t b)
{
    if (a < 1 || b < 1)
        throw Error("quadric requires a, b >= 1, got (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    auto lat = make_lattice({{0, 1}, {1, 0}}, {"f1", "f2"});
    SurfaceModel m{"quadric(" + std::to_string(a) + "," + std::to_string(b) + ")",
                   lat,
                   DivisorClass(lat, {a, b}),
                   RRData{2 * a * b, 2 * a + 2 * b, 1, 1},
                   1,
                   {},
                   {},
                   nullptr};
    PointStratum generic{"generic", 2, {}, Rational(a + b), {}};
    generic.candidates = detail::candidates(m, {{"ruling_f1", {1, 0}, 1},
                                                {"ruling_f2", {0, 1}, 1},
                                                {"diagonal", {1, 1}, 1},
                                                {"nodal_2_2", {2, 2}, 2}});
    m.strata.push_back(std::move(generic));
    // Bl_x (P^1 x P^1): the three (-1)-curves E_x, f1 - E_x, f2 - E_x.
    detail::attach_blowup(m, {{"generic", {{"E_x", {0, 0, 1}}, {"f1-E_x", {1, 0, -1}}, {"f2-E_x", {0, 1, -1}}}}});
    validate(m);
    return m;
}

/*
 * F_1 = Bl_p P^2 with L = -K = 3H - E, d = 8.  chi(-nK) = 4n^2 + 4n + 1,
 * so rr = (8, 8, 1); -nK - K is ample, hence ell = 1.
 *
 * For C = alpha H - beta E through x, irreducible and not E or the fiber F
 * through x: C.F = alpha - beta >= m and C.E = beta >= 0.
 *  - x on E: also beta >= m, so L.C = 3(alpha - beta) + 2 beta >= 5m.
 *    Ratios below 5 come from E (1) and F (2).
 *  - x off E: alpha >= m with equality only for lines, so
 *    L.C >= 2m + alpha + beta >= 3m.  Ratios below 3 come from F (2).
 * Both tables are asserted complete up to 2.
 */
inline SurfaceModel f1_anticanonical()
{
    auto lat = make_lattice({{1, 0}, {0, -1}}, {"H", "E"});
    SurfaceModel m{"f1_anticanonical", lat, DivisorClass(lat, {3, -1}), RRData{8, 8, 1, 1}, 1, {}, {}, nullptr};
    PointStratum generic{"generic", 2, {}, Rational(2), {}};
    generic.candidates = detail::candidates(m, {{"H-E", {1, -1}, 1},
                                                {"H", {1, 0}, 1},
                                                {"2H-E", {2, -1}, 1},
                                                {"3H-E_nodal", {3, -1}, 2}});
    PointStratum on_e{"on_E", 1, {"generic"}, Rational(2), {}};
    on_e.candidates = detail::candidates(m, {{"E", {0, 1}, 1}, {"H-E", {1, -1}, 1}, {"2H-E", {2, -1}, 1}});
    m.strata.push_back(std::move(generic));
    m.strata.push_back(std::move(on_e));
    // Generic x: Bl_{p,x} P^2, spanned by E, E_x and the line through p and x.
    // x on E: x is infinitely near p; the strict transform E - E_x is a (-2)-curve.
    detail::attach_blowup(m, {{"generic", {{"E", {0, 1, 0}}, {"E_x", {0, 0, 1}}, {"H-E-E_x", {1, -1, -1}}}},
                              {"on_E", {{"E-E_x", {0, 1, -1}}, {"E_x", {0, 0, 1}}, {"H-E-E_x", {1, -1, -1}}}}});
    validate(m);
    return m;
}

inline SurfaceModel builtin(const std::string& name, std::span<const std::int64_t> params)
{
    auto arity = [&](std::size_t n) {
        if (params.size() != n)
            throw Error("builtin \"" + name + "\" takes " + std::to_string(n) + " parameter(s), got " +
                        std::to_string(params.size()));
    };
    if (name == "projective_plane") {
        arity(1);
        return projective_plane(params[0]);
    }
    if (name == "quadric") {
        arity(2);
        return quadric(params[0], params[1]);
    }
    if (name == "f1_anticanonical") {
        arity(0);
        return f1_anticanonical();
    }
    throw Error("unknown builtin model \"" + name + "\"");
}

/// Parses "quadric(2,2)", "projective_plane(1)" or "f1_anticanonical".
inline SurfaceModel builtin_from_ref(std::string_view ref)
{
    auto open = ref.find('(');
    if (open == std::string_view::npos)
        return builtin(std::string(ref), {});
    if (ref.back() != ')')
        throw Error("malformed builtin reference \"" + std::string(ref) + "\"");
    std::string name(ref.substr(0, open));
    std::vector<std::int64_t> params;
    auto body = ref.substr(open + 1, ref.size() - open - 2);
    while (!body.empty()) {
        auto comma = body.find(',');
        auto tok = body.substr(0, comma);
        auto q = Rational::parse(tok);
        if (!q.is_integer())
            throw Error("builtin parameter \"" + std::string(tok) + "\" is not an integer");
        params.push_back(q.numerator().convert_to<std::int64_t>());
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    return builtin(name, params);
}

/// Every shipped model, in a fixed order.
inline std::vector<SurfaceModel> builtin_suite()
{
    std::vector<SurfaceModel> out;
    out.push_back(projective_plane(1));
    out.push_back(projective_plane(2));
    out.push_back(projective_plane(3));
    out.push_back(quadric(1, 1));
    out.push_back(quadric(1, 2));
    out.push_back(quadric(2, 2));
    out.push_back(f1_anticanonical());
    return out;
}

// ---------------------------------------------------------------------------
// JSON model documents
// ---------------------------------------------------------------------------

/// Canonical serialization; field order is part of the format.
inline ordered_json to_json(const SurfaceModel& m)
{
    ordered_json j;
    j["schema_version"] = schema_version;
    j["name"] = m.name;
    j["rank"] = m.lattice->rank();
    j["gram"] = m.lattice->gram();
    j["basis_labels"] = m.lattice->basis_labels();
    j["polarization"] = m.polarization.coords();
    j["rr"] = ordered_json{{"d", m.rr.d},
                           {"c", m.rr.c},
                           {"c_prime", m.rr.c_prime},
                           {"vanishing_multiplier", m.rr.vanishing_multiplier}};
    j["very_ample_multiplier"] = m.very_ample_multiplier;
    auto strata = ordered_json::array();
    for (const auto& s : m.strata) {
        ordered_json js;
        js["label"] = s.label;
        js["closure_dim"] = s.closure_dim;
        js["specializes_from"] = s.specializes_from;
        js["oracle_complete_below"] =
            s.oracle_complete_below ? ordered_json(s.oracle_complete_below->str()) : ordered_json(nullptr);
        auto cands = ordered_json::array();
        for (const auto& c : s.candidates) {
            ordered_json jc;
            jc["label"] = c.label;
            jc["class"] = c.curve_class ? ordered_json(c.curve_class->coords()) : ordered_json(nullptr);
            jc["t"] = c.degree_t;
            jc["m"] = c.mult_m;
            cands.push_back(std::move(jc));
        }
        js["candidates"] = std::move(cands);
        strata.push_back(std::move(js));
    }
    j["strata"] = std::move(strata);
    auto gens = ordered_json::object();
    for (const auto& [label, set] : m.blowup_gens) {
        auto list = ordered_json::array();
        for (const auto& g : set.generators())
            list.push_back(ordered_json{{"label", g.label}, {"class", g.cls.coords()}});
        if (set.complete())
            gens[label] = std::move(list);
        else
            gens[label] = ordered_json{{"complete", false}, {"generators", std::move(list)}};
    }
    j["blowup_gens"] = std::move(gens);
    return j;
}

inline std::string dump_model(const SurfaceModel& m) { return to_json(m).dump(2) + "\n"; }

namespace detail {

using json = nlohmann::json;

inline const json& field(const json& obj, const char* key, const std::string& path)
{
    if (!obj.is_object())
        throw Error("schema violation at " + path + ": expected object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error("schema violation at " + path + ": missing field \"" + key + "\"");
    return *it;
}

inline std::int64_t as_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer())
        throw Error("schema violation at " + path + ": expected integer");
    return v.get<std::int64_t>();
}

inline std::string as_string(const json& v, const std::string& path)
{
    if (!v.is_string())
        throw Error("schema violation at " + path + ": expected string");
    return v.get<std::string>();
}

inline std::vector<std::int64_t> as_int_vector(const json& v, const std::string& path)
{
    if (!v.is_array())
        throw Error("schema violation at " + path + ": expected array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<std::string> as_string_vector(const json& v, const std::string& path)
{
    if (!v.is_array())
        throw Error("schema violation at " + path + ": expected array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline Rational as_rational(const json& v, const std::string& path)
{
    if (!v.is_string())
        throw Error("schema violation at " + path + ": expected rational string \"p/q\"");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
        throw Error("schema violation at " + path + ": " + e.what());
    }
}

inline CurveGeneratorSet parse_generators(const json& v, const LatticePtr& lat, const std::string& path)
{
    bool complete = true;
    const json* list = &v;
    if (v.is_object()) {
        const auto& c = field(v, "complete", path);
        if (!c.is_boolean())
            throw Error("schema violation at " + path + ".complete: expected boolean");
        complete = c.get<bool>();
        list = &field(v, "generators", path);
    }
    if (!list->is_array())
        throw Error("schema violation at " + path + ": expected array of generators");
    std::vector<CurveGenerator> gens;
    for (std::size_t i = 0; i < list->size(); ++i) {
        auto p = path + "[" + std::to_string(i) + "]";
        const auto& g = (*list)[i];
        auto label = as_string(field(g, "label", p), p + ".label");
        auto coords = as_int_vector(field(g, "class", p), p + ".class");
        if (coords.size() != lat->rank())
            throw Error("schema violation at " + p + ".class: expected " + std::to_string(lat->rank()) +
                        " coordinates on the blow-up lattice");
        gens.push_back({std::move(label), DivisorClass(lat, std::move(coords))});
    }
    return CurveGeneratorSet(std::move(gens), complete);
}

} // namespace detail

/// Parses and validates a model document. Errors name the failed field or invariant.
inline SurfaceModel model_from_json(const nlohmann::json& j)
{
    using namespace detail;
    const std::string root = "$";
    if (!j.is_object())
        throw Error("schema violation at $: expected object");

    const auto version = as_int(field(j, "schema_version", root), "$.schema_version");
    if (version != schema_version)
        throw Error("unsupported schema_version " + std::to_string(version) + " (expected " +
                    std::to_string(schema_version) + ")");

    auto name = as_string(field(j, "name", root), "$.name");
    const auto rank = as_int(field(j, "rank", root), "$.rank");
    if (rank < 1)
        throw Error("schema violation at $.rank: must be positive");

    const auto& jg = field(j, "gram", root);
    if (!jg.is_array() || static_cast<std::int64_t>(jg.size()) != rank)
        throw Error("schema violation at $.gram: expected " + std::to_string(rank) + " rows");
    Matrix gram;
    for (std::size_t i = 0; i < jg.size(); ++i) {
        auto row = as_int_vector(jg[i], "$.gram[" + std::to_string(i) + "]");
        if (static_cast<std::int64_t>(row.size()) != rank)
            throw Error("schema violation at $.gram[" + std::to_string(i) + "]: expected " + std::to_string(rank) +
                        " entries");
        gram.push_back(std::move(row));
    }
    auto labels = as_string_vector(field(j, "basis_labels", root), "$.basis_labels");
    auto lat = make_lattice(std::move(gram), std::move(labels));

    auto pol = as_int_vector(field(j, "polarization", root), "$.polarization");
    if (static_cast<std::int64_t>(pol.size()) != rank)
        throw Error("schema violation at $.polarization: expected " + std::to_string(rank) + " coordinates");

    const auto& jrr = field(j, "rr", root);
    RRData rr{as_int(field(jrr, "d", "$.rr"), "$.rr.d"), as_int(field(jrr, "c", "$.rr"), "$.rr.c"),
              as_int(field(jrr, "c_prime", "$.rr"), "$.rr.c_prime"),
              as_int(field(jrr, "vanishing_multiplier", "$.rr"), "$.rr.vanishing_multiplier")};

    SurfaceModel m{std::move(name),
                   lat,
                   DivisorClass(lat, std::move(pol)),
                   rr,
                   as_int(field(j, "very_ample_multiplier", root), "$.very_ample_multiplier"),
                   {},
                   {},
                   nullptr};

    const auto& js = field(j, "strata", root);
    if (!js.is_array())
        throw Error("schema violation at $.strata: expected array");
    for (std::size_t i = 0; i < js.size(); ++i) {
        const auto p = "$.strata[" + std::to_string(i) + "]";
        const auto& s = js[i];
        PointStratum st;
        st.label = as_string(field(s, "label", p), p + ".label");
        st.closure_dim = static_cast<int>(as_int(field(s, "closure_dim", p), p + ".closure_dim"));
        st.specializes_from = as_string_vector(field(s, "specializes_from", p), p + ".specializes_from");
        const auto& k = field(s, "oracle_complete_below", p);
        if (!k.is_null())
            st.oracle_complete_below = as_rational(k, p + ".oracle_complete_below");
        const auto& jc = field(s, "candidates", p);
        if (!jc.is_array())
            throw Error("schema violation at " + p + ".candidates: expected array");
        for (std::size_t c = 0; c < jc.size(); ++c) {
            const auto pc = p + ".candidates[" + std::to_string(c) + "]";
            CurveCandidate cand;
            cand.label = as_string(field(jc[c], "label", pc), pc + ".label");
            const auto& cls = field(jc[c], "class", pc);
            if (!cls.is_null()) {
                auto coords = as_int_vector(cls, pc + ".class");
                if (static_cast<std::int64_t>(coords.size()) != rank)
                    throw Error("schema violation at " + pc + ".class: expected " + std::to_string(rank) +
                                " coordinates");
                cand.curve_class = DivisorClass(lat, std::move(coords));
            }
            cand.degree_t = as_int(field(jc[c], "t", pc), pc + ".t");
            cand.mult_m = as_int(field(jc[c], "m", pc), pc + ".m");
            st.candidates.push_back(std::move(cand));
        }
        m.strata.push_back(std::move(st));
    }

    const auto& jb = field(j, "blowup_gens", root);
    if (!jb.is_object())
        throw Error("schema violation at $.blowup_gens: expected object");
    if (!jb.empty()) {
        m.blowup_lattice = extend_blowup(*lat, exceptional_label(*lat));
        for (const auto& [label, v] : jb.items())
            m.blowup_gens.emplace(label, parse_generators(v, m.blowup_lattice, "$.blowup_gens." + label));
    }

    validate(m);
    return m;
}

inline SurfaceModel load_model(std::string_view document)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("model document is not valid JSON: ") + e.what());
    }
    return model_from_json(j);
}

} // namespace seshadri
