#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seshadri/bounds.hpp"
#include "seshadri/engine.hpp"
#include "seshadri/family.hpp"
#include "seshadri/models.hpp"

#ifndef SESHADRI_VERSION
#define SESHADRI_VERSION "0.1.0"
#endif

namespace seshadri {

inline constexpr const char* tool_version = SESHADRI_VERSION;

/// Common header of every emitted report.
inline ordered_json report_envelope(const std::string& command)
{
    return ordered_json{{"tool", "seshadri"},
                        {"version", tool_version},
                        {"schema_version", schema_version},
                        {"command", command}};
}

inline ordered_json to_json(const std::vector<Rational>& qs)
{
    auto a = ordered_json::array();
    for (const auto& q : qs)
        a.push_back(q.str());
    return a;
}

inline ordered_json to_json(const DegreeBound& b)
{
    return ordered_json{{"a", b.a.str()},
                        {"M", b.M},
                        {"B", b.B},
                        {"vanishing_multiplier", b.vanishing_multiplier},
                        {"B_power", b.B_power},
                        {"l_at_M", b.l_at_M.str()},
                        {"multiplicity_target", b.multiplicity_target}};
}

inline ordered_json to_json(const CurveCandidate& c)
{
    return ordered_json{{"label", c.label},
                        {"class", c.curve_class ? ordered_json(c.curve_class->coords()) : ordered_json(nullptr)},
                        {"t", c.degree_t},
                        {"m", c.mult_m},
                        {"ratio", c.ratio().str()}};
}

inline ordered_json to_json(const SeshadriResult& r)
{
    ordered_json j;
    j["value"] = r.value.str();
    j["witness"] = r.witness ? to_json(*r.witness) : ordered_json(nullptr);
    j["certification"] = to_string(r.certification);
    j["bound_used"] = r.bound_used ? to_json(*r.bound_used) : ordered_json(nullptr);
    j["lower_bound"] = r.lower_bound ? ordered_json(r.lower_bound->str()) : ordered_json(nullptr);
    j["warnings"] = r.warnings;
    return j;
}

inline ordered_json to_json(const SublevelReport& s)
{
    return ordered_json{{"a", s.a.str()},
                        {"strata", s.members},
                        {"uncertain", s.uncertain},
                        {"closed", s.closed},
                        {"closure_violations", s.closure_violations}};
}

inline ordered_json to_json(const SemicontinuityVerdict& v)
{
    return ordered_json{{"scope", v.scope},
                        {"context", v.context},
                        {"general", v.general},
                        {"special", v.special},
                        {"general_epsilon", v.general_value.str()},
                        {"special_epsilon", v.special_value.str()},
                        {"pass", v.pass},
                        {"detail", v.detail}};
}

inline ordered_json to_json(const FamilyScanReport& r)
{
    ordered_json j;
    j["alpha"] = r.alpha.str();
    j["degree"] = r.degree;
    j["sigma_family"] = r.sigma_family.str();
    j["sigma_attained_at"] = ordered_json{{"param_label", r.sigma_attained_at.first},
                                          {"stratum", r.sigma_attained_at.second}};
    auto members = ordered_json::array();
    for (const auto& m : r.members)
        members.push_back(ordered_json{{"param_label", m.param_label},
                                       {"global_epsilon", m.global.result.value.str()},
                                       {"global_stratum", m.global.stratum},
                                       {"global_certification", to_string(m.global.result.certification)},
                                       {"sigma", m.sigma.value.str()},
                                       {"sigma_stratum", m.sigma.stratum},
                                       {"sigma_on_generic", m.sigma.attained_on_generic}});
    j["members"] = std::move(members);
    auto table = ordered_json::array();
    for (const auto& row : r.epsilon_table) {
        ordered_json jr{{"param_label", row.param_label}, {"stratum", row.stratum}};
        jr["result"] = to_json(row.result);
        table.push_back(std::move(jr));
    }
    j["epsilon_table"] = std::move(table);
    j["Sigma_cap"] = to_json(r.sigma_cap);
    j["Sigma_cap_size"] = r.sigma_cap.size();
    auto unc = ordered_json::array();
    for (const auto& row : r.uncertified)
        unc.push_back(ordered_json{{"param_label", row.param_label}, {"stratum", row.stratum}});
    j["uncertified"] = std::move(unc);
    j["candidate_superset"] = to_json(r.candidate_superset);
    j["containment_certified"] = r.containment_certified;
    j["contained"] = r.contained;
    auto verdicts = ordered_json::array();
    for (const auto& v : r.semicontinuity)
        verdicts.push_back(to_json(v));
    j["semicontinuity_verdicts"] = std::move(verdicts);
    j["jump_members"] = r.jump_members;
    j["warnings"] = r.warnings;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

/// param_label, stratum, epsilon, certification, witness
inline void write_csv(std::ostream& os, const FamilyScanReport& r)
{
    os << "param_label,stratum,epsilon,certification,witness\n";
    for (const auto& row : r.epsilon_table)
        os << detail::csv_field(row.param_label) << ',' << detail::csv_field(row.stratum) << ','
           << detail::csv_field(row.result.value.str()) << ',' << to_string(row.result.certification) << ','
           << detail::csv_field(row.result.witness ? row.result.witness->label : "") << '\n';
}

} // namespace seshadri
