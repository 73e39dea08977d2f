#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seshadri/bounds.hpp"
#include "seshadri/engine.hpp"
#include "seshadri/error.hpp"
#include "seshadri/exact_arith.hpp"
#include "seshadri/models.hpp"
#include "seshadri/surface.hpp"

namespace seshadri {

struct FamilyMember
{
    std::string param_label;
    SurfaceModel model;
};

/*
 * A finite family of polarized surfaces of common degree d.  The base is a
 * list of parameter labels; `member_specialization` holds (general, special)
 * pairs, meaning the special member lies in the closure of the general one.
 */
struct Family
{
    std::vector<FamilyMember> members;
    std::int64_t degree = 0;
    std::vector<std::pair<std::string, std::string>> member_specialization;

    const FamilyMember& member(const std::string& label) const
    {
        for (const auto& m : members)
            if (m.param_label == label)
                return m;
        throw Error("family has no member \"" + label + "\"");
    }

    void validate() const
    {
        if (members.empty())
            throw Error("family must have at least one member");
        if (degree < 1)
            throw Error("family degree must be positive");
        std::set<std::string> labels;
        for (const auto& m : members) {
            if (!labels.insert(m.param_label).second)
                throw Error("duplicate family member \"" + m.param_label + "\"");
            if (m.model.degree() != degree)
                throw Error("degree mismatch: member \"" + m.param_label + "\" has d = " +
                            std::to_string(m.model.degree()) + ", family degree is " + std::to_string(degree));
        }
        std::map<std::string, std::vector<std::string>> edges;
        for (const auto& [g, s] : member_specialization) {
            if (!labels.count(g) || !labels.count(s))
                throw Error("member specialization (" + g + ", " + s + ") names an unknown member");
            edges[s].push_back(g);
        }
        detail::require_acyclic(edges, "member specialization");
    }
};

struct EpsilonRow
{
    std::string param_label;
    std::string stratum;
    SeshadriResult result;
};

struct MemberSummary
{
    std::string param_label;
    GlobalEpsilon global;
    SigmaLocal sigma;
};

struct FamilyScanReport
{
    Rational alpha;
    std::int64_t degree = 0;
    SeshadriValue sigma_family;
    std::pair<std::string, std::string> sigma_attained_at; // (param_label, stratum)
    std::vector<MemberSummary> members;
    std::vector<EpsilonRow> epsilon_table;
    std::vector<Rational> sigma_cap;               // certified epsilon values in (0, alpha]
    std::vector<EpsilonRow> uncertified;           // kept out of sigma_cap
    std::vector<Rational> candidate_superset;      // empty unless containment_certified
    bool containment_certified = false;            // alpha^2 < d, so a degree bound exists
    bool contained = false;                        // sigma_cap is a subset of candidate_superset
    std::vector<SemicontinuityVerdict> semicontinuity;
    std::vector<std::string> jump_members;
    std::vector<std::string> warnings;
};

namespace detail {

// Members reachable from `label` through (general, special) pairs, upward.
inline std::set<std::string> generalizations(const Family& f, const std::string& label)
{
    std::set<std::string> seen;
    std::vector<std::string> stack{label};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (const auto& [g, s] : f.member_specialization)
            if (s == cur && seen.insert(g).second)
                stack.push_back(g);
    }
    return seen;
}

inline std::vector<const FamilyMember*> sorted_members(const Family& f)
{
    std::vector<const FamilyMember*> out;
    for (const auto& m : f.members)
        out.push_back(&m);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->param_label < b->param_label; });
    return out;
}

} // namespace detail

/*
 * Lower semicontinuity on declared specializations: global epsilon may only
 * drop from a general member to a special one, and within each member local
 * epsilon may only drop from a stratum to one in its closure.
 */
inline std::vector<SemicontinuityVerdict> semicontinuity_check(const Family& family)
{
    family.validate();
    std::vector<SemicontinuityVerdict> out;
    auto pairs = family.member_specialization;
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [g, s] : pairs) {
        auto eg = global_epsilon(family.member(g).model).result.value;
        auto es = global_epsilon(family.member(s).model).result.value;
        SemicontinuityVerdict v{"member", "family", g, s, eg, es, cmp_value(es, eg) <= 0, {}};
        if (!v.pass)
            v.detail = "member \"" + s + "\" has global epsilon " + es.str() + " > " + eg.str() +
                       " at its generalization \"" + g + "\"";
        out.push_back(std::move(v));
    }
    for (const auto* m : detail::sorted_members(family))
        for (auto v : stratum_semicontinuity(m->model)) {
            v.context = m->param_label;
            out.push_back(std::move(v));
        }
    return out;
}

inline FamilyScanReport scan(const Family& family, const Rational& alpha)
{
    family.validate();
    if (alpha.sign() <= 0)
        throw Error("scan requires alpha > 0, got " + alpha.str());

    FamilyScanReport rep;
    rep.alpha = alpha;
    rep.degree = family.degree;
    const auto av = SeshadriValue::exact(alpha);
    rep.containment_certified = alpha * alpha < Rational(family.degree);
    if (!rep.containment_certified)
        rep.warnings.push_back("alpha = " + alpha.str() + " is not below sqrt(d): Sigma cap is not certified finite");

    std::set<Rational> cap, superset;
    bool have_sigma = false;
    for (const auto* m : detail::sorted_members(family)) {
        MemberSummary sum{m->param_label, global_epsilon(m->model), sigma_local(m->model)};
        for (auto& e : epsilon_table(m->model, rep.containment_certified ? std::optional(alpha) : std::nullopt)) {
            EpsilonRow row{m->param_label, e.stratum, std::move(e.result)};
            const auto& r = row.result;
            if (!r.certified())
                rep.uncertified.push_back(row);
            else if (cmp_value(r.value, av) <= 0) {
                if (r.value.is_exact())
                    cap.insert(r.value.rational());
                else
                    rep.warnings.push_back("irrational value " + r.value.str() + " at (" + row.param_label +
                                           ", " + row.stratum + ") lies in (0, alpha]");
            }
            rep.epsilon_table.push_back(std::move(row));
        }
        if (!have_sigma || cmp_value(sum.sigma.value, rep.sigma_family) > 0) {
            rep.sigma_family = sum.sigma.value;
            rep.sigma_attained_at = {m->param_label, sum.sigma.stratum};
            have_sigma = true;
        }
        if (rep.containment_certified)
            for (auto& q : certified_candidates(m->model.rr, m->model.very_ample_multiplier, alpha))
                superset.insert(std::move(q));
        rep.members.push_back(std::move(sum));
    }
    for (const auto& row : rep.uncertified)
        rep.warnings.push_back("uncertified value at (" + row.param_label + ", " + row.stratum +
                               "): excluded from Sigma cap");

    rep.sigma_cap.assign(cap.begin(), cap.end());
    rep.candidate_superset.assign(superset.begin(), superset.end());
    rep.contained = rep.containment_certified &&
                    std::includes(superset.begin(), superset.end(), cap.begin(), cap.end());

    rep.semicontinuity = semicontinuity_check(family);

    std::map<std::string, SeshadriValue> global;
    for (const auto& s : rep.members)
        global.emplace(s.param_label, s.global.result.value);
    for (const auto& s : rep.members)
        for (const auto& g : detail::generalizations(family, s.param_label))
            if (cmp_value(global.at(s.param_label), global.at(g)) < 0) {
                rep.jump_members.push_back(s.param_label);
                break;
            }
    return rep;
}

// ---------------------------------------------------------------------------
// Family documents
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read \"" + path.string() + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A model argument: "builtin:<ref>" or a path to a model document.
inline SurfaceModel resolve_model_ref(const std::string& ref, const std::filesystem::path& base_dir = {})
{
    constexpr std::string_view prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0)
        return builtin_from_ref(std::string_view(ref).substr(prefix.size()));
    std::filesystem::path p(ref);
    if (p.is_relative() && !base_dir.empty())
        p = base_dir / p;
    return load_model(read_file(p));
}

/*
 * { degree, members: [{param_label, model}], member_specialization: [[general, special]] }
 * where each model is an inline model document or a reference string
 * (a path relative to the family file, or "builtin:<ref>").
 */
inline Family load_family(std::string_view document, const std::filesystem::path& base_dir = {})
{
    using namespace detail;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("family document is not valid JSON: ") + e.what());
    }
    Family f;
    f.degree = as_int(field(j, "degree", "$"), "$.degree");
    const auto& jm = field(j, "members", "$");
    if (!jm.is_array())
        throw Error("schema violation at $.members: expected array");
    for (std::size_t i = 0; i < jm.size(); ++i) {
        const auto p = "$.members[" + std::to_string(i) + "]";
        auto label = as_string(field(jm[i], "param_label", p), p + ".param_label");
        const auto& mv = field(jm[i], "model", p);
        try {
            if (mv.is_string())
                f.members.push_back({std::move(label), resolve_model_ref(mv.get<std::string>(), base_dir)});
            else
                f.members.push_back({std::move(label), model_from_json(mv)});
        } catch (const Error& e) {
            throw Error(p + ".model: " + e.what());
        }
    }
    if (auto it = j.find("member_specialization"); it != j.end()) {
        if (!it->is_array())
            throw Error("schema violation at $.member_specialization: expected array of pairs");
        for (std::size_t i = 0; i < it->size(); ++i) {
            auto v = as_string_vector((*it)[i], "$.member_specialization[" + std::to_string(i) + "]");
            if (v.size() != 2)
                throw Error("schema violation at $.member_specialization[" + std::to_string(i) +
                            "]: expected [general, special]");
            f.member_specialization.emplace_back(v[0], v[1]);
        }
    }
    f.validate();
    return f;
}

} // namespace seshadri
