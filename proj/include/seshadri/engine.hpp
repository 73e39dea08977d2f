#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "seshadri/bounds.hpp"
#include "seshadri/exact_arith.hpp"
#include "seshadri/lattice.hpp"
#include "seshadri/surface.hpp"

namespace seshadri {

enum class Certification
{
    ExactCertified,
    LowerBoundOnly,
    UpperBoundOnly,
};

inline const char* to_string(Certification c)
{
    switch (c) {
    case Certification::ExactCertified: return "ExactCertified";
    case Certification::LowerBoundOnly: return "LowerBoundOnly";
    case Certification::UpperBoundOnly: return "UpperBoundOnly";
    }
    return "?";
}

/*
 * Local Seshadri constant at a stratum, with provenance.
 *
 * `value` is exact when certification is ExactCertified, an upper bound for
 * UpperBoundOnly and a lower bound for LowerBoundOnly.  `lower_bound` carries
 * the oracle's lower bound alongside an upper-bound value when one is known.
 */
struct SeshadriResult
{
    SeshadriValue value;
    std::optional<CurveCandidate> witness;
    Certification certification = Certification::UpperBoundOnly;
    std::optional<DegreeBound> bound_used;
    std::optional<SeshadriValue> lower_bound;
    std::vector<std::string> warnings;

    bool certified() const { return certification == Certification::ExactCertified; }
};

namespace detail {

// Witness order: smallest ratio, then smallest degree, then label.
inline bool witness_before(const CurveCandidate& x, const CurveCandidate& y)
{
    auto rx = x.ratio(), ry = y.ratio();
    if (rx != ry)
        return rx < ry;
    if (x.degree_t != y.degree_t)
        return x.degree_t < y.degree_t;
    return x.label < y.label;
}

inline std::optional<DegreeBound> bound_for(const SurfaceModel& model, const std::optional<Rational>& alpha,
                                            std::vector<std::string>& warnings)
{
    if (!alpha)
        return std::nullopt;
    if (alpha->sign() <= 0)
        throw Error("alpha must be positive, got " + alpha->str());
    if (!(*alpha * *alpha < Rational(model.degree()))) {
        warnings.push_back("alpha = " + alpha->str() + " is not below sqrt(d): no degree bound applies");
        return std::nullopt;
    }
    return minimal_M(model.rr, *alpha);
}

} // namespace detail

/*
 * epsilon(L, x) as the infimum of (L.C)/m_x(C) over the stratum's curve
 * table.  The minimum listed ratio r is exact once the completeness
 * threshold K reaches it: unlisted curves then have ratio > K >= r.  When
 * every listed ratio exceeds K >= sqrt(d), the value is sqrt(d).
 */
inline SeshadriResult epsilon_via_curves(const SurfaceModel& model, const PointStratum& stratum,
                                         const std::optional<Rational>& alpha = std::nullopt)
{
    SeshadriResult res;
    res.bound_used = detail::bound_for(model, alpha, res.warnings);
    const auto root = SeshadriValue::sqrt_of(model.degree());
    const auto& K = stratum.oracle_complete_below;

    if (stratum.candidates.empty()) {
        if (!K) {
            res.value = root;
            res.certification = Certification::UpperBoundOnly;
            res.warnings.push_back("stratum \"" + stratum.label +
                                   "\": no curve candidates and no completeness assertion; only sqrt(d) is known");
        } else if (cmp_value(SeshadriValue::exact(*K), root) >= 0) {
            res.value = root;
            res.certification = Certification::ExactCertified;
        } else {
            res.value = SeshadriValue::exact(*K);
            res.certification = Certification::LowerBoundOnly;
            res.warnings.push_back("stratum \"" + stratum.label + "\": no curve candidates; epsilon >= " +
                                   K->str() + " only");
        }
        return res;
    }

    const auto& best = *std::min_element(stratum.candidates.begin(), stratum.candidates.end(),
                                         detail::witness_before);
    const auto r = SeshadriValue::exact(best.ratio());
    const bool below_root = cmp_value(r, root) <= 0;

    if (K && best.ratio() <= *K) {
        if (!below_root) {
            res.value = root;
            res.certification = Certification::UpperBoundOnly;
            res.warnings.push_back("stratum \"" + stratum.label +
                                   "\": curve table is inconsistent with epsilon <= sqrt(d) (minimum ratio " +
                                   best.ratio().str() + ")");
            return res;
        }
        res.value = r;
        res.witness = best;
        res.certification = Certification::ExactCertified;
        return res;
    }
    if (K && cmp_value(SeshadriValue::exact(*K), root) >= 0) {
        res.value = root;
        res.certification = Certification::ExactCertified;
        return res;
    }

    res.value = min_value(r, root);
    if (below_root)
        res.witness = best;
    res.certification = Certification::UpperBoundOnly;
    if (K)
        res.lower_bound = SeshadriValue::exact(*K);
    res.warnings.push_back("stratum \"" + stratum.label + "\": curve table is not asserted complete up to " +
                           best.ratio().str() + "; value is an upper bound");
    return res;
}

/*
 * epsilon(L, x) = max { s : pi^*L - s E nef } on the blow-up, with the nef
 * cone cut out by the stratum's blow-up generators and (pi^*L - sE)^2 >= 0.
 */
inline SeshadriResult epsilon_via_nef(const SurfaceModel& model, const PointStratum& stratum)
{
    const auto* gens = model.blowup_generators(stratum.label);
    if (!gens || gens->empty())
        throw Error("model \"" + model.name + "\": missing blow-up generator data for stratum \"" +
                    stratum.label + "\"");

    SeshadriResult res;
    const auto& lat = model.blowup_lattice;
    const auto pulled = lift(model.polarization, lat);
    const auto exc = exceptional_class(lat);

    std::optional<CurveCandidate> best;
    for (const auto& g : gens->generators()) {
        const auto m = pair(exc, g.cls);
        if (m <= 0)
            continue;
        const auto t = pair(pulled, g.cls);
        if (t <= 0) {
            res.warnings.push_back("generator \"" + g.label + "\" has pi^*L.C = " + std::to_string(t) +
                                   " <= 0; polarization is not ample");
            continue;
        }
        CurveCandidate c{g.label, push_forward(g.cls, model.lattice), t, m};
        if (!best || detail::witness_before(c, *best))
            best = std::move(c);
    }

    const auto root = SeshadriValue::sqrt_of(model.degree());
    if (best && cmp_value(SeshadriValue::exact(best->ratio()), root) <= 0) {
        res.value = SeshadriValue::exact(best->ratio());
        res.witness = best;
    } else {
        res.value = root;
    }
    if (gens->complete()) {
        res.certification = Certification::ExactCertified;
    } else {
        res.certification = Certification::UpperBoundOnly;
        res.warnings.push_back("stratum \"" + stratum.label +
                               "\": blow-up generators are not asserted complete; value is an upper bound");
    }
    return res;
}

struct CrossCheck
{
    bool agree = false;
    SeshadriResult curves;
    SeshadriResult nef;
    std::string detail;
};

/// Runs both characterizations and compares the values exactly.
inline CrossCheck cross_check(const SurfaceModel& model, const PointStratum& stratum)
{
    CrossCheck cc{false, epsilon_via_curves(model, stratum), epsilon_via_nef(model, stratum), {}};
    cc.agree = cc.curves.value == cc.nef.value;
    if (!cc.agree)
        cc.detail = "stratum \"" + stratum.label + "\": curve path gives " + cc.curves.value.str() +
                    ", nef path gives " + cc.nef.value.str();
    return cc;
}

/*
 * Combined local computation: the curve-path value, checked against the
 * nef path when the model carries blow-up data.  A certified nef value
 * upgrades an uncertified curve value only when the two agree.
 */
inline SeshadriResult epsilon(const SurfaceModel& model, const PointStratum& stratum,
                              const std::optional<Rational>& alpha = std::nullopt)
{
    auto res = epsilon_via_curves(model, stratum, alpha);
    if (!model.blowup_generators(stratum.label))
        return res;

    auto nef = epsilon_via_nef(model, stratum);
    const bool same = res.value == nef.value;
    if (res.certified() && nef.certified()) {
        if (!same) {
            res.warnings.push_back("curve and nef paths disagree at stratum \"" + stratum.label +
                                   "\": curves " + res.value.str() + ", nef " + nef.value.str());
            res.certification = Certification::UpperBoundOnly;
            res.value = min_value(res.value, nef.value);
        }
        return res;
    }
    if (nef.certified()) {
        // The curve value is an upper bound (or K a lower bound); the nef value must respect it.
        bool consistent = res.certification == Certification::UpperBoundOnly
                              ? cmp_value(nef.value, res.value) <= 0
                              : cmp_value(nef.value, res.value) >= 0;
        if (res.lower_bound)
            consistent = consistent && cmp_value(nef.value, *res.lower_bound) >= 0;
        if (!consistent) {
            res.warnings.push_back("nef value " + nef.value.str() + " contradicts curve-path bound " +
                                   res.value.str() + " at stratum \"" + stratum.label + "\"");
            return res;
        }
        res.value = nef.value;
        res.certification = Certification::ExactCertified;
        res.lower_bound.reset();
        if (!same || !res.witness)
            res.witness = nef.witness;
        res.warnings.push_back("stratum \"" + stratum.label + "\": certified by the nef path");
    }
    return res;
}

struct StratumEpsilon
{
    std::string stratum;
    SeshadriResult result;
};

/// Per-stratum results in stratum label order.
inline std::vector<StratumEpsilon> epsilon_table(const SurfaceModel& model,
                                                 const std::optional<Rational>& alpha = std::nullopt)
{
    std::vector<StratumEpsilon> out;
    for (const auto& s : model.strata)
        out.push_back({s.label, epsilon(model, s, alpha)});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.stratum < b.stratum; });
    return out;
}

namespace detail {

// Certification of an extremum over strata: exact when every input is;
// a one-sided claim when all inexact inputs are bounds of the same side.
inline Certification combine(const std::vector<StratumEpsilon>& table, std::vector<std::string>& warnings)
{
    bool upper = false, lower = false;
    for (const auto& e : table) {
        upper |= e.result.certification == Certification::UpperBoundOnly;
        lower |= e.result.certification == Certification::LowerBoundOnly;
    }
    if (upper && lower)
        warnings.push_back("strata mix upper and lower bounds; extremum is not certified on either side");
    if (upper)
        return Certification::UpperBoundOnly;
    if (lower)
        return Certification::LowerBoundOnly;
    return Certification::ExactCertified;
}

} // namespace detail

struct GlobalEpsilon
{
    SeshadriResult result;
    std::string stratum; // where the minimum is attained
};

/// epsilon(L) as the minimum over strata, with the attaining stratum.
inline GlobalEpsilon global_epsilon(const SurfaceModel& model, const std::optional<Rational>& alpha = std::nullopt)
{
    auto table = epsilon_table(model, alpha);
    const StratumEpsilon* best = &table.front();
    for (const auto& e : table)
        if (cmp_value(e.result.value, best->result.value) < 0)
            best = &e;
    GlobalEpsilon g{best->result, best->stratum};
    g.result.certification = detail::combine(table, g.result.warnings);
    return g;
}

struct SigmaLocal
{
    SeshadriValue value;
    std::string stratum;
    bool attained_on_generic = false;
    Certification certification = Certification::ExactCertified;
    std::vector<std::string> warnings;
};

/// Supremum of epsilon over strata; ties resolve to the dense stratum.
inline SigmaLocal sigma_local(const SurfaceModel& model)
{
    auto table = epsilon_table(model);
    const auto& generic = model.generic_stratum().label;
    const StratumEpsilon* best = nullptr;
    for (const auto& e : table) {
        if (!best) {
            best = &e;
            continue;
        }
        auto c = cmp_value(e.result.value, best->result.value);
        if (c > 0 || (c == 0 && e.stratum == generic))
            best = &e;
    }
    SigmaLocal s{best->result.value, best->stratum, best->stratum == generic, {}, {}};
    s.certification = detail::combine(table, s.warnings);
    if (!s.attained_on_generic)
        s.warnings.push_back("supremum is not attained on the dense stratum \"" + generic + "\"");
    return s;
}

struct SublevelReport
{
    Rational a;
    std::vector<std::string> members;   // certified epsilon <= a
    std::vector<std::string> uncertain; // membership undecided by the available bounds
    bool closed = true;
    std::vector<std::string> closure_violations;
};

/*
 * Strata with epsilon <= a, and whether that set is closed under
 * specialization: a member stratum drags along every stratum in its closure.
 */
inline SublevelReport sublevel_set(const SurfaceModel& model, const Rational& a)
{
    SublevelReport rep{a, {}, {}, true, {}};
    const auto av = SeshadriValue::exact(a);
    std::set<std::string> in;
    for (const auto& e : epsilon_table(model)) {
        const auto& r = e.result;
        const auto c = cmp_value(r.value, av);
        bool member = false, decided = true;
        switch (r.certification) {
        case Certification::ExactCertified: member = c <= 0; break;
        case Certification::UpperBoundOnly:
            if (c <= 0)
                member = true;
            else if (r.lower_bound && cmp_value(*r.lower_bound, av) > 0)
                member = false;
            else
                decided = false;
            break;
        case Certification::LowerBoundOnly:
            if (c > 0)
                member = false;
            else
                decided = false;
            break;
        }
        if (!decided)
            rep.uncertain.push_back(e.stratum);
        else if (member) {
            rep.members.push_back(e.stratum);
            in.insert(e.stratum);
        }
    }
    for (const auto& s : model.strata)
        for (const auto& g : s.specializes_from)
            if (in.count(g) && !in.count(s.label)) {
                rep.closed = false;
                rep.closure_violations.push_back("\"" + g + "\" is in the sublevel set but \"" + s.label +
                                                 "\" in its closure is not");
            }
    return rep;
}

/// Strata of positive closure dimension with epsilon <= 1 - delta (expected: none).
inline std::vector<std::string> low_epsilon_violations(const SurfaceModel& model, const Rational& delta)
{
    std::vector<std::string> bad;
    const auto rep = sublevel_set(model, Rational(1) - delta);
    for (const auto& label : rep.members)
        if (model.stratum(label).closure_dim > 0)
            bad.push_back(label);
    return bad;
}

struct SemicontinuityVerdict
{
    std::string scope;   // "stratum" or "member"
    std::string context; // model name or family label
    std::string general;
    std::string special;
    SeshadriValue general_value;
    SeshadriValue special_value;
    bool pass = false;
    std::string detail;
};

/// epsilon(special) <= epsilon(general) for each declared stratum specialization.
inline std::vector<SemicontinuityVerdict> stratum_semicontinuity(const SurfaceModel& model)
{
    std::map<std::string, SeshadriValue> eps;
    for (const auto& e : epsilon_table(model))
        eps.emplace(e.stratum, e.result.value);
    std::vector<SemicontinuityVerdict> out;
    for (const auto& s : model.strata)
        for (const auto& g : s.specializes_from) {
            SemicontinuityVerdict v{"stratum", model.name, g, s.label, eps.at(g), eps.at(s.label), false, {}};
            v.pass = cmp_value(v.special_value, v.general_value) <= 0;
            if (!v.pass)
                v.detail = model.name + ": epsilon(" + s.label + ") = " + v.special_value.str() + " > epsilon(" +
                           g + ") = " + v.general_value.str();
            out.push_back(std::move(v));
        }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.general, x.special) < std::tie(y.general, y.special);
    });
    return out;
}

} // namespace seshadri
