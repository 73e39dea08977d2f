#pragma once

#include <string>
#include <vector>

#include "seshadri/bounds.hpp"
#include "seshadri/engine.hpp"
#include "seshadri/models.hpp"

namespace seshadri {

struct CheckLine
{
    std::string name;
    bool pass = true;
    std::string detail;
};

/*
 * Self-check over one model: serialization round trip, agreement of the two
 * characterizations, the sqrt(d) bound, witnesses for values below sqrt(d),
 * closed and monotone sublevel sets, finiteness of the low locus, candidate
 * membership, semicontinuity across strata and attainment of sigma.
 */
inline std::vector<CheckLine> check_model(const SurfaceModel& model)
{
    std::vector<CheckLine> out;
    auto add = [&](const std::string& what, bool ok, const std::string& detail = {}) {
        out.push_back({model.name + ": " + what, ok, ok ? std::string() : detail});
    };

    try {
        const auto text = dump_model(model);
        const auto again = dump_model(load_model(text));
        add("round trip", text == again, "canonical serialization changed after reload");
    } catch (const Error& e) {
        add("round trip", false, e.what());
    }

    const auto root = SeshadriValue::sqrt_of(model.degree());
    for (const auto& s : model.strata) {
        if (model.blowup_generators(s.label)) {
            auto cc = cross_check(model, s);
            add("cross check " + s.label, cc.agree, cc.detail);
        }
        auto r = epsilon(model, s);
        add("epsilon <= sqrt(d) at " + s.label, cmp_value(r.value, root) <= 0, r.value.str() + " > " + root.str());
        if (r.certified() && cmp_value(r.value, root) < 0) {
            bool ok = r.value.is_exact() && r.witness && r.witness->ratio() == r.value.rational();
            add("witness at " + s.label, ok, "certified value " + r.value.str() + " lacks a reproducing witness");
        }
        add("certified at " + s.label, r.certified(), to_string(r.certification));
    }

    std::vector<std::string> prev;
    bool monotone = true, closed = true;
    for (int k = 1; k <= 16; ++k) {
        auto rep = sublevel_set(model, Rational(BigInt(k), BigInt(4)));
        closed = closed && rep.closed;
        monotone = monotone && std::includes(rep.members.begin(), rep.members.end(), prev.begin(), prev.end());
        prev = rep.members;
    }
    add("sublevel sets closed under specialization", closed, "closure violated");
    add("sublevel sets monotone in a", monotone, "a larger threshold lost a stratum");

    auto low = low_epsilon_violations(model, Rational(BigInt(1), BigInt(100)));
    add("low-epsilon locus finite", low.empty(), "positive-dimensional stratum " + (low.empty() ? "" : low.front()));

    for (const char* a : {"1/2", "1", "3/2", "2", "5/2"}) {
        auto alpha = Rational::parse(a);
        if (!(alpha * alpha < Rational(model.degree())))
            continue;
        auto cand = certified_candidates(model.rr, model.very_ample_multiplier, alpha);
        bool ok = true;
        std::string bad;
        for (const auto& e : epsilon_table(model)) {
            const auto& v = e.result.value;
            if (!e.result.certified() || !v.is_exact() || v.rational() > alpha)
                continue;
            if (!std::binary_search(cand.begin(), cand.end(), v.rational())) {
                ok = false;
                bad = e.stratum + " value " + v.str();
            }
        }
        add(std::string("candidate membership alpha=") + a, ok, bad + " missing from candidate set");
    }

    for (const auto& v : stratum_semicontinuity(model))
        add("semicontinuity " + v.general + " -> " + v.special, v.pass, v.detail);

    auto sig = sigma_local(model);
    add("sigma attained on dense stratum", sig.attained_on_generic, "attained on " + sig.stratum);
    return out;
}

inline std::vector<CheckLine> run_invariant_suite()
{
    std::vector<CheckLine> out;
    for (const auto& m : builtin_suite()) {
        auto lines = check_model(m);
        out.insert(out.end(), lines.begin(), lines.end());
    }
    // chi(O(ne)) against the binomial count of plane curves of degree ne.
    for (std::int64_t e = 1; e <= 3; ++e) {
        auto rr = projective_plane(e).rr;
        bool ok = true;
        for (std::int64_t n = 1; n <= 10; ++n) {
            Rational chi = Rational(BigInt(n * n * rr.d), BigInt(2)) + Rational(BigInt(n * rr.c), BigInt(2)) +
                           Rational(rr.c_prime);
            ok = ok && chi == Rational((n * e + 1) * (n * e + 2) / 2);
        }
        out.push_back({"projective_plane(" + std::to_string(e) + "): Riemann-Roch matches binomial count", ok,
                       ok ? "" : "chi(L^n) differs from (ne+1)(ne+2)/2"});
    }
    return out;
}

} // namespace seshadri
