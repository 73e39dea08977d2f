// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "seshadri/seshadri.hpp"

using namespace seshadri;

namespace {

struct Criterion
{
    int id;
    std::string title;
    double budget_ms; // 0 means no timing requirement
    std::function<std::string()> body; // empty string on success, else the reason
};

Rational q(const char* s) { return Rational::parse(s); }

std::string bound_correctness()
{
    auto b = minimal_M(RRData{4, 0, 2, 1}, q("3/2"));
    if (b.M != 4 || b.B != 16 || b.multiplicity_target != 7)
        return "got M=" + std::to_string(b.M) + " B=" + std::to_string(b.B) +
               " target=" + std::to_string(b.multiplicity_target);
    // l(2) = 0 and l(4) = 6 by direct integer evaluation.
    if (oracle::scaled_l(4, 0, 2, 3, 2, 2) != 0 || oracle::scaled_l(4, 0, 2, 3, 2, 4) != 6 * 2 * 4)
        return "independent evaluation of l(2), l(4) disagrees";
    if (oracle::minimal_M(4, 0, 2, 3, 2) != 4)
        return "brute-force scan disagrees on M";
    return {};
}

std::string candidate_finiteness()
{
    for (const auto& m : builtin_suite())
        for (const char* a : {"1/2", "1", "3/2", "2", "5/2"}) {
            const auto alpha = q(a);
            if (!(alpha * alpha < Rational(m.degree())))
                continue;
            const auto cands = certified_candidates(m.rr, m.very_ample_multiplier, alpha);
            for (const auto& s : m.strata) {
                auto r = epsilon(m, s, alpha);
                if (!r.certified() || cmp_value(r.value, SeshadriValue::exact(alpha)) > 0)
                    continue;
                if (!r.value.is_exact() ||
                    !std::binary_search(cands.begin(), cands.end(), r.value.rational()))
                    return m.name + "/" + s.label + ": " + r.value.str() + " not among candidates for alpha " + a;
            }
        }
    // Double loop over 1 <= m <= t <= B, grown one B at a time so every B <= 200 is compared.
    for (const char* a : {"1/2", "1", "3/2", "2", "5/2"}) {
        const auto alpha = q(a);
        const auto ap = alpha.numerator().convert_to<std::int64_t>();
        const auto aq = alpha.denominator().convert_to<std::int64_t>();
        std::set<oracle::Frac> expect;
        for (std::int64_t B = 1; B <= 200; ++B) {
            for (std::int64_t m = 1; m <= B; ++m)
                if (B * aq <= ap * m)
                    expect.insert(oracle::Frac::make(B, m));
            auto got = candidate_ratios(B, alpha);
            if (got.size() != expect.size())
                return "B=" + std::to_string(B) + " alpha=" + a + ": size mismatch";
            auto it = expect.begin();
            for (const auto& g : got) {
                if (g.numerator() != it->p || g.denominator() != it->q)
                    return "B=" + std::to_string(B) + " alpha=" + a + ": entry mismatch";
                ++it;
            }
        }
    }
    return {};
}

std::string steffens_and_rationality()
{
    for (const auto& m : builtin_suite()) {
        const auto root = SeshadriValue::sqrt_of(m.degree());
        for (const auto& s : m.strata) {
            auto r = epsilon(m, s);
            if (cmp_value(r.value, root) > 0)
                return m.name + "/" + s.label + ": value exceeds sqrt(d)";
            if (r.certified() && cmp_value(r.value, root) < 0) {
                if (!r.value.is_exact() || !r.witness || r.witness->ratio() != r.value.rational())
                    return m.name + "/" + s.label + ": missing or inconsistent witness";
            }
        }
    }
    return {};
}

std::string oracle_equivalence()
{
    std::vector<SurfaceModel> models;
    models.push_back(projective_plane(1));
    models.push_back(projective_plane(2));
    models.push_back(quadric(1, 1));
    models.push_back(quadric(2, 2));
    models.push_back(f1_anticanonical());
    for (const auto& m : models)
        for (const auto& s : m.strata)
            if (auto cc = cross_check(m, s); !cc.agree)
                return m.name + ": " + cc.detail;
    return {};
}

std::string sublevel_closedness()
{
    auto m = f1_anticanonical();
    auto one = sublevel_set(m, Rational(1));
    if (one.members != std::vector<std::string>{"on_E"} || !one.closed)
        return "sublevel_set(f1, 1) is not the closed set {on_E}";
    for (const auto& model : builtin_suite()) {
        std::vector<std::string> prev;
        for (std::int64_t k = 1; k <= 24; ++k) {
            auto rep = sublevel_set(model, ratio(k, 6));
            if (!rep.closed)
                return model.name + ": not closed at a=" + ratio(k, 6).str();
            if (!std::includes(rep.members.begin(), rep.members.end(), prev.begin(), prev.end()))
                return model.name + ": not monotone at a=" + ratio(k, 6).str();
            prev = rep.members;
        }
    }
    return {};
}

std::string semicontinuity()
{
    auto v = stratum_semicontinuity(f1_anticanonical());
    if (v.size() != 1 || !v[0].pass || v[0].special_value != SeshadriValue::exact(Rational(1)) ||
        v[0].general_value != SeshadriValue::exact(Rational(2)))
        return "f1: expected eps(on_E) = 1 <= eps(generic) = 2";
    auto bad = stratum_semicontinuity(fixtures::load(fixtures::inverted_strata()));
    if (bad.size() != 1 || bad[0].pass || bad[0].detail.find("special") == std::string::npos)
        return "negative control did not produce a named failure";
    return {};
}

std::string supremum_attainment()
{
    Family f;
    f.degree = 8;
    f.members.push_back({"f1_anticanonical", f1_anticanonical()});
    f.members.push_back({"quadric_2_2", quadric(2, 2)});
    auto rep = scan(f, q("5/2"));
    if (rep.sigma_family != SeshadriValue::exact(Rational(2)))
        return "sigma = " + rep.sigma_family.str();
    bool attained = false;
    for (const auto& row : rep.epsilon_table)
        attained |= row.param_label == rep.sigma_attained_at.first && row.stratum == rep.sigma_attained_at.second &&
                    row.result.value == rep.sigma_family;
    if (!attained)
        return "sigma not attained at the reported (member, stratum)";
    if (rep.sigma_cap != std::vector<Rational>{Rational(1), Rational(2)})
        return "Sigma cap is not {1, 2}";
    if (!rep.contained)
        return "Sigma cap not contained in the candidate superset";
    return {};
}

std::string mediant()
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::int64_t> num(1, 1000000), len(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::pair<Rational, Rational>> parts;
        for (auto k = len(rng); k > 0; --k)
            parts.emplace_back(ratio(num(rng), num(rng)), ratio(num(rng), num(rng)));
        auto m = mediant_bounds(parts);
        if (!(m.lo <= m.mid && m.mid <= m.hi))
            return "trial " + std::to_string(trial) + " violates lo <= mid <= hi";
    }
    return {};
}

std::string low_epsilon()
{
    for (const auto& m : builtin_suite()) {
        if (auto bad = low_epsilon_violations(m, q("1/100")); !bad.empty())
            return m.name + ": stratum " + bad.front() + " has positive dimension";
        if (!sublevel_set(m, q("99/100")).members.empty())
            return m.name + ": sublevel set at 99/100 is nonempty";
    }
    return {};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "bound correctness", 1, bound_correctness},
        {2, "candidate finiteness", 1000, candidate_finiteness},
        {3, "Steffens bound and rationality", 0, steffens_and_rationality},
        {4, "oracle equivalence", 1000, oracle_equivalence},
        {5, "sublevel closedness", 0, sublevel_closedness},
        {6, "semicontinuity", 0, semicontinuity},
        {7, "supremum attainment", 0, supremum_attainment},
        {8, "mediant inequality", 1000, mediant},
        {9, "low epsilon finiteness", 0, low_epsilon},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::string reason;
        const auto start = std::chrono::steady_clock::now();
        try {
            reason = c.body();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (reason.empty() && c.budget_ms > 0 && ms > c.budget_ms)
            reason = "exceeded " + std::to_string(static_cast<int>(c.budget_ms)) + " ms budget";
        const bool pass = reason.empty();
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << std::fixed
                  << std::setprecision(3) << ms << " ms)";
        if (!pass)
            std::cout << ": " << reason;
        std::cout << '\n';
    }
    std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : std::string("all criteria passed"))
              << '\n';
    return failed ? 1 : 0;
}
