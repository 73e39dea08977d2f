#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seshadri/error.hpp"
#include "seshadri/exact_arith.hpp"
#include "seshadri/lattice.hpp"

namespace seshadri {

/*
 * Riemann-Roch data of a polarization L:
 *
 *     chi(L^n) = n^2 d / 2 + n c / 2 + c'
 *
 * with h^0((L^ell)^n) = chi((L^ell)^n) for all n >= 1, where ell is the
 * vanishing multiplier (higher cohomology of L^(ell n) vanishes).
 */
struct RRData
{
    std::int64_t d = 1;
    std::int64_t c = 0;
    std::int64_t c_prime = 0;
    std::int64_t vanishing_multiplier = 1;

    void validate() const
    {
        if (d < 1)
            throw Error("RR data: degree d must be >= 1, got " + std::to_string(d));
        if (vanishing_multiplier < 1)
            throw Error("RR data: vanishing multiplier must be >= 1, got " +
                        std::to_string(vanishing_multiplier));
    }

    friend bool operator==(const RRData&, const RRData&) = default;
};

/// RR data of L^k: chi(L^(kn)) has coefficients (k^2 d, k c, c').
inline RRData rr_power(const RRData& rr, std::int64_t k)
{
    if (k < 1)
        throw Error("rr_power requires k >= 1");
    return RRData{detail::checked(static_cast<__int128>(rr.d) * k * k, "rr_power"),
                  detail::checked(static_cast<__int128>(rr.c) * k, "rr_power"), rr.c_prime, 1};
}

/*
 * Effective degree bound for curves of ratio <= a.
 *
 * M is the least positive n with n a integral and l(n) > 0, computed for
 * L^ell; `B` bounds (L.C) for the original L, so B = M ell d (which is M d
 * when ell = 1).  `B_power` is the same bound stated for L^ell.
 */
struct DegreeBound
{
    Rational a;
    std::int64_t M = 0;
    std::int64_t B = 0;
    std::int64_t vanishing_multiplier = 1;
    std::int64_t B_power = 0;
    Rational l_at_M;
    std::int64_t multiplicity_target = 0;
};

/// l(n) = (d - a^2) n^2 / 2 + (c - 3a) n / 2 + (c' - 1), for n a in Z.
inline Rational l_poly(const RRData& rr, const Rational& a, std::int64_t n)
{
    if (n < 1)
        throw Error("l_poly requires n >= 1, got " + std::to_string(n));
    Rational nn(n);
    if (!(nn * a).is_integer())
        throw Error("l_poly requires n*a integral: n=" + std::to_string(n) + ", a=" + a.str());
    const Rational half(BigInt(1), BigInt(2));
    return (Rational(rr.d) - a * a) * nn * nn * half + (Rational(rr.c) - Rational(3) * a) * nn * half +
           Rational(rr.c_prime - 1);
}

/// M a + 1, the multiplicity forced on the auxiliary divisor in |L^M|.
inline std::int64_t multiplicity_target(std::int64_t M, const Rational& a)
{
    if (M < 1)
        throw Error("multiplicity_target requires M >= 1");
    auto prod = Rational(M) * a;
    if (!prod.is_integer())
        throw Error("multiplicity_target requires M*a integral: M=" + std::to_string(M) + ", a=" + a.str());
    return prod.numerator().convert_to<std::int64_t>() + 1;
}

inline constexpr std::int64_t default_search_cap = 1'000'000;

inline DegreeBound minimal_M(const RRData& rr, const Rational& a, std::int64_t max_steps = default_search_cap)
{
    rr.validate();
    if (a.sign() <= 0)
        throw Error("degree bound requires a > 0, got " + a.str());
    if (!(a * a < Rational(rr.d)))
        throw Error("degree bound requires a^2 < d (a=" + a.str() + ", d=" + std::to_string(rr.d) +
                    "): leading coefficient d - a^2 is not positive");

    const auto ell = rr.vanishing_multiplier;
    const RRData eff = ell == 1 ? rr : rr_power(rr, ell);
    const Rational a_eff = a * Rational(ell);

    // Admissible n (n a_eff integral) are exactly the multiples of the reduced denominator.
    const auto q = a_eff.denominator().convert_to<std::int64_t>();
    for (std::int64_t k = 1; k <= max_steps; ++k) {
        const auto n = detail::checked(static_cast<__int128>(k) * q, "multiplier search");
        auto l = l_poly(eff, a_eff, n);
        if (l.sign() > 0) {
            DegreeBound b;
            b.a = a;
            b.M = n;
            b.vanishing_multiplier = ell;
            b.B = detail::checked(static_cast<__int128>(n) * ell * rr.d, "degree bound");
            b.B_power = detail::checked(static_cast<__int128>(n) * eff.d, "degree bound");
            b.l_at_M = std::move(l);
            b.multiplicity_target = multiplicity_target(n, a_eff);
            return b;
        }
    }
    throw Error("multiplier search exceeded " + std::to_string(max_steps) + " steps for a=" + a.str());
}

enum class CandidateMode
{
    Certified,  // 1 <= m <= t <= B (very-ample normalization)
    Permissive, // 1 <= m, t <= B independently; not certified
};

/*
 * Distinct ratios t/m <= alpha over the finite range of (m, t) allowed by
 * the degree bound B, ascending.  Each value is produced once, from its
 * reduced pair.
 */
inline std::vector<Rational> candidate_ratios(std::int64_t B, const Rational& alpha,
                                              CandidateMode mode = CandidateMode::Certified)
{
    if (B < 1)
        throw Error("candidate_ratios requires B >= 1, got " + std::to_string(B));
    if (alpha.sign() <= 0)
        throw Error("candidate_ratios requires alpha > 0, got " + alpha.str());

    const BigInt an = alpha.numerator();
    const BigInt ad = alpha.denominator();
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs; // (t, m), reduced
    for (std::int64_t m = 1; m <= B; ++m) {
        // t <= alpha m  <=>  t <= floor(an m / ad)
        BigInt cap = (an * m) / ad;
        std::int64_t t_hi = cap >= B ? B : cap.convert_to<std::int64_t>();
        std::int64_t t_lo = mode == CandidateMode::Certified ? m : 1;
        for (std::int64_t t = t_lo; t <= t_hi; ++t)
            if (std::gcd(t, m) == 1)
                pairs.emplace_back(t, m);
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
        return static_cast<__int128>(x.first) * y.second < static_cast<__int128>(y.first) * x.second;
    });
    std::vector<Rational> out;
    out.reserve(pairs.size());
    for (const auto& [t, m] : pairs)
        out.push_back(ratio(t, m));
    return out;
}

/*
 * Superset of the local Seshadri values <= alpha for a polarization with
 * the given RR data and very-ample multiplier v: the enumeration runs for
 * L^v (bound v B, threshold v alpha) and is divided back by v.
 */
inline std::vector<Rational> certified_candidates(const RRData& rr, std::int64_t very_ample_multiplier,
                                                  const Rational& alpha)
{
    if (very_ample_multiplier < 1)
        throw Error("very-ample multiplier must be >= 1");
    const auto bound = minimal_M(rr, alpha);
    const Rational v(very_ample_multiplier);
    auto raw = candidate_ratios(detail::checked(static_cast<__int128>(bound.B) * very_ample_multiplier,
                                                "candidate bound"),
                                alpha * v);
    for (auto& r : raw)
        r = r / v;
    return raw;
}

struct MediantBounds
{
    Rational lo;
    Rational mid;
    Rational hi;
};

/// min a_i/b_i <= (sum a_i)/(sum b_i) <= max a_i/b_i for positive a_i, b_i.
inline MediantBounds mediant_bounds(std::span<const std::pair<Rational, Rational>> parts)
{
    if (parts.empty())
        throw Error("mediant_bounds requires a nonempty list");
    Rational sa, sb;
    std::optional<Rational> lo, hi;
    for (const auto& [a, b] : parts) {
        if (a.sign() <= 0 || b.sign() <= 0)
            throw Error("mediant_bounds requires positive entries, got (" + a.str() + ", " + b.str() + ")");
        sa += a;
        sb += b;
        auto r = a / b;
        if (!lo || r < *lo)
            lo = r;
        if (!hi || r > *hi)
            hi = r;
    }
    return {*lo, sa / sb, *hi};
}

} // namespace seshadri
