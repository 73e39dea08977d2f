#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seshadri/bounds.hpp"
#include "seshadri/error.hpp"
#include "seshadri/exact_arith.hpp"
#include "seshadri/lattice.hpp"

namespace seshadri {

/// A curve C through the stratum's point with t = (L.C) and m = m_x(C).
struct CurveCandidate
{
    std::string label;
    std::optional<DivisorClass> curve_class;
    std::int64_t degree_t = 1;
    std::int64_t mult_m = 1;

    Rational ratio() const { return seshadri::ratio(degree_t, mult_m); }
};

/*
 * A finite stand-in for a family of points of the surface.  `specializes_from`
 * lists the strata whose closure contains this one.  When present,
 * `oracle_complete_below` asserts that every ratio (L.C)/m_x(C) <= that value
 * realized by an irreducible curve through a point of the stratum occurs in
 * `candidates`.
 */
struct PointStratum
{
    std::string label;
    int closure_dim = 2;
    std::vector<std::string> specializes_from;
    std::optional<Rational> oracle_complete_below;
    std::vector<CurveCandidate> candidates;
};

inline constexpr int schema_version = 1;

/// Label given to the exceptional curve when blowing up a stratum point.
inline std::string exceptional_label(const IntersectionLattice& lat)
{
    std::string label = "E_x";
    while (lat.index_of(label))
        label += "'";
    return label;
}

struct SurfaceModel
{
    std::string name;
    LatticePtr lattice;
    DivisorClass polarization;
    RRData rr;
    std::int64_t very_ample_multiplier = 1;
    std::vector<PointStratum> strata;
    // Classes on blowup_lattice, keyed by stratum label.
    std::map<std::string, CurveGeneratorSet> blowup_gens;
    LatticePtr blowup_lattice;

    std::int64_t degree() const { return rr.d; }

    const PointStratum& stratum(const std::string& label) const
    {
        for (const auto& s : strata)
            if (s.label == label)
                return s;
        throw Error("model \"" + name + "\" has no stratum \"" + label + "\"");
    }

    const PointStratum& generic_stratum() const
    {
        for (const auto& s : strata)
            if (s.closure_dim == 2)
                return s;
        throw Error("model \"" + name + "\" has no dense stratum");
    }

    const CurveGeneratorSet* blowup_generators(const std::string& label) const
    {
        auto it = blowup_gens.find(label);
        return it == blowup_gens.end() ? nullptr : &it->second;
    }
};

namespace detail {

/// Throws if the relation label -> specializes_from has a cycle.
inline void require_acyclic(const std::map<std::string, std::vector<std::string>>& edges, const std::string& what)
{
    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> mark;
    std::function<void(const std::string&)> visit = [&](const std::string& v) {
        auto& m = mark[v];
        if (m == Mark::Done)
            return;
        if (m == Mark::Active)
            throw Error("cyclic " + what + " through \"" + v + "\"");
        m = Mark::Active;
        if (auto it = edges.find(v); it != edges.end())
            for (const auto& w : it->second)
                visit(w);
        mark[v] = Mark::Done;
    };
    for (const auto& [v, _] : edges)
        visit(v);
}

} // namespace detail

/// Checks every model invariant; throws Error naming the first violation.
inline void validate(const SurfaceModel& model)
{
    const auto where = [&](const std::string& msg) { return Error("model \"" + model.name + "\": " + msg); };

    if (model.name.empty())
        throw Error("model name must be nonempty");
    if (!model.lattice)
        throw where("missing lattice");
    model.rr.validate();
    if (model.very_ample_multiplier < 1)
        throw where("very_ample_multiplier must be >= 1");
    if (!model.polarization.same_lattice(DivisorClass::zero(model.lattice)))
        throw where("polarization is not on the model lattice");

    const auto self = pair(model.polarization, model.polarization);
    if (self != model.rr.d)
        throw where("degree mismatch: pair(L, L) = " + std::to_string(self) + " but rr.d = " +
                    std::to_string(model.rr.d));

    if (model.strata.empty())
        throw where("no strata");
    std::set<std::string> labels;
    int dense = 0;
    for (const auto& s : model.strata) {
        if (s.label.empty())
            throw where("empty stratum label");
        if (!labels.insert(s.label).second)
            throw where("duplicate stratum \"" + s.label + "\"");
        if (s.closure_dim < 0 || s.closure_dim > 2)
            throw where("stratum \"" + s.label + "\" closure_dim must be 0, 1 or 2");
        if (s.closure_dim == 2)
            ++dense;
    }
    if (dense != 1)
        throw where("missing dense stratum: expected exactly one stratum with closure_dim 2, found " +
                    std::to_string(dense));

    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& s : model.strata) {
        auto& out = edges[s.label];
        for (const auto& g : s.specializes_from) {
            if (!labels.count(g))
                throw where("stratum \"" + s.label + "\" specializes from unknown stratum \"" + g + "\"");
            if (model.stratum(g).closure_dim <= s.closure_dim)
                throw where("stratum \"" + s.label + "\" specializes from \"" + g +
                            "\" whose closure_dim is not larger");
            out.push_back(g);
        }
    }
    detail::require_acyclic(edges, "specialization");

    const Rational d(model.rr.d);
    for (const auto& s : model.strata) {
        std::optional<std::int64_t> cap;
        if (s.oracle_complete_below) {
            const auto& k = *s.oracle_complete_below;
            if (k.sign() <= 0)
                throw where("stratum \"" + s.label + "\" oracle_complete_below must be positive");
            if (k * k < d)
                cap = minimal_M(model.rr, k).B;
        }
        std::set<std::string> cand_labels;
        for (const auto& c : s.candidates) {
            const auto at = "stratum \"" + s.label + "\" candidate \"" + c.label + "\"";
            if (c.label.empty())
                throw where("stratum \"" + s.label + "\" has a candidate with empty label");
            if (!cand_labels.insert(c.label).second)
                throw where(at + " is duplicated");
            if (c.degree_t < 1 || c.mult_m < 1)
                throw where(at + " needs t >= 1 and m >= 1");
            if (c.curve_class) {
                if (!c.curve_class->same_lattice(model.polarization))
                    throw where(at + " class is not on the model lattice");
                const auto t = pair(model.polarization, *c.curve_class);
                if (t != c.degree_t)
                    throw where(at + " degree mismatch: pair(L, C) = " + std::to_string(t) + " but t = " +
                                std::to_string(c.degree_t));
            }
            if (cap && c.degree_t > *cap)
                throw where(at + " exceeds degree bound B = " + std::to_string(*cap) +
                            " for the stratum's completeness threshold");
        }
    }

    if (!model.blowup_gens.empty()) {
        if (!model.blowup_lattice)
            throw where("blow-up generators without blow-up lattice");
        if (model.blowup_lattice->rank() != model.lattice->rank() + 1)
            throw where("blow-up lattice rank must be model rank + 1");
        auto expected = extend_blowup(*model.lattice, exceptional_label(*model.lattice));
        if (!(*expected == *model.blowup_lattice))
            throw where("blow-up lattice is not the one-point blow-up of the model lattice");
    }
    for (const auto& [label, gens] : model.blowup_gens) {
        if (!labels.count(label))
            throw where("blow-up generators for unknown stratum \"" + label + "\"");
        std::vector<CurveGenerator> pushed;
        for (const auto& g : gens.generators()) {
            if (!g.cls.same_lattice(DivisorClass::zero(model.blowup_lattice)))
                throw where("blow-up generator \"" + g.label + "\" of stratum \"" + label +
                            "\" is not on the blow-up lattice");
            auto p = push_forward(g.cls, model.lattice);
            if (!p.is_zero())
                pushed.push_back({g.label, std::move(p)});
        }
        if (!is_plausibly_ample(model.polarization, CurveGeneratorSet(std::move(pushed), true)))
            throw where("polarization fails the positivity check against the blow-up generators of stratum \"" +
                        label + "\"");
    }
}

} // namespace seshadri
