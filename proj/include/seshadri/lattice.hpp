#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "seshadri/error.hpp"

namespace seshadri {

using Matrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline std::int64_t checked(__int128 v, const char* what)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(std::string("integer overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

} // namespace detail

/*
 * Integer intersection lattice: a symmetric Gram matrix on a labeled basis.
 * Stands in for the Neron-Severi group of a surface with its intersection
 * pairing.
 */
class IntersectionLattice
{
public:
    IntersectionLattice(Matrix gram, std::vector<std::string> labels)
        : gram_(std::move(gram)), labels_(std::move(labels))
    {
        const auto n = gram_.size();
        if (n == 0)
            throw Error("lattice rank must be positive");
        if (labels_.size() != n)
            throw Error("lattice has " + std::to_string(labels_.size()) + " basis labels for rank " +
                        std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            if (gram_[i].size() != n)
                throw Error("gram row " + std::to_string(i) + " has length " +
                            std::to_string(gram_[i].size()) + ", expected " + std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (gram_[i][j] != gram_[j][i])
                    throw Error("gram asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        std::set<std::string> seen;
        for (const auto& l : labels_) {
            if (l.empty())
                throw Error("empty basis label");
            if (!seen.insert(l).second)
                throw Error("duplicate basis label \"" + l + "\"");
        }
    }

    std::size_t rank() const { return gram_.size(); }
    const Matrix& gram() const { return gram_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    std::int64_t entry(std::size_t i, std::size_t j) const { return gram_.at(i).at(j); }

    std::optional<std::size_t> index_of(const std::string& label) const
    {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    friend bool operator==(const IntersectionLattice&, const IntersectionLattice&) = default;

private:
    Matrix gram_;
    std::vector<std::string> labels_;
};

using LatticePtr = std::shared_ptr<const IntersectionLattice>;

inline LatticePtr make_lattice(Matrix gram, std::vector<std::string> labels)
{
    return std::make_shared<const IntersectionLattice>(std::move(gram), std::move(labels));
}

/// Integer divisor class in coordinates of a lattice basis.
class DivisorClass
{
public:
    DivisorClass(LatticePtr lattice, std::vector<std::int64_t> coords)
        : lattice_(std::move(lattice)), coords_(std::move(coords))
    {
        if (!lattice_)
            throw Error("divisor class without lattice");
        if (coords_.size() != lattice_->rank())
            throw Error("class has " + std::to_string(coords_.size()) + " coordinates, lattice rank is " +
                        std::to_string(lattice_->rank()));
    }

    static DivisorClass zero(LatticePtr lattice)
    {
        auto n = lattice->rank();
        return DivisorClass(std::move(lattice), std::vector<std::int64_t>(n, 0));
    }

    static DivisorClass basis(LatticePtr lattice, const std::string& label)
    {
        auto idx = lattice->index_of(label);
        if (!idx)
            throw Error("unknown basis label \"" + label + "\"");
        auto c = zero(std::move(lattice));
        c.coords_[*idx] = 1;
        return c;
    }

    const LatticePtr& lattice() const { return lattice_; }
    const std::vector<std::int64_t>& coords() const { return coords_; }
    std::int64_t operator[](std::size_t i) const { return coords_.at(i); }

    bool is_zero() const
    {
        return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
    }

    bool same_lattice(const DivisorClass& o) const
    {
        return lattice_ == o.lattice_ || *lattice_ == *o.lattice_;
    }

    DivisorClass& operator+=(const DivisorClass& o)
    {
        require_same(o);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = detail::checked(static_cast<__int128>(coords_[i]) + o.coords_[i], "class sum");
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o)
    {
        require_same(o);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = detail::checked(static_cast<__int128>(coords_[i]) - o.coords_[i], "class difference");
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(std::int64_t k, DivisorClass a)
    {
        for (auto& c : a.coords_)
            c = detail::checked(static_cast<__int128>(k) * c, "class scaling");
        return a;
    }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b)
    {
        return a.same_lattice(b) && a.coords_ == b.coords_;
    }

    void require_same(const DivisorClass& o) const
    {
        if (!same_lattice(o))
            throw Error("lattice mismatch between divisor classes");
    }

private:
    LatticePtr lattice_;
    std::vector<std::int64_t> coords_;
};

/// Intersection number u^T G v.
inline std::int64_t pair(const DivisorClass& u, const DivisorClass& v)
{
    u.require_same(v);
    const auto& g = u.lattice()->gram();
    __int128 acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (u[i] == 0)
            continue;
        __int128 row = 0;
        for (std::size_t j = 0; j < g.size(); ++j)
            row += static_cast<__int128>(g[i][j]) * v[j];
        acc += static_cast<__int128>(u[i]) * row;
    }
    return detail::checked(acc, "intersection pairing");
}

struct CurveGenerator
{
    std::string label;
    DivisorClass cls;
};

/*
 * A finite list of curve classes together with the caller's assertion that
 * they generate the effective curve cone.  Nef tests are only meaningful
 * relative to such a list; `complete` records whether the caller vouches
 * for it.
 */
class CurveGeneratorSet
{
public:
    CurveGeneratorSet() = default;
    CurveGeneratorSet(std::vector<CurveGenerator> gens, bool complete)
        : gens_(std::move(gens)), complete_(complete)
    {
        for (const auto& g : gens_)
            if (g.cls.is_zero())
                throw Error("curve generator \"" + g.label + "\" has zero class");
        for (std::size_t i = 1; i < gens_.size(); ++i)
            gens_[0].cls.require_same(gens_[i].cls);
    }

    const std::vector<CurveGenerator>& generators() const { return gens_; }
    bool complete() const { return complete_; }
    bool empty() const { return gens_.empty(); }

private:
    std::vector<CurveGenerator> gens_;
    bool complete_ = false;
};

/// D.C >= 0 for every generator C. Requires a complete generator set.
inline bool is_nef_against(const DivisorClass& d, const CurveGeneratorSet& gens)
{
    if (!gens.complete())
        throw Error("nef test against a generator set without completeness assertion");
    return std::all_of(gens.generators().begin(), gens.generators().end(),
                       [&](const CurveGenerator& c) { return pair(d, c.cls) >= 0; });
}

/// Nakai-Moishezon shaped check: D^2 > 0 and D.C > 0 for every listed curve.
inline bool is_plausibly_ample(const DivisorClass& d, const CurveGeneratorSet& curves)
{
    if (pair(d, d) <= 0)
        return false;
    return std::all_of(curves.generators().begin(), curves.generators().end(),
                       [&](const CurveGenerator& c) { return pair(d, c.cls) > 0; });
}

/// Lattice of the blow-up at one point: adjoin e with e^2 = -1, orthogonal to the rest.
inline LatticePtr extend_blowup(const IntersectionLattice& lat, const std::string& label)
{
    if (lat.index_of(label))
        throw Error("duplicate basis label \"" + label + "\" in blow-up");
    auto n = lat.rank();
    Matrix g(n + 1, std::vector<std::int64_t>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g[i][j] = lat.entry(i, j);
    g[n][n] = -1;
    auto labels = lat.basis_labels();
    labels.push_back(label);
    return make_lattice(std::move(g), std::move(labels));
}

/// Pullback pi^* of a class to the blow-up lattice (exceptional coordinate 0).
inline DivisorClass lift(const DivisorClass& d, const LatticePtr& blowup)
{
    if (blowup->rank() != d.lattice()->rank() + 1)
        throw Error("lift target is not a one-point blow-up of the class lattice");
    auto c = d.coords();
    c.push_back(0);
    return DivisorClass(blowup, std::move(c));
}

/// Pushforward pi_* from the blow-up lattice (drops the exceptional coordinate).
inline DivisorClass push_forward(const DivisorClass& d, const LatticePtr& base)
{
    if (d.lattice()->rank() != base->rank() + 1)
        throw Error("push_forward source is not a one-point blow-up of the target lattice");
    auto c = d.coords();
    c.pop_back();
    return DivisorClass(base, std::move(c));
}

/// The exceptional class of a lattice built by extend_blowup (last basis vector).
inline DivisorClass exceptional_class(const LatticePtr& blowup)
{
    std::vector<std::int64_t> coords(blowup->rank(), 0);
    coords.back() = 1;
    return DivisorClass(blowup, std::move(coords));
}

} // namespace seshadri
