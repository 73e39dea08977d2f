#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "seshadri/error.hpp"

namespace seshadri {

using BigInt = boost::multiprecision::cpp_int;

/*
 * Exact rational number, always stored reduced with a positive denominator.
 *
 * Serialized form is "p/q", or "p" when q = 1.  Decimal notation is never
 * accepted by parse(): every numeric boundary value stays exact.
 */
class Rational
{
public:
    Rational() = default;
    Rational(std::int64_t n) : value_(n) {} // NOLINT(google-explicit-constructor)
    explicit Rational(const BigInt& n) : value_(n) {}

    Rational(const BigInt& num, const BigInt& den)
    {
        if (den == 0)
            throw Error("rational with zero denominator");
        value_ = boost::multiprecision::cpp_rational(num, den);
    }

    static Rational parse(std::string_view text)
    {
        auto is_int = [](std::string_view s) {
            if (!s.empty() && (s.front() == '-' || s.front() == '+'))
                s.remove_prefix(1);
            if (s.empty())
                return false;
            for (char ch : s)
                if (ch < '0' || ch > '9')
                    return false;
            return true;
        };
        auto to_big = [](std::string_view s) {
            if (!s.empty() && s.front() == '+')
                s.remove_prefix(1);
            return BigInt(std::string(s));
        };

        auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            if (!is_int(text))
                throw Error("malformed rational \"" + std::string(text) + "\" (expected p or p/q)");
            return Rational(to_big(text));
        }
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_int(num) || den.empty() || !is_int(den) || den.front() == '-' || den.front() == '+')
            throw Error("malformed rational \"" + std::string(text) + "\" (expected p or p/q)");
        BigInt d = to_big(den);
        if (d == 0)
            throw Error("malformed rational \"" + std::string(text) + "\" (zero denominator)");
        return Rational(to_big(num), d);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_integer() const { return denominator() == 1; }
    int sign() const { return value_.sign(); }

    /// Canonical serialization: "p/q", or "p" when the denominator is 1.
    std::string str() const
    {
        if (is_integer())
            return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    /// Always "p/q", used by plain-text output.
    std::string fraction_str() const { return numerator().str() + "/" + denominator().str(); }

    /// Approximate value, for human-readable columns only.
    double approx() const { return value_.convert_to<double>(); }

    Rational operator-() const { return Rational(boost::multiprecision::cpp_rational(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.sign() == 0)
            throw Error("division by zero rational");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        if (a.value_ < b.value_)
            return std::strong_ordering::less;
        if (b.value_ < a.value_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}

    boost::multiprecision::cpp_rational value_;
};

/// floor(sqrt(n)) for n >= 0.
inline std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        throw Error("isqrt of negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n)
        --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_perfect_square(std::int64_t n)
{
    if (n < 0)
        return false;
    auto r = isqrt(n);
    return r * r == n;
}

/// The ratio t/m of an L-degree to a multiplicity, reduced.
inline Rational ratio(std::int64_t t, std::int64_t m)
{
    if (t < 1 || m < 1)
        throw Error("ratio requires positive degree and multiplicity, got t=" + std::to_string(t) +
                    ", m=" + std::to_string(m));
    return Rational(BigInt(t), BigInt(m));
}

/*
 * A Seshadri-type value: either an exact rational or the irrational
 * square root of a non-square degree.  Square roots of perfect squares are
 * normalized to the exact branch, so any SqrtDeg value is irrational.
 */
class SeshadriValue
{
public:
    struct SqrtDeg
    {
        std::int64_t d;
        friend bool operator==(const SqrtDeg&, const SqrtDeg&) = default;
    };

    SeshadriValue() = default;

    static SeshadriValue exact(Rational q) { return SeshadriValue(std::move(q)); }

    /// sqrt(d), normalized to Exact when d is a perfect square.
    static SeshadriValue sqrt_of(std::int64_t d)
    {
        if (d < 1)
            throw Error("sqrt_of requires a positive degree, got " + std::to_string(d));
        if (is_perfect_square(d))
            return SeshadriValue(Rational(isqrt(d)));
        return SeshadriValue(SqrtDeg{d});
    }

    /// The irrational branch only; a perfect square d is rejected.
    static SeshadriValue sqrt_deg(std::int64_t d)
    {
        if (d < 1)
            throw Error("SqrtDeg requires a positive degree, got " + std::to_string(d));
        if (is_perfect_square(d))
            throw Error("SqrtDeg(" + std::to_string(d) + ") must be stored as Exact(" +
                        std::to_string(isqrt(d)) + "): perfect square");
        return SeshadriValue(SqrtDeg{d});
    }

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }

    const Rational& rational() const
    {
        if (!is_exact())
            throw Error("value " + str() + " is irrational");
        return std::get<Rational>(v_);
    }

    std::int64_t radicand() const
    {
        if (is_exact())
            throw Error("value " + str() + " is not a square root");
        return std::get<SqrtDeg>(v_).d;
    }

    std::string str() const
    {
        if (is_exact())
            return std::get<Rational>(v_).str();
        return "sqrt(" + std::to_string(std::get<SqrtDeg>(v_).d) + ")";
    }

    /// Plain-text form: rationals always as "p/q".
    std::string text() const
    {
        if (is_exact())
            return std::get<Rational>(v_).fraction_str();
        return str();
    }

    double approx() const
    {
        if (is_exact())
            return std::get<Rational>(v_).approx();
        return std::sqrt(static_cast<double>(std::get<SqrtDeg>(v_).d));
    }

    friend std::strong_ordering cmp_value(const SeshadriValue& u, const SeshadriValue& v)
    {
        if (u.is_exact() && v.is_exact())
            return u.rational() <=> v.rational();
        if (!u.is_exact() && !v.is_exact())
            return u.radicand() <=> v.radicand();
        if (u.is_exact())
            return cmp_exact_sqrt(u.rational(), v.radicand());
        return 0 <=> cmp_exact_sqrt(v.rational(), u.radicand());
    }

    friend std::strong_ordering operator<=>(const SeshadriValue& u, const SeshadriValue& v)
    {
        return cmp_value(u, v);
    }
    friend bool operator==(const SeshadriValue& u, const SeshadriValue& v) { return cmp_value(u, v) == 0; }

    friend std::ostream& operator<<(std::ostream& os, const SeshadriValue& v) { return os << v.str(); }

private:
    explicit SeshadriValue(Rational q) : v_(std::move(q)) {}
    explicit SeshadriValue(SqrtDeg s) : v_(s) {}

    // q versus sqrt(d): sign first, then q^2 against d.
    static std::strong_ordering cmp_exact_sqrt(const Rational& q, std::int64_t d)
    {
        if (q.sign() <= 0)
            return std::strong_ordering::less;
        return q * q <=> Rational(d);
    }

    std::variant<Rational, SqrtDeg> v_{Rational{}};
};

inline const SeshadriValue& min_value(const SeshadriValue& a, const SeshadriValue& b)
{
    return cmp_value(b, a) < 0 ? b : a;
}

inline const SeshadriValue& max_value(const SeshadriValue& a, const SeshadriValue& b)
{
    return cmp_value(b, a) > 0 ? b : a;
}

} // namespace seshadri
