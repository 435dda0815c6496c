#pragma once

// Exact field scalars: Q (GMP rationals), F_p (runtime prime), Q(i) (pairs of rationals).
// A FieldTag names the field a configuration lives in; FieldTraits<S> bridges a scalar
// type to parsing, printing and field checks so the rest of the library stays generic.

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "incidence/errors.hpp"

namespace incidence {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

/// Residue modulo a runtime prime. A default-constructed or int-constructed value is an
/// unbound integer literal; it binds to the modulus of whatever it is combined with.
class ModP {
public:
    ModP() = default;
    ModP(int literal) : value_(literal) {}
    ModP(std::int64_t value, std::uint64_t modulus);

    bool bound() const { return modulus_ != 0; }
    std::uint64_t modulus() const { return modulus_; }
    /// Canonical residue in [0, p); requires a bound value.
    std::uint64_t residue() const;
    /// Signed literal value; only meaningful for unbound values.
    std::int64_t literal() const { return value_; }

    ModP inverse() const;

    static ModP from_literal(std::int64_t v)
    {
        ModP out;
        out.value_ = v;
        return out;
    }

    friend ModP operator+(const ModP& a, const ModP& b);
    friend ModP operator-(const ModP& a, const ModP& b);
    friend ModP operator*(const ModP& a, const ModP& b);
    friend ModP operator/(const ModP& a, const ModP& b);
    friend ModP operator-(const ModP& a);
    friend bool operator==(const ModP& a, const ModP& b);
    friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }

    ModP& operator+=(const ModP& o) { return *this = *this + o; }
    ModP& operator-=(const ModP& o) { return *this = *this - o; }
    ModP& operator*=(const ModP& o) { return *this = *this * o; }
    ModP& operator/=(const ModP& o) { return *this = *this / o; }

    bool is_zero() const { return value_ == 0; }

private:
    static std::uint64_t common_modulus(const ModP& a, const ModP& b);
    static std::uint64_t reduce(std::int64_t v, std::uint64_t p);
    ModP bind(std::uint64_t p) const;

    std::int64_t value_ = 0;
    std::uint64_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ModP& v);

/// Element of Q(i).
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(int v) : re(v) {}
    GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i))
    {
        re.canonicalize();
        im.canonicalize();
    }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussianRational conjugate() const { return {re, -im}; }
    Rational norm() const { return Rational(re * re + im * im); }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(GaussianRational a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
bool operator==(const GaussianRational& a, const GaussianRational& b);
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
std::ostream& operator<<(std::ostream& os, const GaussianRational& v);

enum class FieldKind { rational, prime, gaussian };

/// Names the ambient field of a configuration: "rational", "fp:<prime>" or "gaussian_rational".
struct FieldTag {
    FieldKind kind = FieldKind::rational;
    std::uint64_t prime = 0;

    static FieldTag rational() { return {}; }
    static FieldTag gaussian() { return {FieldKind::gaussian, 0}; }
    /// Validates primality; throws InvalidInput otherwise.
    static FieldTag prime_field(std::uint64_t p);
    static FieldTag parse(const std::string& text);

    std::string to_string() const;
    friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static constexpr FieldKind kind = FieldKind::rational;
    static Rational from_rational(const Rational& q, const FieldTag&) { return q; }
    static Rational parse(const std::string& text, const FieldTag&) { return parse_rational(text); }
    static std::string to_string(const Rational& q) { return incidence::to_string(q); }
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
    static bool less(const Rational& a, const Rational& b) { return a < b; }
    static std::optional<std::uint64_t> modulus(const Rational&) { return std::nullopt; }
};

template <>
struct FieldTraits<ModP> {
    static constexpr FieldKind kind = FieldKind::prime;
    static ModP from_rational(const Rational& q, const FieldTag& tag);
    static ModP parse(const std::string& text, const FieldTag& tag);
    static std::string to_string(const ModP& v);
    static bool is_zero(const ModP& v) { return v.is_zero(); }
    static bool less(const ModP& a, const ModP& b);
    static std::optional<std::uint64_t> modulus(const ModP& v)
    {
        return v.bound() ? std::optional<std::uint64_t>(v.modulus()) : std::nullopt;
    }
};

template <>
struct FieldTraits<GaussianRational> {
    static constexpr FieldKind kind = FieldKind::gaussian;
    static GaussianRational from_rational(const Rational& q, const FieldTag&) { return {q, 0}; }
    static GaussianRational parse(const std::string& text, const FieldTag& tag);
    static std::string to_string(const GaussianRational& v);
    static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
    static bool less(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    }
    static std::optional<std::uint64_t> modulus(const GaussianRational&) { return std::nullopt; }
};

template <class S>
bool is_zero(const S& s)
{
    return FieldTraits<S>::is_zero(s);
}

/// Field division for the scalar types; polynomial rings overload this for exact quotients.
template <class S>
S exact_div(const S& a, const S& b)
{
    return S(a / b);
}

/// Scalars compatible with a tag, e.g. ModP values bound to the tag's prime.
template <class S>
S scalar_from_int(long v, const FieldTag& tag)
{
    return FieldTraits<S>::from_rational(Rational(v), tag);
}

template <class S>
std::string scalar_to_string(const S& s)
{
    return FieldTraits<S>::to_string(s);
}

} // namespace incidence

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    typedef mpq_class Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<incidence::ModP> : GenericNumTraits<incidence::ModP> {
    typedef incidence::ModP Real;
    typedef incidence::ModP NonInteger;
    typedef incidence::ModP Nested;
    typedef incidence::ModP Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 4,
        MulCost = 8
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<incidence::GaussianRational> : GenericNumTraits<incidence::GaussianRational> {
    typedef incidence::GaussianRational Real;
    typedef incidence::GaussianRational NonInteger;
    typedef incidence::GaussianRational Nested;
    typedef incidence::GaussianRational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 12,
        AddCost = 300,
        MulCost = 400
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

} // namespace Eigen
