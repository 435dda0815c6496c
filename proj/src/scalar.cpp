#include "incidence/scalar.hpp"

#include <sstream>

namespace incidence {

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// ModP

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t(1) << 32;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::int64_t checked(bool overflow, std::int64_t v)
{
    if (overflow) throw InvalidInput("integer literal overflow in unbound F_p arithmetic");
    return v;
}

} // namespace

ModP::ModP(std::int64_t value, std::uint64_t modulus) : modulus_(modulus)
{
    if (modulus < 2 || modulus >= kMaxModulus)
        throw InvalidInput("F_p modulus out of range: " + std::to_string(modulus));
    value_ = static_cast<std::int64_t>(reduce(value, modulus));
}

std::uint64_t ModP::reduce(std::int64_t v, std::uint64_t p)
{
    auto r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t ModP::residue() const
{
    if (!bound()) throw InvalidInput("residue of an unbound F_p literal");
    return static_cast<std::uint64_t>(value_);
}

std::uint64_t ModP::common_modulus(const ModP& a, const ModP& b)
{
    if (a.bound() && b.bound() && a.modulus_ != b.modulus_)
        throw FieldMismatch("F_" + std::to_string(a.modulus_) + " combined with F_" +
                            std::to_string(b.modulus_));
    return a.bound() ? a.modulus_ : b.modulus_;
}

ModP ModP::bind(std::uint64_t p) const
{
    if (bound() || p == 0) return *this;
    return ModP(value_, p);
}

ModP ModP::inverse() const
{
    if (!bound()) throw InvalidInput("inverse of an unbound F_p literal");
    if (value_ == 0) throw InvalidInput("division by zero in F_" + std::to_string(modulus_));
    // extended Euclid on (value, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(modulus_), new_r = value_;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return ModP(t, modulus_);
}

ModP operator+(const ModP& a, const ModP& b)
{
    auto p = ModP::common_modulus(a, b);
    if (p == 0) {
        std::int64_t out;
        const bool overflow = __builtin_add_overflow(a.value_, b.value_, &out);
        return ModP::from_literal(checked(overflow, out));
    }
    auto x = a.bind(p), y = b.bind(p);
    return ModP(static_cast<std::int64_t>((static_cast<std::uint64_t>(x.value_) + y.value_) % p), p);
}

ModP operator-(const ModP& a)
{
    if (!a.bound()) return ModP::from_literal(-a.value_);
    return ModP(-a.value_, a.modulus_);
}

ModP operator-(const ModP& a, const ModP& b) { return a + (-b); }

ModP operator*(const ModP& a, const ModP& b)
{
    auto p = ModP::common_modulus(a, b);
    if (p == 0) {
        std::int64_t out;
        const bool overflow = __builtin_mul_overflow(a.value_, b.value_, &out);
        return ModP::from_literal(checked(overflow, out));
    }
    auto x = a.bind(p), y = b.bind(p);
    return ModP(static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(x.value_),
                                                  static_cast<std::uint64_t>(y.value_), p)),
                p);
}

ModP operator/(const ModP& a, const ModP& b)
{
    auto p = ModP::common_modulus(a, b);
    if (p == 0) {
        if (b.value_ == 0 || a.value_ % b.value_ != 0)
            throw InvalidInput("inexact division of unbound F_p literals");
        return ModP::from_literal(a.value_ / b.value_);
    }
    return a.bind(p) * b.bind(p).inverse();
}

bool operator==(const ModP& a, const ModP& b)
{
    auto p = ModP::common_modulus(a, b);
    if (p == 0) return a.value_ == b.value_;
    return a.bind(p).value_ == b.bind(p).value_;
}

std::ostream& operator<<(std::ostream& os, const ModP& v)
{
    return os << FieldTraits<ModP>::to_string(v);
}

ModP FieldTraits<ModP>::from_rational(const Rational& q, const FieldTag& tag)
{
    if (tag.kind != FieldKind::prime) throw FieldMismatch("F_p scalar requested for field " + tag.to_string());
    const auto p = tag.prime;
    Integer num = q.get_num() % Integer(static_cast<unsigned long>(p));
    Integer den = q.get_den() % Integer(static_cast<unsigned long>(p));
    if (den == 0) throw InvalidInput("denominator divisible by " + std::to_string(p));
    return ModP(num.get_si(), p) / ModP(den.get_si(), p);
}

ModP FieldTraits<ModP>::parse(const std::string& text, const FieldTag& tag)
{
    return from_rational(parse_rational(text), tag);
}

std::string FieldTraits<ModP>::to_string(const ModP& v)
{
    return v.bound() ? std::to_string(v.residue()) : std::to_string(v.literal());
}

bool FieldTraits<ModP>::less(const ModP& a, const ModP& b)
{
    auto key = [](const ModP& v) { return v.bound() ? static_cast<std::int64_t>(v.residue()) : v.literal(); };
    return key(a) < key(b);
}

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    Rational n = o.norm();
    if (sgn(n) == 0) throw InvalidInput("division by zero in Q(i)");
    *this *= o.conjugate();
    re /= n;
    im /= n;
    return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }

std::ostream& operator<<(std::ostream& os, const GaussianRational& v)
{
    return os << FieldTraits<GaussianRational>::to_string(v);
}

GaussianRational FieldTraits<GaussianRational>::parse(const std::string& raw, const FieldTag&)
{
    std::string text;
    for (char ch : raw)
        if (ch != ' ') text += ch;
    if (text.empty()) throw InvalidInput("empty Q(i) literal");
    if (text.back() != 'i') return {parse_rational(text), 0};
    text.pop_back();
    // split at the last sign that starts the imaginary part
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size(); k-- > 1;)
        if (text[k] == '+' || text[k] == '-') {
            split = k;
            break;
        }
    if (split == std::string::npos) {
        if (text.empty() || text == "+") return {0, 1};
        if (text == "-") return {0, -1};
        return {0, parse_rational(text)};
    }
    std::string im = text.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    if (im[0] == '+') im.erase(0, 1);
    return {parse_rational(text.substr(0, split)), parse_rational(im)};
}

std::string FieldTraits<GaussianRational>::to_string(const GaussianRational& v)
{
    std::string out = incidence::to_string(v.re);
    if (sgn(v.im) < 0)
        out += "-" + incidence::to_string(Rational(-v.im));
    else
        out += "+" + incidence::to_string(v.im);
    return out + " i";
}

// ---------------------------------------------------------------------------
// FieldTag and rationals

FieldTag FieldTag::prime_field(std::uint64_t p)
{
    if (!is_prime(p)) throw InvalidInput("F_p requires a prime modulus, got " + std::to_string(p));
    if (p >= kMaxModulus) throw InvalidInput("F_p modulus too large: " + std::to_string(p));
    return {FieldKind::prime, p};
}

FieldTag FieldTag::parse(const std::string& text)
{
    if (text == "rational") return rational();
    if (text == "gaussian_rational") return gaussian();
    if (text.rfind("fp:", 0) == 0) {
        const std::string digits = text.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidInput("bad prime in field tag: " + text);
        return prime_field(std::stoull(digits));
    }
    throw InvalidInput("unknown field tag: " + text);
}

std::string FieldTag::to_string() const
{
    switch (kind) {
    case FieldKind::rational: return "rational";
    case FieldKind::gaussian: return "gaussian_rational";
    case FieldKind::prime: return "fp:" + std::to_string(prime);
    }
    return "?";
}

Rational parse_rational(const std::string& raw)
{
    std::string text;
    for (char ch : raw)
        if (ch != ' ') text += ch;
    if (text.empty() || text.find_first_not_of("+-0123456789/") != std::string::npos)
        throw InvalidInput("bad rational literal: '" + raw + "'");
    if (text[0] == '+') text.erase(0, 1);
    const auto slash = text.find('/');
    Integer num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = Integer(text);
        } else {
            num = Integer(text.substr(0, slash));
            const std::string d = text.substr(slash + 1);
            if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos)
                throw InvalidInput("bad rational literal: '" + raw + "'");
            den = Integer(d);
        }
    } catch (const std::invalid_argument&) {
        throw InvalidInput("bad rational literal: '" + raw + "'");
    }
    if (den == 0) throw InvalidInput("zero denominator: '" + raw + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

} // namespace incidence
