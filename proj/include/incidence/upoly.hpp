#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incidence/errors.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

/// Dense univariate polynomial over an exact field, coefficients in ascending degree and
/// never carrying a zero leading coefficient.
template <class S>
class UnivariatePolynomial {
public:
    UnivariatePolynomial() = default;
    UnivariatePolynomial(int constant) : UnivariatePolynomial(S(constant)) {}
    explicit UnivariatePolynomial(S constant) : coeffs_{std::move(constant)} { trim(); }
    explicit UnivariatePolynomial(std::vector<S> ascending) : coeffs_(std::move(ascending)) { trim(); }

    static UnivariatePolynomial monomial(S c, int power)
    {
        std::vector<S> v(static_cast<std::size_t>(power) + 1, S(0));
        v.back() = std::move(c);
        return UnivariatePolynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    S coeff(int k) const
    {
        return (k < 0 || k > degree()) ? S(0) : coeffs_[static_cast<std::size_t>(k)];
    }
    const S& leading() const { return coeffs_.back(); }
    const std::vector<S>& coefficients() const { return coeffs_; }

    S operator()(const S& x) const
    {
        S acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = S(acc * x + *it);
        return acc;
    }

    UnivariatePolynomial derivative() const
    {
        if (degree() < 1) return {};
        std::vector<S> out;
        for (int k = 1; k <= degree(); ++k) out.push_back(S(coeffs_[static_cast<std::size_t>(k)] * S(k)));
        return UnivariatePolynomial(std::move(out));
    }

    UnivariatePolynomial monic() const
    {
        if (is_zero()) return *this;
        std::vector<S> out;
        for (const auto& c : coeffs_) out.push_back(S(c / leading()));
        return UnivariatePolynomial(std::move(out));
    }

    UnivariatePolynomial scaled(const S& s) const
    {
        std::vector<S> out;
        for (const auto& c : coeffs_) out.push_back(S(c * s));
        return UnivariatePolynomial(std::move(out));
    }

    UnivariatePolynomial& operator+=(const UnivariatePolynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    UnivariatePolynomial& operator-=(const UnivariatePolynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }

    friend UnivariatePolynomial operator+(UnivariatePolynomial a, const UnivariatePolynomial& b) { return a += b; }
    friend UnivariatePolynomial operator-(UnivariatePolynomial a, const UnivariatePolynomial& b) { return a -= b; }
    friend UnivariatePolynomial operator-(const UnivariatePolynomial& a) { return a.scaled(S(-1)); }
    friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> out(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (incidence::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += S(a.coeffs_[i] * b.coeffs_[j]);
        }
        return UnivariatePolynomial(std::move(out));
    }
    UnivariatePolynomial& operator*=(const UnivariatePolynomial& o) { return *this = *this * o; }

    friend bool operator==(const UnivariatePolynomial& a, const UnivariatePolynomial& b)
    {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
            if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
        return true;
    }
    friend bool operator!=(const UnivariatePolynomial& a, const UnivariatePolynomial& b) { return !(a == b); }

    /// Euclidean division over the field: a = q b + r, deg r < deg b.
    friend std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& a,
                                                                        const UnivariatePolynomial& b)
    {
        if (b.is_zero()) throw InvalidInput("polynomial division by zero");
        std::vector<S> rem = a.coeffs_;
        const int db = b.degree();
        if (a.degree() < db) return {UnivariatePolynomial(), a};
        std::vector<S> quot(static_cast<std::size_t>(a.degree() - db + 1), S(0));
        for (int k = a.degree(); k >= db; --k) {
            const S& top = rem[static_cast<std::size_t>(k)];
            if (incidence::is_zero(top)) continue;
            S f = S(top / b.leading());
            quot[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= S(f * b.coeffs_[static_cast<std::size_t>(j)]);
        }
        return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
    }

    std::string to_string(const std::string& var = "x") const
    {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const S& c = coeffs_[static_cast<std::size_t>(k)];
            if (incidence::is_zero(c)) continue;
            if (!out.empty()) out += " + ";
            out += "(" + scalar_to_string(c) + ")";
            if (k >= 1) out += "*" + var;
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && incidence::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<S> coeffs_;
};

template <class S>
using UPoly = UnivariatePolynomial<S>;

template <class S>
bool is_zero(const UnivariatePolynomial<S>& p)
{
    return p.is_zero();
}

template <class S>
std::optional<UnivariatePolynomial<S>> try_divide(const UnivariatePolynomial<S>& a, const UnivariatePolynomial<S>& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

/// Exact quotient in F[x]; a nonzero remainder is a logic error of the caller.
template <class S>
UnivariatePolynomial<S> exact_div(const UnivariatePolynomial<S>& a, const UnivariatePolynomial<S>& b)
{
    auto q = try_divide(a, b);
    if (!q) throw InternalConsistencyError("inexact polynomial division");
    return *q;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class S>
UnivariatePolynomial<S> gcd(UnivariatePolynomial<S> a, UnivariatePolynomial<S> b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class S>
UnivariatePolynomial<S> squarefree_part(const UnivariatePolynomial<S>& p)
{
    if (p.degree() < 1) return p;
    return exact_div(p, gcd(p, p.derivative())).monic();
}

} // namespace incidence

namespace Eigen {

template <class S>
struct NumTraits<incidence::UnivariatePolynomial<S>> : GenericNumTraits<incidence::UnivariatePolynomial<S>> {
    typedef incidence::UnivariatePolynomial<S> Real;
    typedef incidence::UnivariatePolynomial<S> NonInteger;
    typedef incidence::UnivariatePolynomial<S> Nested;
    typedef incidence::UnivariatePolynomial<S> Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 400,
        MulCost = 1000
    };
};

} // namespace Eigen
