#pragma once

// Sparse bivariate polynomials with a declared degree bound, plus the algebra the curve
// machinery needs: gcd (primitive PRS over F[x][y]), exact division, Sylvester resultants.
//
// Monomial order: graded lexicographic with x > y. Canonical form scales the leading
// coefficient under that order to 1.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incidence/errors.hpp"
#include "incidence/linalg.hpp"
#include "incidence/scalar.hpp"
#include "incidence/upoly.hpp"

namespace incidence {

struct Monomial {
    int x = 0;
    int y = 0;

    int degree() const { return x + y; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Grlex with x > y, descending, so a map ordered by it starts at the leading term.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.x > b.x;
    }
};

enum class Variable { x, y };

template <class S>
class BivariatePolynomial {
public:
    using Terms = std::map<Monomial, S, GrlexGreater>;

    BivariatePolynomial() = default;
    explicit BivariatePolynomial(int degree_bound) : bound_(degree_bound)
    {
        if (degree_bound < 0) throw InvalidInput("negative degree bound");
    }
    BivariatePolynomial(int degree_bound, std::initializer_list<std::pair<Monomial, S>> terms)
        : BivariatePolynomial(degree_bound)
    {
        for (const auto& [m, c] : terms) add_term(m.x, m.y, c);
    }

    static BivariatePolynomial constant(S c, int degree_bound = 0)
    {
        BivariatePolynomial p(degree_bound);
        p.set(0, 0, std::move(c));
        return p;
    }

    int degree_bound() const { return bound_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }

    int total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
    int degree_in(Variable v) const
    {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, v == Variable::x ? m.x : m.y);
        return d;
    }

    S coeff(int i, int j) const
    {
        auto it = terms_.find(Monomial{i, j});
        return it == terms_.end() ? S(0) : it->second;
    }

    void set(int i, int j, S c)
    {
        check_exponent(i, j);
        if (incidence::is_zero(c))
            terms_.erase(Monomial{i, j});
        else
            terms_[Monomial{i, j}] = std::move(c);
    }

    void add_term(int i, int j, const S& c)
    {
        check_exponent(i, j);
        if (incidence::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
        if (!inserted) {
            it->second += c;
            if (incidence::is_zero(it->second)) terms_.erase(it);
        }
    }

    const Monomial& leading_monomial() const
    {
        if (is_zero()) throw InvalidInput("leading monomial of the zero polynomial");
        return terms_.begin()->first;
    }
    const S& leading_coefficient() const
    {
        if (is_zero()) throw InvalidInput("leading coefficient of the zero polynomial");
        return terms_.begin()->second;
    }

    /// Scaled so that the grlex-leading coefficient is 1. The zero polynomial stays zero.
    BivariatePolynomial canonical() const
    {
        if (is_zero()) return *this;
        const S lead = leading_coefficient();
        BivariatePolynomial out(bound_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, S(c / lead));
        return out;
    }

    BivariatePolynomial with_degree_bound(int d) const
    {
        if (total_degree() > d)
            throw InvalidInput("polynomial of degree " + std::to_string(total_degree()) +
                               " exceeds degree bound " + std::to_string(d));
        BivariatePolynomial out = *this;
        out.bound_ = d;
        return out;
    }

    S operator()(const S& x, const S& y) const
    {
        if (is_zero()) return S(0);
        const int d = total_degree();
        std::vector<S> xs{S(1)}, ys{S(1)};
        for (int k = 1; k <= d; ++k) {
            xs.push_back(S(xs.back() * x));
            ys.push_back(S(ys.back() * y));
        }
        S acc(0);
        for (const auto& [m, c] : terms_)
            acc += S(c * xs[static_cast<std::size_t>(m.x)] * ys[static_cast<std::size_t>(m.y)]);
        return acc;
    }

    /// Value of the degree_bound() homogenization at [x:y:z].
    S evaluate_homogeneous(const S& x, const S& y, const S& z) const
    {
        const int d = bound_;
        std::vector<S> xs{S(1)}, ys{S(1)}, zs{S(1)};
        for (int k = 1; k <= d; ++k) {
            xs.push_back(S(xs.back() * x));
            ys.push_back(S(ys.back() * y));
            zs.push_back(S(zs.back() * z));
        }
        S acc(0);
        for (const auto& [m, c] : terms_)
            acc += S(c * xs[static_cast<std::size_t>(m.x)] * ys[static_cast<std::size_t>(m.y)] *
                     zs[static_cast<std::size_t>(d - m.degree())]);
        return acc;
    }

    BivariatePolynomial partial(Variable v) const
    {
        BivariatePolynomial out(std::max(bound_ - 1, 0));
        for (const auto& [m, c] : terms_) {
            const int e = v == Variable::x ? m.x : m.y;
            if (e == 0) continue;
            out.add_term(v == Variable::x ? m.x - 1 : m.x, v == Variable::y ? m.y - 1 : m.y, S(c * S(e)));
        }
        return out;
    }

    /// Swap the roles of x and y.
    BivariatePolynomial swapped() const
    {
        BivariatePolynomial out(bound_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.y, m.x}, c);
        return out;
    }

    /// Coefficients of y^0, y^1, ... as polynomials in x.
    std::vector<UPoly<S>> y_coefficients() const
    {
        std::vector<std::vector<S>> raw(static_cast<std::size_t>(std::max(degree_in(Variable::y) + 1, 0)));
        for (const auto& [m, c] : terms_) {
            auto& slot = raw[static_cast<std::size_t>(m.y)];
            if (static_cast<int>(slot.size()) <= m.x) slot.resize(static_cast<std::size_t>(m.x) + 1, S(0));
            slot[static_cast<std::size_t>(m.x)] = c;
        }
        std::vector<UPoly<S>> out;
        for (auto& r : raw) out.emplace_back(std::move(r));
        return out;
    }

    static BivariatePolynomial from_y_coefficients(const std::vector<UPoly<S>>& coeffs, int degree_bound)
    {
        BivariatePolynomial out(degree_bound);
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            for (int i = 0; i <= coeffs[j].degree(); ++i) {
                const auto& c = coeffs[j].coefficients()[static_cast<std::size_t>(i)];
                if (!incidence::is_zero(c)) out.add_term(i, static_cast<int>(j), c);
            }
        return out;
    }

    static BivariatePolynomial from_univariate(const UPoly<S>& u, Variable v, int degree_bound)
    {
        BivariatePolynomial out(degree_bound);
        for (int k = 0; k <= u.degree(); ++k)
            out.add_term(v == Variable::x ? k : 0, v == Variable::y ? k : 0, u.coeff(k));
        return out;
    }

    /// The univariate polynomial in y obtained by fixing x = x0.
    UPoly<S> at_x(const S& x0) const
    {
        std::vector<S> out(static_cast<std::size_t>(std::max(degree_in(Variable::y) + 1, 0)), S(0));
        const int dx = std::max(degree_in(Variable::x), 0);
        std::vector<S> xs{S(1)};
        for (int k = 1; k <= dx; ++k) xs.push_back(S(xs.back() * x0));
        for (const auto& [m, c] : terms_) out[static_cast<std::size_t>(m.y)] += S(c * xs[static_cast<std::size_t>(m.x)]);
        return UPoly<S>(std::move(out));
    }

    BivariatePolynomial scaled(const S& s) const
    {
        BivariatePolynomial out(bound_);
        if (incidence::is_zero(s)) return out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, S(c * s));
        return out;
    }

    BivariatePolynomial& operator+=(const BivariatePolynomial& o)
    {
        bound_ = std::max(bound_, o.bound_);
        for (const auto& [m, c] : o.terms_) add_term(m.x, m.y, c);
        return *this;
    }
    BivariatePolynomial& operator-=(const BivariatePolynomial& o)
    {
        bound_ = std::max(bound_, o.bound_);
        for (const auto& [m, c] : o.terms_) add_term(m.x, m.y, S(-c));
        return *this;
    }
    friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
    friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
    friend BivariatePolynomial operator-(const BivariatePolynomial& a) { return a.scaled(S(-1)); }
    friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b)
    {
        BivariatePolynomial out(a.bound_ + b.bound_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma.x + mb.x, ma.y + mb.y, S(ca * cb));
        return out;
    }

    /// Terms only; the degree bound is metadata.
    friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const BivariatePolynomial& a, const BivariatePolynomial& b) { return !(a == b); }

    /// f(a00 x + a01 y + b0, a10 x + a11 y + b1), keeping the degree bound.
    BivariatePolynomial substitute_affine(const S& a00, const S& a01, const S& b0, const S& a10, const S& a11,
                                          const S& b1) const
    {
        const int d = std::max(total_degree(), 0);
        BivariatePolynomial u(1), v(1);
        u.add_term(1, 0, a00);
        u.add_term(0, 1, a01);
        u.add_term(0, 0, b0);
        v.add_term(1, 0, a10);
        v.add_term(0, 1, a11);
        v.add_term(0, 0, b1);
        std::vector<BivariatePolynomial> up{constant(S(1))}, vp{constant(S(1))};
        for (int k = 1; k <= d; ++k) {
            up.push_back(up.back() * u);
            vp.push_back(vp.back() * v);
        }
        BivariatePolynomial out(bound_);
        for (const auto& [m, c] : terms_) {
            const auto term = up[static_cast<std::size_t>(m.x)] * vp[static_cast<std::size_t>(m.y)];
            for (const auto& [tm, tc] : term.terms_) out.add_term(tm.x, tm.y, S(c * tc));
        }
        return out;
    }

    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + scalar_to_string(c) + ")";
            if (m.x >= 1) out += "*x" + (m.x > 1 ? "^" + std::to_string(m.x) : std::string());
            if (m.y >= 1) out += "*y" + (m.y > 1 ? "^" + std::to_string(m.y) : std::string());
        }
        return out;
    }

private:
    void check_exponent(int i, int j) const
    {
        if (i < 0 || j < 0) throw InvalidInput("negative exponent");
        if (i + j > bound_)
            throw InvalidInput("monomial x^" + std::to_string(i) + " y^" + std::to_string(j) +
                               " exceeds degree bound " + std::to_string(bound_));
    }

    int bound_ = 0;
    Terms terms_;
};

template <class S>
BivariatePolynomial<S> poly_x(const S& c = S(1))
{
    return BivariatePolynomial<S>(1, {{Monomial{1, 0}, c}});
}

template <class S>
BivariatePolynomial<S> poly_y(const S& c = S(1))
{
    return BivariatePolynomial<S>(1, {{Monomial{0, 1}, c}});
}

namespace detail {

template <class S>
using YPoly = std::vector<UPoly<S>>;  // coefficients of y^k in F[x]

template <class S>
void trim(YPoly<S>& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class S>
UPoly<S> content(const YPoly<S>& p)
{
    UPoly<S> g;
    for (const auto& c : p) g = gcd(g, c);
    return g;
}

template <class S>
YPoly<S> divide_coefficients(const YPoly<S>& p, const UPoly<S>& c)
{
    YPoly<S> out;
    for (const auto& k : p) out.push_back(exact_div(k, c));
    return out;
}

template <class S>
YPoly<S> primitive_part(const YPoly<S>& p)
{
    if (p.empty()) return p;
    return divide_coefficients(p, content(p));
}

// lc(b)^k a reduced modulo b in F[x][y]; the multiplier is irrelevant once primitive parts are taken.
template <class S>
YPoly<S> pseudo_remainder(YPoly<S> a, const YPoly<S>& b)
{
    const int db = static_cast<int>(b.size()) - 1;
    const UPoly<S>& lb = b.back();
    trim(a);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const UPoly<S> la = a.back();
        for (auto& c : a) c *= lb;
        for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= la * b[static_cast<std::size_t>(k)];
        trim(a);
    }
    return a;
}

} // namespace detail

/// Greatest common divisor in canonical form. A constant result certifies that f and g
/// share no common component.
template <class S>
BivariatePolynomial<S> poly_gcd(const BivariatePolynomial<S>& f, const BivariatePolynomial<S>& g)
{
    if (f.is_zero() || g.is_zero()) throw InvalidInput("poly_gcd of the zero polynomial");
    using detail::YPoly;
    YPoly<S> a = f.y_coefficients(), b = g.y_coefficients();
    const UPoly<S> ca = detail::content(a), cb = detail::content(b);
    const UPoly<S> c = gcd(ca, cb);
    a = detail::divide_coefficients(a, ca);
    b = detail::divide_coefficients(b, cb);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = detail::pseudo_remainder(a, b);
        a = std::move(b);
        b = detail::primitive_part(r);
    }
    // a is primitive; a y-degree-0 primitive polynomial is the unit 1
    if (a.size() == 1) a = {UPoly<S>(S(1))};
    for (auto& k : a) k *= c;
    const int bound = std::min(f.degree_bound(), g.degree_bound());
    auto out = BivariatePolynomial<S>::from_y_coefficients(a, std::max(bound, 0));
    return out.canonical();
}

/// f / g when g divides f exactly, otherwise nullopt.
template <class S>
std::optional<BivariatePolynomial<S>> divide_exact(const BivariatePolynomial<S>& f, const BivariatePolynomial<S>& g)
{
    if (g.is_zero()) throw InvalidInput("division by the zero polynomial");
    using detail::YPoly;
    YPoly<S> a = f.y_coefficients();
    const YPoly<S> b = g.y_coefficients();
    const int db = static_cast<int>(b.size()) - 1;
    YPoly<S> q(std::max<std::size_t>(a.size(), 1));
    detail::trim(a);
    while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        auto t = try_divide(a.back(), b.back());
        if (!t) return std::nullopt;
        q[static_cast<std::size_t>(shift)] += *t;
        for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= *t * b[static_cast<std::size_t>(k)];
        detail::trim(a);
    }
    if (!a.empty()) return std::nullopt;
    return BivariatePolynomial<S>::from_y_coefficients(q, f.degree_bound());
}

/// Sylvester resultant eliminating `v`, as a polynomial in the remaining variable.
template <class S>
UPoly<S> resultant(const BivariatePolynomial<S>& f, const BivariatePolynomial<S>& g, Variable v = Variable::y)
{
    const auto& ff = v == Variable::y ? f : f.swapped();
    const auto& gg = v == Variable::y ? g : g.swapped();
    const auto a = ff.y_coefficients(), b = gg.y_coefficients();
    const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    if (m < 1 || n < 1) throw InvalidInput("resultant needs positive degree in the eliminated variable");
    const int size = m + n;
    Matrix<UPoly<S>> syl(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) syl(i, j) = UPoly<S>();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) syl(i, i + k) = a[static_cast<std::size_t>(m - k)];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) syl(n + i, i + k) = b[static_cast<std::size_t>(n - k)];
    return determinant(syl);
}

/// Removes repeated factors that involve y (f / gcd(f, df/dy)).
template <class S>
BivariatePolynomial<S> squarefree_part_y(const BivariatePolynomial<S>& f)
{
    if (f.degree_in(Variable::y) < 1) return f;
    const auto g = poly_gcd(f, f.partial(Variable::y));
    if (g.is_constant()) return f;
    return *divide_exact(f, g);
}

} // namespace incidence
