#pragma once

// Veronese lifts, the dimension m_d of curves through a point set, curve fitting, good
// tuple extraction and linear curve families.
//
// Lift coordinates follow homogeneous lex order x > y > z: for d = 2 they are
// x^2, xy, xz, y^2, yz, z^2. A lifted point is the normal vector of the hyperplane of
// curves through that point.

#include <string>
#include <vector>

#include "incidence/bipoly.hpp"
#include "incidence/errors.hpp"
#include "incidence/linalg.hpp"
#include "incidence/points.hpp"

namespace incidence {

struct CurveSpaceParams {
    int d;
    int A;                 // C(d+2, 2) - 1
    int bezout_threshold;  // d^2 + 1
};

inline CurveSpaceParams degrees_of_freedom(int d)
{
    if (d < 1) throw InvalidInput("degree bound must be at least 1, got " + std::to_string(d));
    return {d, (d + 2) * (d + 1) / 2 - 1, d * d + 1};
}

/// Exponents (i, j) of x^i y^j z^(d-i-j) in lift order.
inline std::vector<Monomial> veronese_exponents(int d)
{
    std::vector<Monomial> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back(Monomial{i, j});
    return out;
}

template <class S>
Vector<S> veronese_lift(const ProjectivePoint<S>& p, int d)
{
    degrees_of_freedom(d);
    if (p.is_zero()) throw InvalidInput("the zero vector is not a projective point");
    std::vector<S> xs{S(1)}, ys{S(1)}, zs{S(1)};
    for (int k = 1; k <= d; ++k) {
        xs.push_back(S(xs.back() * p.x));
        ys.push_back(S(ys.back() * p.y));
        zs.push_back(S(zs.back() * p.z));
    }
    const auto exps = veronese_exponents(d);
    Vector<S> out(static_cast<Eigen::Index>(exps.size()));
    for (std::size_t k = 0; k < exps.size(); ++k) {
        const auto [i, j] = exps[k];
        out(static_cast<Eigen::Index>(k)) = S(xs[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(j)] *
                                              zs[static_cast<std::size_t>(d - i - j)]);
    }
    return out;
}

namespace detail {

template <class S>
void check_distinct(const std::vector<ProjectivePoint<S>>& pts)
{
    for (std::size_t a = 0; a < pts.size(); ++a) {
        if (pts[a].is_zero()) throw InvalidInput("the zero vector is not a projective point");
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            if (same_projective(pts[a], pts[b]))
                throw InvalidInput("duplicate points at positions " + std::to_string(a) + " and " + std::to_string(b));
    }
}

template <class S>
std::vector<ProjectivePoint<S>> homogenize(const std::vector<Point<S>>& pts)
{
    return std::vector<ProjectivePoint<S>>(pts.begin(), pts.end());
}

} // namespace detail

/// Rows are the lifts of the points.
template <class S>
Matrix<S> lift_matrix(const std::vector<ProjectivePoint<S>>& pts, int d)
{
    const int cols = degrees_of_freedom(d).A + 1;
    Matrix<S> m(static_cast<Eigen::Index>(pts.size()), cols);
    for (std::size_t r = 0; r < pts.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = veronese_lift(pts[r], d).transpose();
    return m;
}

/// Projective dimension of the degree-<=d curves through every point; -1 when there are none.
template <class S>
int curve_space_dim(const std::vector<ProjectivePoint<S>>& pts, int d)
{
    const int A = degrees_of_freedom(d).A;
    detail::check_distinct(pts);
    if (pts.empty()) return A;
    return A - static_cast<int>(rank(lift_matrix(pts, d)));
}

template <class S>
int curve_space_dim(const std::vector<Point<S>>& pts, int d)
{
    return curve_space_dim(detail::homogenize(pts), d);
}

/// Coefficient vector in lift order -> affine polynomial with degree bound d.
template <class S>
BivariatePolynomial<S> curve_from_coefficients(const Vector<S>& v, int d)
{
    const auto exps = veronese_exponents(d);
    if (static_cast<std::size_t>(v.size()) != exps.size()) throw InvalidInput("coefficient vector has the wrong length");
    BivariatePolynomial<S> out(d);
    for (std::size_t k = 0; k < exps.size(); ++k) out.set(exps[k].x, exps[k].y, v(static_cast<Eigen::Index>(k)));
    return out;
}

template <class S>
Vector<S> coefficients_of(const BivariatePolynomial<S>& f, int d)
{
    const auto exps = veronese_exponents(d);
    if (f.total_degree() > d) throw InvalidInput("polynomial exceeds degree bound " + std::to_string(d));
    Vector<S> out(static_cast<Eigen::Index>(exps.size()));
    for (std::size_t k = 0; k < exps.size(); ++k) out(static_cast<Eigen::Index>(k)) = f.coeff(exps[k].x, exps[k].y);
    return out;
}

/// Basis of the degree-<=d forms vanishing on every point, each in canonical form.
template <class S>
std::vector<BivariatePolynomial<S>> curves_through(const std::vector<ProjectivePoint<S>>& pts, int d)
{
    const int A = degrees_of_freedom(d).A;
    detail::check_distinct(pts);
    std::vector<BivariatePolynomial<S>> out;
    if (pts.empty()) {
        Matrix<S> none(0, A + 1);
        for (const auto& v : kernel(none)) out.push_back(curve_from_coefficients(v, d).canonical());
        return out;
    }
    for (const auto& v : kernel(lift_matrix(pts, d))) out.push_back(curve_from_coefficients(v, d).canonical());
    return out;
}

template <class S>
std::vector<BivariatePolynomial<S>> curves_through(const std::vector<Point<S>>& pts, int d)
{
    return curves_through(detail::homogenize(pts), d);
}

/// Indices (ascending) of an A-subset with the same m_d as the whole (d^2+1)-point set.
/// Greedy in input order: keep a point iff it raises the rank, then pad with the earliest
/// unused points.
template <class S>
std::vector<std::size_t> extract_good_tuple(const std::vector<ProjectivePoint<S>>& pts, int d)
{
    const auto params = degrees_of_freedom(d);
    if (static_cast<int>(pts.size()) != params.bezout_threshold)
        throw InvalidInput("good tuple extraction needs exactly " + std::to_string(params.bezout_threshold) +
                           " points, got " + std::to_string(pts.size()));
    detail::check_distinct(pts);
    std::vector<bool> kept(pts.size(), false);
    std::vector<ProjectivePoint<S>> chosen;
    Eigen::Index current = 0;
    for (std::size_t k = 0; k < pts.size() && static_cast<int>(chosen.size()) < params.A; ++k) {
        chosen.push_back(pts[k]);
        const auto r = rank(lift_matrix(chosen, d));
        if (r > current) {
            current = r;
            kept[k] = true;
        } else {
            chosen.pop_back();
        }
    }
    for (std::size_t k = 0; k < pts.size() && static_cast<int>(chosen.size()) < params.A; ++k)
        if (!kept[k]) {
            kept[k] = true;
            chosen.push_back(pts[k]);
        }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (kept[k]) out.push_back(k);
    return out;
}

template <class S>
std::vector<std::size_t> extract_good_tuple(const std::vector<Point<S>>& pts, int d)
{
    return extract_good_tuple(detail::homogenize(pts), d);
}

/// A linear family of curves: all nonzero combinations of an independent basis of
/// polynomials of degree <= degree. Its dimension k is the projective dimension of the span.
template <class S>
struct CurveFamily {
    std::string name;
    int degree = 1;
    std::vector<BivariatePolynomial<S>> span;

    int k() const { return static_cast<int>(span.size()) - 1; }
};

namespace detail {

template <class S>
Matrix<S> span_matrix(const std::vector<BivariatePolynomial<S>>& polys, int d)
{
    const int cols = degrees_of_freedom(d).A + 1;
    Matrix<S> m(static_cast<Eigen::Index>(polys.size()), cols);
    for (std::size_t r = 0; r < polys.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = coefficients_of(polys[r], d).transpose();
    return m;
}

} // namespace detail

template <class S>
void check_family(const CurveFamily<S>& f)
{
    if (f.span.empty()) throw InvalidFamily("family '" + f.name + "' has an empty span");
    for (const auto& p : f.span)
        if (p.is_zero() || p.total_degree() > f.degree)
            throw InvalidFamily("family '" + f.name + "' has a basis element outside degree " + std::to_string(f.degree));
    if (rank(detail::span_matrix(f.span, f.degree)) != static_cast<Eigen::Index>(f.span.size()))
        throw InvalidFamily("family '" + f.name + "' has a linearly dependent basis");
}

template <class S>
CurveFamily<S> make_family(std::string name, int degree, std::vector<BivariatePolynomial<S>> span)
{
    for (auto& p : span) p = p.with_degree_bound(std::max(degree, p.total_degree()));
    CurveFamily<S> f{std::move(name), degree, std::move(span)};
    check_family(f);
    return f;
}

/// Whether f is a member of the family span (up to scalar).
template <class S>
bool family_contains(const CurveFamily<S>& fam, const BivariatePolynomial<S>& f)
{
    if (f.is_zero() || f.total_degree() > fam.degree) return false;
    auto polys = fam.span;
    polys.push_back(f);
    return rank(detail::span_matrix(polys, fam.degree)) == static_cast<Eigen::Index>(fam.span.size());
}

/// Linear combination sum c_k span_k.
template <class S>
BivariatePolynomial<S> family_member(const CurveFamily<S>& fam, const std::vector<S>& coeffs)
{
    if (coeffs.size() != fam.span.size()) throw InvalidInput("wrong number of family coefficients");
    BivariatePolynomial<S> out(fam.degree);
    for (std::size_t k = 0; k < coeffs.size(); ++k) out += fam.span[k].scaled(coeffs[k]);
    return out;
}

/// Projective dimension of the family members through every point; -1 when none.
template <class S>
int family_restrict(const CurveFamily<S>& fam, const std::vector<ProjectivePoint<S>>& pts)
{
    check_family(fam);
    detail::check_distinct(pts);
    if (pts.empty()) return fam.k();
    Matrix<S> m(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(fam.span.size()));
    for (std::size_t r = 0; r < pts.size(); ++r)
        for (std::size_t c = 0; c < fam.span.size(); ++c) {
            const auto basis = fam.span[c].with_degree_bound(fam.degree);
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = basis.evaluate_homogeneous(pts[r].x, pts[r].y, pts[r].z);
        }
    return static_cast<int>(fam.span.size()) - 1 - static_cast<int>(rank(m));
}

template <class S>
int family_restrict(const CurveFamily<S>& fam, const std::vector<Point<S>>& pts)
{
    return family_restrict(fam, detail::homogenize(pts));
}

/// Members of the family through every point, as canonical polynomials.
template <class S>
std::vector<BivariatePolynomial<S>> family_curves_through(const CurveFamily<S>& fam, const std::vector<Point<S>>& pts)
{
    check_family(fam);
    Matrix<S> m(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(fam.span.size()));
    for (std::size_t r = 0; r < pts.size(); ++r)
        for (std::size_t c = 0; c < fam.span.size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = fam.span[c](pts[r].x, pts[r].y);
    std::vector<BivariatePolynomial<S>> out;
    for (const auto& v : kernel(m)) {
        std::vector<S> coeffs(v.data(), v.data() + v.size());
        out.push_back(family_member(fam, coeffs).canonical());
    }
    return out;
}

/// x^2 + y^2, x, y, 1: circles (and, degenerately, lines).
template <class S>
CurveFamily<S> circles_family(const FieldTag& tag)
{
    const S one = scalar_from_int<S>(1, tag);
    BivariatePolynomial<S> sq(2), x(2), y(2), c(2);
    sq.set(2, 0, one);
    sq.set(0, 2, one);
    x.set(1, 0, one);
    y.set(0, 1, one);
    c.set(0, 0, one);
    return make_family<S>("circles", 2, {sq, x, y, c});
}

/// x^2, x, y, 1: parabolas y = a x^2 + b x + c with vertical axis.
template <class S>
CurveFamily<S> vertical_parabolas_family(const FieldTag& tag)
{
    const S one = scalar_from_int<S>(1, tag);
    BivariatePolynomial<S> sq(2), x(2), y(2), c(2);
    sq.set(2, 0, one);
    x.set(1, 0, one);
    y.set(0, 1, one);
    c.set(0, 0, one);
    return make_family<S>("vertical_parabolas", 2, {sq, x, y, c});
}

/// All curves of degree <= d through `center`: the products (x - a)^i (y - b)^j, 1 <= i + j <= d.
template <class S>
CurveFamily<S> pencil_family(int d, const Point<S>& center, const FieldTag& tag)
{
    degrees_of_freedom(d);
    const S one = scalar_from_int<S>(1, tag);
    BivariatePolynomial<S> u(1), v(1);
    u.set(1, 0, one);
    u.set(0, 0, S(-center.x));
    v.set(0, 1, one);
    v.set(0, 0, S(-center.y));
    std::vector<BivariatePolynomial<S>> span;
    for (int total = 1; total <= d; ++total)
        for (int i = total; i >= 0; --i) {
            BivariatePolynomial<S> term = BivariatePolynomial<S>::constant(one, 0);
            for (int a = 0; a < i; ++a) term = term * u;
            for (int b = 0; b < total - i; ++b) term = term * v;
            span.push_back(term.with_degree_bound(d));
        }
    return make_family<S>("pencil_through_point", d, std::move(span));
}

} // namespace incidence
