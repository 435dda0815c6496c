#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "incidence/veronese.hpp"
#include "test_support.hpp"

using namespace incidence;

namespace {

using Q = Rational;
using QP = Point<Q>;

std::vector<QP> qpoints(std::initializer_list<std::pair<Q, Q>> pts)
{
    std::vector<QP> out;
    for (const auto& [x, y] : pts) out.push_back({x, y});
    return out;
}

template <class S>
bool vanishes_on(const BivariatePolynomial<S>& f, const std::vector<Point<S>>& pts)
{
    return std::all_of(pts.begin(), pts.end(), [&](const Point<S>& p) { return is_zero(f(p.x, p.y)); });
}

// Points on the nodal cubic y^2 = x^2 (x + 1) from the parametrization x = t^2 - 1, y = t (t^2 - 1).
std::vector<QP> nodal_cubic_points(const std::vector<Q>& ts)
{
    std::vector<QP> out;
    for (const auto& t : ts) out.push_back({Q(t * t - 1), Q(t * (t * t - 1))});
    return out;
}

// Number of coefficient vectors over F_p (including zero) whose curve passes through all points.
long brute_force_solutions(const std::vector<Point<ModP>>& pts, int d, std::uint64_t p)
{
    const auto exps = veronese_exponents(d);
    long total = 1, count = 0;
    for (std::size_t k = 0; k < exps.size(); ++k) total *= static_cast<long>(p);
    for (long code = 0; code < total; ++code) {
        long c = code;
        bool ok = true;
        std::vector<std::int64_t> coeff;
        for (std::size_t k = 0; k < exps.size(); ++k, c /= static_cast<long>(p)) coeff.push_back(c % static_cast<long>(p));
        for (const auto& pt : pts) {
            ModP acc(0, p);
            for (std::size_t k = 0; k < exps.size(); ++k) {
                ModP term(coeff[k], p);
                for (int a = 0; a < exps[k].x; ++a) term *= pt.x;
                for (int b = 0; b < exps[k].y; ++b) term *= pt.y;
                acc += term;
            }
            if (!acc.is_zero()) {
                ok = false;
                break;
            }
        }
        count += ok;
    }
    return count;
}

} // namespace

TEST_CASE("degrees_of_freedom")
{
    CHECK(degrees_of_freedom(1).A == 2);
    CHECK(degrees_of_freedom(2).A == 5);
    CHECK(degrees_of_freedom(3).A == 9);
    CHECK(degrees_of_freedom(3).bezout_threshold == 10);
    CHECK_THROWS_AS(degrees_of_freedom(0), InvalidInput);
    for (int d = 1; d <= 12; ++d) {
        const auto p = degrees_of_freedom(d);
        CHECK(p.A <= p.bezout_threshold);
        CHECK((p.A == p.bezout_threshold) == (d <= 2));
    }
}

TEST_CASE("veronese_lift examples and projective scaling")
{
    const auto l1 = veronese_lift(ProjectivePoint<Q>(Q(2), Q(3), Q(1)), 1);
    CHECK(l1 == Vector<Q>((Vector<Q>(3) << Q(2), Q(3), Q(1)).finished()));
    const auto l2 = veronese_lift(ProjectivePoint<Q>(Q(1), Q(2), Q(1)), 2);
    CHECK(l2 == Vector<Q>((Vector<Q>(6) << Q(1), Q(2), Q(1), Q(4), Q(2), Q(1)).finished()));
    const auto l3 = veronese_lift(ProjectivePoint<Q>(Q(0), Q(0), Q(1)), 2);
    CHECK(l3 == Vector<Q>((Vector<Q>(6) << Q(0), Q(0), Q(0), Q(0), Q(0), Q(1)).finished()));
    CHECK_THROWS_AS(veronese_lift(ProjectivePoint<Q>(Q(0), Q(0), Q(0)), 2), InvalidInput);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + trial % 4;
        ProjectivePoint<Q> p(test_support::random_scalar<Q>(rng, FieldTag::rational()),
                             test_support::random_scalar<Q>(rng, FieldTag::rational()), Q(1));
        Q s(test_support::uniform(rng, 1, 9), test_support::uniform(rng, 1, 5));
        s.canonicalize();
        if (trial % 2) s = -s;
        Q sd = 1;
        for (int k = 0; k < d; ++k) sd *= s;
        const Vector<Q> lhs = veronese_lift(p.scaled(s), d);
        const Vector<Q> base = veronese_lift(p, d);
        for (Eigen::Index k = 0; k < lhs.size(); ++k) CHECK(lhs(k) == base(k) * sd);
    }
}

TEST_CASE("curve_space_dim examples")
{
    CHECK(curve_space_dim(std::vector<QP>{}, 3) == 9);
    CHECK(curve_space_dim(qpoints({{Q(1), Q(2)}}), 2) == 4);
    CHECK(curve_space_dim(qpoints({{Q(0), Q(0)}, {Q(1), Q(1)}, {Q(2), Q(2)}}), 1) == 0);
    CHECK(curve_space_dim(qpoints({{Q(0), Q(0)}, {Q(1), Q(1)}, {Q(2), Q(3)}}), 1) == -1);
    CHECK_THROWS_AS(curve_space_dim(qpoints({{Q(1), Q(1)}, {Q(1), Q(1)}}), 1), InvalidInput);
}

TEST_CASE("curve_space_dim agrees with exhaustive solution counts over small prime fields")
{
    std::mt19937_64 rng(8);
    struct Case {
        int d;
        std::uint64_t p;
    };
    for (const auto& [d, p] : {Case{1, 5}, Case{1, 7}, Case{2, 3}}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Point<ModP>> pts;
            const int n = static_cast<int>(test_support::uniform(rng, 0, 6));
            while (static_cast<int>(pts.size()) < n) {
                Point<ModP> q{ModP(static_cast<std::int64_t>(rng() % p), p), ModP(static_cast<std::int64_t>(rng() % p), p)};
                if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
                if (pts.size() >= p * p) break;
            }
            const int m = curve_space_dim(pts, d);
            long expected = 1;
            for (int k = 0; k <= m; ++k) expected *= static_cast<long>(p);
            CHECK(brute_force_solutions(pts, d, p) == expected);
            CHECK(curves_through(pts, d).size() == static_cast<std::size_t>(m + 1));
        }
    }
}

TEST_CASE("curves_through examples")
{
    const auto two = curves_through(qpoints({{Q(0), Q(0)}, {Q(1), Q(1)}}), 1);
    REQUIRE(two.size() == 1);
    BivariatePolynomial<Q> line(1);
    line.set(0, 1, Q(1));
    line.set(1, 0, Q(-1));
    CHECK(two[0] == line.canonical());

    const auto axis = curves_through(qpoints({{Q(0), Q(0)}, {Q(1), Q(0)}, {Q(2), Q(0)}}), 1);
    REQUIRE(axis.size() == 1);
    CHECK(axis[0] == poly_y<Q>());

    const auto pts = qpoints({{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(-1), Q(0)}, {Q(0), Q(-1)}, {Q(3, 5), Q(4, 5)}});
    const auto conic = curves_through(pts, 2);
    REQUIRE(conic.size() == 1);
    BivariatePolynomial<Q> circle(2);
    circle.set(2, 0, Q(1));
    circle.set(0, 2, Q(1));
    circle.set(0, 0, Q(-1));
    CHECK(conic[0] == circle);
}

TEST_CASE("extract_good_tuple examples")
{
    const auto two = qpoints({{Q(0), Q(0)}, {Q(1), Q(1)}});
    CHECK(extract_good_tuple(two, 1) == std::vector<std::size_t>{0, 1});
    const auto five = qpoints({{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(-1), Q(0)}, {Q(0), Q(-1)}, {Q(3, 5), Q(4, 5)}});
    CHECK(extract_good_tuple(five, 2) == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(extract_good_tuple(two, 2), InvalidInput);
}

TEST_CASE("good tuple on a nodal cubic against exhaustive subset search")
{
    const std::vector<std::vector<Q>> params{
        {Q(2), Q(3), Q(-2), Q(1, 2), Q(-3), Q(5), Q(1, 3), Q(-1, 2), Q(4), Q(-5)},
        {Q(0), Q(1), Q(-1), Q(2), Q(-2), Q(3), Q(1, 2), Q(-1, 2), Q(3, 2), Q(7)},  // includes the node twice -> dedupe below
    };
    for (auto ts : params) {
        auto gamma = nodal_cubic_points(ts);
        std::sort(gamma.begin(), gamma.end(), point_less<Q>);
        gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
        if (gamma.size() != 10) {
            for (int extra = 8; gamma.size() < 10; ++extra) {
                auto more = nodal_cubic_points({Q(extra)});
                gamma.push_back(more[0]);
            }
        }
        const int m = curve_space_dim(gamma, 3);
        const auto chosen = extract_good_tuple(gamma, 3);
        REQUIRE(chosen.size() == 9);
        std::vector<QP> sub;
        for (auto k : chosen) sub.push_back(gamma[k]);
        CHECK(curve_space_dim(sub, 3) == m);
        int qualifying = 0;
        for (std::size_t skip = 0; skip < gamma.size(); ++skip) {
            std::vector<QP> s;
            for (std::size_t k = 0; k < gamma.size(); ++k)
                if (k != skip) s.push_back(gamma[k]);
            qualifying += curve_space_dim(s, 3) == m;
        }
        CHECK(qualifying >= 1);
        for (const auto& f : curves_through(sub, 3)) CHECK(vanishes_on(f, gamma));
    }
}

TEST_CASE("adding points never increases m; equal m forces the same curves")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 3;
        const std::uint64_t p = 11;
        std::vector<Point<ModP>> pts;
        int previous = degrees_of_freedom(d).A;
        while (static_cast<int>(pts.size()) < degrees_of_freedom(d).bezout_threshold + 2) {
            Point<ModP> q{ModP(static_cast<std::int64_t>(rng() % p), p), ModP(static_cast<std::int64_t>(rng() % p), p)};
            if (std::find(pts.begin(), pts.end(), q) != pts.end()) continue;
            auto grown = pts;
            grown.push_back(q);
            const int m = curve_space_dim(grown, d);
            CHECK(m <= previous);
            if (m == previous && !pts.empty())
                for (const auto& f : curves_through(pts, d)) CHECK(is_zero(f(q.x, q.y)));
            if (m == 0) CHECK(curves_through(grown, d).size() == 1);
            pts = grown;
            previous = m;
        }
    }
}

TEST_CASE("rescaling a point leaves m unchanged")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 3;
        std::vector<ProjectivePoint<Q>> pts;
        const int n = static_cast<int>(test_support::uniform(rng, 1, degrees_of_freedom(d).A + 1));
        for (int k = 0; k < n; ++k)
            pts.emplace_back(Q(k), test_support::random_scalar<Q>(rng, FieldTag::rational()), Q(1));
        const int m = curve_space_dim(pts, d);
        auto scaled = pts;
        for (auto& q : scaled) {
            Q s(test_support::uniform(rng, 1, 7), test_support::uniform(rng, 1, 7));
            s.canonicalize();
            q = q.scaled(s);
        }
        CHECK(curve_space_dim(scaled, d) == m);
    }
}

TEST_CASE("family_restrict on circles")
{
    const auto circles = circles_family<Q>(FieldTag::rational());
    CHECK(circles.k() == 3);
    CHECK(family_restrict(circles, qpoints({{Q(5), Q(-2)}})) == 2);
    CHECK(family_restrict(circles, qpoints({{Q(0), Q(0)}, {Q(1), Q(0)}, {Q(0), Q(1)}})) == 0);
    // Three collinear points: the only member of the span through them is the line y = 0
    // itself (the y basis element), so the solution space is a single projective point.
    const auto collinear = qpoints({{Q(0), Q(0)}, {Q(1), Q(0)}, {Q(2), Q(0)}});
    CHECK(family_restrict(circles, collinear) == 0);
    const auto members = family_curves_through(circles, collinear);
    REQUIRE(members.size() == 1);
    CHECK(members[0] == poly_y<Q>());
    // four points on no common circle or line
    CHECK(family_restrict(circles, qpoints({{Q(0), Q(0)}, {Q(1), Q(0)}, {Q(2), Q(0)}, {Q(0), Q(1)}})) == -1);
}

TEST_CASE("families: dimensions, membership and dependent bases")
{
    const auto pencil = pencil_family<Q>(1, QP{Q(0), Q(0)}, FieldTag::rational());
    CHECK(pencil.k() == 1);
    CHECK(family_contains(pencil, poly_x<Q>() - poly_y<Q>()));
    CHECK_FALSE(family_contains(pencil, poly_x<Q>() - BivariatePolynomial<Q>::constant(Q(1), 1)));
    CHECK(pencil_family<Q>(3, QP{Q(1), Q(2)}, FieldTag::rational()).k() == degrees_of_freedom(3).A - 1);
    CHECK(vertical_parabolas_family<Q>(FieldTag::rational()).k() == 3);
    CHECK_THROWS_AS(make_family<Q>("bad", 1, {poly_x<Q>(), poly_x<Q>().scaled(Q(2))}), InvalidFamily);
    const auto circles_f7 = circles_family<ModP>(FieldTag::prime_field(7));
    CHECK(circles_f7.k() == 3);
}
