#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "incidence/incidence.hpp"
#include "test_support.hpp"

using namespace incidence;
using test_support::uniform;

namespace {

using Q = Rational;
using BP = BivariatePolynomial<Q>;

BP x_() { return poly_x<Q>(); }
BP y_() { return poly_y<Q>(); }
BP c_(long v) { return BP::constant(Q(v)); }

PointConfiguration<Q> grid_with_axis_lines()
{
    PointConfiguration<Q> cfg{FieldTag::rational(), 1, {}, {}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) cfg.points.push_back({Q(i), Q(j)});
    for (int k = 0; k < 3; ++k) {
        cfg.curves.push_back((x_() - c_(k)).canonical());
        cfg.curves.push_back((y_() - c_(k)).canonical());
    }
    return cfg;
}

// Random d = 1 configuration; about half of the lines pass through two chosen points.
template <class S>
PointConfiguration<S> random_line_config(std::mt19937_64& rng, const FieldTag& tag, long range)
{
    PointConfiguration<S> cfg{tag, 1, {}, {}};
    const int np = static_cast<int>(uniform(rng, 0, 12)), nl = static_cast<int>(uniform(rng, 0, 12));
    for (int guard = 0; static_cast<int>(cfg.points.size()) < np && guard < 200; ++guard) {
        Point<S> p{FieldTraits<S>::from_rational(Q(uniform(rng, 0, range)), tag),
                   FieldTraits<S>::from_rational(Q(uniform(rng, 0, range)), tag)};
        if (std::find(cfg.points.begin(), cfg.points.end(), p) == cfg.points.end()) cfg.points.push_back(p);
    }
    for (int guard = 0; static_cast<int>(cfg.curves.size()) < nl && guard < 200; ++guard) {
        BivariatePolynomial<S> line(1);
        if (cfg.points.size() >= 2 && rng() % 2) {
            const auto& a = cfg.points[rng() % cfg.points.size()];
            const auto& b = cfg.points[rng() % cfg.points.size()];
            if (a == b) continue;
            line = curves_through(std::vector<Point<S>>{a, b}, 1).front();
        } else {
            line = test_support::random_poly<S>(rng, tag, 1).canonical();
            if (line.total_degree() < 1) continue;
        }
        line = line.canonical();
        if (std::find(cfg.curves.begin(), cfg.curves.end(), line) == cfg.curves.end()) cfg.curves.push_back(line);
    }
    return cfg;
}

} // namespace

TEST_CASE("on_curve examples")
{
    CHECK(on_curve(Point<Q>{Q(1), Q(1)}, y_() - x_()));
    const BP circle = x_() * x_() + y_() * y_() - c_(1);
    CHECK(on_curve(Point<Q>{Q(0), Q(1)}, circle));
    CHECK_FALSE(on_curve(Point<Q>{Q(2), Q(2)}, circle));
    CHECK_THROWS_AS(on_curve(Point<ModP>{ModP(1, 5), ModP(1, 5)}, poly_x<ModP>(ModP(1, 7))), FieldMismatch);
}

TEST_CASE("incidence_count_bruteforce examples")
{
    const auto cfg = grid_with_axis_lines();
    const auto r = incidence_count_bruteforce(cfg);
    CHECK(r.incidence_count == 18);
    CHECK(r.per_curve == std::vector<std::uint64_t>(6, 3));
    PointConfiguration<Q> one{FieldTag::rational(), 1, {{Q(1), Q(1)}}, {(y_() - x_()).canonical()}};
    CHECK(incidence_count_bruteforce(one).incidence_count == 1);
    PointConfiguration<Q> empty{FieldTag::rational(), 1, {}, cfg.curves};
    CHECK(incidence_count_bruteforce(empty).incidence_count == 0);
    // schedule independence
    CHECK(incidence_count_bruteforce(cfg, 1).per_curve == incidence_count_bruteforce(cfg, 4).per_curve);
}

TEST_CASE("validate_curve_set examples")
{
    CHECK(validate_curve_set<Q>({x_(), y_(), x_() + y_()}, 1).ok());
    const auto bad = validate_curve_set<Q>({x_() * y_(), x_()}, 2);
    REQUIRE(bad.shared.size() == 1);
    CHECK(bad.shared[0].first == 0);
    CHECK(bad.shared[0].second == 1);
    const auto deg = validate_curve_set<Q>({x_() * x_() * x_()}, 2);
    CHECK(deg.over_degree == std::vector<std::size_t>{0});
    CHECK_FALSE(deg.ok());
    // same line written twice
    CHECK_FALSE(validate_curve_set<Q>({x_() + y_(), (x_() + y_()).scaled(Q(3))}, 1).ok());
}

TEST_CASE("bezout_uniqueness_check examples")
{
    PointConfiguration<Q> lines{FieldTag::rational(), 1, {{Q(0), Q(0)}, {Q(1), Q(1)}, {Q(5), Q(0)}},
                                {(y_() - x_()).canonical(), y_(), x_() - c_(5)}};
    CHECK(bezout_uniqueness_check(lines, {{Q(0), Q(0)}, {Q(1), Q(1)}}));

    PointConfiguration<Q> conics{FieldTag::rational(), 2, {}, {}};
    conics.points = {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(-1), Q(0)}, {Q(0), Q(-1)}, {Q(3, 5), Q(4, 5)}};
    conics.curves = {x_() * x_() + y_() * y_() - c_(1), x_() * x_() - y_(), x_() * y_() - c_(7)};
    REQUIRE(validate_curve_set(conics.curves, 2).ok());
    CHECK(bezout_uniqueness_check(conics, conics.points));

    PointConfiguration<Q> invalid{FieldTag::rational(), 2, {}, {x_() * y_(), x_()}};
    std::vector<Point<Q>> on_axis;
    for (int k = 0; k < 5; ++k) on_axis.push_back({Q(0), Q(k)});
    CHECK_FALSE(bezout_uniqueness_check(invalid, on_axis));
    CHECK_THROWS_AS(bezout_uniqueness_check(invalid, {{Q(0), Q(0)}}), InvalidInput);
}

TEST_CASE("evaluate_bounds examples")
{
    PointConfiguration<Q> none{FieldTag::rational(), 1, {}, {x_()}};
    for (const auto& b : evaluate_bounds(none, 0)) CHECK(b.pass);

    const auto grid = grid_with_axis_lines();
    const auto ev = evaluate_bounds(grid, 18);
    REQUIRE(ev.size() == 3);
    CHECK(ev[0].kind == BoundKind::initial);
    CHECK(*ev[0].rhs_exact == 87);
    CHECK(ev[0].pass);
    CHECK(*ev[0].c_min_exact == Q(6, 29));

    BoundInputs grid_k2{16, 16, 8, 2, std::nullopt};
    const auto trivial = evaluate_bound(BoundKind::trivial, grid_k2, Q(1));
    CHECK(*trivial.rhs_exact == 80);
    CHECK(trivial.pass);

    // the family bound needs every curve in the span
    const auto circles = circles_family<Q>(FieldTag::rational());
    PointConfiguration<Q> cubic{FieldTag::rational(), 3, {}, {x_() * x_() * x_() - y_()}};
    CHECK_THROWS_AS(evaluate_bounds(cubic, 0, {}, &circles), InvalidFamily);
}

TEST_CASE("main-bound verdicts agree with a floating point oracle away from ties")
{
    std::mt19937_64 rng(4);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int A = static_cast<int>(uniform(rng, 2, 9));
        const std::uint64_t P = static_cast<std::uint64_t>(uniform(rng, 0, 3000));
        const std::uint64_t L = static_cast<std::uint64_t>(uniform(rng, 0, 3000));
        const std::uint64_t I = static_cast<std::uint64_t>(uniform(rng, 0, 40000));
        Q c(uniform(rng, 1, 40), uniform(rng, 1, 20));
        c.canonicalize();
        BoundInputs in{I, P, L, A, std::nullopt};
        const long double x = (P == 0 || L == 0)
                                  ? 0.0L
                                  : std::pow(static_cast<long double>(P), static_cast<long double>(A) / (2 * A - 1)) *
                                        std::pow(static_cast<long double>(L), static_cast<long double>(2 * A - 2) / (2 * A - 1));
        const long double rhs = c.get_d() * (x + P + L);
        if (std::fabs(static_cast<double>(rhs - I)) < 1e-6 * (1 + static_cast<double>(rhs))) continue;
        ++checked;
        CHECK(bound_holds(BoundKind::main, in, c) == (I <= rhs));
    }
    CHECK(checked > 2900);
    // exact tie: P = L = 8, A = 2 gives X = 16; I = 32 sits exactly on the bound
    CHECK(bound_holds(BoundKind::main, BoundInputs{32, 8, 8, 2, std::nullopt}, Q(1)));
    CHECK_FALSE(bound_holds(BoundKind::main, BoundInputs{33, 8, 8, 2, std::nullopt}, Q(1)));
}

template <class S>
void random_line_bounds(const FieldTag& tag, long range, unsigned seed)
{
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 500; ++trial) {
        const auto cfg = random_line_config<S>(rng, tag, range);
        REQUIRE(validate_curve_set(cfg.curves, 1).ok());
        const auto I = incidence_count_bruteforce(cfg).incidence_count;
        const auto ev = evaluate_bounds(cfg, I);
        CHECK(ev[0].pass);  // |P|^2 + |L|
        CHECK(ev[1].pass);  // |L|^2 + |P|
    }
}

TEST_CASE("d = 1: initial and trivial bounds hold with constant 1 on random configurations")
{
    random_line_bounds<Q>(FieldTag::rational(), 6, 1);
    random_line_bounds<ModP>(FieldTag::prime_field(7), 6, 2);
    random_line_bounds<GaussianRational>(FieldTag::gaussian(), 6, 3);
}

TEST_CASE("incidence count is invariant under unimodular affine maps")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + trial % 3;
        PointConfiguration<Q> cfg{FieldTag::rational(), d, {}, {}};
        for (int k = 0; k < 15; ++k) {
            Point<Q> p{Q(uniform(rng, -4, 4)), Q(uniform(rng, -4, 4))};
            if (std::find(cfg.points.begin(), cfg.points.end(), p) == cfg.points.end()) cfg.points.push_back(p);
        }
        const int A = degrees_of_freedom(d).A;
        for (int k = 0; k < 6; ++k) {
            std::vector<Point<Q>> chosen;
            for (int j = 0; j < A && j < static_cast<int>(cfg.points.size()); ++j)
                chosen.push_back(cfg.points[(static_cast<std::size_t>(k) * 5 + static_cast<std::size_t>(j) * 3) % cfg.points.size()]);
            std::sort(chosen.begin(), chosen.end(), point_less<Q>);
            chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
            const auto through = curves_through(chosen, d);
            if (!through.empty()) cfg.curves.push_back(through.front());
        }
        // M = product of elementary integer matrices, so M^-1 is integral
        long a = 1, b = 0, c = 0, e = 1;
        for (int s = 0; s < 3; ++s) {
            const long t = uniform(rng, -2, 2);
            if (s % 2 == 0) {
                b += t * a;
                e += t * c;
            } else {
                a += t * b;
                c += t * e;
            }
        }
        REQUIRE(a * e - b * c == 1);
        const Q tx(uniform(rng, -3, 3)), ty(uniform(rng, -3, 3));
        PointConfiguration<Q> moved{cfg.field, d, {}, {}};
        for (const auto& p : cfg.points) moved.points.push_back({Q(a * p.x + b * p.y + tx), Q(c * p.x + e * p.y + ty)});
        // inverse: (x, y) -> (e (x - tx) - b (y - ty), -c (x - tx) + a (y - ty))
        for (const auto& f : cfg.curves)
            moved.curves.push_back(f.substitute_affine(Q(e), Q(-b), Q(-e * tx + b * ty), Q(-c), Q(a), Q(c * tx - a * ty))
                                       .canonical());
        CHECK(incidence_count_bruteforce(moved).incidence_count == incidence_count_bruteforce(cfg).incidence_count);
    }
}

TEST_CASE("point-line duality transposes the incidence relation")
{
    // (a, b) <-> y = a x - b ; y = m x + c <-> (m, -c)
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        PointConfiguration<Q> primal{FieldTag::rational(), 1, {}, {}}, dual{FieldTag::rational(), 1, {}, {}};
        std::vector<std::pair<long, long>> pts, lines;
        for (int k = 0; k < 10; ++k) pts.emplace_back(uniform(rng, -3, 3), uniform(rng, -3, 3));
        for (int k = 0; k < 10; ++k) lines.emplace_back(uniform(rng, -2, 2), uniform(rng, -3, 3));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::sort(lines.begin(), lines.end());
        lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
        for (auto [px, py] : pts) {
            primal.points.push_back({Q(px), Q(py)});
            dual.curves.push_back((y_() - c_(px) * x_() + c_(py)).canonical());
        }
        for (auto [m, c] : lines) {
            primal.curves.push_back((y_() - c_(m) * x_() - c_(c)).canonical());
            dual.points.push_back({Q(m), Q(-c)});
        }
        CHECK(incidence_count_bruteforce(primal).incidence_count == incidence_count_bruteforce(dual).incidence_count);
    }
}
