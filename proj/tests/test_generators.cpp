#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "incidence/config_io.hpp"
#include "incidence/generators.hpp"

using namespace incidence;

namespace {

using Q = Rational;

GeneratorSpec spec_of(GeneratorKind kind, FieldTag field, int d)
{
    GeneratorSpec s;
    s.kind = kind;
    s.field = field;
    s.d = d;
    s.seed = 7;
    return s;
}

template <class S>
std::uint64_t count(const PointConfiguration<S>& cfg)
{
    // plain double loop, independent of the threaded counter
    std::uint64_t n = 0;
    for (const auto& c : cfg.curves)
        for (const auto& p : cfg.points) n += is_zero(c(p.x, p.y)) ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("generator kinds round-trip through their names")
{
    for (auto k : {GeneratorKind::random, GeneratorKind::grid_lines, GeneratorKind::on_curves, GeneratorKind::family})
        CHECK(parse_generator_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_generator_kind("spiral"), InvalidInput);
}

TEST_CASE("same spec, same configuration")
{
    for (auto field : {FieldTag::rational(), FieldTag::prime_field(101), FieldTag::gaussian()}) {
        auto s = spec_of(GeneratorKind::random, field, 2);
        s.points = 30;
        s.curves = 10;
        const auto a = write_configuration(generate(s).config);
        const auto b = write_configuration(generate(s).config);
        CHECK(a == b);
        s.seed = 8;
        CHECK(write_configuration(generate(s).config) != a);
    }
}

TEST_CASE("empty random configuration")
{
    auto s = spec_of(GeneratorKind::random, FieldTag::rational(), 1);
    const auto g = generate(s);
    const auto& cfg = std::get<PointConfiguration<Q>>(g.config);
    CHECK(cfg.points.empty());
    CHECK(cfg.curves.empty());
}

TEST_CASE("random conics over F_101 are valid")
{
    auto s = spec_of(GeneratorKind::random, FieldTag::prime_field(101), 2);
    s.points = 50;
    s.curves = 20;
    const auto g = generate(s);
    const auto& cfg = std::get<PointConfiguration<ModP>>(g.config);
    CHECK(cfg.points.size() == 50);
    CHECK(cfg.curves.size() == 20);
    CHECK_NOTHROW(validate_configuration(cfg));
    for (const auto& c : cfg.curves) CHECK(c.total_degree() <= 2);
}

TEST_CASE("random generator refuses more points than the field has")
{
    auto s = spec_of(GeneratorKind::random, FieldTag::prime_field(3), 1);
    s.points = 10;
    CHECK_THROWS_AS(generate(s), InvalidInput);
}

TEST_CASE("grid lines: sizes and incidences in closed form")
{
    for (int k = 1; k <= 6; ++k) {
        const auto cfg = gen_grid_lines(k);
        const auto K = static_cast<std::uint64_t>(k);
        CHECK(cfg.points.size() == 2 * K * K * K);
        CHECK(cfg.curves.size() == K * K * K);
        CHECK(count(cfg) == K * K * K * K);
        CHECK(incidence_count_bruteforce(cfg).incidence_count == K * K * K * K);
    }
    CHECK_THROWS_AS(gen_grid_lines(0), InvalidInput);
    auto s = spec_of(GeneratorKind::grid_lines, FieldTag::prime_field(7), 1);
    CHECK_THROWS_AS(generate(s), InvalidInput);
}

TEST_CASE("on_curves: one line through five points")
{
    auto s = spec_of(GeneratorKind::on_curves, FieldTag::rational(), 1);
    s.curves = 1;
    s.per_curve = 5;
    const auto g = gen_on_curves<Q>(s);
    CHECK(g.config.points.size() == 5);
    CHECK(count(g.config) == 5);
    CHECK(g.config.curves.front().total_degree() == 1);
}

TEST_CASE("on_curves: conics carry their sampled points")
{
    for (auto field : {FieldTag::rational(), FieldTag::prime_field(101), FieldTag::gaussian()}) {
        auto s = spec_of(GeneratorKind::on_curves, field, 2);
        s.curves = 3;
        s.per_curve = 6;
        const auto g = generate(s);
        std::visit(
            [&](const auto& cfg) {
                CHECK(cfg.curves.size() == 3);
                for (const auto& c : cfg.curves) CHECK(c.total_degree() == 2);
                CHECK(count(cfg) >= 18);
                // every collision removed exactly one point
                CHECK(cfg.points.size() + g.log.size() == 18);
            },
            g.config);
    }
}

TEST_CASE("on_curves: collisions are logged")
{
    // F_7 has few points, so three lines of seven points each must collide
    auto s = spec_of(GeneratorKind::on_curves, FieldTag::prime_field(7), 1);
    s.curves = 3;
    s.per_curve = 7;
    const auto g = gen_on_curves<ModP>(s);
    CHECK(!g.collisions.empty());
    CHECK(g.config.points.size() + g.collisions.size() == 21);
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(g.curve_points[c].size() == 7);
        for (auto i : g.curve_points[c]) CHECK(on_curve(g.config.points[i], g.config.curves[c]));
    }
}

TEST_CASE("on_curves: cubic samples support good tuple extraction")
{
    // each curve's sample and, with two extra points, each of its 10-point subsets
    for (std::size_t per_curve : {std::size_t{10}, std::size_t{12}}) {
        auto s = spec_of(GeneratorKind::on_curves, FieldTag::rational(), 3);
        s.curves = 2;
        s.per_curve = per_curve;
        const auto g = gen_on_curves<Q>(s);
        for (std::size_t c = 0; c < g.config.curves.size(); ++c) {
            const auto& curve = g.config.curves[c];
            CHECK(curve.total_degree() == 3);
            std::vector<Point<Q>> on;
            for (auto i : g.curve_points[c]) on.push_back(g.config.points[i]);
            REQUIRE(on.size() == per_curve);
            // subsets as bitmasks with exactly ten bits set
            for (unsigned mask = 0; mask < (1u << on.size()); ++mask) {
                if (std::popcount(mask) != 10) continue;
                std::vector<Point<Q>> gamma;
                for (std::size_t k = 0; k < on.size(); ++k)
                    if (mask >> k & 1u) gamma.push_back(on[k]);
                const auto tuple = extract_good_tuple(gamma, 3);
                REQUIRE(tuple.size() == 9);
                std::vector<Point<Q>> chosen;
                for (auto t : tuple) chosen.push_back(gamma[t]);
                CHECK(curve_space_dim(chosen, 3) == curve_space_dim(gamma, 3));
                for (const auto& through : curves_through(chosen, 3))
                    for (const auto& p : gamma) CHECK(on_curve(p, through));
            }
            const auto through = curves_through(on, 3);
            REQUIRE(through.size() == 1);
            CHECK(through[0] == curve);
        }
    }
}

TEST_CASE("on_curves rejects unsupported degrees and characteristic 2")
{
    auto s = spec_of(GeneratorKind::on_curves, FieldTag::rational(), 4);
    s.curves = 1;
    s.per_curve = 3;
    CHECK_THROWS_AS(generate(s), InvalidInput);
    s.d = 2;
    s.field = FieldTag::prime_field(2);
    CHECK_THROWS_AS(generate(s), InvalidInput);
}

TEST_CASE("families: dimensions and membership")
{
    auto s = spec_of(GeneratorKind::family, FieldTag::rational(), 2);
    s.family = "circles";
    s.curves = 1;
    s.points = 8;
    auto g = generate(s);
    REQUIRE(g.family_k);
    CHECK(*g.family_k == 3);
    CHECK(count(std::get<PointConfiguration<Q>>(g.config)) == 8);

    s.family = "pencil_through_point";
    s.d = 1;
    s.curves = 4;
    s.points = 12;
    g = generate(s);
    REQUIRE(g.family_k);
    CHECK(*g.family_k == 1);
    const auto& pencil = std::get<PointConfiguration<Q>>(g.config);
    for (const auto& c : pencil.curves) CHECK(on_curve(Point<Q>{Q(0), Q(0)}, c));

    s.family = "vertical_parabolas";
    s.d = 2;
    s.curves = 10;
    s.points = 40;
    const auto fc = gen_family_config<Q>(s);
    CHECK(fc.family.k() == 3);
    CHECK(fc.config.curves.size() == 10);
    CHECK(fc.config.points.size() == 40);
    CHECK_NOTHROW(validate_configuration(fc.config));
    for (const auto& c : fc.config.curves) CHECK(family_contains(fc.family, c));
    // three points with distinct abscissae leave exactly one member
    CHECK(family_restrict(fc.family, std::vector<Point<Q>>{{Q(0), Q(1)}, {Q(2), Q(5)}, {Q(-1), Q(3)}}) == 0);
    CHECK(family_restrict(fc.family, std::vector<Point<Q>>{{Q(0), Q(1)}}) == 2);
}

TEST_CASE("families over finite fields and Q(i)")
{
    for (auto field : {FieldTag::prime_field(101), FieldTag::gaussian()}) {
        auto s = spec_of(GeneratorKind::family, field, 2);
        s.family = "circles";
        s.curves = 5;
        s.points = 20;
        const auto g = generate(s);
        CHECK(g.family_k == 3);
        std::visit([](const auto& cfg) { CHECK(count(cfg) >= 20); }, g.config);
    }
}

TEST_CASE("unknown family")
{
    auto s = spec_of(GeneratorKind::family, FieldTag::rational(), 2);
    s.family = "hyperbolas";
    s.curves = 1;
    CHECK_THROWS_AS(generate(s), InvalidInput);
}
