#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "incidence/real_roots.hpp"
#include "test_support.hpp"

using namespace incidence;

namespace {

using Q = Rational;

RPoly lin(const Q& r) { return RPoly(std::vector<Q>{Q(-r), Q(1)}); }
RPoly poly(std::vector<long> asc)
{
    std::vector<Q> c;
    for (long v : asc) c.push_back(Q(v));
    return RPoly(std::move(c));
}

bool disjoint_sorted(const std::vector<RootInterval>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1].hi < v[i].lo)) return false;
    return true;
}

} // namespace

TEST_CASE("isolate_real_roots examples")
{
    const Q w(1, 100);
    const auto r1 = isolate_real_roots(poly({-2, 0, 1}), w);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].lo < Q(-141, 100));
    CHECK(r1[0].hi > Q(-142, 100));
    CHECK(r1[1].lo * r1[1].lo < 2);
    CHECK(r1[1].hi * r1[1].hi > 2);
    CHECK(isolate_real_roots(poly({1, 0, 1}), w).empty());
    // (x - 1)^2 (x + 3)
    const auto r3 = isolate_real_roots(lin(1) * lin(1) * lin(-3), w);
    REQUIRE(r3.size() == 2);
    CHECK(r3[0].lo <= -3);
    CHECK(r3[0].hi >= -3);
    CHECK(r3[1].lo <= 1);
    CHECK(r3[1].hi >= 1);
    CHECK_THROWS_AS(isolate_real_roots(RPoly(), w), InvalidInput);
    CHECK(isolate_real_roots(poly({5}), w).empty());
}

TEST_CASE("root isolation against polynomials with planted roots")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        std::set<Q> planted;
        RPoly p(Q(test_support::uniform(rng, 1, 4)));
        const int nroots = static_cast<int>(test_support::uniform(rng, 0, 5));
        for (int k = 0; k < nroots; ++k) {
            Q r(test_support::uniform(rng, -40, 40), test_support::uniform(rng, 1, 7));
            r.canonicalize();
            planted.insert(r);
            const int mult = static_cast<int>(test_support::uniform(rng, 1, 3));
            for (int m = 0; m < mult; ++m) p *= lin(r);
        }
        // irrational pair sqrt(s) with s not a square, and a factor with no real roots
        std::vector<Q> irr;
        if (trial % 2 == 0) {
            const long s = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(trial / 2 % 4)];
            p *= poly({-s, 0, 1});
            irr = {Q(-1), Q(1)};
        }
        p *= poly({test_support::uniform(rng, 1, 9), test_support::uniform(rng, -2, 2), 3});  // discriminant < 0
        const Q width(1, 1000);
        const auto roots = isolate_real_roots(p, width);
        CHECK(roots.size() == planted.size() + irr.size());
        CHECK(disjoint_sorted(roots));
        for (const auto& iv : roots) CHECK(iv.width() <= width);
        for (const auto& r : planted) {
            const auto hits = std::count_if(roots.begin(), roots.end(),
                                            [&](const RootInterval& iv) { return iv.lo <= r && r <= iv.hi; });
            CHECK(hits == 1);
        }
        // each interval holds exactly one root of the squarefree part
        const SturmSequence s(p);
        for (const auto& iv : roots)
            if (!iv.is_exact()) {
                CHECK(s.count(iv.lo, iv.hi) == 1);
                CHECK(sign_at(p, iv.lo) != 0);
                CHECK(sign_at(p, iv.hi) != 0);
            }
    }
}

TEST_CASE("sign of a second polynomial at an isolated root")
{
    const RPoly f = poly({-2, 0, 1});  // roots +-sqrt 2
    auto roots = isolate_real_roots(f, Q(1));
    REQUIRE(roots.size() == 2);
    CHECK(sign_at_root(f, roots[1], lin(Q(7, 5))) == 1);    // sqrt 2 - 1.4 > 0
    CHECK(sign_at_root(f, roots[1], lin(Q(71, 50))) == -1); // sqrt 2 - 1.42 < 0
    CHECK(sign_at_root(f, roots[0], poly({-2, 0, 1}) * lin(Q(3))) == 0);
    CHECK(sign_at_root(f, roots[0], poly({0, 1})) == -1);
}

TEST_CASE("rational roots are recovered exactly and irrational ones are not")
{
    const RPoly f = lin(Q(22, 7)) * poly({-2, 0, 1}) * lin(Q(-5, 3));
    auto roots = isolate_real_roots(f, Q(1, 2));
    REQUIRE(roots.size() == 4);
    std::vector<Q> found;
    for (const auto& iv : roots)
        if (auto r = rational_root_in(squarefree_part(f), iv)) found.push_back(*r);
    CHECK(found == std::vector<Q>{Q(-5, 3), Q(22, 7)});
}

TEST_CASE("simplest rational between two bounds")
{
    CHECK(simplest_between(Q(-1, 2), Q(1, 3)) == 0);
    CHECK(simplest_between(Q(3, 10), Q(2, 5)) == Q(1, 3));
    CHECK(simplest_between(Q(-2, 5), Q(-3, 10)) == Q(-1, 3));
    CHECK(simplest_between(Q(2), Q(5, 2)) == Q(7, 3));
    CHECK(simplest_between(Q(1), Q(3)) == 2);
}
