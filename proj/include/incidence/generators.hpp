#pragma once

// Seeded construction of test configurations: random, grid/lines extremal, points sampled on
// curves, and family-constrained. Same spec, same configuration, on every platform.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "incidence/bipoly.hpp"
#include "incidence/errors.hpp"
#include "incidence/incidence.hpp"
#include "incidence/rng.hpp"
#include "incidence/scalar.hpp"
#include "incidence/veronese.hpp"

namespace incidence {

enum class GeneratorKind { random, grid_lines, on_curves, family };

std::string to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(const std::string& text);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::random;
    FieldTag field;
    int d = 1;
    std::size_t points = 0;     // random, family
    std::size_t curves = 0;     // random, on_curves, family
    std::size_t per_curve = 0;  // on_curves
    int k = 2;                  // grid_lines
    std::string family;         // circles | vertical_parabolas | pencil_through_point
    std::uint64_t seed = 0;
    long range = 50;            // numerators of random rationals lie in [-range, range]
};

using AnyConfiguration =
    std::variant<PointConfiguration<Rational>, PointConfiguration<ModP>, PointConfiguration<GaussianRational>>;

template <class S>
struct OnCurvesConfig {
    PointConfiguration<S> config;
    std::vector<std::vector<std::size_t>> curve_points;  // indices of the points sampled on each curve
    std::vector<std::string> collisions;                 // deduplicated points, one message each
};

template <class S>
struct FamilyConfig {
    PointConfiguration<S> config;
    CurveFamily<S> family;
};

struct Generated {
    AnyConfiguration config;
    std::vector<std::string> log;
    std::optional<int> family_k;  // family dimension for the family generator
};

/// Dispatches on spec.kind and spec.field.
Generated generate(const GeneratorSpec& spec);

PointConfiguration<Rational> gen_grid_lines(int k);

namespace detail {

template <class S>
void check_field(const GeneratorSpec& spec)
{
    if (spec.field.kind != FieldTraits<S>::kind)
        throw InvalidInput("generator field " + spec.field.to_string() + " does not match the scalar type");
    degrees_of_freedom(spec.d);
}

template <class S>
S draw(Rng& rng, const FieldTag& tag, long range)
{
    if constexpr (std::is_same_v<S, ModP>) {
        return ModP(rng.uniform(0, static_cast<std::int64_t>(tag.prime) - 1), tag.prime);
    } else {
        const auto q = [&] {
            Rational v(rng.uniform(-range, range), rng.uniform(1, 8));
            v.canonicalize();
            return v;
        };
        if constexpr (std::is_same_v<S, GaussianRational>) {
            const Rational re = q();
            return GaussianRational(re, q());
        } else {
            return q();
        }
    }
}

template <class S>
S draw_nonzero(Rng& rng, const FieldTag& tag, long range)
{
    while (true) {
        S v = draw<S>(rng, tag, range);
        if (!is_zero(v)) return v;
    }
}

template <class S>
std::string key(const Point<S>& p)
{
    return to_string(p);
}

/// Attempts before a generator gives up on a tiny field.
inline std::size_t attempt_budget(std::size_t wanted) { return 200 * wanted + 2000; }

template <class S>
bool disjoint_from(const std::vector<BivariatePolynomial<S>>& curves, const BivariatePolynomial<S>& c)
{
    for (const auto& o : curves)
        if (shares_component(o, c, nullptr)) return false;
    return true;
}

// Curve of degree <= d with random coefficients, nonconstant, canonical.
template <class S>
BivariatePolynomial<S> random_curve(Rng& rng, const FieldTag& tag, int d, long range)
{
    const int deg = static_cast<int>(rng.uniform(1, d));
    while (true) {
        BivariatePolynomial<S> p(d);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j)
                if (rng.uniform(0, 2) != 0) p.set(i, j, draw<S>(rng, tag, range));
        if (p.total_degree() >= 1) return p.canonical();
    }
}

// x = a u + b v + t1, y = c u + e v + t2 with nonzero determinant.
template <class S>
struct AffineMap {
    S a, b, c, e, t1, t2;

    Point<S> apply(const S& u, const S& v) const { return {S(a * u + b * v + t1), S(c * u + e * v + t2)}; }
    // G(u(x, y), v(x, y)) for the inverse map
    BivariatePolynomial<S> pull_back(const BivariatePolynomial<S>& g) const
    {
        const S det = S(a * e - b * c);
        return g.substitute_affine(S(e / det), S(-b / det), S((b * t2 - e * t1) / det), S(-c / det), S(a / det),
                                   S((c * t1 - a * t2) / det));
    }
};

template <class S>
AffineMap<S> random_affine(Rng& rng, const FieldTag& tag, long range)
{
    while (true) {
        AffineMap<S> m{draw<S>(rng, tag, 5), draw<S>(rng, tag, 5), draw<S>(rng, tag, 5),
                       draw<S>(rng, tag, 5), draw<S>(rng, tag, range), draw<S>(rng, tag, range)};
        if (!is_zero(S(m.a * m.e - m.b * m.c))) return m;
    }
}

template <class S>
BivariatePolynomial<S> var_u(int d) { BivariatePolynomial<S> p(d); p.set(1, 0, S(1)); return p; }
template <class S>
BivariatePolynomial<S> var_v(int d) { BivariatePolynomial<S> p(d); p.set(0, 1, S(1)); return p; }

// Base curve of degree d in (u, v) and a rational parametrization of it. The parametrization
// is undefined where it returns nullopt.
template <class S>
BivariatePolynomial<S> base_curve(int d)
{
    const auto u = var_u<S>(d), v = var_v<S>(d);
    const auto one = BivariatePolynomial<S>::constant(S(1), d);
    switch (d) {
    case 1: return v;                                 // line v = 0
    case 2: return u * u + v * v - one;               // unit circle
    default: return v * v - u * u * (u + one);        // nodal cubic
    }
}

template <class S>
std::optional<std::pair<S, S>> base_point(int d, const S& s)
{
    switch (d) {
    case 1: return std::make_pair(s, S(0));
    case 2: {
        const S den = S(S(1) + s * s);
        if (is_zero(den)) return std::nullopt;
        return std::make_pair(S((S(1) - s * s) / den), S(S(2) * s / den));
    }
    default: {
        const S u = S(s * s - S(1));
        return std::make_pair(u, S(s * u));
    }
    }
}

template <class S>
void check_distinct_in_field(const GeneratorSpec& spec, std::size_t wanted_points)
{
    if constexpr (std::is_same_v<S, ModP>) {
        const auto p = spec.field.prime;
        if (wanted_points > p * p)
            throw InvalidInput("F_" + std::to_string(p) + " has only " + std::to_string(p * p) + " points, " +
                               std::to_string(wanted_points) + " requested");
    }
}

} // namespace detail

/// Distinct random points and random component-disjoint curves of degree <= d.
template <class S>
PointConfiguration<S> gen_random_config(const GeneratorSpec& spec)
{
    detail::check_field<S>(spec);
    detail::check_distinct_in_field<S>(spec, spec.points);
    Rng rng = Rng::derive(spec.seed, 1);
    PointConfiguration<S> cfg{spec.field, spec.d, {}, {}};
    std::set<std::string> seen;
    std::size_t budget = detail::attempt_budget(spec.points);
    while (cfg.points.size() < spec.points) {
        if (budget-- == 0) throw InvalidInput("could not draw " + std::to_string(spec.points) + " distinct points");
        Point<S> p{detail::draw<S>(rng, spec.field, spec.range), detail::draw<S>(rng, spec.field, spec.range)};
        if (seen.insert(detail::key(p)).second) cfg.points.push_back(std::move(p));
    }
    budget = detail::attempt_budget(spec.curves);
    while (cfg.curves.size() < spec.curves) {
        if (budget-- == 0)
            throw InvalidInput("could not draw " + std::to_string(spec.curves) + " component-disjoint curves");
        auto c = detail::random_curve<S>(rng, spec.field, spec.d, spec.range);
        if (detail::disjoint_from(cfg.curves, c)) cfg.curves.push_back(std::move(c));
    }
    validate_configuration(cfg, 1);
    return cfg;
}

/// `curves` curves of degree exactly d (lines, affine images of the unit circle, affine images
/// of the nodal cubic), each carrying `per_curve` distinct sampled points.
template <class S>
OnCurvesConfig<S> gen_on_curves(const GeneratorSpec& spec)
{
    detail::check_field<S>(spec);
    if (spec.d > 3) throw InvalidInput("gen_on_curves supports degrees 1 to 3");
    if constexpr (std::is_same_v<S, ModP>)
        if (spec.field.prime == 2 && spec.d >= 2) throw InvalidInput("conics and cubics need an odd characteristic");
    Rng rng = Rng::derive(spec.seed, 2);
    OnCurvesConfig<S> out{{spec.field, spec.d, {}, {}}, {}, {}};
    std::map<std::string, std::pair<std::size_t, std::size_t>> where;  // key -> (point index, first curve)
    const auto base = detail::base_curve<S>(spec.d);
    std::size_t budget = detail::attempt_budget(spec.curves);
    while (out.config.curves.size() < spec.curves) {
        if (budget-- == 0) throw InvalidInput("could not draw " + std::to_string(spec.curves) + " disjoint curves");
        const auto map = detail::random_affine<S>(rng, spec.field, spec.range);
        auto curve = map.pull_back(base).canonical();
        if (!detail::disjoint_from(out.config.curves, curve)) continue;
        // sample distinct points on this curve
        std::vector<Point<S>> pts;
        std::set<std::string> local;
        std::size_t tries = detail::attempt_budget(spec.per_curve);
        while (pts.size() < spec.per_curve) {
            if (tries-- == 0)
                throw InvalidInput("sampling failure: curve " + curve.to_string() + " has fewer than " +
                                   std::to_string(spec.per_curve) + " sampled points");
            const auto uv = detail::base_point<S>(spec.d, detail::draw<S>(rng, spec.field, spec.range));
            if (!uv) continue;
            auto p = map.apply(uv->first, uv->second);
            if (local.insert(detail::key(p)).second) pts.push_back(std::move(p));
        }
        const std::size_t id = out.config.curves.size();
        out.config.curves.push_back(std::move(curve));
        std::vector<std::size_t> idx;
        for (auto& p : pts) {
            const auto k = detail::key(p);
            auto it = where.find(k);
            if (it != where.end()) {
                out.collisions.push_back("point " + k + " sampled on curve " + std::to_string(id) +
                                         " duplicates a point of curve " + std::to_string(it->second.second));
                idx.push_back(it->second.first);
                continue;
            }
            where.emplace(k, std::make_pair(out.config.points.size(), id));
            idx.push_back(out.config.points.size());
            out.config.points.push_back(std::move(p));
        }
        out.curve_points.push_back(std::move(idx));
    }
    validate_configuration(out.config, 1);
    return out;
}

/// Curves from a named family with points sampled on them (circles, vertical parabolas) or
/// curves of the pencil through a point fitted to sample points (pencil_through_point).
template <class S>
FamilyConfig<S> gen_family_config(const GeneratorSpec& spec, const Point<S>& center = {S(0), S(0)})
{
    detail::check_field<S>(spec);
    Rng rng = Rng::derive(spec.seed, 3);
    const auto& tag = spec.field;
    std::optional<CurveFamily<S>> fam;
    int d = spec.d;
    if (spec.family == "circles") {
        fam = circles_family<S>(tag);
        d = 2;
    } else if (spec.family == "vertical_parabolas") {
        fam = vertical_parabolas_family<S>(tag);
        d = 2;
    } else if (spec.family == "pencil_through_point") {
        fam = pencil_family<S>(spec.d, center, tag);
    } else {
        throw InvalidInput("unknown family '" + spec.family +
                           "' (expected circles, vertical_parabolas or pencil_through_point)");
    }
    detail::check_distinct_in_field<S>(spec, spec.points);
    FamilyConfig<S> out{{tag, d, {}, {}}, *fam};
    auto& cfg = out.config;
    std::set<std::string> seen;
    const auto add_point = [&](Point<S> p) {
        if (seen.insert(detail::key(p)).second) cfg.points.push_back(std::move(p));
    };
    const auto x = detail::var_u<S>(d), y = detail::var_v<S>(d);

    if (spec.family == "pencil_through_point") {
        const int A = degrees_of_freedom(d).A;
        if (spec.curves > 0 && spec.points < static_cast<std::size_t>(A))
            throw InvalidInput("a pencil configuration needs at least A = " + std::to_string(A) + " points");
        add_point(center);
        std::size_t budget = detail::attempt_budget(spec.points);
        while (cfg.points.size() < spec.points) {
            if (budget-- == 0) throw InvalidInput("could not draw distinct points");
            add_point({detail::draw<S>(rng, tag, spec.range), detail::draw<S>(rng, tag, spec.range)});
        }
        budget = detail::attempt_budget(spec.curves);
        while (cfg.curves.size() < spec.curves) {
            if (budget-- == 0) throw InvalidInput("could not fit " + std::to_string(spec.curves) + " pencil members");
            std::vector<Point<S>> anchors{center};
            std::set<std::size_t> used;
            while (anchors.size() < static_cast<std::size_t>(A)) {
                const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(cfg.points.size()) - 1));
                if (used.insert(k).second) anchors.push_back(cfg.points[k]);
            }
            const auto through = curves_through(anchors, d);
            if (through.size() != 1) continue;
            auto c = through[0].canonical();
            if (c.total_degree() < 1 || !detail::disjoint_from(cfg.curves, c)) continue;
            cfg.curves.push_back(std::move(c));
        }
    } else {
        std::size_t budget = detail::attempt_budget(spec.curves);
        std::vector<std::pair<std::vector<S>, int>> params;  // shape data per curve
        while (cfg.curves.size() < spec.curves) {
            if (budget-- == 0) throw InvalidInput("could not draw " + std::to_string(spec.curves) + " family members");
            BivariatePolynomial<S> c;
            std::vector<S> data;
            if (spec.family == "circles") {
                const S h = detail::draw<S>(rng, tag, spec.range), k = detail::draw<S>(rng, tag, spec.range);
                const S rho = detail::draw_nonzero<S>(rng, tag, 10);
                const auto X = x - BivariatePolynomial<S>::constant(h, d), Y = y - BivariatePolynomial<S>::constant(k, d);
                c = X * X + Y * Y - BivariatePolynomial<S>::constant(S(rho * rho), d);
                data = {h, k, rho};
            } else {
                const S a = detail::draw_nonzero<S>(rng, tag, 5), b = detail::draw<S>(rng, tag, 10),
                        e = detail::draw<S>(rng, tag, spec.range);
                c = x * x * BivariatePolynomial<S>::constant(a, 0) + x * BivariatePolynomial<S>::constant(b, 0) +
                    BivariatePolynomial<S>::constant(e, d) - y;
                data = {a, b, e};
            }
            c = c.canonical().with_degree_bound(d);
            if (!detail::disjoint_from(cfg.curves, c)) continue;
            cfg.curves.push_back(std::move(c));
            params.emplace_back(std::move(data), 0);
        }
        // points round-robin over the curves, then random fill if there are no curves
        std::size_t budget_pts = detail::attempt_budget(spec.points);
        std::size_t turn = 0;
        while (cfg.points.size() < spec.points) {
            if (budget_pts-- == 0) throw InvalidInput("could not draw " + std::to_string(spec.points) + " distinct points");
            const S s = detail::draw<S>(rng, tag, spec.range);
            if (params.empty()) {
                add_point({s, detail::draw<S>(rng, tag, spec.range)});
                continue;
            }
            const auto& data = params[turn++ % params.size()].first;
            if (spec.family == "circles") {
                const S den = S(S(1) + s * s);
                if (is_zero(den)) continue;
                add_point({S(data[0] + data[2] * (S(1) - s * s) / den), S(data[1] + data[2] * S(2) * s / den)});
            } else {
                add_point({s, S(data[0] * s * s + data[1] * s + data[2])});
            }
        }
    }
    for (std::size_t k = 0; k < cfg.curves.size(); ++k)
        if (!family_contains(out.family, cfg.curves[k]))
            throw InternalConsistencyError("generated curve " + cfg.curves[k].to_string() + " left the family");
    validate_configuration(cfg, 1);
    return out;
}

} // namespace incidence
