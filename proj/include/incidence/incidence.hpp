#pragma once

// Point configurations, exact incidence counting and curve-set validation.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incidence/bipoly.hpp"
#include "incidence/bounds.hpp"
#include "incidence/errors.hpp"
#include "incidence/parallel.hpp"
#include "incidence/points.hpp"
#include "incidence/veronese.hpp"

namespace incidence {

template <class S>
struct PointConfiguration {
    FieldTag field;
    int d = 1;
    std::vector<Point<S>> points;
    std::vector<BivariatePolynomial<S>> curves;  // canonical form, degree <= d
};

template <class S>
bool on_curve(const Point<S>& p, const BivariatePolynomial<S>& c)
{
    return is_zero(c(p.x, p.y));
}

struct SharedComponent {
    std::size_t first;
    std::size_t second;
    std::string common_factor;
};

struct CurveSetReport {
    std::vector<SharedComponent> shared;        // pairs with a nonconstant gcd
    std::vector<std::size_t> over_degree;       // curves above the degree bound
    std::vector<std::size_t> constant_curves;   // zero or nonzero constants define no curve

    bool ok() const { return shared.empty() && over_degree.empty() && constant_curves.empty(); }
    std::string summary() const;
};

inline std::string CurveSetReport::summary() const
{
    if (ok()) return "ok";
    std::string out;
    for (const auto& s : shared)
        out += "curves " + std::to_string(s.first) + " and " + std::to_string(s.second) + " share the factor " +
               s.common_factor + "; ";
    for (auto k : over_degree) out += "curve " + std::to_string(k) + " exceeds the degree bound; ";
    for (auto k : constant_curves) out += "curve " + std::to_string(k) + " is constant; ";
    out.resize(out.size() - 2);
    return out;
}

namespace detail {

// Distinct canonical lines never share a component; skip the gcd for them.
template <class S>
bool shares_component(const BivariatePolynomial<S>& a, const BivariatePolynomial<S>& b, std::string* factor)
{
    if (a.total_degree() == 1 && b.total_degree() == 1) {
        if (a.canonical() == b.canonical()) {
            if (factor) *factor = a.canonical().to_string();
            return true;
        }
        return false;
    }
    const auto g = poly_gcd(a, b);
    if (g.is_constant()) return false;
    if (factor) *factor = g.to_string();
    return true;
}

} // namespace detail

/// Pairwise gcd and degree checks; failures are reported, not thrown.
template <class S>
CurveSetReport validate_curve_set(const std::vector<BivariatePolynomial<S>>& curves, int d, unsigned threads = 0)
{
    CurveSetReport report;
    std::vector<std::size_t> usable;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        if (curves[k].total_degree() > d) report.over_degree.push_back(k);
        if (curves[k].total_degree() < 1)
            report.constant_curves.push_back(k);
        else
            usable.push_back(k);
    }
    std::vector<std::vector<SharedComponent>> found(usable.size());
    parallel_for(usable.size(), threads, [&](std::size_t a) {
        for (std::size_t b = a + 1; b < usable.size(); ++b) {
            std::string factor;
            if (detail::shares_component(curves[usable[a]], curves[usable[b]], &factor))
                found[a].push_back({usable[a], usable[b], factor});
        }
    });
    for (auto& f : found) report.shared.insert(report.shared.end(), f.begin(), f.end());
    return report;
}

/// Checks distinct points, nonconstant canonical curves within the degree bound and the
/// component-disjointness hypothesis. Throws InvalidInput describing the first problem.
template <class S>
void validate_configuration(const PointConfiguration<S>& cfg, unsigned threads = 0)
{
    degrees_of_freedom(cfg.d);
    auto pts = cfg.points;
    std::sort(pts.begin(), pts.end(), point_less<S>);
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (pts[k] == pts[k - 1]) throw InvalidInput("duplicate point " + to_string(pts[k]));
    const auto report = validate_curve_set(cfg.curves, cfg.d, threads);
    if (!report.ok()) throw InvalidInput("invalid curve set: " + report.summary());
}

struct IncidenceReport {
    std::uint64_t incidence_count = 0;
    std::vector<std::uint64_t> per_curve;
};

/// Exact count over all point-curve pairs, parallel over curves.
template <class S>
IncidenceReport incidence_count_bruteforce(const PointConfiguration<S>& cfg, unsigned threads = 0)
{
    IncidenceReport out;
    out.per_curve.assign(cfg.curves.size(), 0);
    parallel_for(cfg.curves.size(), threads, [&](std::size_t k) {
        std::uint64_t n = 0;
        for (const auto& p : cfg.points) n += on_curve(p, cfg.curves[k]);
        out.per_curve[k] = n;
    });
    for (auto n : out.per_curve) out.incidence_count += n;
    return out;
}

/// True iff exactly one curve of the configuration passes through every point of gamma.
template <class S>
bool bezout_uniqueness_check(const PointConfiguration<S>& cfg, const std::vector<Point<S>>& gamma)
{
    const auto params = degrees_of_freedom(cfg.d);
    if (static_cast<int>(gamma.size()) != params.bezout_threshold)
        throw InvalidInput("Bezout check needs exactly " + std::to_string(params.bezout_threshold) + " points, got " +
                           std::to_string(gamma.size()));
    int containing = 0;
    for (const auto& c : cfg.curves)
        if (std::all_of(gamma.begin(), gamma.end(), [&](const Point<S>& p) { return on_curve(p, c); })) ++containing;
    return containing == 1;
}

/// Bound evaluation for a counted configuration. When a family is supplied, every curve
/// must lie in its span.
template <class S>
std::vector<BoundEvaluation> evaluate_bounds(const PointConfiguration<S>& cfg, std::uint64_t incidences,
                                             const BoundConstants& constants = {},
                                             const CurveFamily<S>* family = nullptr)
{
    BoundInputs in{incidences, cfg.points.size(), cfg.curves.size(), degrees_of_freedom(cfg.d).A, std::nullopt};
    if (family) {
        for (std::size_t k = 0; k < cfg.curves.size(); ++k)
            if (!family_contains(*family, cfg.curves[k]))
                throw InvalidFamily("curve " + std::to_string(k) + " (" + cfg.curves[k].to_string() +
                                    ") is not in the family '" + family->name + "'");
        in.family_k = family->k();
    }
    return evaluate_bounds(in, constants);
}

} // namespace incidence
