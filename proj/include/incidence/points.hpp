#pragma once

#include <string>

#include "incidence/errors.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

template <class S>
struct Point {
    S x;
    S y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

/// Strict weak order used for deduplication and deterministic sorting.
template <class S>
bool point_less(const Point<S>& a, const Point<S>& b)
{
    if (!(a.x == b.x)) return FieldTraits<S>::less(a.x, b.x);
    return FieldTraits<S>::less(a.y, b.y);
}

template <class S>
std::string to_string(const Point<S>& p)
{
    return "(" + scalar_to_string(p.x) + ", " + scalar_to_string(p.y) + ")";
}

/// [x:y:z]; z = 1 for affine points.
template <class S>
struct ProjectivePoint {
    S x;
    S y;
    S z;

    ProjectivePoint(S x_, S y_, S z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
    ProjectivePoint(const Point<S>& p) : x(p.x), y(p.y), z(S(1)) {}

    bool is_zero() const { return incidence::is_zero(x) && incidence::is_zero(y) && incidence::is_zero(z); }
    ProjectivePoint scaled(const S& s) const { return {S(x * s), S(y * s), S(z * s)}; }
};

/// Equality as points of the projective plane (proportional coordinates).
template <class S>
bool same_projective(const ProjectivePoint<S>& a, const ProjectivePoint<S>& b)
{
    return is_zero(S(a.x * b.y - a.y * b.x)) && is_zero(S(a.x * b.z - a.z * b.x)) && is_zero(S(a.y * b.z - a.z * b.y));
}

} // namespace incidence
