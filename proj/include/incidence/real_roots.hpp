#pragma once

// Real root isolation for univariate polynomials with rational coefficients, by Sturm
// sequences and bisection. Everything is exact; intervals have rational endpoints.

#include <optional>
#include <vector>

#include "incidence/scalar.hpp"
#include "incidence/upoly.hpp"

namespace incidence {

using RPoly = UPoly<Rational>;

/// Either a single exact root (lo == hi) or an open interval (lo, hi) whose endpoints are
/// not roots and which contains exactly one root of the squarefree part.
struct RootInterval {
    Rational lo;
    Rational hi;

    bool is_exact() const { return lo == hi; }
    Rational width() const { return Rational(hi - lo); }
};

/// Positive rational multiple with coprime integer coefficients (signs are preserved).
RPoly primitive_integer(const RPoly& p);

int sign_at(const RPoly& p, const Rational& x);

class SturmSequence {
public:
    /// `p` must be nonzero; it is reduced to its squarefree part first.
    explicit SturmSequence(const RPoly& p);

    const RPoly& squarefree() const { return chain_.front(); }
    int variations(const Rational& x) const;
    /// Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

private:
    std::vector<RPoly> chain_;
    std::vector<std::vector<Integer>> ints_;
};

/// A power of two strictly larger than the absolute value of every complex root.
Rational root_bound(const RPoly& p);

/// Isolating intervals for the distinct real roots of u, ascending, each of width <= `width`.
std::vector<RootInterval> isolate_real_roots(const RPoly& u, const Rational& width);

/// Narrows an isolating interval of the squarefree polynomial f to width <= `width`.
RootInterval refine_root(const RPoly& f, RootInterval iv, const Rational& width);

/// Sign of g at the root of f isolated by iv (f squarefree). iv is narrowed in place as needed.
int sign_at_root(const RPoly& f, RootInterval& iv, const RPoly& g);

/// The root isolated by iv if it is rational.
std::optional<Rational> rational_root_in(const RPoly& f, RootInterval iv);

/// The rational with the smallest denominator (then smallest magnitude) in the open interval (a, b).
Rational simplest_between(const Rational& a, const Rational& b);

} // namespace incidence
