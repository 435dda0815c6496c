#pragma once

// Right-hand sides of the incidence bounds and exact pass/fail verdicts.
//
//   initial : C (|P|^A + |L|)
//   trivial : C (|L|^2 + |P|)
//   main    : C (|P|^(A/(2A-1)) |L|^((2A-2)/(2A-1)) + |P| + |L|)
//   family  : C (|P|^k + |L|)
//
// The main bound has irrational values in general; its verdict compares integer powers
// (raising both sides to the (2A-1)-th power), and only the reported RHS and smallest
// passing constant are floating point.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incidence/scalar.hpp"

namespace incidence {

enum class BoundKind { initial, trivial, main, family };

std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& text);

struct BoundConstants {
    Rational initial = 1;
    Rational trivial = 1;
    Rational main = 1;
    Rational family = 1;

    const Rational& of(BoundKind k) const;
};

struct BoundEvaluation {
    BoundKind kind;
    Rational constant;
    double rhs = 0;                    // constant times the expression
    std::optional<Rational> rhs_exact;  // for the polynomial bounds
    double c_min = 0;                  // smallest constant that passes: I / expression
    std::optional<Rational> c_min_exact;
    bool pass = false;
};

struct BoundInputs {
    std::uint64_t incidences = 0;
    std::uint64_t points = 0;
    std::uint64_t curves = 0;
    int A = 2;
    std::optional<int> family_k;
};

/// Expression value without the constant, exact where it is a polynomial in |P|, |L|.
std::optional<Rational> bound_expression_exact(BoundKind kind, const BoundInputs& in);
double bound_expression(BoundKind kind, const BoundInputs& in);

/// Exact decision of I <= c * expression.
bool bound_holds(BoundKind kind, const BoundInputs& in, const Rational& c);

BoundEvaluation evaluate_bound(BoundKind kind, const BoundInputs& in, const Rational& c);

/// All applicable bounds (family only when in.family_k is set), in BoundKind order.
std::vector<BoundEvaluation> evaluate_bounds(const BoundInputs& in, const BoundConstants& constants = {});

} // namespace incidence
