#include "incidence/bounds.hpp"

#include <cmath>

#include "incidence/errors.hpp"

namespace incidence {

namespace {

Integer ipow(const Integer& base, unsigned long e)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Integer as_integer(std::uint64_t v)
{
    Integer out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
}

void check_inputs(const BoundInputs& in)
{
    if (in.A < 1) throw InvalidInput("degrees of freedom must be positive");
}

} // namespace

std::string to_string(BoundKind k)
{
    switch (k) {
    case BoundKind::initial: return "initial";
    case BoundKind::trivial: return "trivial";
    case BoundKind::main: return "main";
    case BoundKind::family: return "family";
    }
    return "?";
}

BoundKind parse_bound_kind(const std::string& text)
{
    if (text == "initial") return BoundKind::initial;
    if (text == "trivial") return BoundKind::trivial;
    if (text == "main") return BoundKind::main;
    if (text == "family") return BoundKind::family;
    throw InvalidInput("unknown bound '" + text + "' (expected initial, trivial, main or family)");
}

const Rational& BoundConstants::of(BoundKind k) const
{
    switch (k) {
    case BoundKind::initial: return initial;
    case BoundKind::trivial: return trivial;
    case BoundKind::main: return main;
    case BoundKind::family: return family;
    }
    return initial;
}

std::optional<Rational> bound_expression_exact(BoundKind kind, const BoundInputs& in)
{
    check_inputs(in);
    const Integer P = as_integer(in.points), L = as_integer(in.curves);
    switch (kind) {
    case BoundKind::initial: return Rational(ipow(P, static_cast<unsigned long>(in.A)) + L);
    case BoundKind::trivial: return Rational(L * L + P);
    case BoundKind::family:
        if (!in.family_k) throw InvalidInput("family bound needs a family dimension");
        if (*in.family_k < 0) throw InvalidInput("family dimension must be nonnegative");
        return Rational(ipow(P, static_cast<unsigned long>(*in.family_k)) + L);
    case BoundKind::main: return std::nullopt;
    }
    return std::nullopt;
}

double bound_expression(BoundKind kind, const BoundInputs& in)
{
    if (auto exact = bound_expression_exact(kind, in)) return exact->get_d();
    const double P = static_cast<double>(in.points), L = static_cast<double>(in.curves);
    const double denom = 2.0 * in.A - 1.0;
    const double core = (in.points == 0 || in.curves == 0)
                            ? 0.0
                            : std::exp(in.A / denom * std::log(P) + (2.0 * in.A - 2.0) / denom * std::log(L));
    return core + P + L;
}

bool bound_holds(BoundKind kind, const BoundInputs& in, const Rational& c)
{
    if (sgn(c) < 0) throw InvalidInput("bound constants must be nonnegative");
    const Rational I = as_integer(in.incidences);
    if (auto exact = bound_expression_exact(kind, in)) return I <= c * *exact;
    if (sgn(c) == 0) return sgn(I) == 0;
    // I <= c (X + P + L)  <=>  I/c - P - L <= X = P^(A/(2A-1)) L^((2A-2)/(2A-1))
    const Rational lhs = I / c - Rational(as_integer(in.points)) - Rational(as_integer(in.curves));
    if (sgn(lhs) <= 0) return true;
    const unsigned long e = 2UL * static_cast<unsigned long>(in.A) - 1UL;
    // lhs^(2A-1) <= P^A L^(2A-2): with lhs = n/m, compare n^e against P^A L^(2A-2) m^e
    const Integer n = lhs.get_num(), m = lhs.get_den();
    const Integer right = ipow(as_integer(in.points), static_cast<unsigned long>(in.A)) *
                          ipow(as_integer(in.curves), 2UL * static_cast<unsigned long>(in.A) - 2UL) * ipow(m, e);
    return ipow(n, e) <= right;
}

BoundEvaluation evaluate_bound(BoundKind kind, const BoundInputs& in, const Rational& c)
{
    BoundEvaluation out{kind, c};
    const double expr = bound_expression(kind, in);
    out.rhs = c.get_d() * expr;
    if (auto exact = bound_expression_exact(kind, in)) {
        out.rhs_exact = Rational(c * *exact);
        out.c_min_exact = sgn(*exact) == 0 ? Rational(0) : Rational(Rational(as_integer(in.incidences)) / *exact);
        out.c_min = out.c_min_exact->get_d();
    } else {
        out.c_min = expr == 0.0 ? 0.0 : static_cast<double>(in.incidences) / expr;
    }
    out.pass = bound_holds(kind, in, c);
    return out;
}

std::vector<BoundEvaluation> evaluate_bounds(const BoundInputs& in, const BoundConstants& constants)
{
    std::vector<BoundEvaluation> out;
    for (auto k : {BoundKind::initial, BoundKind::trivial, BoundKind::main}) out.push_back(evaluate_bound(k, in, constants.of(k)));
    if (in.family_k) out.push_back(evaluate_bound(BoundKind::family, in, constants.family));
    return out;
}

} // namespace incidence
