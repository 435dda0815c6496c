#include "incidence/generators.hpp"

namespace incidence {

std::string to_string(GeneratorKind k)
{
    switch (k) {
    case GeneratorKind::random: return "random";
    case GeneratorKind::grid_lines: return "grid_lines";
    case GeneratorKind::on_curves: return "on_curves";
    case GeneratorKind::family: return "family";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& text)
{
    if (text == "random") return GeneratorKind::random;
    if (text == "grid_lines") return GeneratorKind::grid_lines;
    if (text == "on_curves") return GeneratorKind::on_curves;
    if (text == "family") return GeneratorKind::family;
    throw InvalidInput("unknown generator '" + text + "' (expected random, grid_lines, on_curves or family)");
}

PointConfiguration<Rational> gen_grid_lines(int k)
{
    if (k < 1) throw InvalidInput("grid_lines needs k >= 1, got " + std::to_string(k));
    PointConfiguration<Rational> cfg{FieldTag::rational(), 1, {}, {}};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < 2 * k * k; ++j) cfg.points.push_back({Rational(i), Rational(j)});
    for (int m = 0; m < k; ++m)
        for (int b = 0; b < k * k; ++b) {
            // y = m x + b
            BivariatePolynomial<Rational> line(1);
            line.set(0, 1, Rational(1));
            line.set(1, 0, Rational(-m));
            line.set(0, 0, Rational(-b));
            cfg.curves.push_back(line.canonical());
        }
    return cfg;
}

namespace {

template <class S>
Generated generate_in(const GeneratorSpec& spec)
{
    Generated out{PointConfiguration<S>{}, {}, std::nullopt};
    switch (spec.kind) {
    case GeneratorKind::random: out.config = gen_random_config<S>(spec); break;
    case GeneratorKind::on_curves: {
        auto g = gen_on_curves<S>(spec);
        out.config = std::move(g.config);
        out.log = std::move(g.collisions);
        break;
    }
    case GeneratorKind::family: {
        auto g = gen_family_config<S>(spec);
        out.config = std::move(g.config);
        out.family_k = g.family.k();
        break;
    }
    case GeneratorKind::grid_lines: throw InvalidInput("grid_lines is defined over the rationals only");
    }
    return out;
}

} // namespace

Generated generate(const GeneratorSpec& spec)
{
    if (spec.kind == GeneratorKind::grid_lines) {
        if (spec.field.kind != FieldKind::rational) throw InvalidInput("grid_lines is defined over the rationals only");
        return {gen_grid_lines(spec.k), {}, std::nullopt};
    }
    switch (spec.field.kind) {
    case FieldKind::rational: return generate_in<Rational>(spec);
    case FieldKind::prime: return generate_in<ModP>(spec);
    case FieldKind::gaussian: return generate_in<GaussianRational>(spec);
    }
    throw InvalidInput("unknown field");
}

} // namespace incidence
