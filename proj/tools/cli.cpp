#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "incidence/config_io.hpp"
#include "incidence/harness.hpp"
#include "incidence/partition.hpp"

namespace incidence::cli {

namespace {

struct GenArgs {
    std::string generator = "random", field = "rational", family, out;
    int d = 1, k = 2;
    std::size_t points = 0, curves = 0, per_curve = 0;
    std::uint64_t seed = 0;
    long range = 50;
};

struct CountArgs {
    std::string in, method = "brute";
    std::optional<int> levels;
};

struct PartitionArgs {
    std::string in;
    int levels = 2;
    bool dump = false;
    std::uint64_t seed = PartitionOptions{}.seed;
};

struct VerifyArgs {
    std::string in, bounds = "initial,trivial,main", constant = "1", family, center = "0,0";
};

struct SweepArgs {
    std::string spec, out, format;
    bool timing = false;
};

struct FitArgs {
    std::string in, x, y;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

int do_gen(const GenArgs& a, std::ostream& out, std::ostream& err)
{
    GeneratorSpec s;
    s.kind = parse_generator_kind(a.generator);
    s.field = FieldTag::parse(a.field);
    s.d = s.kind == GeneratorKind::grid_lines ? 1 : a.d;
    s.points = a.points;
    s.curves = a.curves;
    s.per_curve = a.per_curve;
    s.k = a.k;
    s.family = a.family;
    s.seed = a.seed;
    s.range = a.range;
    const auto g = generate(s);
    for (const auto& line : g.log) err << "note: " << line << "\n";
    emit(write_configuration(g.config), a.out, out);
    return ok;
}

int do_count(const CountArgs& a, std::ostream& out, std::ostream&)
{
    const auto any = read_configuration_file(a.in);
    const auto threads = threads_from_env();
    const auto brute = std::visit(
        [&](const auto& cfg) {
            validate_configuration(cfg, threads);
            return incidence_count_bruteforce(cfg, threads).incidence_count;
        },
        any);
    if (a.method == "brute") {
        out << "incidences " << brute << "\n";
        return ok;
    }
    if (a.method != "partition") throw InvalidInput("unknown method '" + a.method + "' (expected brute or partition)");
    const auto* cfg = std::get_if<PointConfiguration<Rational>>(&any);
    if (!cfg) throw InvalidInput("the partition method needs a configuration over the rationals");
    const int A = degrees_of_freedom(cfg->d).A;
    int t = 0;
    if (a.levels) {
        t = *a.levels;
    } else if (cfg->points.size() >= 2) {
        const auto pd = choose_partition_degree(cfg->points.size(), cfg->curves.size(), A);
        t = std::min(pd.skip ? 2 : pd.levels, 4);
    }
    const auto part = build_partition(cfg->points, t);
    const auto split_count = incidence_count_partitioned(*cfg, part, threads);
    if (split_count.total() != brute)
        throw InternalConsistencyError("partitioned count " + std::to_string(split_count.total()) +
                                       " differs from brute force " + std::to_string(brute));
    out << "incidences " << split_count.total() << "\n"
        << "levels " << part.levels << "\n"
        << "deg_Q " << part.degree() << "\n"
        << "cell_cell " << split_count.cell_cell << "\n"
        << "alg_cell " << split_count.alg_cell << "\n"
        << "cell_alg " << split_count.cell_alg << "\n"
        << "alg_alg " << split_count.alg_alg << "\n"
        << "curves_alg " << split_count.curves_alg << "\n"
        << "sum_Li " << split_count.sum_Li << "\n";
    return ok;
}

int do_partition(const PartitionArgs& a, std::ostream& out, std::ostream&)
{
    const auto any = read_configuration_file(a.in);
    const auto* cfg = std::get_if<PointConfiguration<Rational>>(&any);
    if (!cfg) throw InvalidInput("partitioning needs a configuration over the rationals");
    PartitionOptions opts;
    opts.seed = a.seed;
    const auto part = build_partition(cfg->points, a.levels, opts);
    const std::size_t n = part.points.size();
    const std::size_t cap = (n + (std::size_t{1} << a.levels) - 1) >> a.levels;
    const bool occupancy = part.max_occupancy() <= cap;
    const bool degree = part.degree() <= max_partition_degree(a.levels);
    out << "points " << n << "\n"
        << "levels " << part.levels << "\n"
        << "deg_Q " << part.degree() << " (at most " << max_partition_degree(a.levels) << ")\n"
        << "cells " << part.cells.size() << "\n"
        << "boundary_points " << part.boundary_points.size() << "\n"
        << "max_cell " << part.max_occupancy() << " (at most " << cap << ")\n";
    if (a.dump) out << dump_factors(part);
    return occupancy && degree ? ok : verification_failure;
}

template <class S>
std::optional<CurveFamily<S>> named_family(const std::string& name, const PointConfiguration<S>& cfg,
                                           const std::string& center)
{
    if (name.empty()) return std::nullopt;
    if (name == "circles") return circles_family<S>(cfg.field);
    if (name == "vertical_parabolas") return vertical_parabolas_family<S>(cfg.field);
    if (name == "pencil_through_point") {
        const auto xy = split(center, ',');
        if (xy.size() != 2) throw InvalidInput("--center needs the form x,y");
        const Point<S> c{FieldTraits<S>::parse(xy[0], cfg.field), FieldTraits<S>::parse(xy[1], cfg.field)};
        return pencil_family<S>(cfg.d, c, cfg.field);
    }
    throw InvalidInput("unknown family '" + name + "'");
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream&)
{
    std::set<BoundKind> wanted;
    for (const auto& b : split(a.bounds, ','))
        if (!b.empty()) wanted.insert(parse_bound_kind(b));
    if (wanted.empty()) throw InvalidInput("--bounds lists no bounds");
    if (wanted.count(BoundKind::family) && a.family.empty())
        throw InvalidInput("the family bound needs --family");
    const Rational c = parse_rational(a.constant);
    if (sgn(c) <= 0) throw InvalidInput("--constant must be positive");
    const BoundConstants constants{c, c, c, c};
    const auto any = read_configuration_file(a.in);
    const auto threads = threads_from_env();
    const auto evals = std::visit(
        [&](const auto& cfg) {
            validate_configuration(cfg, threads);
            const auto I = incidence_count_bruteforce(cfg, threads).incidence_count;
            const auto fam = named_family(a.family, cfg, a.center);
            return std::make_pair(I, evaluate_bounds(cfg, I, constants, fam ? &*fam : nullptr));
        },
        any);
    bool all = true;
    out << "incidences " << evals.first << "\n";
    for (const auto& ev : evals.second) {
        if (!wanted.count(ev.kind)) continue;
        char line[256];
        std::snprintf(line, sizeof line, "%-8s rhs %.9g c_min %.9g %s\n", to_string(ev.kind).c_str(), ev.rhs, ev.c_min,
                      ev.pass ? "PASS" : "FAIL");
        out << line;
        all = all && ev.pass;
    }
    return all ? ok : verification_failure;
}

int do_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err)
{
    auto spec = read_sweep_file(a.spec);
    spec.options.threads = threads_from_env();
    if (a.timing) spec.options.timing = true;
    std::string format = a.format;
    if (format.empty()) format = std::filesystem::path(a.out).extension() == ".json" ? "json" : "csv";
    const auto rows = run_sweep(spec);
    emit(emit_report(rows, parse_report_format(format)), a.out, out);
    bool inconsistent = false;
    for (const auto& r : rows) {
        if (r.status == "ok") continue;
        err << "config " << r.config_id << " (" << r.label << ") " << r.status << ": " << r.message << "\n";
        inconsistent = inconsistent || r.status == "inconsistent";
    }
    return inconsistent ? internal_error : ok;
}

int do_fit(const FitArgs& a, std::ostream& out, std::ostream&)
{
    const auto table = parse_report_table(read_text_file(a.in));
    const auto fit = fit_columns(table, a.x, a.y);
    char line[256];
    std::snprintf(line, sizeof line, "slope %.9g\nintercept %.9g\nresidual %.9g\nrows %zu\n", fit.slope, fit.intercept,
                  fit.residual, fit.n);
    out << line;
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact point-curve incidence experiments", "incidence_lab"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a configuration");
    g->add_option("--generator", gen.generator, "random, grid_lines, on_curves or family")->capture_default_str();
    g->add_option("--field", gen.field, "rational, fp:<prime> or gaussian_rational")->capture_default_str();
    g->add_option("-d,--degree", gen.d, "Degree bound")->capture_default_str();
    g->add_option("--points", gen.points, "Number of points (random, family)");
    g->add_option("--curves", gen.curves, "Number of curves");
    g->add_option("--per-curve", gen.per_curve, "Points sampled on each curve (on_curves)");
    g->add_option("-k", gen.k, "Grid size (grid_lines)")->capture_default_str();
    g->add_option("--family", gen.family, "circles, vertical_parabolas or pencil_through_point");
    g->add_option("--seed", gen.seed)->capture_default_str();
    g->add_option("--range", gen.range, "Numerators of random rationals lie in [-range, range]")->capture_default_str();
    g->add_option("-o,--out", gen.out, "Output file (default stdout)");

    CountArgs count;
    auto* c = app.add_subcommand("count", "Count incidences");
    c->add_option("--in", count.in, "Configuration file")->required();
    c->add_option("--method", count.method, "brute or partition")->capture_default_str();
    c->add_option("--levels", count.levels, "Partition levels (default: chosen from |P| and |L|)");

    PartitionArgs part;
    auto* p = app.add_subcommand("partition", "Build a polynomial partition of the points");
    p->add_option("--in", part.in, "Configuration file")->required();
    p->add_option("--levels", part.levels, "Bisection levels t")->capture_default_str();
    p->add_flag("--dump-poly", part.dump, "Print the partitioning polynomial factors");
    p->add_option("--seed", part.seed)->capture_default_str();

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Check incidence bounds");
    v->add_option("--in", verify.in, "Configuration file")->required();
    v->add_option("--bounds", verify.bounds, "Comma list of initial, trivial, main, family")->capture_default_str();
    v->add_option("--constant", verify.constant, "Constant C, exact rational")->capture_default_str();
    v->add_option("--family", verify.family, "Family for the family bound");
    v->add_option("--center", verify.center, "Pencil base point x,y")->capture_default_str();

    SweepArgs sweep;
    auto* s = app.add_subcommand("sweep", "Run an experiment sweep");
    s->add_option("--spec", sweep.spec, "Sweep file")->required();
    s->add_option("--out", sweep.out, "Report file (default stdout)");
    s->add_option("--format", sweep.format, "csv or json (default from the --out extension)");
    s->add_flag("--timing", sweep.timing, "Fill ms_elapsed");

    FitArgs fit;
    auto* f = app.add_subcommand("fit", "Fit log y against log x over report rows");
    f->add_option("--in", fit.in, "Report file, CSV or JSON")->required();
    f->add_option("--x", fit.x, "Column for x")->required();
    f->add_option("--y", fit.y, "Column for y")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (*g) return do_gen(gen, out, err);
        if (*c) return do_count(count, out, err);
        if (*p) return do_partition(part, out, err);
        if (*v) return do_verify(verify, out, err);
        if (*s) return do_sweep(sweep, out, err);
        if (*f) return do_fit(fit, out, err);
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return internal_error;
    } catch (const ConstructionFailure& e) {
        err << "construction failure: " << e.what() << "\n";
        return verification_failure;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument& e) {
        // FieldMismatch, InvalidFamily
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
    return usage_error;
}

} // namespace incidence::cli
