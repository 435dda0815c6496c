#include "incidence/harness.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "incidence/config_io.hpp"
#include "incidence/parallel.hpp"
#include "incidence/partition.hpp"

namespace incidence {

using nlohmann::json;

namespace {

constexpr std::array<BoundKind, 4> bound_kinds{BoundKind::initial, BoundKind::trivial, BoundKind::main,
                                               BoundKind::family};

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, column);
    }
}

// ---- sweep entries ----

const std::set<std::string> entry_keys{"id",    "label", "generator", "file",  "field", "d",     "points",
                                       "curves", "per_curve", "k",   "family", "seed", "range", "levels"};

std::string value_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::vector<json> expand(const json& entry)
{
    if (!entry.is_object() || !entry.contains("vary")) return {entry};
    const auto& vary = entry["vary"];
    if (!vary.is_object() || vary.empty()) return {entry};  // reported when the row runs
    for (auto it = vary.begin(); it != vary.end(); ++it)
        if (!it.value().is_array() || it.value().empty()) return {entry};
    json base = entry;
    base.erase("vary");
    std::vector<std::pair<json, std::string>> out{{base, ""}};
    for (auto it = vary.begin(); it != vary.end(); ++it) {
        std::vector<std::pair<json, std::string>> next;
        for (const auto& [partial, suffix] : out)
            for (const auto& v : it.value()) {
                json e = partial;
                e[it.key()] = v;
                next.emplace_back(std::move(e), suffix + " " + it.key() + "=" + value_text(v));
            }
        out = std::move(next);
    }
    std::vector<json> rows;
    for (auto& [e, suffix] : out) {
        const std::string head = e.contains("id") ? value_text(e["id"])
                                 : e.contains("generator") ? value_text(e["generator"])
                                                           : std::string("config");
        e["label"] = head + suffix;
        rows.push_back(std::move(e));
    }
    return rows;
}

template <class T>
T get_as(const json& e, const char* key, T fallback)
{
    if (!e.contains(key)) return fallback;
    const auto& v = e[key];
    if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw InvalidInput(std::string("'") + key + "' must be a string");
        return v.get<std::string>();
    } else {
        if (!v.is_number_integer()) throw InvalidInput(std::string("'") + key + "' must be an integer");
        if constexpr (std::is_unsigned_v<T>)
            if (v.get<long long>() < 0) throw InvalidInput(std::string("'") + key + "' must be nonnegative");
        return v.get<T>();
    }
}

std::string default_label(const json& e)
{
    if (e.contains("label") && e["label"].is_string()) return e["label"].get<std::string>();
    if (e.contains("id")) return value_text(e["id"]);
    if (e.contains("file")) return value_text(e["file"]);
    if (e.contains("generator")) return value_text(e["generator"]);
    return "config";
}

int floor_log2(std::uint64_t n)
{
    int out = -1;
    while (n) {
        n >>= 1;
        ++out;
    }
    return out;
}

int auto_levels(std::uint64_t points, std::uint64_t curves, int A)
{
    if (points < 2) return 0;
    const int cap = std::min(4, floor_log2(points));
    const auto pd = choose_partition_degree(points, curves, A);
    return pd.skip ? cap : std::min(pd.levels, cap);
}

template <class S>
void measure_into(SweepRow& row, const PointConfiguration<S>& cfg, const SweepOptions& opts,
                  std::optional<int> family_k)
{
    row.field = cfg.field.to_string();
    row.d = cfg.d;
    row.A = degrees_of_freedom(cfg.d).A;
    row.n_points = cfg.points.size();
    row.n_curves = cfg.curves.size();
    validate_configuration(cfg, 1);
    const auto brute = incidence_count_bruteforce(cfg, 1);
    row.incidences = brute.incidence_count;
    const BoundInputs in{brute.incidence_count, cfg.points.size(), cfg.curves.size(), row.A, family_k};
    for (const auto& ev : evaluate_bounds(in, opts.constants)) {
        const auto k = static_cast<std::size_t>(ev.kind);
        row.rhs[k] = ev.rhs;
        row.c_min[k] = ev.c_min;
    }
    if constexpr (std::is_same_v<S, Rational>) {
        if (!opts.partition || cfg.points.empty()) return;
        const int t = opts.levels ? *opts.levels : auto_levels(cfg.points.size(), cfg.curves.size(), row.A);
        const auto part = build_partition(cfg.points, t);
        const auto split = incidence_count_partitioned(cfg, part, 1);
        if (split.total() != brute.incidence_count)
            throw InternalConsistencyError("partitioned count " + std::to_string(split.total()) +
                                           " differs from brute force " + std::to_string(brute.incidence_count));
        row.deg_Q = static_cast<std::uint64_t>(part.degree());
        row.max_cell = part.max_occupancy();
        row.sum_Li = split.sum_Li;
    }
}

void measure_any(SweepRow& row, const AnyConfiguration& cfg, const SweepOptions& opts, std::optional<int> family_k)
{
    std::visit([&](const auto& c) { measure_into(row, c, opts, family_k); }, cfg);
}

void run_entry(SweepRow& row, const std::string& text, const SweepSpec& spec)
{
    const json e = json::parse(text);
    if (!e.is_object()) throw InvalidInput("sweep entry must be an object");
    if (e.contains("vary")) throw InvalidInput("'vary' must map keys to nonempty arrays");
    for (auto it = e.begin(); it != e.end(); ++it)
        if (!entry_keys.count(it.key())) throw InvalidInput("unknown key '" + it.key() + "' in sweep entry");
    SweepOptions opts = spec.options;
    if (e.contains("levels")) opts.levels = get_as<int>(e, "levels", 0);
    if (e.contains("file") == e.contains("generator"))
        throw InvalidInput("a sweep entry needs exactly one of 'generator' and 'file'");
    if (e.contains("file")) {
        std::filesystem::path path = get_as<std::string>(e, "file", "");
        if (path.is_relative() && !spec.base_dir.empty()) path = std::filesystem::path(spec.base_dir) / path;
        measure_any(row, read_configuration_file(path.string()), opts, std::nullopt);
        return;
    }
    GeneratorSpec g;
    g.kind = parse_generator_kind(get_as<std::string>(e, "generator", ""));
    g.field = FieldTag::parse(get_as<std::string>(e, "field", "rational"));
    g.d = get_as<int>(e, "d", 1);
    g.points = get_as<std::size_t>(e, "points", 0);
    g.curves = get_as<std::size_t>(e, "curves", 0);
    g.per_curve = get_as<std::size_t>(e, "per_curve", 0);
    g.k = get_as<int>(e, "k", 2);
    g.family = get_as<std::string>(e, "family", "");
    g.seed = get_as<std::uint64_t>(e, "seed", 0);
    g.range = get_as<long>(e, "range", 50);
    if (g.kind == GeneratorKind::grid_lines) g.d = 1;
    auto generated = generate(g);
    for (const auto& line : generated.log) row.message += (row.message.empty() ? "" : "; ") + line;
    measure_any(row, generated.config, opts, generated.family_k);
}

// ---- report cells ----

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

template <class T>
std::string cell(const std::optional<T>& v)
{
    if (!v) return "";
    if constexpr (std::is_same_v<T, double>)
        return format_double(*v);
    else
        return std::to_string(*v);
}

std::vector<std::string> cells_of(const SweepRow& r)
{
    std::vector<std::string> out{std::to_string(r.config_id), r.field, std::to_string(r.d), std::to_string(r.A),
                                 cell(r.n_points), cell(r.n_curves), cell(r.incidences)};
    for (const auto& v : r.rhs) out.push_back(cell(v));
    for (const auto& v : r.c_min) out.push_back(cell(v));
    out.push_back(cell(r.deg_Q));
    out.push_back(cell(r.max_cell));
    out.push_back(cell(r.sum_Li));
    out.push_back(cell(r.ms_elapsed));
    out.push_back(r.label);
    out.push_back(r.status);
    out.push_back(r.message);
    return out;
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_line(const std::vector<std::string>& cells)
{
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + csv_quote(cells[k]);
    return out + "\n";
}

json number_json(const std::optional<double>& v)
{
    if (!v) return nullptr;
    if (!std::isfinite(*v)) return format_double(*v);
    return *v;
}

template <class T>
json int_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::optional<double> double_from(const json& v)
{
    if (v.is_null()) return std::nullopt;
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return std::strtod(v.get<std::string>().c_str(), nullptr);
    throw ParseError("report value must be a number");
}

std::optional<std::uint64_t> uint_from(const json& v)
{
    if (v.is_null()) return std::nullopt;
    if (!v.is_number_unsigned()) throw ParseError("report count must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (quoted) {
            if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') {
                field += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && k + 1 < text.size() && text[k + 1] == '\n') ++k;
            if (any || !field.empty()) row.push_back(std::move(field));
            if (!row.empty()) out.push_back(std::move(row));
            row.clear();
            field.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (any || !field.empty()) row.push_back(std::move(field));
    if (!row.empty()) out.push_back(std::move(row));
    return out;
}

std::optional<double> numeric_cell(const std::string& s, const std::string& column)
{
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw InvalidInput("column '" + column + "' holds non-numeric value '" + s + "'");
    return v;
}

} // namespace

SweepSpec parse_sweep(const std::string& text, const std::string& base_dir)
{
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("sweep must be a JSON object", 1, 1);
    SweepSpec spec;
    spec.base_dir = base_dir;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const auto& key = it.key();
        const auto& v = it.value();
        if (key == "timing" || key == "partition") {
            if (!v.is_boolean()) throw ParseError("'" + key + "' must be true or false");
            (key == "timing" ? spec.options.timing : spec.options.partition) = v.get<bool>();
        } else if (key == "levels") {
            if (!v.is_number_integer()) throw ParseError("'levels' must be an integer");
            spec.options.levels = v.get<int>();
        } else if (key == "constants") {
            if (!v.is_object()) throw ParseError("'constants' must map bound names to constants");
            for (auto c = v.begin(); c != v.end(); ++c) {
                try {
                    const auto kind = parse_bound_kind(c.key());
                    const Rational q = parse_rational(value_text(c.value()));
                    if (sgn(q) <= 0) throw InvalidInput("constants must be positive");
                    switch (kind) {
                    case BoundKind::initial: spec.options.constants.initial = q; break;
                    case BoundKind::trivial: spec.options.constants.trivial = q; break;
                    case BoundKind::main: spec.options.constants.main = q; break;
                    case BoundKind::family: spec.options.constants.family = q; break;
                    }
                } catch (const InvalidInput& e) {
                    throw ParseError("constants: " + std::string(e.what()));
                }
            }
        } else if (key == "configs") {
            if (!v.is_array()) throw ParseError("'configs' must be an array");
            for (const auto& entry : v)
                for (const auto& row : expand(entry)) spec.entries.push_back(row.dump());
        } else {
            throw ParseError("unknown sweep key '" + key + "'");
        }
    }
    return spec;
}

SweepSpec read_sweep_file(const std::string& path)
{
    return parse_sweep(read_text_file(path), std::filesystem::path(path).parent_path().string());
}

unsigned threads_from_env()
{
    const char* v = std::getenv("INCIDENCE_LAB_THREADS");
    if (!v || !*v) return 0;
    const std::string s(v);
    if (s.size() > 4 || s.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("INCIDENCE_LAB_THREADS must be a small nonnegative integer, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

SweepRow measure_configuration(const AnyConfiguration& cfg, const SweepOptions& opts, std::optional<int> family_k)
{
    SweepRow row;
    const auto start = std::chrono::steady_clock::now();
    measure_any(row, cfg, opts, family_k);
    if (opts.timing)
        row.ms_elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    std::vector<SweepRow> rows(spec.entries.size());
    parallel_for(spec.entries.size(), spec.options.threads, [&](std::size_t k) {
        SweepRow& row = rows[k];
        row.config_id = k;
        const auto start = std::chrono::steady_clock::now();
        try {
            row.label = default_label(json::parse(spec.entries[k]));
            run_entry(row, spec.entries[k], spec);
        } catch (const InternalConsistencyError& e) {
            row.status = "inconsistent";
            row.message = e.what();
        } catch (const std::exception& e) {
            row.status = "failed";
            row.message = e.what();
        }
        if (spec.options.timing)
            row.ms_elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    });
    return rows;
}

FitResult fit_exponent(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size()) throw InvalidInput("fit needs as many x values as y values");
    if (x.size() < 2) throw InvalidInput("fit needs at least two rows");
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0) || !(y[k] > 0) || !std::isfinite(x[k]) || !std::isfinite(y[k]))
            throw InvalidInput("fit needs positive finite values, row " + std::to_string(k) + " has (" +
                               format_double(x[k]) + ", " + format_double(y[k]) + ")");
        lx.push_back(std::log(x[k]));
        ly.push_back(std::log(y[k]));
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    if (sxx == 0) throw InvalidInput("fit needs at least two distinct x values");
    FitResult out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.n = lx.size();
    for (std::size_t k = 0; k < lx.size(); ++k) {
        const double r = ly[k] - (out.intercept + out.slope * lx[k]);
        out.residual += r * r;
    }
    return out;
}

ReportFormat parse_report_format(const std::string& text)
{
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    throw InvalidInput("unknown report format '" + text + "' (expected csv or json)");
}

const std::vector<std::string>& report_columns()
{
    static const std::vector<std::string> cols{
        "config_id",     "field",         "d",           "A",          "n_points",     "n_curves",
        "incidences",    "rhs_initial",   "rhs_trivial", "rhs_main",   "rhs_family",   "c_min_initial",
        "c_min_trivial", "c_min_main",    "c_min_family", "deg_Q",     "max_cell",     "sum_Li",
        "ms_elapsed",    "label",         "status",      "message"};
    return cols;
}

std::string emit_report(const std::vector<SweepRow>& rows, ReportFormat format)
{
    if (format == ReportFormat::csv) {
        std::string out = csv_line(report_columns());
        for (const auto& r : rows) out += csv_line(cells_of(r));
        return out;
    }
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["config_id"] = r.config_id;
        o["field"] = r.field;
        o["d"] = r.d;
        o["A"] = r.A;
        o["n_points"] = int_json(r.n_points);
        o["n_curves"] = int_json(r.n_curves);
        o["incidences"] = int_json(r.incidences);
        for (std::size_t k = 0; k < 4; ++k) {
            o["rhs_" + to_string(bound_kinds[k])] = number_json(r.rhs[k]);
            o["c_min_" + to_string(bound_kinds[k])] = number_json(r.c_min[k]);
        }
        o["deg_Q"] = int_json(r.deg_Q);
        o["max_cell"] = int_json(r.max_cell);
        o["sum_Li"] = int_json(r.sum_Li);
        o["ms_elapsed"] = number_json(r.ms_elapsed);
        o["label"] = r.label;
        o["status"] = r.status;
        o["message"] = r.message;
        arr.push_back(std::move(o));
    }
    json doc;
    doc["columns"] = report_columns();
    doc["rows"] = arr;
    return doc.dump(1) + "\n";
}

void write_report(const std::vector<SweepRow>& rows, ReportFormat format, const std::string& path)
{
    write_text_file(path, emit_report(rows, format));
}

std::vector<SweepRow> parse_report_json(const std::string& text)
{
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
        throw ParseError("report must be an object with a 'rows' array");
    std::vector<SweepRow> rows;
    try {
        for (const auto& o : doc["rows"]) {
            SweepRow r;
            r.config_id = o.at("config_id").get<std::size_t>();
            r.field = o.at("field").get<std::string>();
            r.d = o.at("d").get<int>();
            r.A = o.at("A").get<int>();
            r.n_points = uint_from(o.at("n_points"));
            r.n_curves = uint_from(o.at("n_curves"));
            r.incidences = uint_from(o.at("incidences"));
            for (std::size_t k = 0; k < 4; ++k) {
                r.rhs[k] = double_from(o.at("rhs_" + to_string(bound_kinds[k])));
                r.c_min[k] = double_from(o.at("c_min_" + to_string(bound_kinds[k])));
            }
            r.deg_Q = uint_from(o.at("deg_Q"));
            r.max_cell = uint_from(o.at("max_cell"));
            r.sum_Li = uint_from(o.at("sum_Li"));
            r.ms_elapsed = double_from(o.at("ms_elapsed"));
            r.label = o.at("label").get<std::string>();
            r.status = o.at("status").get<std::string>();
            r.message = o.at("message").get<std::string>();
            rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report row: ") + e.what());
    }
    return rows;
}

std::size_t ReportTable::column(const std::string& name) const
{
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return k;
    throw InvalidInput("no column '" + name + "' in report");
}

ReportTable parse_report_table(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return parse_report_table(emit_report(parse_report_json(text), ReportFormat::csv));
    auto lines = parse_csv(text);
    if (lines.empty()) throw ParseError("report has no header line");
    ReportTable t;
    t.header = std::move(lines.front());
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].size() != t.header.size())
            throw ParseError("report row has " + std::to_string(lines[k].size()) + " cells, header has " +
                                 std::to_string(t.header.size()),
                             static_cast<int>(k + 1), 1);
        t.rows.push_back(std::move(lines[k]));
    }
    return t;
}

FitResult fit_columns(const ReportTable& table, const std::string& x, const std::string& y)
{
    const auto cx = table.column(x), cy = table.column(y);
    std::optional<std::size_t> cs;
    for (std::size_t k = 0; k < table.header.size(); ++k)
        if (table.header[k] == "status") cs = k;
    std::vector<double> xs, ys;
    for (const auto& r : table.rows) {
        if (cs && r[*cs] != "ok") continue;
        const auto vx = numeric_cell(r[cx], x), vy = numeric_cell(r[cy], y);
        if (!vx || !vy) continue;
        xs.push_back(*vx);
        ys.push_back(*vy);
    }
    return fit_exponent(xs, ys);
}

} // namespace incidence
