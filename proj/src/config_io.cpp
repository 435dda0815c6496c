#include "incidence/config_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace incidence {

using nlohmann::json;

std::pair<int, int> line_column(const std::string& text, std::size_t offset)
{
    int line = 1, column = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
    if (!out) throw InvalidInput("write to '" + path + "' failed");
}

namespace {

std::string scalar_text(const json& v, const std::string& where)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    throw ParseError(where + ": expected an exact number as a string");
}

template <class S>
S parse_scalar(const json& v, const FieldTag& tag, const std::string& where)
{
    const auto text = scalar_text(v, where);
    try {
        return FieldTraits<S>::parse(text, tag);
    } catch (const InvalidInput& e) {
        throw ParseError(where + ": " + e.what());
    }
}

std::pair<int, int> parse_exponents(const std::string& key, const std::string& where)
{
    const auto comma = key.find(',');
    const auto digits = [](const std::string& s) {
        return !s.empty() && s.size() < 4 && s.find_first_not_of("0123456789") == std::string::npos;
    };
    if (comma == std::string::npos || !digits(key.substr(0, comma)) || !digits(key.substr(comma + 1)))
        throw ParseError(where + ": bad exponent key '" + key + "' (expected \"i,j\")");
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

template <class S>
PointConfiguration<S> parse_as(const json& doc, const FieldTag& tag, int d)
{
    PointConfiguration<S> cfg{tag, d, {}, {}};
    const auto& pts = doc.at("points");
    if (!pts.is_array()) throw ParseError("points: expected an array");
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string where = "points[" + std::to_string(k) + "]";
        const auto& p = pts[k];
        if (!p.is_array() || p.size() != 2) throw ParseError(where + ": expected a pair");
        cfg.points.push_back({parse_scalar<S>(p[0], tag, where + "[0]"), parse_scalar<S>(p[1], tag, where + "[1]")});
    }
    const auto& curves = doc.at("curves");
    if (!curves.is_array()) throw ParseError("curves: expected an array");
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const std::string where = "curves[" + std::to_string(k) + "]";
        const auto& c = curves[k];
        if (!c.is_object()) throw ParseError(where + ": expected an object of \"i,j\": coefficient");
        BivariatePolynomial<S> poly(d);
        for (auto it = c.begin(); it != c.end(); ++it) {
            const auto [i, j] = parse_exponents(it.key(), where);
            if (i + j > d)
                throw ParseError(where + ": monomial " + it.key() + " exceeds degree " + std::to_string(d));
            poly.add_term(i, j, parse_scalar<S>(it.value(), tag, where + "[\"" + it.key() + "\"]"));
        }
        cfg.curves.push_back(poly.canonical());
    }
    return cfg;
}

template <class S>
json to_json(const PointConfiguration<S>& cfg)
{
    json doc;
    doc["field"] = cfg.field.to_string();
    doc["d"] = cfg.d;
    json pts = json::array();
    for (const auto& p : cfg.points) pts.push_back({scalar_to_string(p.x), scalar_to_string(p.y)});
    doc["points"] = pts;
    json curves = json::array();
    for (const auto& c : cfg.curves) {
        json obj = json::object();
        for (const auto& [m, v] : c.terms()) obj[std::to_string(m.x) + "," + std::to_string(m.y)] = scalar_to_string(v);
        curves.push_back(obj);
    }
    doc["curves"] = curves;
    return doc;
}

} // namespace

AnyConfiguration parse_configuration(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, column);
    }
    if (!doc.is_object()) throw ParseError("configuration must be a JSON object", 1, 1);
    for (const char* key : {"field", "d", "points", "curves"})
        if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    if (!doc["field"].is_string()) throw ParseError("field: expected a string");
    if (!doc["d"].is_number_integer()) throw ParseError("d: expected an integer");
    FieldTag tag;
    try {
        tag = FieldTag::parse(doc["field"].get<std::string>());
    } catch (const InvalidInput& e) {
        throw ParseError(std::string("field: ") + e.what());
    }
    const int d = doc["d"].get<int>();
    if (d < 1) throw ParseError("d: degree bound must be at least 1");
    switch (tag.kind) {
    case FieldKind::rational: return parse_as<Rational>(doc, tag, d);
    case FieldKind::prime: return parse_as<ModP>(doc, tag, d);
    case FieldKind::gaussian: return parse_as<GaussianRational>(doc, tag, d);
    }
    throw ParseError("unknown field");
}

AnyConfiguration read_configuration_file(const std::string& path) { return parse_configuration(read_text_file(path)); }

std::string write_configuration(const AnyConfiguration& cfg)
{
    return std::visit([](const auto& c) { return to_json(c).dump(1) + "\n"; }, cfg);
}

void write_configuration_file(const AnyConfiguration& cfg, const std::string& path)
{
    write_text_file(path, write_configuration(cfg));
}

} // namespace incidence
