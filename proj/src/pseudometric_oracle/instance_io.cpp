#include "stmtsim/pseudometric.hpp"

#include <json.hpp>

namespace stmtsim {

namespace {

using nlohmann::ordered_json;

ExtRational parse_cell(const ordered_json &j)
{
    if (j.is_number_unsigned())
        return Rational(j.get<unsigned long long>());
    if (j.is_number_float()) {
        auto r = parse_rational(j.dump());
        if (r && *r >= 0)
            return *r;
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return ExtRational::infinity();
        auto r = parse_rational(s);
        if (r && *r >= 0)
            return *r;
    }
    throw InstanceFormatError("bound entries must be non-negative numbers, \"a/b\" strings or \"inf\", got " + j.dump());
}

std::size_t parse_index(const ordered_json &j, std::size_t n)
{
    if (!j.is_number_unsigned() || j.get<std::size_t>() >= n)
        throw InstanceFormatError("constraint index out of range: " + j.dump());
    return j.get<std::size_t>();
}

ordered_json cell_json(const ExtRational &v)
{
    if (v.is_infinite())
        return "inf";
    if (denominator(v.value()) == 1 && abs(numerator(v.value())) < BigInt(1) << 53)
        return numerator(v.value()).convert_to<long long>();
    return v.to_string();
}

ordered_json table_json(const DistanceTable &t)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < t.size(); ++j)
            row.push_back(cell_json(t.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

FiniteInstance instance_from_json(const std::string &text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error &e) {
        throw InstanceFormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("bound"))
        throw InstanceFormatError("instance must be an object with \"points\" and \"bound\"");
    for (const auto &[key, value] : doc.items())
        if (key != "points" && key != "bound" && key != "constraints")
            throw InstanceFormatError("unknown field \"" + key + "\"");

    FiniteInstance inst;
    if (!doc["points"].is_array())
        throw InstanceFormatError("\"points\" must be an array");
    for (const auto &p : doc["points"]) {
        if (!p.is_string())
            throw InstanceFormatError("point names must be strings");
        inst.points.push_back(p.get<std::string>());
    }
    const std::size_t n = inst.points.size();
    const auto &bound = doc["bound"];
    if (!bound.is_array() || bound.size() != n)
        throw InstanceFormatError("\"bound\" must be an n-by-n array");
    inst.bound = DistanceTable(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!bound[i].is_array() || bound[i].size() != n)
            throw InstanceFormatError("\"bound\" must be an n-by-n array");
        for (std::size_t j = 0; j < n; ++j)
            inst.bound.at(i, j) = parse_cell(bound[i][j]);
    }
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array())
            throw InstanceFormatError("\"constraints\" must be an array");
        for (const auto &c : doc["constraints"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_array() || c[0].size() != 2 || !c[1].is_array()
                || c[1].size() != 2)
                throw InstanceFormatError("constraints have the form [[i, j], [k, l]]");
            inst.constraints.push_back({{parse_index(c[0][0], n), parse_index(c[0][1], n)},
                                        {parse_index(c[1][0], n), parse_index(c[1][1], n)}});
        }
    }
    return inst;
}

std::string instance_to_json(const FiniteInstance &instance)
{
    ordered_json doc;
    doc["points"] = instance.points;
    doc["bound"] = table_json(instance.bound);
    ordered_json cs = ordered_json::array();
    for (const auto &[xy, uv] : instance.constraints)
        cs.push_back({{xy.first, xy.second}, {uv.first, uv.second}});
    doc["constraints"] = std::move(cs);
    return doc.dump(2) + "\n";
}

std::string table_to_json(const std::vector<std::string> &points, const PseudometricTable &table,
                          const std::vector<Violation> *violations)
{
    ordered_json doc;
    doc["points"] = points;
    doc["distance"] = table_json(table);
    if (violations) {
        ordered_json vs = ordered_json::array();
        for (const auto &v : *violations)
            vs.push_back({{"kind", violation_kind_name(v.kind)}, {"witness", v.witness}});
        doc["violations"] = std::move(vs);
    }
    return doc.dump(2) + "\n";
}

} // namespace stmtsim
