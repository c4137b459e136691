#include "cutset/set_spec_io.hpp"

#include "cutset/errors.hpp"

#include <fstream>

namespace cutset {

using nlohmann::json;

Rational rational_from_json(const json& value)
{
    if (value.is_string())
        return parse_rational(value.get<std::string>());
    if (value.is_number_integer())
        return Rational(value.get<long long>());
    if (value.is_number_float())
        return from_double(value.get<double>());
    throw ValidationError("expected a rational, got " + value.dump());
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ValidationError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

XiRule xi_from_json(const json& j, const std::string& where)
{
    XiRule rule;
    const auto kind = require(j, "rule", where).get<std::string>();
    if (kind == "ratios") {
        rule.kind = XiRule::Kind::Ratios;
        for (const auto& r : require(j, "ratios", where))
            rule.ratios.push_back(rational_from_json(r));
        rule.repeat_tail = j.value("repeat_tail", true);
    } else if (kind == "alpha") {
        rule.kind = XiRule::Kind::Alpha;
        rule.alpha = rational_from_json(require(j, "alpha", where));
    } else if (kind == "ternary") {
        rule = XiRule::ternary();
    } else {
        throw ValidationError(where + ": unknown xi rule '" + kind + "'");
    }
    return rule;
}

PointClusterSpec::Direction direction_from(const std::string& s, const std::string& where)
{
    if (s == "left")
        return PointClusterSpec::Direction::Left;
    if (s == "right")
        return PointClusterSpec::Direction::Right;
    if (s == "both")
        return PointClusterSpec::Direction::Both;
    throw ValidationError(where + ": direction must be left, right or both");
}

const char* direction_name(PointClusterSpec::Direction d)
{
    switch (d) {
    case PointClusterSpec::Direction::Left: return "left";
    case PointClusterSpec::Direction::Right: return "right";
    case PointClusterSpec::Direction::Both: return "both";
    }
    return "right";
}

} // namespace

SetSpec set_spec_from_json(const json& doc)
{
    SetSpec spec;
    const auto& parts = require(doc, "parts", "set spec");
    if (!parts.is_array())
        throw ValidationError("set spec: 'parts' must be an array");
    std::size_t index = 0;
    for (const auto& p : parts) {
        const std::string where = "part #" + std::to_string(++index);
        const auto type = require(p, "type", where).get<std::string>();
        if (type == "central_cantor") {
            CentralCantorSpec c;
            c.xi = xi_from_json(require(p, "xi", where), where);
            if (p.contains("carrier")) {
                const auto& car = p.at("carrier");
                if (!car.is_array() || car.size() != 2)
                    throw ValidationError(where + ": carrier must be [left, right]");
                c.carrier = ClosedInterval{rational_from_json(car[0]), rational_from_json(car[1])};
            }
            spec.parts.emplace_back(std::move(c));
        } else if (type == "finite_points") {
            std::vector<Rational> pts;
            for (const auto& x : require(p, "points", where))
                pts.push_back(rational_from_json(x));
            spec.parts.emplace_back(PointClusterSpec::finite(std::move(pts)));
        } else if (type == "geometric") {
            spec.parts.emplace_back(PointClusterSpec::geometric(
                rational_from_json(require(p, "limit", where)),
                rational_from_json(require(p, "offset", where)),
                rational_from_json(require(p, "ratio", where)),
                direction_from(p.value("direction", std::string("right")), where)));
        } else {
            throw ValidationError(where + ": unknown part type '" + type + "'");
        }
    }
    return spec;
}

json set_spec_to_json(const SetSpec& spec)
{
    json parts = json::array();
    for (const auto& part : spec.parts) {
        if (const auto* c = std::get_if<CentralCantorSpec>(&part)) {
            json xi;
            if (c->xi.kind == XiRule::Kind::Alpha) {
                xi = {{"rule", "alpha"}, {"alpha", to_string(c->xi.alpha)}};
            } else {
                json ratios = json::array();
                for (const auto& r : c->xi.ratios)
                    ratios.push_back(to_string(r));
                xi = {{"rule", "ratios"}, {"ratios", ratios}, {"repeat_tail", c->xi.repeat_tail}};
            }
            parts.push_back({{"type", "central_cantor"},
                             {"carrier", {to_string(c->carrier.left), to_string(c->carrier.right)}},
                             {"xi", xi}});
        } else {
            const auto& cl = std::get<PointClusterSpec>(part);
            if (cl.kind == PointClusterSpec::Kind::FinitePoints) {
                json pts = json::array();
                for (const auto& x : cl.points)
                    pts.push_back(to_string(x));
                parts.push_back({{"type", "finite_points"}, {"points", pts}});
            } else {
                parts.push_back({{"type", "geometric"},
                                 {"limit", to_string(cl.limit)},
                                 {"offset", to_string(cl.offset)},
                                 {"ratio", to_string(cl.ratio)},
                                 {"direction", direction_name(cl.direction)}});
            }
        }
    }
    return json{{"parts", parts}};
}

SetSpec load_set_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open set spec '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError("set spec '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return set_spec_from_json(doc);
}

void save_set_spec(const SetSpec& spec, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << set_spec_to_json(spec).dump(2) << '\n';
}

} // namespace cutset
