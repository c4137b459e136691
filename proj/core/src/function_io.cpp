#include "cutset/function_io.hpp"

#include "cutset/errors.hpp"
#include "cutset/set_spec_io.hpp"

#include <fstream>

namespace cutset {

using nlohmann::json;

json function_to_json(const PiecewiseFunction& pf)
{
    json doc;
    doc["format"] = "cutset-function/1";
    doc["construction"] = to_string(pf.construction);
    doc["depth"] = pf.depth;
    doc["budget"] = pf.budget;
    doc["set"] = set_spec_to_json(pf.zero_set.spec);
    if (pf.rule) {
        doc["coefficient_rule"] = {
            {"kind", pf.rule->kind == CoefficientRule::Kind::Power ? "power" : "geometric"},
            {"scale", pf.rule->scale},
            {"exponent", pf.rule->exponent}};
    }
    json truncated = json::array();
    for (const auto& [gap, info] : pf.truncated_gaps)
        truncated.push_back({{"gap", gap}, {"level", info.first}, {"materialized", info.second}});
    doc["truncated_gaps"] = truncated;
    doc["deviations"] = pf.deviations;
    json terms = json::array();
    for (const auto& t : pf.terms) {
        terms.push_back({{"left", to_string(t.support.left)},
                         {"right", to_string(t.support.right)},
                         {"sign", t.sign},
                         {"kernel", to_string(t.kernel)},
                         {"coefficient", t.coefficient},
                         {"log_coefficient", t.log_coefficient},
                         {"expr", t.coefficient_expr},
                         {"level", t.level},
                         {"index", t.index},
                         {"gap", t.gap}});
    }
    doc["terms"] = terms;
    return doc;
}

PiecewiseFunction function_from_json(const json& doc)
{
    try {
        PiecewiseFunction pf;
        pf.construction = construction_from_string(doc.at("construction").get<std::string>());
        pf.depth = doc.value("depth", 0);
        pf.budget = doc.value("budget", kDefaultBudget);
        pf.zero_set = validate_spec(set_spec_from_json(doc.at("set")));
        if (doc.contains("coefficient_rule")) {
            const auto& r = doc.at("coefficient_rule");
            const std::string kind = r.at("kind").get<std::string>();
            const double scale = r.at("scale").get<double>();
            const double exponent = r.at("exponent").get<double>();
            if (kind == "power")
                pf.rule = CoefficientRule::power(exponent, scale);
            else if (kind == "geometric")
                pf.rule = CoefficientRule::geometric(exponent, scale);
            else
                throw ValidationError("unknown coefficient rule kind '" + kind + "'");
        }
        for (const auto& t : doc.value("truncated_gaps", json::array()))
            pf.truncated_gaps[t.at("gap").get<std::string>()] = {t.at("level").get<int>(),
                                                                 t.at("materialized").get<std::size_t>()};
        pf.deviations = doc.value("deviations", std::vector<std::string>{});
        for (const auto& j : doc.at("terms")) {
            SignedBumpTerm t;
            t.support = OpenInterval{rational_from_json(j.at("left")), rational_from_json(j.at("right"))};
            if (!(t.support.left < t.support.right))
                throw ValidationError("term support is empty");
            t.sign = j.at("sign").get<int>();
            if (t.sign != 1 && t.sign != -1)
                throw ValidationError("term sign must be +1 or -1");
            t.kernel = kernel_from_string(j.at("kernel").get<std::string>());
            t.coefficient = j.at("coefficient").get<double>();
            t.log_coefficient = j.at("log_coefficient").get<double>();
            t.coefficient_expr = j.value("expr", std::string{});
            t.level = j.value("level", 0);
            t.index = j.value("index", std::size_t{0});
            t.gap = j.value("gap", std::string{});
            t.refresh_cache();
            pf.terms.push_back(std::move(t));
        }
        for (std::size_t i = 1; i < pf.terms.size(); ++i)
            if (!(pf.terms[i - 1].support.right <= pf.terms[i].support.left))
                throw ValidationError("function terms must be sorted with disjoint supports");
        return pf;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed function document: ") + e.what());
    }
}

void save_function(const PiecewiseFunction& pf, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << function_to_json(pf).dump(1) << '\n';
}

PiecewiseFunction load_function(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return function_from_json(doc);
}

} // namespace cutset
