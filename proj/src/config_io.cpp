#include "stringmass/config_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "stringmass/error.hpp"

namespace stringmass {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what)
{
    throw ConfigError(origin + ": " + where + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& origin,
                    const std::string& where)
{
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) fail(origin, where, "unknown key '" + key + "'");
}

double number(const json& obj, const char* key, const std::string& origin, const std::string& where)
{
    if (!obj.contains(key)) fail(origin, where, std::string("missing '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(origin, where + "." + key, "expected a number");
    return v.get<double>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& origin, const std::string& where)
{
    if (!obj.contains(key)) fail(origin, where, std::string("missing '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_array()) fail(origin, where + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(origin, where + "." + key, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

ProfileSpec profile(const json& p, const std::string& origin, const std::string& where)
{
    if (!p.is_object()) fail(origin, where, "expected an object with a 'kind'");
    if (!p.contains("kind") || !p.at("kind").is_string()) fail(origin, where, "missing string 'kind'");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "constant") {
        reject_unknown(p, {"kind", "value"}, origin, where);
        return ProfileSpec::constant(number(p, "value", origin, where));
    }
    if (kind == "poly") {
        reject_unknown(p, {"kind", "coeffs"}, origin, where);
        return ProfileSpec::polynomial(numbers(p, "coeffs", origin, where));
    }
    if (kind == "samples") {
        reject_unknown(p, {"kind", "x", "y"}, origin, where);
        return ProfileSpec::samples(numbers(p, "x", origin, where), numbers(p, "y", origin, where));
    }
    fail(origin, where + ".kind", "unknown kind '" + kind + "' (expected constant, poly or samples)");
}

SideCoefficients side(const json& doc, Side s, const std::string& origin)
{
    const std::string name(to_string(s));
    if (!doc.contains(name) || !doc.at(name).is_object()) fail(origin, name, "missing object");
    const json& obj = doc.at(name);
    reject_unknown(obj, {"rho", "sigma", "q"}, origin, name);
    if (!obj.contains("rho")) fail(origin, name, "missing 'rho'");
    if (!obj.contains("sigma")) fail(origin, name, "missing 'sigma'");
    const ProfileSpec rho = profile(obj.at("rho"), origin, name + ".rho");
    const ProfileSpec sigma = profile(obj.at("sigma"), origin, name + ".sigma");
    const ProfileSpec q = obj.contains("q") ? profile(obj.at("q"), origin, name + ".q") : ProfileSpec::constant(0.0);
    try {
        return build_side(s, rho, sigma, q);
    } catch (const NumericError& e) {
        fail(origin, name, e.what());
    }
}

} // namespace

SystemConfig parse_config(const std::string& text, const std::string& origin)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, "parse", e.what());
    }
    if (!doc.is_object()) fail(origin, "document", "expected a JSON object");
    reject_unknown(doc, {"mass", "left", "right"}, origin, "document");
    const double mass = number(doc, "mass", origin, "document");
    SideCoefficients left = side(doc, Side::Left, origin);
    SideCoefficients right = side(doc, Side::Right, origin);
    try {
        return SystemConfig(std::move(left), std::move(right), mass);
    } catch (const NumericError& e) {
        fail(origin, "mass", e.what());
    }
}

SystemConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

} // namespace stringmass
