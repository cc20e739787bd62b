#include "slrod/material.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slrod {

NonPositiveParameter::NonPositiveParameter(std::string name)
    : ParameterError("NonPositiveParameter: " + name + " must be > 0"), m_name(std::move(name)) {}

NonFiniteParameter::NonFiniteParameter(const std::string &name)
    : ParameterError("NonFiniteParameter: " + name + " must be finite") {}

DefinitenessViolation::DefinitenessViolation(double det)
    : ParameterError("DefinitenessViolation: beta^2 eta^2 - iota^2 = " + std::to_string(det) +
                     " must be > 0") {}

MaterialParams validate(const MaterialParams &params) {
    const std::pair<const char *, double> positive[] = {
        {"alpha", params.alpha}, {"beta", params.beta}, {"gamma", params.gamma},
        {"zeta", params.zeta},   {"eta", params.eta},   {"p", params.p},
        {"ref_length", params.ref_length}};
    for (const auto &[name, value] : positive) {
        if (!std::isfinite(value)) throw NonFiniteParameter(name);
        if (!(value > 0.0)) throw NonPositiveParameter(name);
    }
    if (!std::isfinite(params.iota)) throw NonFiniteParameter("iota");

    const double det = params.coupling_det();
    if (!(det > 0.0)) throw DefinitenessViolation(det);
    return params;
}

MaterialParams nondimensionalize(const MaterialParams &params) {
    MaterialParams out = validate(params);
    const double L = params.ref_length;
    out.alpha = params.alpha / L;
    out.beta  = params.beta / L;
    out.iota  = params.iota / L;
    out.gamma = 1.0;
    out.ref_length = 1.0;
    return out;
}

DerivedModuli derived_moduli(const MaterialParams &params) {
    const double g = params.gamma;
    return {g * params.alpha * params.alpha, g * params.beta * params.beta,
            g * params.zeta * params.zeta,   g * params.eta * params.eta,
            g * params.iota};
}

bool orientation_weak_ok(const MaterialParams &params) {
    const double b = params.beta;
    return 1.0 + params.iota * params.iota / (b * b) < params.eta * params.eta;
}

bool orientation_strong_ok(const MaterialParams &params, double cross_section_radius) {
    const double limit = params.alpha * (1.0 - params.beta / std::sqrt(params.coupling_det()));
    return cross_section_radius < limit;
}

Material::Material(const MaterialParams &params)
    : m_params(nondimensionalize(params)), m_det(m_params.coupling_det()) {}

////////////////////////////////////////////////////////////////////////////////
// Parameter files
////////////////////////////////////////////////////////////////////////////////
namespace {

double required_number(const nlohmann::json &obj, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParamFileError(std::string("missing key \"") + key + "\"");
    if (!it->is_number()) throw ParamFileError(std::string("key \"") + key + "\" is not a number");
    const double value = it->get<double>();
    if (!std::isfinite(value)) throw ParamFileError(std::string("key \"") + key + "\" is not finite");
    return value;
}

} // namespace

MaterialParams parse_params_json(std::string_view text) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParamFileError(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParamFileError("parameter file must hold a JSON object");

    MaterialParams params;
    params.alpha = required_number(obj, "alpha");
    params.beta  = required_number(obj, "beta");
    params.gamma = required_number(obj, "gamma");
    params.zeta  = required_number(obj, "zeta");
    params.eta   = required_number(obj, "eta");
    params.iota  = required_number(obj, "iota");
    params.p     = required_number(obj, "p");
    params.ref_length = obj.contains("ref_length") ? required_number(obj, "ref_length") : 1.0;
    return params;
}

MaterialParams read_params_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ParamFileError("cannot open parameter file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params_json(buf.str());
}

} // namespace slrod
