////////////////////////////////////////////////////////////////////////////////
// material.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Material constants of the strain-limiting special Cosserat rod, their
//  admissibility checks, and the (L, gamma) = (1, 1) gauge used by every
//  downstream computation.
//
//  alpha, beta, iota scale like length; gamma like force; zeta, eta, p are
//  dimensionless. The small-strain moduli are gamma*alpha^2 (bending),
//  gamma*beta^2 (twisting), gamma*zeta^2 (shearing), gamma*eta^2
//  (dilatational) and gamma*iota (twist-stretch coupling / chirality).
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SLROD_MATERIAL_HPP
#define SLROD_MATERIAL_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slrod {

struct MaterialParams {
    double alpha      = 1.0;
    double beta       = 1.0;
    double gamma      = 1.0;
    double zeta       = 1.0;
    double eta        = 1.0;
    double iota       = 0.0;
    double p          = 2.0;
    double ref_length = 1.0;

    // beta^2 eta^2 - iota^2; appears in every twist/stretch expression.
    double coupling_det() const { return beta * beta * eta * eta - iota * iota; }
};

struct DerivedModuli {
    double bending;
    double twisting;
    double shearing;
    double dilatational;
    double twist_stretch;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class NonPositiveParameter : public ParameterError {
public:
    explicit NonPositiveParameter(std::string name);
    const std::string &name() const noexcept { return m_name; }
private:
    std::string m_name;
};

struct NonFiniteParameter : ParameterError {
    explicit NonFiniteParameter(const std::string &name);
};

struct DefinitenessViolation : ParameterError {
    explicit DefinitenessViolation(double det);
};

// Unreadable or ill-formed parameter file.
struct ParamFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Returns params unchanged if admissible, throws a ParameterError otherwise.
MaterialParams validate(const MaterialParams &params);

// Rescales to ref_length = 1, gamma = 1. Idempotent.
MaterialParams nondimensionalize(const MaterialParams &params);

DerivedModuli derived_moduli(const MaterialParams &params);

// 1 + iota^2/beta^2 < eta^2: every admissible state has v3 > 0.
bool orientation_weak_ok(const MaterialParams &params);

// a < alpha (1 - beta (beta^2 eta^2 - iota^2)^{-1/2}): the slender body
// r + x1 d1 + x2 d2 with cross-section radius a preserves orientation.
// The radius is in the same length unit as alpha.
bool orientation_strong_ok(const MaterialParams &params, double cross_section_radius);

////////////////////////////////////////////////////////////////////////////////
// Validated material in the normalized gauge. All constitutive and equilibrium
// routines take this type; loads are then in units of gamma (forces) and
// gamma*L (couples), and arclength runs over [0, 1].
////////////////////////////////////////////////////////////////////////////////
class Material {
public:
    Material() : Material(MaterialParams{}) {}
    explicit Material(const MaterialParams &params);

    const MaterialParams &params() const noexcept { return m_params; }

    double alpha() const noexcept { return m_params.alpha; }
    double beta()  const noexcept { return m_params.beta;  }
    double gamma() const noexcept { return m_params.gamma; }
    double zeta()  const noexcept { return m_params.zeta;  }
    double eta()   const noexcept { return m_params.eta;   }
    double iota()  const noexcept { return m_params.iota;  }
    double p()     const noexcept { return m_params.p;     }

    double coupling_det() const noexcept { return m_det; }

private:
    MaterialParams m_params;
    double m_det;
};

// JSON object with keys alpha, beta, gamma, zeta, eta, iota, p and optional
// ref_length. Throws ParamFileError on I/O or format problems; admissibility
// is not checked here.
MaterialParams parse_params_json(std::string_view text);
MaterialParams read_params_file(const std::filesystem::path &path);

} // namespace slrod

#endif // SLROD_MATERIAL_HPP
