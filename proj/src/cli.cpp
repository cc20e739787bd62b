#include "slrod/cli.hpp"
#include "slrod/equilibrium.hpp"
#include "slrod/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

namespace slrod::cli {

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoFailure("cannot open '" + path.string() + "' for writing");
    return os;
}

void finish_output(std::ofstream &os, const std::filesystem::path &path) {
    os.flush();
    if (!os) throw IoFailure("failed writing '" + path.string() + "'");
}

const char *yes_no(bool b) { return b ? "true" : "false"; }

template <class Array>
void write_row(std::ostream &os, const Array &values, std::optional<double> extra = {}) {
    for (std::size_t k = 0; k < values.size(); ++k) os << (k ? "," : "") << format_number(values[k]);
    if (extra) os << ',' << format_number(*extra);
    os << '\n';
}

template <class Array>
void write_json_array(std::ostream &os, const Array &values) {
    os << '[';
    for (std::size_t k = 0; k < values.size(); ++k) os << (k ? ", " : "") << format_number(values[k]);
    os << ']';
}

////////////////////////////////////////////////////////////////////////////////
// Subcommands
////////////////////////////////////////////////////////////////////////////////
int cmd_validate(const std::filesystem::path &params_path, std::ostream &out) {
    const MaterialParams raw = read_params_file(params_path);
    validate(raw);
    const Material mat(raw);

    const DerivedModuli dm = derived_moduli(raw);
    out << "params: " << params_path.string() << '\n';
    out << "status: valid\n";
    out << "bending modulus gamma alpha^2 = " << format_number(dm.bending) << '\n';
    out << "twisting modulus gamma beta^2 = " << format_number(dm.twisting) << '\n';
    out << "shearing modulus gamma zeta^2 = " << format_number(dm.shearing) << '\n';
    out << "dilatational modulus gamma eta^2 = " << format_number(dm.dilatational) << '\n';
    out << "twist-stretch coupling gamma iota = " << format_number(dm.twist_stretch) << '\n';
    out << "orientation_weak_ok: " << yes_no(orientation_weak_ok(raw)) << '\n';
    out << "orientation_strong_ok radius bound = "
        << format_number(raw.alpha * (1.0 - raw.beta / std::sqrt(raw.coupling_det()))) << '\n';

    const ShearThreshold threshold = shear_threshold(mat);
    const bool tt1 = !(threshold.failed && *threshold.failed == BifurcationCondition::ModuliOrdering);
    out << "moduli_ordering_ok: " << yes_no(tt1) << '\n';
    out << "sheared_branch_exists: " << yes_no(static_cast<bool>(threshold)) << '\n';
    if (threshold)
        out << "N_thresh = " << format_number(*threshold.value) << '\n';
    else
        out << "NoBifurcation: " << describe(*threshold.failed) << '\n';
    return Success;
}

int cmd_eval(const std::filesystem::path &params_path, const std::string &direction,
             const std::vector<double> &values, const std::string &fmt, std::ostream &out) {
    const Material mat(read_params_file(params_path));
    std::array<double, 6> in{};
    std::copy(values.begin(), values.end(), in.begin());

    std::array<double, 6> result{};
    std::string names, form_name;
    double form = 0.0;
    if (direction == "forward") {
        const Loads loads = Loads::from_array(in);
        result = strains_from_loads(mat, loads).as_array();
        form = quad_form_Qstar(mat, loads);
        names = "u1,u2,u3,v1,v2,v3";
        form_name = "Qstar";
    } else {
        const Strains strains = Strains::from_array(in);
        result = loads_from_strains(mat, strains).as_array();
        form = quad_form_Q(mat, strains);
        names = "m1,m2,m3,n1,n2,n3";
        form_name = "Q";
    }

    if (fmt == "json") {
        out << "{\"" << (direction == "forward" ? "strains" : "loads") << "\": ";
        write_json_array(out, result);
        out << ", \"" << form_name << "\": " << format_number(form) << "}\n";
    } else {
        out << names << ',' << form_name << '\n';
        write_row(out, result, form);
    }
    return Success;
}

int cmd_branch(const std::filesystem::path &params_path, double n_min, double n_max, std::size_t count,
               const std::string &out_path, std::ostream &out) {
    const Material mat(read_params_file(params_path));
    const std::vector<BranchPoint> points = branch_sweep(mat, n_min, n_max, count);
    if (out_path.empty()) {
        write_branch_csv(out, mat, points);
        return Success;
    }
    std::ofstream os = open_output(out_path);
    write_branch_csv(os, mat, points);
    finish_output(os, out_path);
    return Success;
}

struct StateOptions {
    std::string family;
    double thrust = 0.0;
    double m3 = 0.0;
    double m1 = 0.0;
    std::optional<double> theta;
    double psi0 = 0.0;
    double grid_h = 1e-3;
    std::string out_path;
};

EquilibriumState build_state(const Material &mat, const StateOptions &o) {
    if (o.family == "trivial") return trivial_tensile_state(mat, o.thrust, o.psi0, o.grid_h);
    if (o.family == "sheared") return sheared_tensile_state(mat, o.thrust, o.psi0, o.grid_h);
    if (o.family == "twist") return pure_twist_state(mat, o.m3, o.theta.value_or(0.0), o.psi0, o.grid_h);
    if (o.family == "bending") return pure_bending_state(mat, o.m1, o.psi0, o.grid_h);
    if (!o.theta) throw std::invalid_argument("family helix needs --theta");
    return helical_state(mat, o.m1, *o.theta, o.psi0, o.grid_h);
}

int cmd_state(const std::filesystem::path &params_path, const StateOptions &o, std::ostream &out) {
    const Material mat(read_params_file(params_path));
    const EquilibriumState state = build_state(mat, o);

    const std::filesystem::path csv_path = o.out_path;
    const std::filesystem::path json_path = descriptor_path(csv_path);
    {
        std::ofstream os = open_output(csv_path);
        write_configuration_csv(os, state.configuration());
        finish_output(os, csv_path);
    }
    {
        std::ofstream os = open_output(json_path);
        write_descriptor_json(os, state.descriptor(), state.spacing());
        finish_output(os, json_path);
    }
    out << "family: " << to_string(state.descriptor().family) << '\n';
    out << "samples: " << state.configuration().size() << '\n';
    out << "configuration: " << csv_path.string() << '\n';
    out << "descriptor: " << json_path.string() << '\n';
    return Success;
}

int cmd_check(const std::filesystem::path &csv_path, const std::filesystem::path &params_path,
              std::ostream &out) {
    const Material mat(read_params_file(params_path));
    std::ifstream is(csv_path, std::ios::binary);
    if (!is) throw IoFailure("cannot open '" + csv_path.string() + "'");
    const Configuration config = read_configuration_csv(is);

    const BalanceReport report = check_balance(mat, config);
    const double tol = balance_tolerance(report.spacing, report.max_load);
    const bool ok = report.force_residual < tol && report.moment_residual < tol;

    out << "spacing = " << format_number(report.spacing) << '\n';
    out << "max_load = " << format_number(report.max_load) << '\n';
    out << "force_residual = " << format_number(report.force_residual) << '\n';
    out << "moment_residual = " << format_number(report.moment_residual) << '\n';
    out << "tolerance = " << format_number(tol) << '\n';
    out << "status: " << (ok ? "balanced" : "unbalanced") << '\n';
    return ok ? Success : DomainError;
}

} // namespace

double balance_tolerance(double spacing, double max_load) {
    const double scale = spacing / 1e-4;
    return 1e-6 * (1.0 + max_load) * scale * scale;
}

std::filesystem::path descriptor_path(const std::filesystem::path &csv_path) {
    std::filesystem::path p = csv_path;
    return p.replace_extension(".json");
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Strain-limiting Cosserat rod: constitutive maps and equilibrium states", "slrod"};
    app.require_subcommand(1);

    std::string params, csv_path;

    auto *validate_cmd = app.add_subcommand("validate", "Check a parameter file and report derived data");
    validate_cmd->add_option("params", params, "Parameter JSON file")->required();

    std::string direction = "forward", fmt = "csv";
    std::vector<double> values;
    auto *eval_cmd = app.add_subcommand("eval", "Evaluate the constitutive map at one point");
    eval_cmd->add_option("params", params, "Parameter JSON file")->required();
    eval_cmd->add_option("--direction", direction, "forward: loads -> strains, inverse: strains -> loads")
        ->check(CLI::IsMember({"forward", "inverse"}));
    eval_cmd->add_option("--values", values, "Six comma-separated numbers (m then n, or u then v)")
        ->required()
        ->expected(6)
        ->delimiter(',');
    eval_cmd->add_option("--format", fmt, "Output format")->check(CLI::IsMember({"csv", "json"}));

    double n_min = 0.0, n_max = 0.0;
    std::size_t count = 2;
    std::string branch_out;
    auto *branch_cmd = app.add_subcommand("branch", "Sweep the tensile branches over a thrust range");
    branch_cmd->add_option("params", params, "Parameter JSON file")->required();
    branch_cmd->add_option("--n-min", n_min, "Smallest thrust")->required();
    branch_cmd->add_option("--n-max", n_max, "Largest thrust")->required();
    branch_cmd->add_option("--count", count, "Number of thrust samples")->required();
    branch_cmd->add_option("--out", branch_out, "Output CSV (default: stdout)");

    StateOptions state;
    double theta = 0.0;
    auto *state_cmd = app.add_subcommand("state", "Export an equilibrium configuration");
    state_cmd->add_option("params", params, "Parameter JSON file")->required();
    state_cmd->add_option("--family", state.family, "State family")
        ->required()
        ->check(CLI::IsMember({"trivial", "sheared", "twist", "helix", "bending"}));
    state_cmd->add_option("--n-thrust", state.thrust, "End thrust N");
    state_cmd->add_option("--m3", state.m3, "Twisting couple M3");
    state_cmd->add_option("--m1", state.m1, "Bending couple M1");
    auto *theta_opt = state_cmd->add_option("--theta", theta, "Nutation angle (radians)");
    state_cmd->add_option("--psi0", state.psi0, "Initial spin angle (radians)");
    state_cmd->add_option("--grid-h", state.grid_h, "Grid spacing in (0, 0.1]");
    state_cmd->add_option("--out", state.out_path, "Configuration CSV; the descriptor goes to <out>.json")
        ->required();

    auto *check_cmd = app.add_subcommand("check", "Finite-difference check of the balance laws");
    check_cmd->add_option("state_csv", csv_path, "Configuration CSV")->required();
    check_cmd->add_option("params", params, "Parameter JSON file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : IoError;
    }

    try {
        if (*validate_cmd) return cmd_validate(params, out);
        if (*eval_cmd) return cmd_eval(params, direction, values, fmt, out);
        if (*branch_cmd) return cmd_branch(params, n_min, n_max, count, branch_out, out);
        if (*state_cmd) {
            if (theta_opt->count() > 0) state.theta = theta;
            return cmd_state(params, state, out);
        }
        return cmd_check(csv_path, params, out);
    } catch (const ParamFileError &e) {
        err << "error: " << e.what() << '\n';
        return IoError;
    } catch (const CsvFormatError &e) {
        err << "error: " << e.what() << '\n';
        return IoError;
    } catch (const IoFailure &e) {
        err << "error: " << e.what() << '\n';
        return IoError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return DomainError;
    }
}

} // namespace slrod::cli
