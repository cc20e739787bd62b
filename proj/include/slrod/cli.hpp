////////////////////////////////////////////////////////////////////////////////
// cli.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Subcommands of the slrod tool:
//    validate PARAMS
//    eval     PARAMS --direction forward|inverse --values a,b,c,d,e,f [--format csv|json]
//    branch   PARAMS --n-min A --n-max B --count K [--out FILE]
//    state    PARAMS --family F [--n-thrust N] [--m3 M] [--m1 M] [--theta T]
//             [--psi0 P] [--grid-h H] --out FILE
//    check    STATE_CSV PARAMS
//  Exit codes: 0 success, 1 domain error, 2 I/O or parse error.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SLROD_CLI_HPP
#define SLROD_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace slrod::cli {

enum ExitCode : int { Success = 0, DomainError = 1, IoError = 2 };

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Residual bound used by `check`: 1e-6 (1 + max_load) (h / 1e-4)^2.
double balance_tolerance(double spacing, double max_load);

// Descriptor sidecar written next to a state CSV: FILE.csv -> FILE.json.
std::filesystem::path descriptor_path(const std::filesystem::path &csv_path);

} // namespace slrod::cli

#endif // SLROD_CLI_HPP
