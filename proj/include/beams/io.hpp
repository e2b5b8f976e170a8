#ifndef BEAMS_IO_HPP
#define BEAMS_IO_HPP

#include <array>
#include <string>
#include <vector>

#include "beams/diagnostics.hpp"
#include "beams/radial.hpp"

// Bit-stable emission: profiles as CSV with the fixed column set
//   r,u_plus,u_minus,U_plus,U_minus,rho_plus,rho_minus
// (17 significant digits, LF endings), reports as JSON with the fixed key
// set {model, N, I, Q, M, J, virial_residual, bennett_residual, deficit,
// asymptote_errors, confinement}.

namespace beams {

struct ProfileTable {
  std::vector<double> r;
  std::array<std::vector<double>, 2> u;    // u_plus, u_minus
  std::array<std::vector<double>, 2> U;    // U_plus, U_minus
  std::array<std::vector<double>, 2> rho;  // rho_plus, rho_minus
};

std::string profile_csv(const RadialProfile& profile);
void emit_profile(const RadialProfile& profile, const std::string& path);

/// Parses exactly what emit_profile writes; round-trips bitwise.
/// Throws ParseError on malformed input, IoError on unreadable files.
ProfileTable read_profile_csv(const std::string& path);
ProfileTable parse_profile_csv(const std::string& text);

std::string report_json(const DiagnosticsReport& report);
void emit_report(const DiagnosticsReport& report, const std::string& path);

}  // namespace beams

#endif
