#include "beams/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "beams/errors.hpp"
#include "json.hpp"

namespace beams {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw IoError("short write to '" + path + "'");
}

nlohmann::ordered_json pair_json(const std::array<double, 2>& v) {
  return nlohmann::ordered_json::array({v[0], v[1]});
}

}  // namespace

std::string profile_csv(const RadialProfile& p) {
  std::ostringstream os;
  os << "r,u_plus,u_minus,U_plus,U_minus,rho_plus,rho_minus\n";
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    os << fmt17(p.r[i]) << ',' << fmt17(p.u[0][i]) << ','
       << fmt17(p.u[1][i]) << ',' << fmt17(p.U[0][i]) << ','
       << fmt17(p.U[1][i]) << ',' << fmt17(p.rho[0][i]) << ','
       << fmt17(p.rho[1][i]) << '\n';
  }
  return os.str();
}

void emit_profile(const RadialProfile& p, const std::string& path) {
  write_file(path, profile_csv(p));
}

ProfileTable parse_profile_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "r,u_plus,u_minus,U_plus,U_minus,rho_plus,rho_minus")
    throw ParseError("bad or missing profile CSV header");
  ProfileTable t;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double col[7];
    const char* s = line.c_str();
    char* end = nullptr;
    for (int c = 0; c < 7; ++c) {
      col[c] = std::strtod(s, &end);
      if (end == s)
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected 7 numeric columns");
      s = end;
      if (c < 6) {
        if (*s != ',')
          throw ParseError("line " + std::to_string(lineno) +
                           ": expected ','");
        ++s;
      }
    }
    if (*s != '\0')
      throw ParseError("line " + std::to_string(lineno) +
                       ": trailing characters");
    t.r.push_back(col[0]);
    t.u[0].push_back(col[1]);
    t.u[1].push_back(col[2]);
    t.U[0].push_back(col[3]);
    t.U[1].push_back(col[4]);
    t.rho[0].push_back(col[5]);
    t.rho[1].push_back(col[6]);
  }
  return t;
}

ProfileTable read_profile_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_csv(buf.str());
}

std::string report_json(const DiagnosticsReport& rep) {
  nlohmann::ordered_json j;
  j["model"] =
      rep.model == Model::bennett ? "bennett" : "thomas_fermi";
  j["N"] = pair_json(rep.line_density);
  j["I"] = rep.current;
  j["Q"] = rep.charge;
  j["M"] = pair_json(rep.mass);
  j["J"] = rep.J;
  j["virial_residual"] = rep.virial_residual;
  // NaN (Thomas-Fermi) serializes as null
  j["bennett_residual"] = rep.bennett_residual;
  j["deficit"] = rep.isoperimetric_deficit;
  j["asymptote_errors"] = pair_json(rep.asymptote_error);
  j["confinement"] = pair_json(rep.confinement_exponent);
  return j.dump(2) + "\n";
}

void emit_report(const DiagnosticsReport& rep, const std::string& path) {
  write_file(path, report_json(rep));
}

}  // namespace beams
