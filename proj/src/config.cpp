#include "beams/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "beams/errors.hpp"

namespace beams {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ": " << what;
  throw ParseError(os.str());
}

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

double to_double(const Entry& e) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    fail(e.line, "expected a number, got '" + e.value + "'");
  }
  if (pos != e.value.size())
    fail(e.line, "trailing characters after number '" + e.value + "'");
  return v;
}

int to_int(const Entry& e) {
  const double v = to_double(e);
  if (v != std::floor(v))
    fail(e.line, "expected an integer, got '" + e.value + "'");
  return int(v);
}

}  // namespace

BeamConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> kv;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(lineno, "expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos)
      fail(lineno, "key '" + key + "' has no section prefix");
    if (value.empty()) fail(lineno, "empty value for '" + key + "'");
    if (kv.count(key))
      fail(lineno, "duplicate key '" + key + "' (first on line " +
                       std::to_string(kv[key].line) + ")");
    kv[key] = {value, lineno};
  }

  auto take = [&](const std::string& key) -> Entry* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };
  auto require = [&](const std::string& key) -> Entry& {
    Entry* e = take(key);
    if (!e) throw ParseError("missing required key '" + key + "'");
    return *e;
  };

  BeamConfig cfg;

  {
    Entry& m = require("model.kind");
    if (m.value == "bennett")
      cfg.model = Model::bennett;
    else if (m.value == "thomas_fermi")
      cfg.model = Model::thomas_fermi;
    else
      fail(m.line, "model.kind must be 'bennett' or 'thomas_fermi'");
  }

  const char* section[2] = {"plus", "minus"};
  for (int s = 0; s < 2; ++s) {
    const std::string p = std::string(section[s]) + ".";
    cfg.species[s].charge = to_double(require(p + "charge"));
    cfg.species[s].mass = to_double(require(p + "mass"));
    cfg.species[s].temperature = to_double(require(p + "temperature"));
    cfg.species[s].drift = to_double(require(p + "drift"));
    cfg.species[s].line_density = to_double(require(p + "line_density"));
  }

  if (Entry* e = take("solver.r_max")) cfg.solver.r_max = to_double(*e);
  if (Entry* e = take("solver.ode_rel_tol"))
    cfg.solver.ode_rel_tol = to_double(*e);
  if (Entry* e = take("solver.ode_abs_tol"))
    cfg.solver.ode_abs_tol = to_double(*e);
  if (Entry* e = take("solver.newton_tol"))
    cfg.solver.newton_tol = to_double(*e);
  if (Entry* e = take("solver.max_newton_iter"))
    cfg.solver.max_newton_iter = to_int(*e);
  if (Entry* e = take("solver.min_damping"))
    cfg.solver.min_damping = to_double(*e);
  if (Entry* e = take("solver.tail_window"))
    cfg.solver.tail_window = to_double(*e);
  if (Entry* e = take("solver.confinement_margin"))
    cfg.solver.confinement_margin = to_double(*e);
  {
    Entry* wp = take("solver.central_w_plus");
    Entry* wm = take("solver.central_w_minus");
    if (bool(wp) != bool(wm))
      throw ParseError(
          "solver.central_w_plus and solver.central_w_minus must be given "
          "together");
    if (wp)
      cfg.solver.central_guess = {{to_double(*wp), to_double(*wm)}};
  }

  const bool has_planar =
      kv.count("planar.grid") || kv.count("planar.radius") ||
      kv.count("planar.omega") || kv.count("planar.tol") ||
      kv.count("planar.max_sweeps");
  if (has_planar) {
    PlanarConfig pc;
    if (Entry* e = take("planar.grid")) pc.grid = to_int(*e);
    if (Entry* e = take("planar.radius")) pc.radius = to_double(*e);
    if (Entry* e = take("planar.omega")) pc.options.omega = to_double(*e);
    if (Entry* e = take("planar.tol")) pc.options.tol = to_double(*e);
    if (Entry* e = take("planar.max_sweeps"))
      pc.options.max_sweeps = to_int(*e);
    if (pc.grid < 33 || !(pc.radius > 0.0))
      throw ValidationError("planar.grid must be >= 33, planar.radius > 0");
    cfg.planar = pc;
  }

  for (const auto& [key, e] : kv)
    if (!e.used) fail(e.line, "unknown key '" + key + "'");

  // physics validation
  for (int s = 0; s < 2; ++s) cfg.species[s].validate();
  if (cfg.species[0].drift == cfg.species[1].drift)
    throw ValidationError(
        "drifts must differ (nu+ = nu- makes the coupling degenerate)");
  if (total_current(cfg.species) == 0.0)
    throw ValidationError(
        "total current I = 0: no stationary beam exists");
  cfg.solver.validate();

  const FieldPair res = conformal_residual(cfg.species);
  cfg.conformal = std::fabs(res[0]) < 1e-8 && std::fabs(res[1]) < 1e-8;

  const ConfinementReport conf =
      validate_confinement(cfg.species, cfg.solver.confinement_margin);
  if (!conf.pass) cfg.warnings.push_back("confinement: " + conf.message);

  return cfg;
}

BeamConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace beams
