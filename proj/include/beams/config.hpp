#ifndef BEAMS_CONFIG_HPP
#define BEAMS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "beams/planar.hpp"
#include "beams/radial.hpp"

// Flat structured-text configs: one `section.key = value` per line, `#`
// comments. Sections: model, plus, minus, solver, planar. See the README
// for the full grammar and an annotated example.

namespace beams {

struct PlanarConfig {
  int grid = 257;       // nodes per side
  double radius = 10.0; // disk radius
  PlanarOptions options;
};

struct BeamConfig {
  Model model = Model::bennett;
  SpeciesPair species;  // [0] = plus, [1] = minus
  SolverOptions solver;
  std::optional<PlanarConfig> planar;
  bool conformal = false;  // beta_s q_s (nu_s I - Q) = 2 to 1e-8
  std::vector<std::string> warnings;  // non-fatal (confinement margin)
};

/// Throws ParseError (with line number) on grammar violations, unknown or
/// duplicate keys, and ValidationError on physics violations: nu+ = nu-,
/// zero total current I, nonpositive mass/temperature/line density.
/// A failing confinement margin is attached as a warning, not an error.
BeamConfig parse_config(const std::string& text);

/// parse_config on the contents of a file; throws IoError.
BeamConfig load_config(const std::string& path);

}  // namespace beams

#endif
