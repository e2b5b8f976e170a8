#ifndef BEAMS_REARRANGEMENT_HPP
#define BEAMS_REARRANGEMENT_HPP

#include "beams/planar.hpp"

// Symmetric decreasing rearrangement on masked planar fields, computed by
// sorting cell values and reassigning them to cells ordered by distance
// from the center (ties broken lexicographically, so the transform is
// deterministic and exactly equimeasurable in the discrete sense).

namespace beams {

struct LevelSetSummary {
  double threshold = 0.0;
  double area = 0.0;    // |Lambda_xi|
  double radius = 0.0;  // sqrt(area / pi)
};

/// Superlevel area |{v > xi}| by cell counting with a linear sub-cell
/// correction between adjacent sorted values; non-increasing in xi.
double level_measure(const PlanarField& field, double xi);

LevelSetSummary level_summary(const PlanarField& field, double xi);

/// Equimeasurable, centered, radially non-increasing rearrangement.
/// Nodes outside the mask are left at zero.
PlanarField decreasing_rearrangement(const PlanarField& field);

/// Normalized L1 distance between the field (recentered at its centroid)
/// and its decreasing rearrangement, divided by the field's L1 norm;
/// in [0, 1], zero for radially decreasing fields up to the grid floor.
/// Throws ZeroMass if the in-mask mass is not positive.
double asymmetry_index(const PlanarField& field);

/// Length of the level line {v = xi} by marching squares with linear
/// edge interpolation (the discrete superlevel-set perimeter).
double superlevel_perimeter(const PlanarField& field, double xi);

}  // namespace beams

#endif
