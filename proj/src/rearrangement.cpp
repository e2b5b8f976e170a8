#include "beams/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <vector>

#include "beams/errors.hpp"

namespace beams {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<int> mask_nodes(const PlanarField& f) {
  std::vector<int> idx;
  idx.reserve(size_t(f.n) * f.n);
  for (int iy = 0; iy < f.n; ++iy)
    for (int ix = 0; ix < f.n; ++ix)
      if (f.in_disk(ix, iy)) idx.push_back(iy * f.n + ix);
  return idx;
}

// cells ordered by squared distance from (cx, cy), ties by (iy, ix)
std::vector<int> nodes_by_distance(const PlanarField& f,
                                   const std::vector<int>& idx, double cx,
                                   double cy) {
  std::vector<int> order = idx;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ax = f.coord(a % f.n) - cx, ay = f.coord(a / f.n) - cy;
    const double bx = f.coord(b % f.n) - cx, by = f.coord(b / f.n) - cy;
    const double da = ax * ax + ay * ay, db = bx * bx + by * by;
    return std::tie(da, a) < std::tie(db, b);
  });
  return order;
}

}  // namespace

double level_measure(const PlanarField& f, double xi) {
  std::vector<double> vals;
  for (int i : mask_nodes(f)) vals.push_back(f.values[i]);
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  const int n = int(vals.size());
  const double cell = f.h * f.h;
  int k = int(std::upper_bound(vals.begin(), vals.end(), xi,
                               std::greater<double>()) -
              vals.begin());
  if (k == 0) return 0.0;
  if (k == n) return n * cell;
  // linear sub-cell correction between the straddling sorted values
  const double lo = vals[k], hi = vals[k - 1];
  const double frac = (hi > lo) ? (hi - xi) / (hi - lo) : 0.0;
  return (k + frac) * cell;
}

LevelSetSummary level_summary(const PlanarField& f, double xi) {
  LevelSetSummary s;
  s.threshold = xi;
  s.area = level_measure(f, xi);
  s.radius = std::sqrt(s.area / kPi);
  return s;
}

PlanarField decreasing_rearrangement(const PlanarField& f) {
  const std::vector<int> idx = mask_nodes(f);
  std::vector<double> vals;
  vals.reserve(idx.size());
  for (int i : idx) vals.push_back(f.values[i]);
  std::sort(vals.begin(), vals.end(), std::greater<double>());

  PlanarField out = f;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  const std::vector<int> order = nodes_by_distance(f, idx, 0.0, 0.0);
  for (std::size_t j = 0; j < order.size(); ++j)
    out.values[order[j]] = vals[j];
  return out;
}

double asymmetry_index(const PlanarField& f) {
  const std::vector<int> idx = mask_nodes(f);
  double mass = 0.0, cx = 0.0, cy = 0.0, l1 = 0.0;
  for (int i : idx) {
    const double v = f.values[i];
    if (v < 0.0)
      throw ValidationError("asymmetry_index needs a nonnegative field");
    mass += v;
    cx += v * f.coord(i % f.n);
    cy += v * f.coord(i / f.n);
    l1 += std::fabs(v);
  }
  if (!(mass > 0.0)) throw ZeroMass("field has no positive in-mask mass");
  cx /= mass;
  cy /= mass;

  // rearrange about the mass centroid rather than the grid center, which
  // makes the index invariant under (grid-resolved) translations
  std::vector<double> vals;
  vals.reserve(idx.size());
  for (int i : idx) vals.push_back(f.values[i]);
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  const std::vector<int> order = nodes_by_distance(f, idx, cx, cy);

  double dist = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j)
    dist += std::fabs(f.values[order[j]] - vals[j]);
  return dist / l1;
}

double superlevel_perimeter(const PlanarField& f, double xi) {
  // marching squares with linear interpolation on cell edges; only cells
  // whose four corners all lie in the mask contribute
  double len = 0.0;
  auto cross = [&](double a, double b) {  // edge fraction where v = xi
    return (xi - a) / (b - a);
  };
  for (int iy = 0; iy + 1 < f.n; ++iy)
    for (int ix = 0; ix + 1 < f.n; ++ix) {
      if (!f.in_disk(ix, iy) || !f.in_disk(ix + 1, iy) ||
          !f.in_disk(ix, iy + 1) || !f.in_disk(ix + 1, iy + 1))
        continue;
      const double v00 = f.at(ix, iy), v10 = f.at(ix + 1, iy);
      const double v01 = f.at(ix, iy + 1), v11 = f.at(ix + 1, iy + 1);
      int c = 0;
      if (v00 > xi) c |= 1;
      if (v10 > xi) c |= 2;
      if (v11 > xi) c |= 4;
      if (v01 > xi) c |= 8;
      if (c == 0 || c == 15) continue;
      // intersection points on the four edges, in cell-local coordinates
      const double bx = cross(v00, v10);        // bottom edge, y = 0
      const double tx = cross(v01, v11);        // top edge,    y = 1
      const double ly = cross(v00, v01);        // left edge,   x = 0
      const double ry = cross(v10, v11);        // right edge,  x = 1
      auto seg = [&](double x1, double y1, double x2, double y2) {
        const double dx = x2 - x1, dy = y2 - y1;
        len += f.h * std::sqrt(dx * dx + dy * dy);
      };
      switch (c) {
        case 1: case 14: seg(0.0, ly, bx, 0.0); break;
        case 2: case 13: seg(bx, 0.0, 1.0, ry); break;
        case 4: case 11: seg(1.0, ry, tx, 1.0); break;
        case 8: case 7:  seg(tx, 1.0, 0.0, ly); break;
        case 3: case 12: seg(0.0, ly, 1.0, ry); break;
        case 6: case 9:  seg(bx, 0.0, tx, 1.0); break;
        case 5:  // saddle: resolve by the cell-center average
        case 10: {
          const bool center_above = 0.25 * (v00 + v10 + v01 + v11) > xi;
          const bool diag = (c == 5) == center_above;
          if (diag) {
            seg(0.0, ly, tx, 1.0);
            seg(bx, 0.0, 1.0, ry);
          } else {
            seg(0.0, ly, bx, 0.0);
            seg(1.0, ry, tx, 1.0);
          }
          break;
        }
      }
    }
  return len;
}

}  // namespace beams
