#include "beams/species.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "beams/errors.hpp"
#include "beams/special_functions.hpp"

namespace beams {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4.0 * kPi;

// Decay length for the semi-infinite momentum quadrature: the integrands
// fall off like exp(-beta (1-|nu|) p) beyond the thermal / Fermi region.
double momentum_scale(const SpeciesParams& sp, double w) {
  const double nu = std::fabs(sp.drift);
  const double beta = sp.beta();
  double s = 3.0 / (beta * (1.0 - nu)) + std::sqrt(sp.mass / beta);
  const double emin = sp.min_energy();
  if (w > emin) {
    // Fermi momentum: sqrt(m^2 + p^2) - nu p = w
    const double disc = w * w - emin * emin;
    s += (nu * w + std::sqrt(std::max(disc, 0.0))) / (1.0 - nu * nu);
  }
  return s;
}
}  // namespace

double SpeciesParams::beta() const {
  return 1.0 / (temperature * std::sqrt(1.0 - drift * drift));
}

double SpeciesParams::min_energy() const {
  return mass * std::sqrt(1.0 - drift * drift);
}

void SpeciesParams::validate() const {
  if (!(mass > 0.0)) throw ValidationError("species mass must be positive");
  if (!(temperature > 0.0))
    throw ValidationError("species temperature must be positive");
  if (!(std::fabs(drift) < 1.0))
    throw ValidationError("species drift must lie in (-1, 1)");
  if (!(line_density > 0.0))
    throw ValidationError("species line density must be positive");
  if (charge == 0.0) throw ValidationError("species charge must be nonzero");
}

double density(Model model, const SpeciesParams& sp, double w,
               const QuadratureOptions& opts) {
  const double beta = sp.beta();
  const double nu = std::fabs(sp.drift);
  const double m = sp.mass;
  std::function<double(double)> f;
  if (model == Model::thomas_fermi) {
    f = [beta, nu, m, w](double p) {
      const double e = std::sqrt(m * m + p * p);
      return p * p * fermi_angular_kernel(beta * (w - e), beta * nu * p);
    };
  } else {
    f = [beta, nu, m, w](double p) {
      const double e = std::sqrt(m * m + p * p);
      return p * p * boltzmann_angular_kernel(beta * (w - e), beta * nu * p);
    };
  }
  return kFourPi * integrate_semi_infinite(f, momentum_scale(sp, w), opts);
}

double primitive(Model model, const SpeciesParams& sp, double w,
                 const QuadratureOptions& opts) {
  const double beta = sp.beta();
  if (model == Model::bennett) return density(model, sp, w, opts) / beta;
  const double nu = std::fabs(sp.drift);
  const double m = sp.mass;
  auto f = [beta, nu, m, w](double p) {
    const double e = std::sqrt(m * m + p * p);
    return p * p *
           fermi_angular_primitive_kernel(beta * (w - e), beta * nu * p);
  };
  return kFourPi / beta *
         integrate_semi_infinite(f, momentum_scale(sp, w), opts);
}

// ---------------------------------------------------------------------------
// SpeciesDensity: piecewise-Chebyshev cache of ln G and ln g.

namespace {

// Chebyshev-Lobatto barycentric interpolant on [lo, hi].
struct ChebPanel {
  double lo = 0.0, hi = 0.0;
  std::vector<double> nodes;   // in [lo, hi]
  std::vector<double> log_g;   // ln G at nodes
  std::vector<double> log_gp;  // ln g at nodes

  double eval(const std::vector<double>& fv, double x) const {
    const int n = static_cast<int>(nodes.size());
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
      double d = x - nodes[j];
      if (d == 0.0) return fv[j];
      double wj = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j == n - 1) wj *= 0.5;
      const double t = wj / d;
      num += t * fv[j];
      den += t;
    }
    return num / den;
  }
};

constexpr int kPanelNodes = 129;

}  // namespace

struct SpeciesDensity::Impl {
  Model model;
  SpeciesParams sp;
  QuadratureOptions opts;
  double beta, emin;
  double log_z;  // Boltzmann normalization: G_B(w) = exp(log_z + beta w)
  double w_lo;   // below this the Boltzmann asymptote is exact to ~1e-13
  double panel_width;
  mutable std::vector<ChebPanel> panels;

  void init() {
    beta = sp.beta();
    emin = sp.min_energy();
    log_z = std::log(beams::density(Model::bennett, sp, 0.0, opts));
    w_lo = emin - 30.0 / beta;
    panel_width = 16.0 / beta;
  }

  void ensure(double w) const {
    double hi = panels.empty() ? w_lo : panels.back().hi;
    while (hi < w) {
      ChebPanel p;
      p.lo = hi;
      p.hi = hi + panel_width;
      p.nodes.resize(kPanelNodes);
      p.log_g.resize(kPanelNodes);
      p.log_gp.resize(kPanelNodes);
      for (int j = 0; j < kPanelNodes; ++j) {
        const double theta = kPi * j / (kPanelNodes - 1);
        const double x = 0.5 * (p.lo + p.hi) - 0.5 * (p.hi - p.lo) *
                                                   std::cos(theta);
        p.nodes[j] = x;
        p.log_g[j] = std::log(beams::density(Model::thomas_fermi, sp, x, opts));
        p.log_gp[j] =
            std::log(beams::primitive(Model::thomas_fermi, sp, x, opts));
      }
      panels.push_back(std::move(p));
      hi = panels.back().hi;
    }
  }

  const ChebPanel& panel_for(double w) const {
    ensure(w);
    const size_t i = static_cast<size_t>((w - w_lo) / panel_width);
    return panels[std::min(i, panels.size() - 1)];
  }

  double density(double w) const {
    if (model == Model::bennett) return std::exp(log_z + beta * w);
    if (w <= w_lo) return std::exp(log_z + beta * w);
    const ChebPanel& p = panel_for(w);
    return std::exp(p.eval(p.log_g, w));
  }

  double primitive(double w) const {
    if (model == Model::bennett || w <= w_lo)
      return std::exp(log_z + beta * w) / beta;
    const ChebPanel& p = panel_for(w);
    return std::exp(p.eval(p.log_gp, w));
  }

  double inverse_density(double rho) const {
    if (!(rho > 0.0)) throw NoPositiveSolution("density must be positive");
    const double w_boltz = (std::log(rho) - log_z) / beta;
    if (model == Model::bennett) return w_boltz;
    // Pauli blocking makes G_TF <= G_B at equal w, so w_boltz brackets
    // from below.
    double lo = w_boltz, hi = w_boltz, step = 1.0 / beta;
    for (int i = 0; i < 200 && density(hi) < rho; ++i) {
      lo = hi;
      hi += step;
      step *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (density(mid) < rho ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
};

SpeciesDensity::SpeciesDensity(Model model, const SpeciesParams& sp,
                               const QuadratureOptions& opts)
    : impl_(std::make_unique<Impl>()) {
  impl_->model = model;
  impl_->sp = sp;
  impl_->opts = opts;
  impl_->init();
}

SpeciesDensity::~SpeciesDensity() = default;
SpeciesDensity::SpeciesDensity(SpeciesDensity&&) noexcept = default;
SpeciesDensity& SpeciesDensity::operator=(SpeciesDensity&&) noexcept = default;

double SpeciesDensity::density(double w) const { return impl_->density(w); }
double SpeciesDensity::primitive(double w) const {
  return impl_->primitive(w);
}
double SpeciesDensity::inverse_density(double rho) const {
  return impl_->inverse_density(rho);
}
Model SpeciesDensity::model() const { return impl_->model; }
const SpeciesParams& SpeciesDensity::params() const { return impl_->sp; }

}  // namespace beams
