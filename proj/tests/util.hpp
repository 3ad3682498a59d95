#ifndef HFK_TESTS_UTIL_HPP
#define HFK_TESTS_UTIL_HPP

#include <cmath>
#include <random>

#include "hfk/functionals.hpp"
#include "hfk/models.hpp"
#include "hfk/surface.hpp"

namespace hfk::test {

/// Shared default discretization (immutable, built once).
inline const surf::Discretization& disc32() {
  static const surf::Discretization d(12, 32, 32);
  return d;
}

inline sh::SphericalHarmonicField random_field(int l_max, unsigned seed,
                                               double scale = 1.0,
                                               double band_decay = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  sh::SphericalHarmonicField f(l_max);
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m)
      f.at(l, m) = scale * std::pow(band_decay, l) * u(rng);
  return f;
}

/// Coordinate sphere of radius r centered at r*xi as a graph surface.
inline surf::GraphSurface coord_sphere(double r, Vec3 xi = Vec3::Zero(),
                                       int l_max = 12) {
  surf::GraphSurface s;
  s.r = r;
  s.xi = xi;
  s.u = sh::SphericalHarmonicField(l_max);
  return s;
}

/// Isotropic coordinate radius of the Schwarzschild sphere with area radius
/// r_areal:  s (1 + m/2s)^2 = r_areal.
inline double isotropic_radius_from_areal(double mass, double r_areal) {
  const double b = r_areal - mass;
  return 0.5 * (b + std::sqrt(b * b - mass * mass));
}

/// Closed-form mean curvature of the centered coordinate sphere |x| = s in
/// the isotropic Schwarzschild slice.
inline double schwarzschild_sphere_H(double mass, double s) {
  const double phi = 1.0 + 0.5 * mass / s;
  return 2.0 * (1.0 - 0.5 * mass / s) / (s * phi * phi * phi);
}

/// Axisymmetric ellipsoid x^2/a^2 + y^2/a^2 + z^2/c^2 = 1 sampled as a
/// radial graph; returns embedding samples on the grid.
inline std::array<std::vector<double>, 3> ellipsoid_samples(
    const surf::Discretization& d, double a, double c) {
  const auto& grid = d.grid;
  std::array<std::vector<double>, 3> xyz;
  for (auto& v : xyz) v.resize(grid.n_nodes());
  for (int j = 0; j < grid.n_theta; ++j)
    for (int k = 0; k < grid.n_phi; ++k) {
      const int i = grid.node(j, k);
      const Vec3 w = grid.dir(j, k);
      const double st2 = 1.0 - w[2] * w[2];
      const double rho = 1.0 / std::sqrt(st2 / (a * a) + w[2] * w[2] / (c * c));
      for (int cc = 0; cc < 3; ++cc) xyz[cc][i] = rho * w[cc];
    }
  return xyz;
}

/// Mean curvature of the ellipsoid at a surface point, from the level-set
/// formula H = div(grad phi / |grad phi|).
inline double ellipsoid_H(double a, double b, double c, const Vec3& x) {
  const Vec3 n(x[0] / (a * a), x[1] / (b * b), x[2] / (c * c));
  const double w2 = n.squaredNorm();
  const double S = 1.0 / (a * a) + 1.0 / (b * b) + 1.0 / (c * c);
  const double q = sqr(x[0]) / std::pow(a, 6) + sqr(x[1]) / std::pow(b, 6) +
                   sqr(x[2]) / std::pow(c, 6);
  return (S * w2 - q) / (w2 * std::sqrt(w2));
}

}  // namespace hfk::test

#endif
