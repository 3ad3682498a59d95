#ifndef HFK_SURFACE_HPP
#define HFK_SURFACE_HPP

#include <array>
#include <memory>
#include <vector>

#include "hfk/models.hpp"
#include "hfk/sh.hpp"

namespace hfk::surf {

/// Grid plus transform tables shared by every surface build.  basis_user
/// carries the configured band limit for graph functions and solver
/// unknowns; basis_int is the finer internal band used for geometry
/// derivatives so that products of band-limited fields stay resolved.
struct Discretization {
  int l_max;
  sh::QuadratureGrid grid;
  sh::Basis basis_user;
  sh::Basis basis_int;

  Discretization(int l_max_, int n_theta, int n_phi)
      : l_max(l_max_),
        grid(n_theta, n_phi),
        basis_user(grid, l_max_),
        basis_int(grid, std::min(n_theta - 1, n_phi / 2 - 1)) {}

  int n_nodes() const { return grid.n_nodes(); }
};

/// Graph surface over the round sphere S_r(r xi): the embedding sends the
/// parameter direction y to  r xi + (r + u(y)) y.
struct GraphSurface {
  Vec3 xi = Vec3::Zero();
  double r = 1.0;
  sh::SphericalHarmonicField u;
};

/// All pointwise geometry of an embedded sphere in an initial data set,
/// cached on the quadrature nodes.  Immutable after construction.
struct SurfaceGeometry {
  const Discretization* disc = nullptr;
  models::InitialDataModel model;

  // Embedding coefficients (internal band) and chart frames per node.
  std::array<sh::SphericalHarmonicField, 3> emb;
  std::vector<Vec3> X, nu, T_th, T_ph;
  std::vector<Mat3> g_amb, ginv_amb;

  std::vector<Eigen::Matrix2d> g_sigma, g_sigma_inv;
  std::vector<double> det_sigma;
  std::vector<double> dmu;       // curved area weight per node
  std::vector<double> dmu_flat;  // Euclidean area weight per node

  std::vector<Eigen::Matrix2d> B;
  std::vector<double> H;
  std::vector<double> Bdev2;  // |Bring|^2
  std::vector<double> ric_nn, sc_amb;

  std::vector<Mat3> k;
  std::vector<double> trk, knn, P, k2;
  std::vector<double> dnu_trk, dnu_knn;
  std::vector<Eigen::Vector2d> k_nu;  // omega_a = k(T_a, nu)
  std::vector<double> mu, J_norm;

  double area = 0.0;
  double area_flat = 0.0;

  int n_nodes() const { return static_cast<int>(X.size()); }
  const sh::Basis& basis() const { return disc->basis_int; }
};

/// Per-node samples of a band-limited graph function.
std::vector<double> synthesize_user(const Discretization& disc,
                                    const sh::SphericalHarmonicField& f);

SurfaceGeometry build_surface_geometry(const models::InitialDataModel& model,
                                       const GraphSurface& surf,
                                       const Discretization& disc);

/// Builds from raw per-node embedding samples (flowed surfaces, ellipsoids).
SurfaceGeometry build_surface_geometry_from_samples(
    const models::InitialDataModel& model,
    const std::array<std::vector<double>, 3>& xyz, const Discretization& disc);

/// Embedding samples of the surface displaced by step * speed along the
/// stored unit normal (speed held fixed in the parameter chart).
std::array<std::vector<double>, 3> displaced_samples(
    const SurfaceGeometry& geom, const std::vector<double>& speed,
    double step);

double surface_integrate(const SurfaceGeometry& geom,
                         const std::vector<double>& field);
double surface_integrate_flat(const SurfaceGeometry& geom,
                              const std::vector<double>& field);

/// Chart derivatives (d_theta f, d_phi f) by analysis at the internal band.
std::pair<std::vector<double>, std::vector<double>> chart_derivatives(
    const SurfaceGeometry& geom, const std::vector<double>& field,
    bool strict_band = false);

std::vector<double> laplace_beltrami(const SurfaceGeometry& geom,
                                     const std::vector<double>& field,
                                     bool strict_band = false);

/// Divergence of a tangential covector given by chart components
/// (omega_theta, omega_phi).
std::vector<double> div_sigma(const SurfaceGeometry& geom,
                              const std::vector<double>& omega_th,
                              const std::vector<double>& omega_ph,
                              bool strict_band = false);

/// Intrinsic scalar curvature from spectral derivatives of the induced
/// metric (Brioschi), independent of the ambient Gauss relation.
std::vector<double> intrinsic_scalar_curvature(const SurfaceGeometry& geom);

/// Flat-measure Euclidean coordinate center of the surface.
Vec3 euclidean_center(const SurfaceGeometry& geom);

}  // namespace hfk::surf

#endif  // HFK_SURFACE_HPP
