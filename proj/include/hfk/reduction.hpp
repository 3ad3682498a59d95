#ifndef HFK_REDUCTION_HPP
#define HFK_REDUCTION_HPP

#include <memory>
#include <optional>
#include <vector>

#include "hfk/functionals.hpp"
#include "hfk/surface.hpp"

namespace hfk::reduction {

/// Solution of the projected Euler-Lagrange system at fixed (xi, r):
/// the l = 1 band of u is identically zero, the area equals 4 pi r^2 and
/// the residual lambda H + W1 + W2 is supported on the first harmonics up
/// to the solver tolerance.  Residual norms are quoted in the rescaled
/// units r^3 * coefficient.
struct LSSolution {
  Vec3 xi = Vec3::Zero();
  double r = 0.0;
  sh::SphericalHarmonicField u;
  double lambda = 0.0;
  double residual_scaled = 0.0;       // solved bands (l <= l_max, l != 1)
  double residual_full_scaled = 0.0;  // all internal bands, l != 1
  double residual_lambda1_scaled = 0.0;
  double area_rel_error = 0.0;
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-9;        // on r^3-scaled residual coefficients
  double area_tol = 1e-10;  // relative area defect
  int max_iter = 40;
  double fd_step_rel = 1e-6;  // coefficient step, times r
  double delta_tilde = 0.25;  // xi-domain margin
};

/// Newton solver with warm starts and a reusable (chord) Jacobian.
class LeafSolver {
 public:
  LeafSolver(const models::InitialDataModel& model,
             const surf::Discretization& disc, SolverOptions opts = {});

  LSSolution solve(const Vec3& xi, double r);
  LSSolution solve(const Vec3& xi, double r,
                   const sh::SphericalHarmonicField& initial_u);

  const models::InitialDataModel& model() const { return model_; }
  const surf::Discretization& disc() const { return *disc_; }
  const SolverOptions& options() const { return opts_; }

  /// Solved-leaf geometry (rebuilds from the solution).
  surf::SurfaceGeometry geometry(const LSSolution& sol) const;

 private:
  struct Jacobian;
  Eigen::VectorXd residual_vector(const Eigen::VectorXd& z, const Vec3& xi,
                                  double r, double* res_full,
                                  double* res_l1) const;
  void refresh_jacobian(const Eigen::VectorXd& z, const Vec3& xi, double r);

  models::InitialDataModel model_;
  const surf::Discretization* disc_;
  SolverOptions opts_;
  int n_u_;  // (l_max+1)^2 - 3
  std::vector<int> coeff_of_unknown_;
  std::shared_ptr<Jacobian> jac_;
  std::optional<sh::SphericalHarmonicField> warm_u_;
  double warm_lambda_ = 0.0;
  bool has_warm_ = false;
};

LSSolution ls_solve(const models::InitialDataModel& model, const Vec3& xi,
                    double r, const surf::Discretization& disc,
                    SolverOptions opts = {});

/// Modified Hawking functional F_r = r^2 (int H^2 - P^2 dmu - 16 pi
/// + 64 pi / r), quoted in the mass-2 normalization in which the
/// Schwarzschild divergence cancels.
double F_r(const surf::SurfaceGeometry& geom, double r);

/// Reduced energy G_r(xi) = F_r on the solved leaf.  For a model of mass m
/// the evaluation applies the length rescaling s = 2/m that normalizes the
/// mass to 2, under which the functional integrals are invariant:
///   G = s^2 r^2 (int H^2 - P^2 dmu - 16 pi) + 64 pi s r.
double G_r_direct(LeafSolver& solver, const Vec3& xi, double r);

/// Closed form of the flat-background reduced energy and its radial
/// derivative; near zero the removable singularity is handled by series.
double G1_closed_form(double t);
double G1_radial_derivative(double t);
/// Independent series evaluations (dual-route oracle).
double G1_series(double t);
double G1_radial_derivative_series(double t);

struct GrAsymptotic {
  double value = 0.0;
  double g1 = 0.0;
  double volume_term = 0.0;    // 2 r int_{R^3 \ B_r(r xi)} Sc dv (scaled)
  double momentum_term = 0.0;  // -r^2 int pi(nu,nu)^2 dmu_flat (scaled)
  double tail_bound = 0.0;
};

struct AsymptoticOptions {
  double r_max_factor = 64.0;
  int radial_panels = 16;
  int panel_order = 8;
  int angular_n = 16;
  double tail_fraction = 0.01;  // TailError above this share of the term
};

GrAsymptotic G_r_asymptotic(const models::InitialDataModel& model,
                            const Vec3& xi, double r,
                            AsymptoticOptions opts = {});

struct MinimizeOptions {
  double grad_tol = 0.01;
  double fd_step = 1e-3;
  int max_newton = 12;
  int multistart = 1;
  unsigned seed = 7u;
};

struct FoliationLeaf {
  LSSolution sol;
  double area = 0.0;
  double hawking_energy = 0.0;
  double int_f = 0.0;
  double int_f_minus_lambda = 0.0;
  double balance_residual = 0.0;
  double max_g = 0.0;
  Vec3 euclidean_center = Vec3::Zero();
  double G_value = 0.0;
  Vec3 G_gradient = Vec3::Zero();
  Vec3 hessian_eigenvalues = Vec3::Zero();
  bool minimizer = false;
};

/// Minimizes G_r over the xi-ball by damped Newton on finite-difference
/// gradients, then reports the Hessian spectrum at the minimizer.
FoliationLeaf minimize_G(LeafSolver& solver, double r,
                         MinimizeOptions mopts = {},
                         const Vec3& xi_init = Vec3::Zero());

struct FoliationReport {
  std::vector<FoliationLeaf> leaves;
  /// min over nodes of delta(dPhi/dr, y) between consecutive leaves.
  std::vector<double> ordering_margins;
  double min_margin = 0.0;
  bool support_containment = true;
};

/// Solves the leaves over an increasing radius schedule (warm-started) and
/// verifies the graph-ordering foliation surrogate.  Throws NotAFoliation
/// when the margin fails.  xi_override (test hook) skips the minimization.
FoliationReport build_foliation(
    LeafSolver& solver, const std::vector<double>& radii,
    MinimizeOptions mopts = {},
    const std::optional<std::vector<Vec3>>& xi_override = std::nullopt);

struct UDiagnostic {
  double sup_deviation = 0.0;  // |u - series| in mass-2 units
  int terms_used = 0;
};

/// Compares the solved graph function against the flat-background Legendre
/// series (mass normalized to 2 by length rescaling).
UDiagnostic u_diagnostic_expansion(const LSSolution& sol, double mass,
                                   const surf::Discretization& disc);

}  // namespace hfk::reduction

#endif  // HFK_REDUCTION_HPP
