#include "hfk/reduction.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "hfk/tensor_calc.hpp"

namespace hfk::reduction {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Length rescaling that normalizes the mass to 2; the surface integrals in
// F_r are invariant under the simultaneous rescaling of data and surface.
double mass_scale(const models::InitialDataModel& model) {
  return model.mass() > 0.0 ? 2.0 / model.mass() : 1.0;
}
}  // namespace

struct LeafSolver::Jacobian {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  bool valid = false;
};

LeafSolver::LeafSolver(const models::InitialDataModel& model,
                       const surf::Discretization& disc, SolverOptions opts)
    : model_(model),
      disc_(&disc),
      opts_(opts),
      jac_(std::make_shared<Jacobian>()) {
  const int L = disc.l_max;
  n_u_ = (L + 1) * (L + 1) - 3;
  coeff_of_unknown_.reserve(n_u_);
  for (int l = 0; l <= L; ++l) {
    if (l == 1) continue;
    for (int m = -l; m <= l; ++m) coeff_of_unknown_.push_back(sh::idx(l, m));
  }
}

Eigen::VectorXd LeafSolver::residual_vector(const Eigen::VectorXd& z,
                                            const Vec3& xi, double r,
                                            double* res_full,
                                            double* res_l1) const {
  surf::GraphSurface s;
  s.xi = xi;
  s.r = r;
  s.u = sh::SphericalHarmonicField(disc_->l_max);
  for (int i = 0; i < n_u_; ++i) s.u.a[coeff_of_unknown_[i]] = z[i];
  const double lambda = z[n_u_];

  const auto geom = surf::build_surface_geometry(model_, s, *disc_);
  const auto w1 = fun::W1_field(geom);
  const auto w2 = fun::W2_field(geom);
  std::vector<double> res(geom.n_nodes());
  for (int i = 0; i < geom.n_nodes(); ++i)
    res[i] = lambda * geom.H[i] + w1[i] + w2[i];
  const auto coeffs = geom.basis().analyze(res);

  const double scale = r * r * r;
  Eigen::VectorXd F(n_u_ + 1);
  for (int i = 0; i < n_u_; ++i) F[i] = scale * coeffs.a[coeff_of_unknown_[i]];
  F[n_u_] = (geom.area - 4.0 * kPi * r * r) / (4.0 * kPi * r * r);

  if (res_full) {
    double s_full = 0.0;
    for (int l = 0; l <= coeffs.l_max; ++l) {
      if (l == 1) continue;
      s_full += sqr(coeffs.band_norm(l));
    }
    *res_full = scale * std::sqrt(s_full);
  }
  if (res_l1) *res_l1 = scale * coeffs.band_norm(1);
  return F;
}

void LeafSolver::refresh_jacobian(const Eigen::VectorXd& z, const Vec3& xi,
                                  double r) {
  const int n = n_u_ + 1;
  Eigen::MatrixXd J(n, n);
  const Eigen::VectorXd F0 = residual_vector(z, xi, r, nullptr, nullptr);
  const double h = opts_.fd_step_rel * r;

  // u-columns by forward differences, in parallel (pure evaluations).
  std::vector<Eigen::VectorXd> cols(n_u_);
  parallel_for(n_u_, [&](std::size_t i) {
    Eigen::VectorXd zp = z;
    zp[i] += h;
    cols[i] = (residual_vector(zp, xi, r, nullptr, nullptr) - F0) / h;
  });
  for (int i = 0; i < n_u_; ++i) J.col(i) = cols[i];

  // The lambda-column is exact: the residual is linear in lambda with
  // coefficient H, and the area row does not depend on lambda.
  {
    surf::GraphSurface s;
    s.xi = xi;
    s.r = r;
    s.u = sh::SphericalHarmonicField(disc_->l_max);
    for (int i = 0; i < n_u_; ++i) s.u.a[coeff_of_unknown_[i]] = z[i];
    const auto geom = surf::build_surface_geometry(model_, s, *disc_);
    const auto hc = geom.basis().analyze(geom.H);
    Eigen::VectorXd col(n);
    for (int i = 0; i < n_u_; ++i)
      col[i] = r * r * r * hc.a[coeff_of_unknown_[i]];
    col[n_u_] = 0.0;
    J.col(n_u_) = col;
  }
  jac_->lu.compute(J);
  jac_->valid = true;
}

LSSolution LeafSolver::solve(const Vec3& xi, double r) {
  if (has_warm_) {
    LSSolution out = solve(xi, r, *warm_u_);
    return out;
  }
  return solve(xi, r, sh::SphericalHarmonicField(disc_->l_max));
}

LSSolution LeafSolver::solve(const Vec3& xi, double r,
                             const sh::SphericalHarmonicField& initial_u) {
  if (xi.norm() > 1.0 - opts_.delta_tilde + 1e-12)
    throw DomainError("xi outside the admissible ball");
  if (model_.mass() > 0.0 && r < 4.0 * model_.mass())
    throw DomainError("solver radius below 4m");

  Eigen::VectorXd z(n_u_ + 1);
  {
    const auto u0 = initial_u.truncated(disc_->l_max);
    for (int i = 0; i < n_u_; ++i) z[i] = u0.a[coeff_of_unknown_[i]];
  }
  // Multiplier start: L^2 projection on the initial surface.
  {
    surf::GraphSurface s;
    s.xi = xi;
    s.r = r;
    s.u = sh::SphericalHarmonicField(disc_->l_max);
    for (int i = 0; i < n_u_; ++i) s.u.a[coeff_of_unknown_[i]] = z[i];
    const auto geom = surf::build_surface_geometry(model_, s, *disc_);
    z[n_u_] = (has_warm_ && std::abs(warm_lambda_) > 0.0)
                  ? warm_lambda_
                  : fun::el_residual(geom).lambda;
  }

  double res_full = 0.0, res_l1 = 0.0;
  Eigen::VectorXd F = residual_vector(z, xi, r, &res_full, &res_l1);
  auto scaled_norm = [&](const Eigen::VectorXd& v) {
    return v.head(n_u_).norm();
  };
  double fnorm = scaled_norm(F);
  int iter = 0;
  bool need_jacobian = !jac_->valid;
  for (; iter < opts_.max_iter; ++iter) {
    if (fnorm <= opts_.tol && std::abs(F[n_u_]) <= opts_.area_tol) break;
    if (need_jacobian) {
      refresh_jacobian(z, xi, r);
      need_jacobian = false;
    }
    const Eigen::VectorXd dz = jac_->lu.solve(-F);
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 9; ++halving) {
      Eigen::VectorXd z_try = z + step * dz;
      double rf = 0.0, rl = 0.0;
      Eigen::VectorXd F_try;
      try {
        F_try = residual_vector(z_try, xi, r, &rf, &rl);
      } catch (const Error&) {
        step *= 0.5;
        continue;
      }
      const double fn_try =
          std::max(scaled_norm(F_try), std::abs(F_try[n_u_]) * opts_.tol /
                                           opts_.area_tol);
      const double fn_cur =
          std::max(fnorm, std::abs(F[n_u_]) * opts_.tol / opts_.area_tol);
      if (fn_try < fn_cur || fn_cur == 0.0) {
        if (halving > 0 || fn_try > 0.3 * fn_cur) need_jacobian = true;
        z = z_try;
        F = F_try;
        fnorm = scaled_norm(F);
        res_full = rf;
        res_l1 = rl;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!need_jacobian) {
        // The chord Jacobian went stale; rebuild once before giving up.
        need_jacobian = true;
        refresh_jacobian(z, xi, r);
        need_jacobian = false;
        continue;
      }
      throw NoConvergence("leaf solve stalled (damping exhausted)");
    }
  }
  if (fnorm > opts_.tol || std::abs(F[n_u_]) > opts_.area_tol)
    throw NoConvergence("leaf solve did not reach tolerance in " +
                        std::to_string(opts_.max_iter) + " iterations");

  LSSolution out;
  out.xi = xi;
  out.r = r;
  out.u = sh::SphericalHarmonicField(disc_->l_max);
  for (int i = 0; i < n_u_; ++i) out.u.a[coeff_of_unknown_[i]] = z[i];
  out.lambda = z[n_u_];
  out.residual_scaled = fnorm;
  out.residual_full_scaled = res_full;
  out.residual_lambda1_scaled = res_l1;
  out.area_rel_error = F[n_u_];
  out.iterations = iter;
  warm_u_ = out.u;
  warm_lambda_ = out.lambda;
  has_warm_ = true;
  return out;
}

surf::SurfaceGeometry LeafSolver::geometry(const LSSolution& sol) const {
  surf::GraphSurface s;
  s.xi = sol.xi;
  s.r = sol.r;
  s.u = sol.u;
  return surf::build_surface_geometry(model_, s, *disc_);
}

LSSolution ls_solve(const models::InitialDataModel& model, const Vec3& xi,
                    double r, const surf::Discretization& disc,
                    SolverOptions opts) {
  LeafSolver solver(model, disc, opts);
  return solver.solve(xi, r);
}

double F_r(const surf::SurfaceGeometry& geom, double r) {
  const double q = 4.0 * fun::hawking_functional(geom);
  return r * r * (q - 16.0 * kPi + 64.0 * kPi / r);
}

double G_r_direct(LeafSolver& solver, const Vec3& xi, double r) {
  const auto sol = solver.solve(xi, r);
  const auto geom = solver.geometry(sol);
  const double q = 4.0 * fun::hawking_functional(geom);
  const double s = mass_scale(solver.model());
  return s * s * r * r * (q - 16.0 * kPi) + 64.0 * kPi * s * r;
}

double G1_closed_form(double t) {
  if (!(t >= 0.0) || t >= 1.0) throw DomainError("G1 needs 0 <= |xi| < 1");
  if (t < 0.35) return G1_series(t);
  return 64.0 * kPi + 32.0 * kPi / (1.0 - t * t) -
         48.0 * kPi / t * std::log((1.0 + t) / (1.0 - t)) -
         128.0 * kPi * std::log(1.0 - t * t);
}

double G1_series(double t) {
  if (!(t >= 0.0) || t >= 1.0) throw DomainError("G1 needs 0 <= |xi| < 1");
  // 32pi sum t^{2k} - 96pi sum t^{2k}/(2k+1) + 128pi sum t^{2k}/k  (k >= 1).
  double sum = 0.0;
  double t2k = 1.0;
  for (int k = 1; k < 400; ++k) {
    t2k *= t * t;
    const double term =
        (32.0 - 96.0 / (2.0 * k + 1.0) + 128.0 / k) * kPi * t2k;
    sum += term;
    if (term < 1e-17 * std::max(1.0, sum)) break;
  }
  return sum;
}

double G1_radial_derivative(double t) {
  if (!(t >= 0.0) || t >= 1.0) throw DomainError("G1 needs 0 <= |xi| < 1");
  if (t < 0.35) return G1_radial_derivative_series(t);
  const double om = 1.0 - t * t;
  return 64.0 * kPi * t / (om * om) +
         48.0 * kPi / (t * t) * std::log((1.0 + t) / (1.0 - t)) -
         96.0 * kPi / (t * om) + 256.0 * kPi * t / om;
}

double G1_radial_derivative_series(double t) {
  double sum = 0.0;
  double t2km1 = 1.0 / t;
  for (int k = 1; k < 400; ++k) {
    t2km1 *= t * t;
    const double term =
        2.0 * k * (32.0 - 96.0 / (2.0 * k + 1.0) + 128.0 / k) * kPi * t2km1;
    sum += term;
    if (term < 1e-17 * std::max(1.0, sum)) break;
  }
  return sum;
}

GrAsymptotic G_r_asymptotic(const models::InitialDataModel& model,
                            const Vec3& xi, double r, AsymptoticOptions opts) {
  GrAsymptotic out;
  out.g1 = G1_closed_form(xi.norm());
  const double s = mass_scale(model);

  const sh::QuadratureGrid ang(opts.angular_n, opts.angular_n);
  const Vec3 c = r * xi;

  // Volume term 2 r int_{R^3 \ B_r(r xi)} Sc dv, radial log panels.
  double ivol = 0.0;
  const double q_sc = model.sc_decay_exponent();
  if (std::isfinite(q_sc)) {
    const double R_max = opts.r_max_factor * r;
    std::vector<double> gx, gw;
    {
      // Gauss-Legendre nodes on [-1,1] via the shared grid machinery.
      sh::QuadratureGrid g1d(std::max(opts.panel_order, 4), 4);
      gx = g1d.x;
      gw = g1d.w;
    }
    const double lr0 = std::log(r), lr1 = std::log(R_max);
    for (int pnl = 0; pnl < opts.radial_panels; ++pnl) {
      const double a = lr0 + (lr1 - lr0) * pnl / opts.radial_panels;
      const double b = lr0 + (lr1 - lr0) * (pnl + 1) / opts.radial_panels;
      for (size_t iq = 0; iq < gx.size(); ++iq) {
        const double lt = 0.5 * (a + b) + 0.5 * (b - a) * gx[iq];
        const double t = std::exp(lt);
        const double wt = 0.5 * (b - a) * gw[iq] * t;  // dt = t dlog t
        double shell = 0.0;
        for (int j = 0; j < ang.n_theta; ++j)
          for (int k = 0; k < ang.n_phi; ++k) {
            const Vec3 x = c + t * ang.dir(j, k);
            shell += ang.solid_angle(j) *
                     tensor::curvature(model.metric_jet(x)).sc;
          }
        ivol += wt * t * t * shell;
      }
    }
    // Analytic tail bound from the model's decay exponent, with the
    // empirical constant sampled on the truncation sphere.
    double c_sc = 0.0;
    for (int j = 0; j < ang.n_theta; ++j)
      for (int k = 0; k < ang.n_phi; ++k) {
        const Vec3 x = c + R_max * ang.dir(j, k);
        c_sc = std::max(c_sc, std::abs(tensor::curvature(model.metric_jet(x)).sc) *
                                  std::pow(x.norm(), q_sc));
      }
    c_sc *= 1.5;
    if (q_sc <= 3.0) throw TailError("scalar curvature decays too slowly");
    const double reff = R_max - c.norm();
    out.tail_bound = 2.0 * r * 4.0 * kPi * c_sc *
                     std::pow(reff, 3.0 - q_sc) / (q_sc - 3.0) * s * s;
  }
  out.volume_term = s * s * 2.0 * r * ivol;
  if (std::abs(out.tail_bound) >
      opts.tail_fraction * std::abs(out.volume_term) + 1e-12)
    throw TailError("volume-term truncation tail above 1%");

  // Momentum term -r^2 int_{S_r(r xi)} pi(nu,nu)^2 dmu_flat; Euclidean
  // traces and the flat unit normal.
  double isurf = 0.0;
  for (int j = 0; j < ang.n_theta; ++j)
    for (int k = 0; k < ang.n_phi; ++k) {
      const Vec3 nu = ang.dir(j, k);
      const Vec3 x = c + r * nu;
      const Mat3 kk = model.k_jet(x).k;
      const double pinn = nu.dot(kk * nu) - kk.trace();
      isurf += ang.solid_angle(j) * r * r * pinn * pinn;
    }
  out.momentum_term = -s * s * r * r * isurf;

  out.value = out.g1 + out.volume_term + out.momentum_term;
  return out;
}

namespace {

FoliationLeaf leaf_diagnostics(LeafSolver& solver, const LSSolution& sol) {
  FoliationLeaf leaf;
  leaf.sol = sol;
  const auto geom = solver.geometry(sol);
  leaf.area = geom.area;
  leaf.hawking_energy = fun::hawking_energy(geom);
  leaf.euclidean_center = surf::euclidean_center(geom);
  const auto pack = fun::monotonicity_pack(geom, sol.lambda, 0.49);
  leaf.int_f = pack.int_f;
  leaf.int_f_minus_lambda = pack.int_f_minus_lambda;
  leaf.balance_residual = pack.balance_residual;
  leaf.max_g = pack.max_g;
  const double q = 4.0 * fun::hawking_functional(geom);
  const double s = mass_scale(solver.model());
  leaf.G_value =
      s * s * sol.r * sol.r * (q - 16.0 * kPi) + 64.0 * kPi * s * sol.r;
  return leaf;
}

}  // namespace

FoliationLeaf minimize_G(LeafSolver& solver, double r, MinimizeOptions mopts,
                         const Vec3& xi_init) {
  const double bound = 1.0 - solver.options().delta_tilde;
  // Iterates stay far enough inside the ball that the finite-difference
  // stencils remain admissible.
  const double wbound = bound - 3.0 * mopts.fd_step;
  auto eval = [&](const Vec3& xi) { return G_r_direct(solver, xi, r); };

  auto minimize_from = [&](Vec3 xi) {
    double g0 = eval(xi);
    const double h = mopts.fd_step;
    Vec3 grad = Vec3::Zero();
    for (int it = 0; it < mopts.max_newton; ++it) {
      Mat3 hess;
      for (int a = 0; a < 3; ++a) {
        const double gp = eval(xi + h * Vec3::Unit(a));
        const double gm = eval(xi - h * Vec3::Unit(a));
        grad[a] = (gp - gm) / (2.0 * h);
        hess(a, a) = (gp - 2.0 * g0 + gm) / (h * h);
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const double gpp = eval(xi + h * Vec3::Unit(a) + h * Vec3::Unit(b));
          const double gpm = eval(xi + h * Vec3::Unit(a) - h * Vec3::Unit(b));
          const double gmp = eval(xi - h * Vec3::Unit(a) + h * Vec3::Unit(b));
          const double gmm = eval(xi - h * Vec3::Unit(a) - h * Vec3::Unit(b));
          hess(a, b) = hess(b, a) = (gpp - gpm - gmp + gmm) / (4.0 * h * h);
        }
      if (grad.norm() <= mopts.grad_tol) break;
      // Newton step on a regularized Hessian; fall back to gradient descent.
      Eigen::SelfAdjointEigenSolver<Mat3> es(hess);
      Vec3 evs = es.eigenvalues();
      const double floor_ev = std::max(1e-3, 1e-3 * evs.cwiseAbs().maxCoeff());
      Mat3 hreg = Mat3::Zero();
      for (int a = 0; a < 3; ++a) {
        const double ev = std::max(evs[a], floor_ev);
        hreg += es.eigenvectors().col(a) * es.eigenvectors().col(a).transpose() / ev;
      }
      Vec3 step = -hreg * grad;
      double damp = 1.0;
      bool moved = false;
      for (int halving = 0; halving < 10; ++halving) {
        Vec3 xi_try = xi + damp * step;
        if (xi_try.norm() >= wbound) {
          damp *= 0.5;
          continue;
        }
        const double g_try = eval(xi_try);
        if (g_try < g0) {
          xi = xi_try;
          g0 = g_try;
          moved = true;
          break;
        }
        damp *= 0.5;
      }
      if (!moved) break;
    }
    return std::pair{xi, g0};
  };

  Vec3 xi_start = xi_init;
  if (xi_start.norm() >= wbound)
    xi_start *= 0.9 * wbound / xi_start.norm();
  auto [xi, gval] = minimize_from(xi_start);
  if (mopts.multistart > 1) {
    std::mt19937_64 rng(mopts.seed);
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    for (int t = 1; t < mopts.multistart; ++t) {
      const auto [xi2, g2] = minimize_from(Vec3(u(rng), u(rng), u(rng)));
      if (g2 < gval - 1e-10) {
        xi = xi2;
        gval = g2;
      }
    }
  }
  if (xi.norm() >= wbound - 1e-9)
    throw BoundaryMinimum("G_r minimizer reached the xi-domain boundary");

  // Final gradient/Hessian report at the minimizer.
  const double h = mopts.fd_step;
  Vec3 grad;
  Mat3 hess;
  const double g0 = eval(xi);
  for (int a = 0; a < 3; ++a) {
    const double gp = eval(xi + h * Vec3::Unit(a));
    const double gm = eval(xi - h * Vec3::Unit(a));
    grad[a] = (gp - gm) / (2.0 * h);
    hess(a, a) = (gp - 2.0 * g0 + gm) / (h * h);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const double gpp = eval(xi + h * Vec3::Unit(a) + h * Vec3::Unit(b));
      const double gpm = eval(xi + h * Vec3::Unit(a) - h * Vec3::Unit(b));
      const double gmp = eval(xi - h * Vec3::Unit(a) + h * Vec3::Unit(b));
      const double gmm = eval(xi - h * Vec3::Unit(a) - h * Vec3::Unit(b));
      hess(a, b) = hess(b, a) = (gpp - gpm - gmp + gmm) / (4.0 * h * h);
    }

  const bool converged = grad.norm() <= mopts.grad_tol;
  if (!converged && xi.norm() > 0.5 * bound &&
      -grad.dot(xi.normalized()) > 0.5 * grad.norm())
    throw BoundaryMinimum(
        "descent stalled against the xi-domain boundary with an outward "
        "gradient");

  const auto sol = solver.solve(xi, r);
  FoliationLeaf leaf = leaf_diagnostics(solver, sol);
  leaf.G_gradient = grad;
  Eigen::SelfAdjointEigenSolver<Mat3> es(hess);
  leaf.hessian_eigenvalues = es.eigenvalues();
  leaf.minimizer = converged;
  return leaf;
}

FoliationReport build_foliation(
    LeafSolver& solver, const std::vector<double>& radii,
    MinimizeOptions mopts, const std::optional<std::vector<Vec3>>& xi_override) {
  if (radii.size() < 2) throw DomainError("foliation needs at least 2 radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw DomainError("radii must increase");
  if (xi_override && xi_override->size() != radii.size())
    throw DomainError("xi_override size mismatch");

  FoliationReport rep;
  Vec3 xi_warm = Vec3::Zero();
  for (size_t i = 0; i < radii.size(); ++i) {
    if (xi_override) {
      const auto sol = solver.solve((*xi_override)[i], radii[i]);
      rep.leaves.push_back(leaf_diagnostics(solver, sol));
    } else {
      const Vec3 xi0 =
          (i == 0) ? Vec3(Vec3::Zero()) : Vec3(xi_warm * (radii[i - 1] / radii[i]));
      auto leaf = minimize_G(solver, radii[i], mopts, xi0);
      xi_warm = leaf.sol.xi;
      rep.leaves.push_back(std::move(leaf));
    }
  }

  // Graph-ordering surrogate at matched parameter points plus support
  // containment of consecutive leaves.
  const auto& disc = solver.disc();
  const auto& grid = disc.grid;
  std::vector<std::vector<Vec3>> points(rep.leaves.size());
  for (size_t li = 0; li < rep.leaves.size(); ++li) {
    const auto& sol = rep.leaves[li].sol;
    const auto us = surf::synthesize_user(disc, sol.u);
    points[li].resize(grid.n_nodes());
    for (int j = 0; j < grid.n_theta; ++j)
      for (int k = 0; k < grid.n_phi; ++k) {
        const int n = grid.node(j, k);
        const Vec3 y = grid.dir(j, k);
        points[li][n] = sol.r * sol.xi + (sol.r + us[n]) * y;
      }
  }
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (size_t li = 0; li + 1 < rep.leaves.size(); ++li) {
    const double dr = rep.leaves[li + 1].sol.r - rep.leaves[li].sol.r;
    double margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.n_theta; ++j)
      for (int k = 0; k < grid.n_phi; ++k) {
        const int n = grid.node(j, k);
        const Vec3 y = grid.dir(j, k);
        margin = std::min(
            margin, (points[li + 1][n] - points[li][n]).dot(y) / dr);
      }
    rep.ordering_margins.push_back(margin);
    rep.min_margin = std::min(rep.min_margin, margin);

    // Support-function comparison over the node directions.
    for (int n = 0; n < grid.n_nodes() && rep.support_containment; n += 7) {
      const Vec3 dir = grid.dir(n / grid.n_phi, n % grid.n_phi);
      double h_in = -1e300, h_out = -1e300;
      for (int q = 0; q < grid.n_nodes(); ++q) {
        h_in = std::max(h_in, points[li][q].dot(dir));
        h_out = std::max(h_out, points[li + 1][q].dot(dir));
      }
      if (h_out < h_in - 1e-9 * rep.leaves[li].sol.r)
        rep.support_containment = false;
    }
  }
  if (rep.min_margin <= 0.0)
    throw NotAFoliation("graph-ordering margin non-positive between leaves");
  return rep;
}

UDiagnostic u_diagnostic_expansion(const LSSolution& sol, double mass,
                                   const surf::Discretization& disc) {
  UDiagnostic out;
  const double s = mass > 0.0 ? 2.0 / mass : 1.0;
  const auto us = surf::synthesize_user(disc, sol.u);
  const double t = sol.xi.norm();
  const auto& grid = disc.grid;
  int max_terms = 0;
  for (int j = 0; j < grid.n_theta; ++j)
    for (int k = 0; k < grid.n_phi; ++k) {
      const int n = grid.node(j, k);
      const Vec3 y = grid.dir(j, k);
      double series = -2.0;
      if (t > 1e-14) {
        const double arg = -y.dot(sol.xi) / t;
        double tl = t;  // t^l
        for (int l = 2; l < 400; ++l) {
          tl *= t;
          const double term = 4.0 * tl / l * sh::legendre_p(l, arg);
          series += term;
          if (4.0 * tl / l < 1e-12) {
            max_terms = std::max(max_terms, l);
            break;
          }
        }
      }
      out.sup_deviation =
          std::max(out.sup_deviation, std::abs(s * us[n] - series));
    }
  out.terms_used = max_terms;
  return out;
}

}  // namespace hfk::reduction
