#include "hfk/functionals.hpp"

#include <cmath>
#include <limits>

namespace hfk::fun {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> rebuild_integrand_P2(const surf::SurfaceGeometry& g) {
  std::vector<double> out(g.n_nodes());
  for (int i = 0; i < g.n_nodes(); ++i) out[i] = sqr(g.P[i]);
  return out;
}

surf::SurfaceGeometry flow(const surf::SurfaceGeometry& geom,
                           const std::vector<double>& alpha, double s) {
  try {
    return surf::build_surface_geometry_from_samples(
        geom.model, surf::displaced_samples(geom, alpha, s), *geom.disc);
  } catch (const DegenerateSurface& e) {
    throw StepError(std::string("flow step degenerated the surface: ") +
                    e.what());
  }
}
}  // namespace

double hawking_functional(const surf::SurfaceGeometry& geom) {
  double s = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i)
    s += geom.dmu[i] * (sqr(geom.H[i]) - sqr(geom.P[i]));
  return 0.25 * s;
}

double hawking_energy(const surf::SurfaceGeometry& geom) {
  const double q = 4.0 * hawking_functional(geom);
  return std::sqrt(geom.area / (16.0 * kPi)) * (1.0 - q / (16.0 * kPi));
}

std::vector<double> W1_field(const surf::SurfaceGeometry& geom) {
  auto lap_h = surf::laplace_beltrami(geom, geom.H);
  for (int i = 0; i < geom.n_nodes(); ++i)
    lap_h[i] += geom.H[i] * (geom.Bdev2[i] + geom.ric_nn[i]);
  return lap_h;
}

std::vector<double> W2_field(const surf::SurfaceGeometry& geom) {
  const int n = geom.n_nodes();
  std::vector<double> om_th(n), om_ph(n);
  for (int i = 0; i < n; ++i) {
    om_th[i] = geom.P[i] * geom.k_nu[i][0];
    om_ph[i] = geom.P[i] * geom.k_nu[i][1];
  }
  auto div = surf::div_sigma(geom, om_th, om_ph);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = geom.P[i] * (geom.dnu_trk[i] - geom.dnu_knn[i]) - 2.0 * div[i] +
             0.5 * geom.H[i] * sqr(geom.P[i]);
  return out;
}

std::vector<double> W2_field_expanded(const surf::SurfaceGeometry& geom) {
  const int n = geom.n_nodes();
  std::vector<double> om_th(n), om_ph(n);
  for (int i = 0; i < n; ++i) {
    om_th[i] = geom.k_nu[i][0];
    om_ph[i] = geom.k_nu[i][1];
  }
  const auto div_k = surf::div_sigma(geom, om_th, om_ph);
  auto [p_th, p_ph] = surf::chart_derivatives(geom, geom.P);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const auto& gi = geom.g_sigma_inv[i];
    const Eigen::Vector2d gradP(gi(0, 0) * p_th[i] + gi(0, 1) * p_ph[i],
                                gi(1, 0) * p_th[i] + gi(1, 1) * p_ph[i]);
    const double k_gradP_nu = gradP.dot(geom.k_nu[i]);
    out[i] = geom.P[i] * (geom.dnu_trk[i] - geom.dnu_knn[i]) -
             2.0 * geom.P[i] * div_k[i] - 2.0 * k_gradP_nu +
             0.5 * geom.H[i] * sqr(geom.P[i]);
  }
  return out;
}

ELResidual el_residual(const surf::SurfaceGeometry& geom) {
  ELResidual out;
  out.W1 = W1_field(geom);
  out.W2 = W2_field(geom);
  out.H = geom.H;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i) {
    num += geom.dmu[i] * (out.W1[i] + out.W2[i]) * geom.H[i];
    den += geom.dmu[i] * sqr(geom.H[i]);
  }
  if (!(den > 1e-8))
    throw ZeroMeanCurvature("int H^2 dmu too small to project the multiplier");
  out.lambda = -num / den;
  out.residual.resize(geom.n_nodes());
  for (int i = 0; i < geom.n_nodes(); ++i)
    out.residual[i] = out.lambda * geom.H[i] + out.W1[i] + out.W2[i];
  const auto coeffs = geom.basis().analyze(out.residual);
  out.lambda1_norm = coeffs.band_norm(1);
  double s_solver = 0.0, s_full = 0.0;
  for (int l = 0; l <= coeffs.l_max; ++l) {
    if (l == 1) continue;
    const double b = sqr(coeffs.band_norm(l));
    s_full += b;
    if (l <= geom.disc->l_max) s_solver += b;
  }
  out.perp1_norm_solver = std::sqrt(s_solver);
  out.perp1_norm_full = std::sqrt(s_full);
  return out;
}

double first_variation_P2(const surf::SurfaceGeometry& geom,
                          const std::vector<double>& alpha) {
  const auto w2 = W2_field(geom);
  double s = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i)
    s += geom.dmu[i] * 2.0 * w2[i] * alpha[i];
  return s;
}

double fd_first_variation_P2(const surf::SurfaceGeometry& geom,
                             const std::vector<double>& alpha, double step) {
  const auto gp = flow(geom, alpha, step);
  const auto gm = flow(geom, alpha, -step);
  const double ip = surf::surface_integrate(gp, rebuild_integrand_P2(gp));
  const double im = surf::surface_integrate(gm, rebuild_integrand_P2(gm));
  return (ip - im) / (2.0 * step);
}

double fd_first_variation_willmore(const surf::SurfaceGeometry& geom,
                                   const std::vector<double>& alpha,
                                   double step) {
  auto willmore = [](const surf::SurfaceGeometry& g) {
    double s = 0.0;
    for (int i = 0; i < g.n_nodes(); ++i) s += g.dmu[i] * sqr(g.H[i]);
    return 0.25 * s;
  };
  return (willmore(flow(geom, alpha, step)) -
          willmore(flow(geom, alpha, -step))) /
         (2.0 * step);
}

double second_variation_P2(const surf::SurfaceGeometry& geom,
                           const std::vector<double>& alpha,
                           const std::vector<double>& alpha_tilde,
                           double step) {
  const auto gp = flow(geom, alpha_tilde, step);
  const auto gm = flow(geom, alpha_tilde, -step);
  return (first_variation_P2(gp, alpha) - first_variation_P2(gm, alpha)) /
         (2.0 * step);
}

double energy_variation(const surf::SurfaceGeometry& geom, double lambda,
                        const std::vector<double>& alpha) {
  double int_ha = 0.0, q = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i) {
    int_ha += geom.dmu[i] * geom.H[i] * alpha[i];
    q += geom.dmu[i] * (sqr(geom.H[i]) - sqr(geom.P[i]));
  }
  const double bracket = 16.0 * kPi - 4.0 * lambda * geom.area - q;
  return 0.5 / std::sqrt(geom.area) * int_ha * bracket *
         std::pow(16.0 * kPi, -1.5);
}

double fd_energy_variation(const surf::SurfaceGeometry& geom,
                           const std::vector<double>& alpha, double step) {
  return (hawking_energy(flow(geom, alpha, step)) -
          hawking_energy(flow(geom, alpha, -step))) /
         (2.0 * step);
}

MonotonicityPack monotonicity_pack(const surf::SurfaceGeometry& geom,
                                   double lambda, double beta) {
  const int n = geom.n_nodes();
  for (int i = 0; i < n; ++i)
    if (!(geom.H[i] > 0.0))
      throw NonPositiveH("monotonicity integrands need H > 0 pointwise");

  std::vector<double> logH(n);
  for (int i = 0; i < n; ++i) logH[i] = std::log(geom.H[i]);
  auto [lh_th, lh_ph] = surf::chart_derivatives(geom, logH);

  MonotonicityPack out;
  out.beta = beta;
  out.f.resize(n);
  out.g.resize(n);
  out.f_tilde.resize(n);
  out.f_beta.resize(n);
  out.f_k.resize(n);
  out.max_g = -std::numeric_limits<double>::infinity();

  double int_f = 0.0, int_fg_mu = 0.0;
  for (int i = 0; i < n; ++i) {
    const double poh = geom.P[i] / geom.H[i];
    const double radial = geom.dnu_trk[i] - geom.dnu_knn[i];
    const auto& gi = geom.g_sigma_inv[i];
    const Eigen::Vector2d d(lh_th[i], lh_ph[i]);
    const Eigen::Vector2d du(gi(0, 0) * d[0] + gi(0, 1) * d[1],
                             gi(1, 0) * d[0] + gi(1, 1) * d[1]);
    const double grad_logH2 = du.dot(d);
    const double k_gradlogH_nu = du.dot(geom.k_nu[i]);

    const double common = 0.5 * sqr(geom.trk[i]) - 0.75 * sqr(geom.P[i]) -
                          poh * radial;
    out.f_k[i] = sqr(poh) * geom.k2[i] + common - 0.5 * geom.k2[i];
    out.f[i] = out.f_k[i] - 0.5 * geom.Bdev2[i] - geom.J_norm[i];
    out.f_tilde[i] = 2.0 * poh * k_gradlogH_nu + common - 0.5 * geom.k2[i] -
                     0.5 * geom.Bdev2[i] - geom.J_norm[i];
    out.f_beta[i] = sqr(poh) * geom.k2[i] + common -
                    beta * (geom.k2[i] + geom.Bdev2[i] + 2.0 * geom.J_norm[i]);
    out.g[i] = -sqr(poh) * geom.k2[i] - grad_logH2 +
               2.0 * poh * k_gradlogH_nu;
    out.max_g = std::max(out.max_g, out.g[i]);

    int_f += geom.dmu[i] * out.f[i];
    int_fg_mu +=
        geom.dmu[i] * (out.f[i] + out.g[i] - (geom.mu[i] - geom.J_norm[i]));
  }
  out.int_f = int_f;
  out.int_f_minus_lambda = int_f - lambda * geom.area;
  out.balance_residual = lambda * geom.area + hawking_functional(geom) -
                         4.0 * kPi - int_fg_mu;
  return out;
}

}  // namespace hfk::fun
