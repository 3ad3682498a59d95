#include "hfk/surface.hpp"

#include <cmath>

#include "hfk/tensor_calc.hpp"

namespace hfk::surf {

using sh::SphericalHarmonicField;

std::vector<double> synthesize_user(const Discretization& disc,
                                    const sh::SphericalHarmonicField& f) {
  if (f.l_max == disc.basis_user.l_max())
    return disc.basis_user.synthesize(f);
  sh::SphericalHarmonicField g = f.truncated(disc.basis_user.l_max());
  return disc.basis_user.synthesize(g);
}

namespace {

SurfaceGeometry build_from_embedding(const models::InitialDataModel& model,
                                     std::array<SphericalHarmonicField, 3> emb,
                                     const Discretization& disc) {
  SurfaceGeometry geo;
  geo.disc = &disc;
  geo.model = model;
  geo.emb = std::move(emb);
  const auto& basis = disc.basis_int;
  const auto& grid = disc.grid;
  const int n = grid.n_nodes();

  std::array<std::vector<double>, 3> Xs, Xth, Xph, Xthth, Xthph, Xphph;
  for (int c = 0; c < 3; ++c) {
    Xs[c] = basis.synthesize(geo.emb[c]);
    Xth[c] = basis.synth_dtheta(geo.emb[c]);
    Xph[c] = basis.synth_dphi(geo.emb[c]);
    Xthth[c] = basis.synth_dtheta2(geo.emb[c]);
    Xthph[c] = basis.synth_dthetadphi(geo.emb[c]);
    Xphph[c] = basis.synth_dphi2(geo.emb[c]);
  }

  geo.X.resize(n);
  geo.nu.resize(n);
  geo.T_th.resize(n);
  geo.T_ph.resize(n);
  geo.g_amb.resize(n);
  geo.ginv_amb.resize(n);
  geo.g_sigma.resize(n);
  geo.g_sigma_inv.resize(n);
  geo.det_sigma.resize(n);
  geo.dmu.resize(n);
  geo.dmu_flat.resize(n);
  geo.B.resize(n);
  geo.H.resize(n);
  geo.Bdev2.resize(n);
  geo.ric_nn.resize(n);
  geo.sc_amb.resize(n);
  geo.k.resize(n);
  geo.trk.resize(n);
  geo.knn.resize(n);
  geo.P.resize(n);
  geo.k2.resize(n);
  geo.dnu_trk.resize(n);
  geo.dnu_knn.resize(n);
  geo.k_nu.resize(n);
  geo.mu.resize(n);
  geo.J_norm.resize(n);

  std::vector<int> bad(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const int j = static_cast<int>(i) / grid.n_phi;
    const Vec3 X(Xs[0][i], Xs[1][i], Xs[2][i]);
    const Vec3 Tt(Xth[0][i], Xth[1][i], Xth[2][i]);
    const Vec3 Tp(Xph[0][i], Xph[1][i], Xph[2][i]);
    geo.X[i] = X;
    geo.T_th[i] = Tt;
    geo.T_ph[i] = Tp;

    models::MetricJet mj;
    models::KJet kj;
    tensor::CurvaturePack curv;
    try {
      mj = geo.model.metric_jet(X);
      kj = geo.model.k_jet(X);
      curv = tensor::curvature(mj);
    } catch (const Error&) {
      bad[i] = 2;
      return;
    }
    geo.g_amb[i] = mj.g;
    geo.ginv_amb[i] = curv.ginv;
    geo.sc_amb[i] = curv.sc;

    Eigen::Matrix2d gs;
    gs(0, 0) = Tt.dot(mj.g * Tt);
    gs(0, 1) = gs(1, 0) = Tt.dot(mj.g * Tp);
    gs(1, 1) = Tp.dot(mj.g * Tp);
    const double det = gs.determinant();
    if (!(det > 0.0)) {
      bad[i] = 1;
      return;
    }
    geo.g_sigma[i] = gs;
    geo.g_sigma_inv[i] = gs.inverse();
    geo.det_sigma[i] = det;

    // Normal: the flat cross product of the tangents annihilates them as a
    // covector; raising with g and normalizing gives the g-unit normal.
    const Vec3 n_cov = Tt.cross(Tp);
    Vec3 nu = curv.ginv * n_cov;
    const double norm = std::sqrt(nu.dot(mj.g * nu));
    nu /= norm;
    geo.nu[i] = nu;

    // Chart measure: integrate over dcos(theta), so divide by sin(theta).
    const double wchart = grid.w[j] / grid.sin_theta[j] * 2.0 * M_PI /
                          grid.n_phi;
    geo.dmu[i] = std::sqrt(det) * wchart;
    const double det_flat =
        (Tt.dot(Tt) * Tp.dot(Tp) - sqr(Tt.dot(Tp)));
    geo.dmu_flat[i] = std::sqrt(std::max(det_flat, 0.0)) * wchart;

    // Second fundamental form with the sign making round spheres have
    // H = +2/r for the outward normal.
    const Vec3 nu_low = mj.g * nu;
    const Vec3 d2[3] = {Vec3(Xthth[0][i], Xthth[1][i], Xthth[2][i]),
                        Vec3(Xthph[0][i], Xthph[1][i], Xthph[2][i]),
                        Vec3(Xphph[0][i], Xphph[1][i], Xphph[2][i])};
    const Vec3 tang[2] = {Tt, Tp};
    Eigen::Matrix2d Bm;
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b) {
        const Vec3& dd = d2[a + b];  // (0,0)->thth, (0,1)->thph, (1,1)->phph
        double v = nu_low.dot(dd);
        for (int ii = 0; ii < 3; ++ii)
          v += nu_low[ii] * tang[a].dot(curv.gamma[ii] * tang[b]);
        Bm(a, b) = -v;
        Bm(b, a) = Bm(a, b);
      }
    geo.B[i] = Bm;
    const Eigen::Matrix2d gsi = geo.g_sigma_inv[i];
    const double H = (gsi * Bm).trace();
    geo.H[i] = H;
    const Eigen::Matrix2d Bdev = Bm - 0.5 * H * gs;
    geo.Bdev2[i] = (gsi * Bdev * gsi * Bdev).trace();
    geo.ric_nn[i] = nu.dot(curv.ric * nu);

    geo.k[i] = kj.k;
    const double trk = (curv.ginv * kj.k).trace();
    geo.trk[i] = trk;
    geo.knn[i] = nu.dot(kj.k * nu);
    geo.P[i] = trk - geo.knn[i];
    const Mat3 kup = curv.ginv * kj.k * curv.ginv;
    geo.k2[i] = kup.cwiseProduct(kj.k).sum();

    const Vec3 dtrk = tensor::trk_gradient(mj, kj);
    geo.dnu_trk[i] = nu.dot(dtrk);
    const Ten3 ck = tensor::cov_derivative_k(kj, curv.gamma);
    double dknn = 0.0;
    for (int a = 0; a < 3; ++a) dknn += nu[a] * nu.dot(ck[a] * nu);
    geo.dnu_knn[i] = dknn;
    geo.k_nu[i] =
        Eigen::Vector2d(Tt.dot(kj.k * nu), Tp.dot(kj.k * nu));

    // Constraint quantities from the pieces already in hand.
    geo.mu[i] = 0.5 * (curv.sc + trk * trk - geo.k2[i]);
    Vec3 J;
    for (int jj = 0; jj < 3; ++jj) {
      double v = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) v += curv.ginv(a, b) * ck[a](b, jj);
      J[jj] = v - dtrk[jj];
    }
    geo.J_norm[i] = std::sqrt(J.dot(curv.ginv * J));
  });

  for (int i = 0; i < n; ++i) {
    if (bad[i] == 1)
      throw DegenerateSurface("induced metric degenerate at a node");
    if (bad[i] == 2)
      throw DomainError("surface leaves the admissible exterior region");
  }

  // Fix the global orientation: outward means positive flat pairing with the
  // direction away from the surface's own Euclidean center.
  Vec3 c0 = Vec3::Zero();
  for (const auto& X : geo.X) c0 += X;
  c0 /= n;
  int pos = 0, neg = 0;
  for (int i = 0; i < n; ++i) {
    const double s = geo.nu[i].dot(geo.X[i] - c0);
    (s > 0.0 ? pos : neg)++;
  }
  if (pos != 0 && neg != 0)
    throw DegenerateSurface("normal orientation is inconsistent across nodes");
  if (neg == n) {
    for (int i = 0; i < n; ++i) {
      geo.nu[i] = -geo.nu[i];
      geo.B[i] = -geo.B[i];
      geo.H[i] = -geo.H[i];
      geo.knn[i] = geo.nu[i].dot(geo.k[i] * geo.nu[i]);  // unchanged
      geo.dnu_trk[i] = -geo.dnu_trk[i];
      geo.dnu_knn[i] = -geo.dnu_knn[i];
      geo.k_nu[i] = -geo.k_nu[i];
    }
  }

  geo.area = 0.0;
  geo.area_flat = 0.0;
  for (int i = 0; i < n; ++i) {
    geo.area += geo.dmu[i];
    geo.area_flat += geo.dmu_flat[i];
  }
  return geo;
}

}  // namespace

SurfaceGeometry build_surface_geometry(const models::InitialDataModel& model,
                                       const GraphSurface& surf,
                                       const Discretization& disc) {
  const auto& grid = disc.grid;
  const int n = grid.n_nodes();
  const auto us = synthesize_user(disc, surf.u);
  std::array<std::vector<double>, 3> xyz;
  for (int c = 0; c < 3; ++c) xyz[c].resize(n);
  for (int j = 0; j < grid.n_theta; ++j)
    for (int k = 0; k < grid.n_phi; ++k) {
      const int i = grid.node(j, k);
      const Vec3 y = grid.dir(j, k);
      const Vec3 X = surf.r * surf.xi + (surf.r + us[i]) * y;
      for (int c = 0; c < 3; ++c) xyz[c][i] = X[c];
    }
  return build_surface_geometry_from_samples(model, xyz, disc);
}

SurfaceGeometry build_surface_geometry_from_samples(
    const models::InitialDataModel& model,
    const std::array<std::vector<double>, 3>& xyz,
    const Discretization& disc) {
  std::array<SphericalHarmonicField, 3> emb;
  for (int c = 0; c < 3; ++c) emb[c] = disc.basis_int.analyze(xyz[c]);
  return build_from_embedding(model, std::move(emb), disc);
}

std::array<std::vector<double>, 3> displaced_samples(
    const SurfaceGeometry& geom, const std::vector<double>& speed,
    double step) {
  const int n = geom.n_nodes();
  std::array<std::vector<double>, 3> xyz;
  for (int c = 0; c < 3; ++c) xyz[c].resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec3 X = geom.X[i] + step * speed[i] * geom.nu[i];
    for (int c = 0; c < 3; ++c) xyz[c][i] = X[c];
  }
  return xyz;
}

double surface_integrate(const SurfaceGeometry& geom,
                         const std::vector<double>& field) {
  double s = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i) s += geom.dmu[i] * field[i];
  return s;
}

double surface_integrate_flat(const SurfaceGeometry& geom,
                              const std::vector<double>& field) {
  double s = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i) s += geom.dmu_flat[i] * field[i];
  return s;
}

std::pair<std::vector<double>, std::vector<double>> chart_derivatives(
    const SurfaceGeometry& geom, const std::vector<double>& field,
    bool strict_band) {
  const auto& basis = geom.basis();
  const auto f = basis.analyze(field, strict_band, 1e-6);
  return {basis.synth_dtheta(f), basis.synth_dphi(f)};
}

namespace {

// Weak-form divergence.  Chart components of fluxes are not smooth scalars
// on S^2 (their harmonic expansions decay only algebraically at the poles),
// so the strong form loses accuracy there.  The weak form pairs only smooth
// scalars with exact basis gradients:
//   <div w, Y_A>_dmu = -int g^{ab} w_a (Y_A)_{,b} dmu
// and inverts the curved mass matrix by conjugate gradients.
std::vector<double> weak_divergence(const SurfaceGeometry& geom,
                                    const std::vector<double>& omega_th,
                                    const std::vector<double>& omega_ph) {
  const auto& basis = geom.basis();
  const int n = geom.n_nodes();
  const int nc = sh::coeff_count(basis.l_max());

  std::vector<double> Wth(n), Wph(n);
  for (int i = 0; i < n; ++i) {
    const auto& gi = geom.g_sigma_inv[i];
    Wth[i] = geom.dmu[i] * (gi(0, 0) * omega_th[i] + gi(0, 1) * omega_ph[i]);
    Wph[i] = geom.dmu[i] * (gi(1, 0) * omega_th[i] + gi(1, 1) * omega_ph[i]);
  }
  const auto b_th = basis.adjoint_pair(Wth, sh::Basis::Deriv::DTheta);
  const auto b_ph = basis.adjoint_pair(Wph, sh::Basis::Deriv::DPhi);
  Eigen::VectorXd b(nc);
  for (int a = 0; a < nc; ++a) b[a] = -(b_th.a[a] + b_ph.a[a]);

  // Mass-matrix action M v = adjoint(dmu * synth(v)).
  auto mass_apply = [&](const Eigen::VectorXd& v) {
    sh::SphericalHarmonicField f(basis.l_max());
    for (int a = 0; a < nc; ++a) f.a[a] = v[a];
    auto s = basis.synthesize(f);
    for (int i = 0; i < n; ++i) s[i] *= geom.dmu[i];
    const auto mv = basis.adjoint_pair(s, sh::Basis::Deriv::Value);
    Eigen::VectorXd out(nc);
    for (int a = 0; a < nc; ++a) out[a] = mv.a[a];
    return out;
  };

  // CG with the scalar preconditioner M ~ (area/4pi) Id.
  const double scale = geom.area / (4.0 * M_PI);
  Eigen::VectorXd x = b / scale;
  Eigen::VectorXd r = b - mass_apply(x);
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  const double tol2 = sqr(1e-14) * std::max(b.squaredNorm(), 1e-300);
  for (int it = 0; it < 300 && rs > tol2; ++it) {
    const Eigen::VectorXd mp = mass_apply(p);
    const double alpha = rs / p.dot(mp);
    x += alpha * p;
    r -= alpha * mp;
    const double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  sh::SphericalHarmonicField sol(basis.l_max());
  for (int a = 0; a < nc; ++a) sol.a[a] = x[a];
  return basis.synthesize(sol);
}

}  // namespace

std::vector<double> div_sigma(const SurfaceGeometry& geom,
                              const std::vector<double>& omega_th,
                              const std::vector<double>& omega_ph,
                              bool strict_band) {
  (void)strict_band;  // covector chart components carry no scalar band limit
  return weak_divergence(geom, omega_th, omega_ph);
}

std::vector<double> laplace_beltrami(const SurfaceGeometry& geom,
                                     const std::vector<double>& field,
                                     bool strict_band) {
  auto [fth, fph] = chart_derivatives(geom, field, strict_band);
  return weak_divergence(geom, fth, fph);
}

std::vector<double> intrinsic_scalar_curvature(const SurfaceGeometry& geom) {
  // Brioschi formula.  The chart derivatives of the induced metric are
  // assembled pointwise from exact embedding derivatives and the ambient
  // metric jets, never by re-analyzing chart tensor components (whose
  // harmonic expansions converge slowly at the poles).
  const int n = geom.n_nodes();
  const auto& basis = geom.basis();
  std::array<std::vector<double>, 3> X2[3], X3[4];
  for (int c = 0; c < 3; ++c) {
    X2[0][c] = basis.synth_dtheta2(geom.emb[c]);
    X2[1][c] = basis.synth_dthetadphi(geom.emb[c]);
    X2[2][c] = basis.synth_dphi2(geom.emb[c]);
    X3[0][c] = basis.synth_dtheta3(geom.emb[c]);
    X3[1][c] = basis.synth_dtheta2dphi(geom.emb[c]);
    X3[2][c] = basis.synth_dthetadphi2(geom.emb[c]);
    X3[3][c] = basis.synth_dphi3(geom.emb[c]);
  }
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) {
    const auto mj = geom.model.metric_jet(geom.X[i]);
    const Vec3 T[2] = {geom.T_th[i], geom.T_ph[i]};
    auto d2X = [&](int a, int b) {
      const auto& v = X2[a + b];
      return Vec3(v[0][i], v[1][i], v[2][i]);
    };
    auto d3X = [&](int a, int b, int c) {
      const auto& v = X3[a + b + c];
      return Vec3(v[0][i], v[1][i], v[2][i]);
    };
    auto ip = [&](const Vec3& u, const Vec3& v) { return u.dot(mj.g * v); };
    auto dg = [&](const Vec3& w, const Vec3& u, const Vec3& v) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += w[k] * u.dot(mj.dg[k] * v);
      return s;
    };
    auto d2g = [&](const Vec3& w1, const Vec3& w2, const Vec3& u,
                   const Vec3& v) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          s += w1[k] * w2[l] * u.dot(mj.d2g[k][l] * v);
      return s;
    };
    // First and second chart derivatives of sig_ab = g(T_a, T_b).
    auto dsig = [&](int c, int a, int b) {
      return dg(T[c], T[a], T[b]) + ip(d2X(a, c), T[b]) + ip(T[a], d2X(b, c));
    };
    auto d2sig = [&](int d, int c, int a, int b) {
      return d2g(T[d], T[c], T[a], T[b]) + dg(d2X(c, d), T[a], T[b]) +
             dg(T[c], d2X(a, d), T[b]) + dg(T[c], T[a], d2X(b, d)) +
             dg(T[d], d2X(a, c), T[b]) + dg(T[d], T[a], d2X(b, c)) +
             ip(d3X(a, c, d), T[b]) + ip(d2X(a, c), d2X(b, d)) +
             ip(d2X(a, d), d2X(b, c)) + ip(T[a], d3X(b, c, d));
    };
    const double E = geom.g_sigma[i](0, 0), F = geom.g_sigma[i](0, 1),
                 G = geom.g_sigma[i](1, 1);
    const double E_th = dsig(0, 0, 0), E_ph = dsig(1, 0, 0);
    const double F_th = dsig(0, 0, 1), F_ph = dsig(1, 0, 1);
    const double G_th = dsig(0, 1, 1), G_ph = dsig(1, 1, 1);
    const double E_phph = d2sig(1, 1, 0, 0);
    const double F_thph = d2sig(0, 1, 0, 1);
    const double G_thth = d2sig(0, 0, 1, 1);
    Eigen::Matrix3d M1, M2;
    M1 << -0.5 * E_phph + F_thph - 0.5 * G_thth, 0.5 * E_th,
        F_th - 0.5 * E_ph,              //
        F_ph - 0.5 * G_th, E, F,        //
        0.5 * G_ph, F, G;
    M2 << 0.0, 0.5 * E_ph, 0.5 * G_th,  //
        0.5 * E_ph, E, F,               //
        0.5 * G_th, F, G;
    const double det = E * G - F * F;
    out[i] = 2.0 * (M1.determinant() - M2.determinant()) / (det * det);
  });
  return out;
}

Vec3 euclidean_center(const SurfaceGeometry& geom) {
  Vec3 c = Vec3::Zero();
  for (int i = 0; i < geom.n_nodes(); ++i) c += geom.dmu_flat[i] * geom.X[i];
  return c / geom.area_flat;
}

}  // namespace hfk::surf
