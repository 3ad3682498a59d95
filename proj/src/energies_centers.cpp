#include "hfk/energies_centers.hpp"

#include <cmath>

#include "hfk/tensor_calc.hpp"

namespace hfk::centers {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

AdmSample adm_energy(const models::InitialDataModel& model, double r,
                     const surf::Discretization& disc) {
  surf::GraphSurface s;
  s.r = r;
  s.u = sh::SphericalHarmonicField(disc.l_max);
  const auto geom = surf::build_surface_geometry(model, s, disc);
  AdmSample out;
  out.r = r;
  double acc = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i)
    acc += geom.dmu[i] * (0.5 * geom.sc_amb[i] - geom.ric_nn[i]);
  out.adm = r / (8.0 * kPi) * acc;

  const auto sc_sigma = surf::intrinsic_scalar_curvature(geom);
  double acc2 = 0.0;
  for (int i = 0; i < geom.n_nodes(); ++i)
    acc2 += geom.dmu[i] *
            (sc_sigma[i] - 0.5 * sqr(geom.H[i]) + geom.Bdev2[i]);
  out.adm_gauss = r / (16.0 * kPi) * acc2;
  return out;
}

Vec3 hamiltonian_center(const models::InitialDataModel& model, double r,
                        double E, const surf::Discretization& disc) {
  if (std::abs(E) < 1e-8)
    throw ZeroEnergy("Hamiltonian center needs a nonzero ADM energy");
  const auto& grid = disc.grid;
  Vec3 acc = Vec3::Zero();
  for (int j = 0; j < grid.n_theta; ++j)
    for (int k = 0; k < grid.n_phi; ++k) {
      const Vec3 nu = grid.dir(j, k);
      const Vec3 x = r * nu;
      const auto jet = model.metric_jet(x);
      // x^l Sum_ij (d_i g_ij - d_j g_ii) nu^j - (g_il nu^i - g_ii nu^l).
      Vec3 flux;
      for (int jj = 0; jj < 3; ++jj) {
        double v = 0.0;
        for (int ii = 0; ii < 3; ++ii)
          v += jet.dg[ii](ii, jj) - jet.dg[jj](ii, ii);
        flux[jj] = v;
      }
      const double f1 = flux.dot(nu);
      const Vec3 gnu = jet.g * nu;
      const double trg = jet.g.trace();
      const double w = grid.solid_angle(j) * r * r;
      for (int l = 0; l < 3; ++l)
        acc[l] += w * (x[l] * f1 - (gnu[l] - trg * nu[l]));
    }
  return acc / (16.0 * kPi * E);
}

Vec3 stcmc_correction(const models::InitialDataModel& model, double r,
                      double E, const surf::Discretization& disc) {
  if (std::abs(E) < 1e-8)
    throw ZeroEnergy("STCMC correction needs a nonzero ADM energy");
  const auto& grid = disc.grid;
  Vec3 acc = Vec3::Zero();
  for (int j = 0; j < grid.n_theta; ++j)
    for (int k = 0; k < grid.n_phi; ++k) {
      const Vec3 nu = grid.dir(j, k);
      const Vec3 x = r * nu;
      const Mat3 kk = model.k_jet(x).k;
      const double pinn = nu.dot(kk * nu) - kk.trace();
      acc += grid.solid_angle(j) * r * r * pinn * pinn * nu;
    }
  return r * r / (32.0 * kPi * E) * acc;
}

Vec3 recentred_Z(const models::InitialDataModel& model, double r,
                 const Vec3& q, const surf::Discretization& disc) {
  // The correction integrals of the foliation-center theory are quoted in
  // the mass-2 normalization of the reduction; rescaling lengths by
  // s = 2/m and converting back multiplies them by s^2.
  const double s_norm = model.mass() > 0.0 ? 2.0 / model.mass() : 1.0;
  const auto& grid = disc.grid;
  Vec3 acc = Vec3::Zero();
  for (int j = 0; j < grid.n_theta; ++j)
    for (int k = 0; k < grid.n_phi; ++k) {
      const Vec3 nu = grid.dir(j, k);
      const Vec3 x = q + r * nu;
      const auto mj = model.metric_jet(x);
      const auto kj = model.k_jet(x);
      const double sc = tensor::curvature(mj).sc;
      const double trk = kj.k.trace();
      const double pinn = nu.dot(kj.k * nu) - trk;
      // Flat radial derivative of pi(nu,nu) along nu.
      double dpinn = 0.0;
      for (int a = 0; a < 3; ++a)
        dpinn += nu[a] * (nu.dot(kj.dk[a] * nu) - kj.dk[a].trace());
      const Vec3 knu = kj.k * nu;
      const double w = grid.solid_angle(j) * r * r;
      acc += w * (sc * nu + r * pinn * dpinn * nu + 2.0 * pinn * knu +
                  pinn * pinn * nu);
    }
  return s_norm * s_norm * r * r * r / (128.0 * kPi) * acc;
}

CenterReport foliation_center_estimate(
    const std::vector<reduction::FoliationLeaf>& leaves,
    const models::InitialDataModel& model, const surf::Discretization& disc) {
  if (leaves.empty()) throw DomainError("no leaves");
  CenterReport rep;
  const auto flat = model.flattened();
  const double s_norm = model.mass() > 0.0 ? 2.0 / model.mass() : 1.0;
  double first_rxi = -1.0;
  for (const auto& leaf : leaves) {
    const double r = leaf.sol.r;
    const Vec3 c = r * leaf.sol.xi;
    rep.radii.push_back(r);
    rep.leaf_centers.push_back(leaf.euclidean_center);
    rep.r_xi.push_back(c);

    const double rxi_norm = c.norm();
    if (first_rxi < 0.0) first_rxi = rxi_norm;
    if (rxi_norm > 1.5 * std::max(first_rxi, 0.1))
      throw NotCentered("r |xi(r)| grows across the radius schedule");

    const auto adm = adm_energy(model, r, disc);
    const Vec3 ch = hamiltonian_center(model, r, adm.adm, disc);
    rep.c_H.push_back(ch);
    rep.stcmc_corr.push_back(stcmc_correction(model, r, adm.adm, disc));

    // Flat-measure integral of (Sc + r W2) nu over S_r(r xi); W2 evaluated
    // in the flattened model (Euclidean traces and normal), Sc in the full
    // model.
    surf::GraphSurface s;
    s.r = r;
    s.xi = leaf.sol.xi;
    s.u = sh::SphericalHarmonicField(disc.l_max);
    const auto geom_flat = surf::build_surface_geometry(flat, s, disc);
    const auto w2 = fun::W2_field(geom_flat);
    Vec3 acc = Vec3::Zero();
    for (int i = 0; i < geom_flat.n_nodes(); ++i) {
      const double sc = tensor::curvature(model.metric_jet(geom_flat.X[i])).sc;
      acc += geom_flat.dmu_flat[i] * (sc + r * w2[i]) * geom_flat.nu[i];
    }
    rep.c_f.push_back(ch + s_norm * s_norm * r * r * r / (128.0 * kPi) * acc);
  }

  // One-step Richardson extrapolation of C_f assuming A(r) = A + c/r.
  const size_t n = rep.radii.size();
  if (n >= 2) {
    const double r1 = rep.radii[n - 2], r2 = rep.radii[n - 1];
    rep.c_f_extrapolated =
        (r2 * rep.c_f[n - 1] - r1 * rep.c_f[n - 2]) / (r2 - r1);
  }
  if (n >= 3) {
    bool ok = true;
    for (size_t i = 2; i < n; ++i) {
      const double d_prev = (rep.c_f[i - 1] - rep.c_f[i - 2]).norm();
      const double d_cur = (rep.c_f[i] - rep.c_f[i - 1]).norm();
      if (d_cur > 0.85 * d_prev + 1e-10) ok = false;
    }
    rep.extrapolation_converged = ok;
  }
  return rep;
}

}  // namespace hfk::centers
