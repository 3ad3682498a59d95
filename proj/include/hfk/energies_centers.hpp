#ifndef HFK_ENERGIES_CENTERS_HPP
#define HFK_ENERGIES_CENTERS_HPP

#include <vector>

#include "hfk/reduction.hpp"

namespace hfk::centers {

/// ADM energy integrand on the coordinate sphere of radius r, evaluated two
/// ways: from ambient curvature, (r/8pi) int (Sc/2 - Ric(nu,nu)) dmu, and
/// through the Gauss relation, (r/16pi) int (Sc_Sigma - H^2/2 + |Bring|^2) dmu.
struct AdmSample {
  double r = 0.0;
  double adm = 0.0;
  double adm_gauss = 0.0;
};

AdmSample adm_energy(const models::InitialDataModel& model, double r,
                     const surf::Discretization& disc);

/// Hamiltonian center of mass integrand at radius r (flat measure), divided
/// by 16 pi E.  Throws ZeroEnergy for |E| below threshold.
Vec3 hamiltonian_center(const models::InitialDataModel& model, double r,
                        double E, const surf::Discretization& disc);

/// k-dependent STCMC correction (r^2 / 32 pi E) int pi(nu,nu)^2 nu dmu_flat
/// on the centered coordinate sphere, Euclidean traces.
Vec3 stcmc_correction(const models::InitialDataModel& model, double r,
                      double E, const surf::Discretization& disc);

/// Correction integrand of the recentred variants: spheres S_r(q),
/// (r^3/128pi) int [Sc nu + r pi(nu,nu) d_nu pi(nu,nu) nu
///                  + 2 pi(nu,nu) (k.nu) + pi(nu,nu)^2 nu] dmu_flat.
Vec3 recentred_Z(const models::InitialDataModel& model, double r,
                 const Vec3& q, const surf::Discretization& disc);

struct CenterReport {
  std::vector<double> radii;
  std::vector<Vec3> leaf_centers;  // Euclidean centers of the solved leaves
  std::vector<Vec3> r_xi;          // r xi(r)
  std::vector<Vec3> c_H;
  std::vector<Vec3> stcmc_corr;
  std::vector<Vec3> c_f;  // C_H + (1/128pi) r^3 int (Sc + r W2) nu dmu_flat
  Vec3 c_f_extrapolated = Vec3::Zero();
  bool extrapolation_converged = false;
};

/// Evaluates the foliation-center formula on the spheres S_r(r xi(r)) of the
/// solved leaves, with the flat measure and the leaf's own multiplier data.
/// Throws NotCentered when r |xi(r)| grows across the schedule.
CenterReport foliation_center_estimate(
    const std::vector<reduction::FoliationLeaf>& leaves,
    const models::InitialDataModel& model, const surf::Discretization& disc);

}  // namespace hfk::centers

#endif  // HFK_ENERGIES_CENTERS_HPP
