#ifndef HFK_TENSOR_CALC_HPP
#define HFK_TENSOR_CALC_HPP

#include "hfk/core.hpp"
#include "hfk/models.hpp"

namespace hfk::tensor {

/// Ambient curvature at a point, coordinate components.
/// gamma[i](j,k) = Gamma^i_{jk}.
struct CurvaturePack {
  Vec3 x;
  Mat3 ginv;
  Ten3 gamma;
  Mat3 ric;
  double sc = 0.0;
};

/// Energy and momentum density of the constraint equations; J is a covector.
struct ConstraintPack {
  double mu = 0.0;
  Vec3 J = Vec3::Zero();
  double J_norm = 0.0;      // |J|_g
  double dec_margin = 0.0;  // mu - |J|_g
};

/// Christoffels from dg, Riemann from d(Gamma) assembled with d2g, then Ricci
/// and scalar curvature by contraction.
CurvaturePack curvature(const models::MetricJet& jet);

/// nabla_a k_bc = d_a k_bc - Gamma^d_{ab} k_dc - Gamma^d_{ac} k_bd.
Ten3 cov_derivative_k(const models::KJet& kj, const Ten3& gamma);
Ten3 cov_derivative_k(const models::InitialDataModel& model, const Vec3& x);

/// Coordinate gradient of tr_g k from the two jets.
Vec3 trk_gradient(const models::MetricJet& mj, const models::KJet& kj);

ConstraintPack constraint_quantities(const models::MetricJet& mj,
                                     const models::KJet& kj,
                                     const CurvaturePack& curv);
ConstraintPack constraint_quantities(const models::InitialDataModel& model,
                                     const Vec3& x);

}  // namespace hfk::tensor

#endif  // HFK_TENSOR_CALC_HPP
