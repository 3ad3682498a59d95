#include "hfk/tensor_calc.hpp"

#include <cmath>

namespace hfk::tensor {

CurvaturePack curvature(const models::MetricJet& jet) {
  CurvaturePack out;
  out.x = jet.x;
  const double det = jet.g.determinant();
  if (!(det > 1e-14)) throw SingularMetric("metric not invertible");
  out.ginv = jet.g.inverse();

  // Gamma^i_{jk} = 1/2 g^{il} (d_j g_lk + d_k g_lj - d_l g_jk).
  Ten3 gamma_low;  // gamma_low[l](j,k) = the bracket / 2
  for (int l = 0; l < 3; ++l)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        gamma_low[l](j, k) = 0.5 * (jet.dg[j](l, k) + jet.dg[k](l, j) -
                                    jet.dg[l](j, k));
  for (int i = 0; i < 3; ++i) {
    out.gamma[i].setZero();
    for (int l = 0; l < 3; ++l) out.gamma[i] += out.ginv(i, l) * gamma_low[l];
  }

  // d_a Gamma^i_{jk} needs d(g^{-1}) and d2g.
  Ten3 dginv;
  for (int a = 0; a < 3; ++a) dginv[a] = -out.ginv * jet.dg[a] * out.ginv;
  // dgamma[a][i](j,k) = d_a Gamma^i_{jk}
  std::array<Ten3, 3> dgamma;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      dgamma[a][i].setZero();
      for (int l = 0; l < 3; ++l) {
        dgamma[a][i] += dginv[a](i, l) * gamma_low[l];
        Mat3 bracket;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            bracket(j, k) = 0.5 * (jet.d2g[a][j](l, k) + jet.d2g[a][k](l, j) -
                                   jet.d2g[a][l](j, k));
        dgamma[a][i] += out.ginv(i, l) * bracket;
      }
    }

  // Ric_jl = d_i Gamma^i_{lj} - d_l Gamma^i_{ij}
  //          + Gamma^i_{im} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{ij}.
  Mat3 ric = Mat3::Zero();
  Vec3 gamma_tr;  // Gamma^i_{i m}
  for (int m = 0; m < 3; ++m) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += out.gamma[i](i, m);
    gamma_tr[m] = s;
  }
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) {
        v += dgamma[i][i](l, j) - dgamma[l][i](i, j);
        for (int m = 0; m < 3; ++m)
          v += out.gamma[i](i, m) * out.gamma[m](l, j) -
               out.gamma[i](l, m) * out.gamma[m](i, j);
      }
      ric(j, l) = v;
    }
  out.ric = sym(ric);
  out.sc = (out.ginv * out.ric).trace();
  return out;
}

Ten3 cov_derivative_k(const models::KJet& kj, const Ten3& gamma) {
  Ten3 ck;
  for (int a = 0; a < 3; ++a) {
    ck[a] = kj.dk[a];
    for (int d = 0; d < 3; ++d) {
      // - Gamma^d_{ab} k_dc - Gamma^d_{ac} k_bd
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          ck[a](b, c) -= gamma[d](a, b) * kj.k(d, c) +
                         gamma[d](a, c) * kj.k(b, d);
    }
  }
  return ck;
}

Ten3 cov_derivative_k(const models::InitialDataModel& model, const Vec3& x) {
  const auto mj = model.metric_jet(x);
  const auto kj = model.k_jet(x);
  const auto curv = curvature(mj);
  return cov_derivative_k(kj, curv.gamma);
}

Vec3 trk_gradient(const models::MetricJet& mj, const models::KJet& kj) {
  const Mat3 ginv = mj.g.inverse();
  Vec3 out;
  for (int a = 0; a < 3; ++a) {
    const Mat3 dginv = -ginv * mj.dg[a] * ginv;
    out[a] = (dginv * kj.k).trace() + (ginv * kj.dk[a]).trace();
  }
  return out;
}

ConstraintPack constraint_quantities(const models::MetricJet& mj,
                                     const models::KJet& kj,
                                     const CurvaturePack& curv) {
  ConstraintPack out;
  const Mat3& ginv = curv.ginv;
  const double trk = (ginv * kj.k).trace();
  const Mat3 kup = ginv * kj.k * ginv;  // k^{ab}
  const double k2 = kup.cwiseProduct(kj.k).sum();
  out.mu = 0.5 * (curv.sc + trk * trk - k2);

  // J_i = g^{ab} nabla_a k_bi - d_i tr k.
  const Ten3 ck = cov_derivative_k(kj, curv.gamma);
  const Vec3 dtrk = trk_gradient(mj, kj);
  for (int i = 0; i < 3; ++i) {
    double v = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v += ginv(a, b) * ck[a](b, i);
    out.J[i] = v - dtrk[i];
  }
  out.J_norm = std::sqrt(out.J.dot(ginv * out.J));
  out.dec_margin = out.mu - out.J_norm;
  return out;
}

ConstraintPack constraint_quantities(const models::InitialDataModel& model,
                                     const Vec3& x) {
  const auto mj = model.metric_jet(x);
  const auto kj = model.k_jet(x);
  return constraint_quantities(mj, kj, curvature(mj));
}

}  // namespace hfk::tensor
