#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hfk/tensor_calc.hpp"
#include "util.hpp"

using namespace hfk;
using namespace hfk::models;
using namespace hfk::tensor;

namespace {
const std::vector<Vec3> kDirs = {
    Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0.5, 0.5, std::sqrt(0.5)),
    Vec3(-0.3, 0.8, 0.52).normalized()};
}

TEST_CASE("Euclidean curvature vanishes") {
  const auto model = InitialDataModel::euclidean();
  const auto pack = curvature(model.metric_jet(Vec3(1, 2, 3)));
  for (int i = 0; i < 3; ++i) CHECK(pack.gamma[i].norm() == 0.0);
  CHECK(pack.ric.norm() == 0.0);
  CHECK(pack.sc == 0.0);
}

TEST_CASE("Schwarzschild slice is scalar flat to 1e-8") {
  const auto model = InitialDataModel::schwarzschild(1.0);
  for (const Vec3& d : kDirs) {
    const auto pack = curvature(model.metric_jet(5.0 * d));
    CHECK(std::abs(pack.sc) <= 1e-8);
  }
}

TEST_CASE("Schwarzschild radial Ricci eigenvalue is -2m/R_areal^3") {
  const double m = 1.0;
  const auto model = InitialDataModel::schwarzschild(m);
  for (double s : {6.0, 10.0}) {
    const Vec3 x = s * kDirs[3];
    const auto pack = curvature(model.metric_jet(x));
    const auto mj = model.metric_jet(x);
    const Vec3 nu_raw = x.normalized();
    Vec3 nu = nu_raw;
    nu /= std::sqrt(nu.dot(mj.g * nu));
    const double phi = 1.0 + 0.5 * m / s;
    const double R = s * phi * phi;
    CHECK(nu.dot(pack.ric * nu) ==
          doctest::Approx(-2.0 * m / (R * R * R)).epsilon(1e-10));
  }
}

TEST_CASE("conformal oracle: Sc = -8 phi^-5 lap(phi)") {
  // phi = 1 + a/|x| + b/|x|^2 has lap(phi) = 2 b / |x|^4.
  const double a = 0.7, b = 0.31;
  auto g_of_x = [&](const Vec3& x) -> Mat3 {
    const double r = x.norm();
    const double phi = 1.0 + a / r + b / (r * r);
    return std::pow(phi, 4) * Mat3::Identity();
  };
  for (const Vec3& d : kDirs) {
    const Vec3 x = 8.0 * d;
    const auto jet = fd_metric_jet(g_of_x, x, 1e-2);
    const auto pack = curvature(jet);
    const double r = x.norm();
    const double phi = 1.0 + a / r + b / (r * r);
    const double expect = -8.0 * std::pow(phi, -5) * 2.0 * b / std::pow(r, 4);
    CHECK(pack.sc == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("contracted Bianchi identity div Ric = grad Sc / 2") {
  Perturbation pert;
  pert.amplitude = 0.08;
  pert.parity = 2;
  pert.direction = Vec3(0.2, 0.5, 1.0).normalized();
  const auto model =
      InitialDataModel::perturbed_schwarzschild(1.0, Vec3::Zero(), pert);
  const Vec3 x = 9.0 * kDirs[2];
  const auto mj = model.metric_jet(x);
  const auto pack = curvature(mj);
  const Mat3 ginv = pack.ginv;
  const double h = 1e-4 * x.norm();

  // FD derivatives of Ric and Sc; covariant divergence of Ric.
  Ten3 dric;
  Vec3 dsc;
  for (int a = 0; a < 3; ++a) {
    const auto pp = curvature(model.metric_jet(x + h * Vec3::Unit(a)));
    const auto pm = curvature(model.metric_jet(x - h * Vec3::Unit(a)));
    dric[a] = (pp.ric - pm.ric) / (2.0 * h);
    dsc[a] = (pp.sc - pm.sc) / (2.0 * h);
  }
  Vec3 div_ric;
  for (int j = 0; j < 3; ++j) {
    double v = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        v += ginv(a, b) * dric[a](b, j);
        for (int d = 0; d < 3; ++d)
          v -= ginv(a, b) * (pack.gamma[d](a, b) * pack.ric(d, j) +
                             pack.gamma[d](a, j) * pack.ric(b, d));
      }
    div_ric[j] = v;
  }
  const double scale = std::max(dsc.norm(), 1e-12);
  CHECK((div_ric - 0.5 * dsc).norm() / scale <= 1e-4);
}

TEST_CASE("covariant derivative of k vanishes for time-symmetric data") {
  const auto model = InitialDataModel::schwarzschild(1.0);
  const auto ck = cov_derivative_k(model, Vec3(5, 1, 0));
  for (int a = 0; a < 3; ++a) CHECK(ck[a].norm() == 0.0);
}

TEST_CASE("radial nabla_rho k(rho,rho) approaches -6 delta(p,rho)/|x|^3") {
  const Vec3 p(0.15, -0.1, 0.22);
  for (const auto& model : {InitialDataModel::harmonic(1.0, p),
                            InitialDataModel::york(1.0, p)}) {
    for (double r : {20.0, 50.0, 200.0}) {
      for (const Vec3& d : kDirs) {
        if (std::abs(p.dot(d)) < 1e-3) continue;
        const Vec3 x = r * d;
        const auto ck = cov_derivative_k(model, x);
        double v = 0.0;
        for (int a = 0; a < 3; ++a) v += d[a] * d.dot(ck[a] * d);
        const double expect = -6.0 * p.dot(d) / (r * r * r);
        // Leading order with O(1/r) relative corrections.
        CHECK(std::abs(v - expect) <= 8.0 / r * std::abs(expect));
      }
    }
  }
}

TEST_CASE("Euclidean constraints vanish") {
  const auto c = constraint_quantities(InitialDataModel::euclidean(),
                                       Vec3(2, -1, 4));
  CHECK(c.mu == 0.0);
  CHECK(c.J.norm() == 0.0);
}

TEST_CASE("|x|^4 |J| bounded for the momentum models") {
  const Vec3 p(0.1, 0.05, -0.12);
  for (const auto& model : {InitialDataModel::harmonic(1.0, p),
                            InitialDataModel::york(1.0, p)}) {
    for (double r : {10.0, 30.0, 100.0}) {
      for (const Vec3& d : kDirs) {
        const auto c = constraint_quantities(model, r * d);
        CHECK(c.J_norm * std::pow(r, 4) < 30.0 * p.norm());
      }
    }
  }
}

TEST_CASE("k-part of 2 mu matches the leading displays at small mass") {
  // Small m isolates the k-part: curved-trace corrections are O(m/|x|).
  const double m = 0.01;
  const Vec3 p(0.1, -0.04, 0.08);
  const double r = 100.0;
  const auto harm = InitialDataModel::harmonic(m, p);
  const auto york = InitialDataModel::york(m, p);
  for (const Vec3& d : kDirs) {
    const Vec3 x = r * d;
    const double pd = p.dot(d);
    {
      const auto c = constraint_quantities(harm, x);
      const auto sc = curvature(harm.metric_jet(x)).sc;
      const double kpart = 2.0 * c.mu - sc;
      const double expect =
          (pd * pd - 4.0 * (2.0 * p.squaredNorm() + 0.75 * pd * pd)) /
          std::pow(r, 4);
      CHECK(kpart == doctest::Approx(expect).epsilon(1e-3));
    }
    {
      const auto c = constraint_quantities(york, x);
      const auto sc = curvature(york.metric_jet(x)).sc;
      const double kpart = 2.0 * c.mu - sc;
      const double expect = -4.5 * (p.squaredNorm() + 2.0 * pd * pd) /
                            std::pow(r, 4);
      CHECK(kpart == doctest::Approx(expect).epsilon(1e-3));
    }
  }
}

TEST_CASE("2 mu identity reproduced from inputs at machine precision") {
  const Vec3 p(0.2, 0.1, -0.1);
  const auto model = InitialDataModel::harmonic(1.0, p);
  const Vec3 x(12.0, -5.0, 7.0);
  const auto mj = model.metric_jet(x);
  const auto kj = model.k_jet(x);
  const auto curv = curvature(mj);
  const auto c = constraint_quantities(mj, kj, curv);
  const Mat3 ginv = curv.ginv;
  const double trk = (ginv * kj.k).trace();
  const double k2 = (ginv * kj.k * ginv).cwiseProduct(kj.k).sum();
  CHECK(2.0 * c.mu == doctest::Approx(curv.sc + trk * trk - k2).epsilon(1e-15));
}
