#include "hfk/models.hpp"

#include <cmath>
#include <limits>

namespace hfk::models {

namespace {

void add_conformal_schwarzschild(const Vec3& y, double m, Mat3& g, Ten3& dg,
                                 Ten4& d2g) {
  const double rho = y.norm();
  const double r3 = std::pow(rho, -3), r5 = std::pow(rho, -5);
  const double phi = 1.0 + 0.5 * m / rho;
  Vec3 dphi = -0.5 * m * r3 * y;
  Mat3 ddphi;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      ddphi(a, b) =
          -0.5 * m * ((a == b ? r3 : 0.0) - 3.0 * y[a] * y[b] * r5);
  const double p2 = phi * phi, p3 = p2 * phi;
  g += std::pow(phi, 4) * Mat3::Identity();
  for (int a = 0; a < 3; ++a)
    dg[a] += 4.0 * p3 * dphi[a] * Mat3::Identity();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      d2g[a][b] += (12.0 * p2 * dphi[a] * dphi[b] + 4.0 * p3 * ddphi(a, b)) *
                   Mat3::Identity();
}

// sigma_ij = amp * (d.y)^p * rho^-n * delta_ij  (n = exponent + p).
void add_scalar_profile(const Vec3& y, const Vec3& d, double amp, int p,
                        double n, Mat3& g, Ten3& dg, Ten4& d2g) {
  const double rho = y.norm();
  const double dy = d.dot(y);
  const double rn = std::pow(rho, -n), rn2 = std::pow(rho, -n - 2.0),
               rn4 = std::pow(rho, -n - 4.0);
  const double t = std::pow(dy, p);
  const double tp = p * std::pow(dy, p - 1);
  const double tpp = (p >= 2) ? p * (p - 1) * std::pow(dy, p - 2) : 0.0;
  g += amp * t * rn * Mat3::Identity();
  for (int a = 0; a < 3; ++a)
    dg[a] += amp * (tp * d[a] * rn - n * t * y[a] * rn2) * Mat3::Identity();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double v = tpp * d[a] * d[b] * rn -
                       n * tp * (d[a] * y[b] + d[b] * y[a]) * rn2 -
                       n * t * (a == b ? rn2 : 0.0) +
                       n * (n + 2.0) * t * y[a] * y[b] * rn4;
      d2g[a][b] += amp * v * Mat3::Identity();
    }
}

// One k-term  coef * B(y) * rho^-n  with B a polynomial matrix and dB its
// coordinate gradient.
void add_k_term(const Vec3& y, double coef, double n, const Mat3& B,
                const Ten3& dB, Mat3& k, Ten3& dk) {
  const double rho = y.norm();
  const double rn = std::pow(rho, -n), rn2 = std::pow(rho, -n - 2.0);
  k += coef * rn * B;
  for (int a = 0; a < 3; ++a)
    dk[a] += coef * (rn * dB[a] - n * y[a] * rn2 * B);
}

Ten3 zero3() { return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}; }
Ten4 zero4() {
  return {zero3(), zero3(), zero3()};
}

}  // namespace

InitialDataModel InitialDataModel::euclidean() { return {}; }

InitialDataModel InitialDataModel::schwarzschild(double mass, Vec3 center) {
  InitialDataModel m;
  m.kind_ = Kind::SchwarzschildIsotropic;
  m.mass_ = mass;
  m.center_ = center;
  return m;
}

InitialDataModel InitialDataModel::perturbed_schwarzschild(
    double mass, Vec3 center, const Perturbation& pert) {
  InitialDataModel m;
  m.kind_ = Kind::PerturbedSchwarzschild;
  m.mass_ = mass;
  m.center_ = center;
  m.pert_ = pert;
  if (pert.parity != 1 && pert.parity != 2)
    throw DomainError("perturbation parity must be 1 (odd) or 2 (even)");
  return m;
}

InitialDataModel InitialDataModel::harmonic(double mass, Vec3 momentum,
                                            double k_even_amplitude) {
  InitialDataModel m;
  m.kind_ = Kind::HarmonicAsymptotics;
  m.mass_ = mass;
  m.momentum_ = momentum;
  m.k_even_amplitude_ = k_even_amplitude;
  return m;
}

InitialDataModel InitialDataModel::york(double mass, Vec3 momentum) {
  InitialDataModel m;
  m.kind_ = Kind::YorkModel;
  m.mass_ = mass;
  m.momentum_ = momentum;
  return m;
}

bool InitialDataModel::time_symmetric() const {
  switch (kind_) {
    case Kind::Euclidean:
    case Kind::SchwarzschildIsotropic:
    case Kind::PerturbedSchwarzschild:
      return true;
    default:
      return false;
  }
}

std::string InitialDataModel::name() const {
  std::string base;
  switch (kind_) {
    case Kind::Euclidean: base = "euclidean"; break;
    case Kind::SchwarzschildIsotropic: base = "schwarzschild"; break;
    case Kind::PerturbedSchwarzschild: base = "perturbed-schwarzschild"; break;
    case Kind::HarmonicAsymptotics: base = "harmonic"; break;
    case Kind::YorkModel: base = "york"; break;
  }
  return flat_metric_ ? base + "[flat-metric]" : base;
}

void InitialDataModel::require_admissible(const Vec3& x) const {
  if (kind_ == Kind::Euclidean) return;
  const double rho = (x - center_).norm();
  if (rho <= 0.5 * mass_ * (1.0 + 1e-12) || rho == 0.0)
    throw DomainError("point inside the puncture sphere |x-c| <= m/2");
}

MetricJet InitialDataModel::metric_jet(const Vec3& x) const {
  require_admissible(x);
  MetricJet jet;
  jet.x = x;
  jet.g = Mat3::Zero();
  jet.dg = zero3();
  jet.d2g = zero4();
  if (flat_metric_ || kind_ == Kind::Euclidean) {
    jet.g = Mat3::Identity();
    return jet;
  }
  const Vec3 y = x - center_;
  add_conformal_schwarzschild(y, mass_, jet.g, jet.dg, jet.d2g);
  if (kind_ == Kind::PerturbedSchwarzschild && pert_.amplitude != 0.0)
    add_scalar_profile(y, pert_.direction, pert_.amplitude, pert_.parity,
                       pert_.exponent + pert_.parity, jet.g, jet.dg, jet.d2g);
  return jet;
}

KJet InitialDataModel::k_jet(const Vec3& x) const {
  require_admissible(x);
  KJet jet;
  jet.x = x;
  jet.k = Mat3::Zero();
  jet.dk = zero3();
  if (time_symmetric()) return jet;

  const Vec3 y = x - center_;
  const Vec3& p = momentum_;
  if (kind_ == Kind::HarmonicAsymptotics) {
    // k = u^2 [2(p (x) y + y (x) p) - (p.y) delta] rho^-3 derived from
    // pi = u^2 L(X) with u = 1 + m/(2 rho), X = -2p/rho.
    Mat3 B;
    Ten3 dB = zero3();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        B(i, j) = 2.0 * (p[i] * y[j] + y[i] * p[j]) -
                  (i == j ? p.dot(y) : 0.0);
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          dB[a](i, j) = 2.0 * (p[i] * (j == a) + (i == a) * p[j]) -
                        (i == j ? p[a] : 0.0);
    const double c[3] = {1.0, mass_, 0.25 * mass_ * mass_};
    for (int q = 0; q < 3; ++q)
      add_k_term(y, c[q], 3.0 + q, B, dB, jet.k, jet.dk);
    if (k_even_amplitude_ != 0.0) {
      const Mat3 I = Mat3::Identity();
      Ten3 dI = zero3();
      add_k_term(y, k_even_amplitude_, 3.0, I, dI, jet.k, jet.dk);
    }
    return jet;
  }

  // York: k = 3/(2 rho^2) (yh (x) p + p (x) yh - (p.yh)(delta - yh (x) yh)).
  Mat3 B1, B2;
  Ten3 dB1 = zero3(), dB2 = zero3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      B1(i, j) = 1.5 * (y[i] * p[j] + p[i] * y[j] -
                        (i == j ? p.dot(y) : 0.0));
      B2(i, j) = 1.5 * p.dot(y) * y[i] * y[j];
    }
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        dB1[a](i, j) = 1.5 * ((i == a) * p[j] + p[i] * (j == a) -
                              (i == j ? p[a] : 0.0));
        dB2[a](i, j) = 1.5 * (p[a] * y[i] * y[j] +
                              p.dot(y) * ((i == a) * y[j] + y[i] * (j == a)));
      }
  add_k_term(y, 1.0, 3.0, B1, dB1, jet.k, jet.dk);
  add_k_term(y, 1.0, 5.0, B2, dB2, jet.k, jet.dk);
  return jet;
}

double InitialDataModel::sc_decay_exponent() const {
  if (flat_metric_) return std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::PerturbedSchwarzschild:
      return pert_.exponent + 2.0;
    default:
      // Conformally flat with harmonic conformal factor: Sc vanishes.
      return std::numeric_limits<double>::infinity();
  }
}

InitialDataModel InitialDataModel::flattened() const {
  InitialDataModel m = *this;
  m.flat_metric_ = true;
  return m;
}

std::string InitialDataModel::modelling_note() const {
  switch (kind_) {
    case Kind::HarmonicAsymptotics:
      return "harmonic asymptotics with the subleading O(|x|^-2) parts of u "
             "and X set to zero";
    case Kind::YorkModel:
      return "York extrinsic curvature at leading order (subleading "
             "O(|x|^-3) set to zero) over an isotropic conformally flat "
             "background";
    default:
      return "";
  }
}

Mat3 pi_k_convert(const Mat3& tensor, const Mat3& g, PiKDirection direction) {
  const double det = g.determinant();
  if (!(det > 1e-14)) throw SingularMetric("metric not positive definite");
  const Mat3 ginv = g.inverse();
  const double tr = (ginv * tensor).trace();
  if (direction == PiKDirection::KToPi) return tensor - tr * g;
  return tensor - 0.5 * tr * g;
}

MetricJet fd_metric_jet(const std::function<Mat3(const Vec3&)>& g_of_x,
                        const Vec3& x, double h_rel) {
  const double h = h_rel * x.norm();
  if (!(h > 0.0)) throw DomainError("finite-difference step vanished");
  static const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  static const double c1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0,
                               -1.0 / 12.0};
  MetricJet jet;
  jet.x = x;
  jet.g = g_of_x(x);
  jet.dg = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  jet.d2g = {Ten3{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()},
             Ten3{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()},
             Ten3{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}};
  for (int a = 0; a < 3; ++a) {
    Mat3 d = Mat3::Zero();
    for (int s = 0; s < 4; ++s)
      d += c1[s] * g_of_x(x + off[s] * h * Vec3::Unit(a));
    jet.dg[a] = d / h;
  }
  for (int a = 0; a < 3; ++a) {
    // Diagonal second derivative, fourth order.
    Mat3 d = -30.0 * jet.g;
    static const double off2[4] = {-2.0, -1.0, 1.0, 2.0};
    static const double c2[4] = {-1.0, 16.0, 16.0, -1.0};
    for (int s = 0; s < 4; ++s)
      d += c2[s] * g_of_x(x + off2[s] * h * Vec3::Unit(a));
    jet.d2g[a][a] = d / (12.0 * h * h);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Mat3 d = Mat3::Zero();
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          d += c1[s] * c1[t] *
               g_of_x(x + off[s] * h * Vec3::Unit(a) +
                      off[t] * h * Vec3::Unit(b));
      jet.d2g[a][b] = d / (h * h);
      jet.d2g[b][a] = jet.d2g[a][b];
    }
  return jet;
}

}  // namespace hfk::models
