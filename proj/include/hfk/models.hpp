#ifndef HFK_MODELS_HPP
#define HFK_MODELS_HPP

#include <optional>
#include <string>

#include "hfk/core.hpp"

namespace hfk::models {

/// Jet of the Riemannian metric at a point: g, dg[a](i,j) = d_a g_ij and
/// d2g[a][b](i,j) = d_a d_b g_ij in the Cartesian chart of the end.
struct MetricJet {
  Vec3 x;
  Mat3 g;
  Ten3 dg;
  Ten4 d2g;
};

/// Jet of the second fundamental form: k and dk[a](i,j) = d_a k_ij.
struct KJet {
  Vec3 x;
  Mat3 k;
  Ten3 dk;
};

enum class Kind {
  Euclidean,
  SchwarzschildIsotropic,
  PerturbedSchwarzschild,
  HarmonicAsymptotics,
  YorkModel,
};

/// Angular profile of the built-in metric perturbation
/// sigma_ij = A (d.xhat)^parity |x|^-q delta_ij; the parity switch turns the
/// decay/parity hypotheses of the foliation theory on and off.
struct Perturbation {
  double amplitude = 0.0;
  double exponent = 2.0;  // q; sigma = O(|x|^-q)
  int parity = 1;         // 1 = odd profile d.xhat, 2 = even (d.xhat)^2
  Vec3 direction = Vec3::UnitX();
};

/// Analytic initial-data-set models on the exterior region.  All jets are
/// closed-form; evaluation is pure and safe to call concurrently.
class InitialDataModel {
 public:
  InitialDataModel() = default;  // Euclidean

  static InitialDataModel euclidean();
  static InitialDataModel schwarzschild(double mass, Vec3 center = Vec3::Zero());
  static InitialDataModel perturbed_schwarzschild(double mass, Vec3 center,
                                                  const Perturbation& pert);
  static InitialDataModel harmonic(double mass, Vec3 momentum,
                                   double k_even_amplitude = 0.0);
  static InitialDataModel york(double mass, Vec3 momentum);

  Kind kind() const { return kind_; }
  double mass() const { return mass_; }
  const Vec3& center() const { return center_; }
  const Vec3& momentum() const { return momentum_; }
  bool time_symmetric() const;
  std::string name() const;

  /// Throws DomainError on or inside the puncture sphere |x-c| <= m/2.
  void require_admissible(const Vec3& x) const;

  MetricJet metric_jet(const Vec3& x) const;
  KJet k_jet(const Vec3& x) const;

  /// Decay exponent s with Sc = O(|x|^-s); infinity when Sc vanishes
  /// identically (all built-ins except the perturbed model).
  double sc_decay_exponent() const;

  /// Same k, Euclidean metric.  Used by the flat-measure functionals of the
  /// reduced-energy expansion and the center formulas.
  InitialDataModel flattened() const;
  bool is_flattened() const { return flat_metric_; }

  /// Human-readable note on modelling choices echoed into run manifests.
  std::string modelling_note() const;

 private:
  Kind kind_ = Kind::Euclidean;
  double mass_ = 0.0;
  Vec3 center_ = Vec3::Zero();
  Vec3 momentum_ = Vec3::Zero();
  Perturbation pert_;
  double k_even_amplitude_ = 0.0;
  bool flat_metric_ = false;
};

/// Converts between k and the conjugate momentum pi = k - (tr k) g; the
/// reverse direction is k = pi - (tr pi) g / 2 in dimension 3.  Traces are
/// taken with the supplied metric.
enum class PiKDirection { KToPi, PiToK };
Mat3 pi_k_convert(const Mat3& tensor, const Mat3& g, PiKDirection direction);

/// Fourth-order central-difference jet of a caller-supplied analytic metric,
/// step h = h_rel * |x|.  Test oracle for the analytic jets and fallback for
/// user-defined conformal test metrics.
MetricJet fd_metric_jet(const std::function<Mat3(const Vec3&)>& g_of_x,
                        const Vec3& x, double h_rel = 1e-3);

}  // namespace hfk::models

#endif  // HFK_MODELS_HPP
