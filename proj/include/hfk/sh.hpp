#ifndef HFK_SH_HPP
#define HFK_SH_HPP

#include <string>
#include <vector>

#include "hfk/core.hpp"

namespace hfk::sh {

/// Coefficient index for the fixed (l, m)-lexicographic ordering.
inline int idx(int l, int m) { return l * l + l + m; }
inline int coeff_count(int l_max) { return (l_max + 1) * (l_max + 1); }

/// Real 4pi-normalized spherical harmonics, Condon-Shortley phase omitted:
///   Y_{l,0}  = Pbar_{l,0}(cos th)
///   Y_{l,m}  = sqrt(2) Pbar_{l,m}(cos th) cos(m ph)    (m > 0)
///   Y_{l,-m} = sqrt(2) Pbar_{l,m}(cos th) sin(m ph)    (m > 0)
/// with (1/4pi) \int Y_a Y_b dOmega = delta_ab.
struct SphericalHarmonicField {
  int l_max = 0;
  std::vector<double> a;  // size coeff_count(l_max)

  SphericalHarmonicField() = default;
  explicit SphericalHarmonicField(int L) : l_max(L), a(coeff_count(L), 0.0) {}

  double operator()(int l, int m) const { return a[idx(l, m)]; }
  double& at(int l, int m) { return a[idx(l, m)]; }

  /// Coefficient-l2 norm of the band l = band.
  double band_norm(int band) const;
  /// Coefficient-l2 norm over all bands except l = 1.
  double perp1_norm() const;

  SphericalHarmonicField truncated(int new_l_max) const;

  /// Plain-text I/O: header with the band limit and grid sizes, then one
  /// "l m value" line per coefficient.
  void save(const std::string& path, int n_theta, int n_phi) const;
  static SphericalHarmonicField load(const std::string& path);
};

/// Gauss-Legendre x uniform-longitude product grid on S^2.
struct QuadratureGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> x;          // cos(theta_j), ascending
  std::vector<double> w;          // GL weights for dcos(theta)
  std::vector<double> theta;      // acos(x_j)
  std::vector<double> sin_theta;  // strictly positive on interior nodes
  std::vector<double> phi;        // 2 pi k / n_phi

  QuadratureGrid(int nt, int np);

  int n_nodes() const { return n_theta * n_phi; }
  int node(int j, int k) const { return j * n_phi + k; }
  /// Round-sphere solid-angle weight of node (j,k); sums to 4 pi.
  double solid_angle(int j) const;
  /// Unit direction of node (j,k).
  Vec3 dir(int j, int k) const;
};

/// Precomputed transform tables for one (grid, band) pair.  Analysis is by
/// quadrature, synthesis by direct summation; both are separable in
/// (theta, phi).  theta-derivatives come from closed-form recurrences, so
/// the derivative of a band-limited field is exact.
class Basis {
 public:
  Basis(const QuadratureGrid& grid, int l_max);

  const QuadratureGrid& grid() const { return grid_; }
  int l_max() const { return l_max_; }
  int n_nodes() const { return grid_.n_nodes(); }

  /// Quadrature analysis of per-node samples.  With strict_band set, raises
  /// BandLimitError when the relative energy at l in {l_max-1, l_max}
  /// exceeds alias_tol (the usual symptom of an unresolved field).
  SphericalHarmonicField analyze(const std::vector<double>& samples,
                                 bool strict_band = false,
                                 double alias_tol = 1e-6) const;

  std::vector<double> synthesize(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dtheta(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dphi(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dtheta2(const SphericalHarmonicField& f) const;
  /// d^2/(dtheta dphi) and d^2/dphi^2.
  std::vector<double> synth_dthetadphi(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dphi2(const SphericalHarmonicField& f) const;
  /// Third chart derivatives (for exact derivatives of induced metrics).
  std::vector<double> synth_dtheta3(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dtheta2dphi(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dthetadphi2(const SphericalHarmonicField& f) const;
  std::vector<double> synth_dphi3(const SphericalHarmonicField& f) const;

  /// Adjoint pairings sum_n s(n) (D Y_A)(n) with D = id, d/dtheta, d/dphi.
  /// No quadrature weights are applied; used by weak-form operators.
  enum class Deriv { Value, DTheta, DPhi };
  SphericalHarmonicField adjoint_pair(const std::vector<double>& samples,
                                      Deriv d) const;

  /// Pbar table row for node ring j: value of Pbar_{l,m}(x_j).
  double pbar(int j, int l, int m) const { return pbar_[j * tri_ + tri(l, m)]; }
  double dpbar(int j, int l, int m) const {
    return dpbar_[j * tri_ + tri(l, m)];
  }

 private:
  static int tri(int l, int m) { return l * (l + 1) / 2 + m; }

  std::vector<double> fourier_analyze(const std::vector<double>& s) const;
  std::vector<double> legendre_rows(const SphericalHarmonicField& f,
                                    const std::vector<double>& tbl) const;
  std::vector<double> fourier_synth(const std::vector<double>& rows,
                                    int dphi_order) const;

  QuadratureGrid grid_;
  int l_max_;
  int tri_;                    // (L+1)(L+2)/2
  std::vector<double> pbar_;   // [n_theta][tri_]
  std::vector<double> dpbar_;  // d/dtheta
  std::vector<double> d2pbar_;
  std::vector<double> d3pbar_;
  std::vector<double> cosm_;  // [n_phi][l_max+1]
  std::vector<double> sinm_;
};

/// Legendre polynomial P_l(t) by the three-term recurrence.
double legendre_p(int l, double t);

}  // namespace hfk::sh

#endif  // HFK_SH_HPP
