#ifndef HFK_FUNCTIONALS_HPP
#define HFK_FUNCTIONALS_HPP

#include <vector>

#include "hfk/surface.hpp"

namespace hfk::fun {

/// E(Sigma) = sqrt(|Sigma|/16pi) (1 - (1/16pi) int (H^2 - P^2) dmu).
double hawking_energy(const surf::SurfaceGeometry& geom);
/// (1/4) int (H^2 - P^2) dmu.
double hawking_functional(const surf::SurfaceGeometry& geom);

/// W1 = Lap H + H |Bring|^2 + H Ric(nu, nu).
std::vector<double> W1_field(const surf::SurfaceGeometry& geom);

/// W2 = P (nab_nu tr k - nab_nu k(nu,nu)) - 2 div(P k(.,nu)) + H P^2 / 2.
std::vector<double> W2_field(const surf::SurfaceGeometry& geom);
/// Same operator with the divergence expanded by the product rule,
/// -2P div(k(.,nu)) - 2 k(grad P, nu); used as a cross-check.
std::vector<double> W2_field_expanded(const surf::SurfaceGeometry& geom);

struct ELResidual {
  std::vector<double> W1, W2, H;
  double lambda = 0.0;       // L2 projection value
  std::vector<double> residual;  // lambda H + W1 + W2 per node
  double lambda1_norm = 0.0;     // coefficient norm of the l = 1 band
  double perp1_norm_solver = 0.0;  // l <= l_max, l != 1
  double perp1_norm_full = 0.0;    // all internal bands, l != 1
};

ELResidual el_residual(const surf::SurfaceGeometry& geom);

/// First variation of int P^2 dmu under normal speed alpha (closed form,
/// equals int 2 W2 alpha dmu).
double first_variation_P2(const surf::SurfaceGeometry& geom,
                          const std::vector<double>& alpha);
/// Central finite difference of int P^2 dmu along the normal flow.
double fd_first_variation_P2(const surf::SurfaceGeometry& geom,
                             const std::vector<double>& alpha, double step);
/// Central finite difference of (1/4) int H^2 dmu along the normal flow.
double fd_first_variation_willmore(const surf::SurfaceGeometry& geom,
                                   const std::vector<double>& alpha,
                                   double step);

/// Mixed second variation of int P^2 dmu by nested central differences of
/// the closed-form first variation.  Both speeds are held fixed as functions
/// of the parameter sphere (normal-transport extension).
double second_variation_P2(const surf::SurfaceGeometry& geom,
                           const std::vector<double>& alpha,
                           const std::vector<double>& alpha_tilde, double step);

/// Closed-form derivative of the Hawking energy under normal speed alpha on
/// an (approximate) critical surface with multiplier lambda.
double energy_variation(const surf::SurfaceGeometry& geom, double lambda,
                        const std::vector<double>& alpha);
/// Direct finite difference of the Hawking energy along the flow.
double fd_energy_variation(const surf::SurfaceGeometry& geom,
                           const std::vector<double>& alpha, double step);

/// Pointwise sign and balance diagnostics of the monotonicity argument.
struct MonotonicityPack {
  std::vector<double> f;        // full integrand
  std::vector<double> g;        // nonpositive completion term
  std::vector<double> f_tilde;  // gradient-form variant
  std::vector<double> f_beta;   // rigidity-weight variant
  std::vector<double> f_k;      // f without the -|Bring|^2/2 - |J| terms;
                                // carries the model's leading k-asymptotics
  double beta = 0.0;
  double int_f = 0.0;
  double int_f_minus_lambda = 0.0;
  double max_g = 0.0;  // sup of g (should be <= 0)
  /// lambda |Sigma| + (1/4) int (H^2-P^2) - 4pi - int (f + g - (mu-|J|)).
  double balance_residual = 0.0;
};

MonotonicityPack monotonicity_pack(const surf::SurfaceGeometry& geom,
                                   double lambda, double beta);

}  // namespace hfk::fun

#endif  // HFK_FUNCTIONALS_HPP
