#include "hfk/sh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace hfk::sh {

namespace {
constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int l = 0; l < n; ++l) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * l + 1.0) * z * p1 - l * p2) / (l + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}
}  // namespace

double SphericalHarmonicField::band_norm(int band) const {
  double s = 0.0;
  if (band > l_max) return 0.0;
  for (int m = -band; m <= band; ++m) s += sqr(a[idx(band, m)]);
  return std::sqrt(s);
}

double SphericalHarmonicField::perp1_norm() const {
  double s = 0.0;
  for (int l = 0; l <= l_max; ++l) {
    if (l == 1) continue;
    for (int m = -l; m <= l; ++m) s += sqr(a[idx(l, m)]);
  }
  return std::sqrt(s);
}

SphericalHarmonicField SphericalHarmonicField::truncated(int new_l_max) const {
  SphericalHarmonicField out(new_l_max);
  for (int l = 0; l <= std::min(new_l_max, l_max); ++l)
    for (int m = -l; m <= l; ++m) out.at(l, m) = a[idx(l, m)];
  return out;
}

void SphericalHarmonicField::save(const std::string& path, int n_theta,
                                  int n_phi) const {
  std::ofstream os(path);
  if (!os) throw Error("cannot open coefficient file for writing: " + path);
  os << "# hfk spherical-harmonic coefficients\n";
  os << "# l_max " << l_max << " n_theta " << n_theta << " n_phi " << n_phi
     << "\n";
  char buf[64];
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", l, m, a[idx(l, m)]);
      os << buf;
    }
}

SphericalHarmonicField SphericalHarmonicField::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open coefficient file: " + path);
  std::string line;
  int l_max = -1;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string tok;
      while (hs >> tok)
        if (tok == "l_max") hs >> l_max;
      continue;
    }
    std::istringstream ls(line);
    double l, m, v;
    if (!(ls >> l >> m >> v)) throw Error("bad coefficient line: " + line);
    rows.push_back({l, m, v});
  }
  if (l_max < 0) throw Error("coefficient file lacks an l_max header");
  SphericalHarmonicField f(l_max);
  for (const auto& r : rows)
    f.at(static_cast<int>(r[0]), static_cast<int>(r[1])) = r[2];
  return f;
}

QuadratureGrid::QuadratureGrid(int nt, int np) : n_theta(nt), n_phi(np) {
  if (nt < 4 || np < 4) throw Error("grid too small");
  gauss_legendre(nt, x, w);
  theta.resize(nt);
  sin_theta.resize(nt);
  for (int j = 0; j < nt; ++j) {
    theta[j] = std::acos(x[j]);
    sin_theta[j] = std::sqrt(1.0 - x[j] * x[j]);
  }
  phi.resize(np);
  for (int k = 0; k < np; ++k) phi[k] = 2.0 * kPi * k / np;
}

double QuadratureGrid::solid_angle(int j) const {
  return w[j] * 2.0 * kPi / n_phi;
}

Vec3 QuadratureGrid::dir(int j, int k) const {
  return {sin_theta[j] * std::cos(phi[k]), sin_theta[j] * std::sin(phi[k]),
          x[j]};
}

Basis::Basis(const QuadratureGrid& grid, int l_max)
    : grid_(grid), l_max_(l_max), tri_(tri(l_max, l_max) + 1) {
  if (l_max < 1) throw Error("l_max must be >= 1");
  if (2 * l_max >= grid.n_phi || l_max >= grid.n_theta)
    throw BandLimitError("grid cannot represent the requested band limit");
  const int nt = grid_.n_theta;
  pbar_.assign(nt * tri_, 0.0);
  dpbar_.assign(nt * tri_, 0.0);
  d2pbar_.assign(nt * tri_, 0.0);
  d3pbar_.assign(nt * tri_, 0.0);
  for (int j = 0; j < nt; ++j) {
    const double xx = grid_.x[j];
    const double st = grid_.sin_theta[j];
    double* P = &pbar_[j * tri_];
    // Diagonal and first off-diagonal, then upward recurrence in l.
    P[tri(0, 0)] = 1.0;
    for (int m = 1; m <= l_max; ++m)
      P[tri(m, m)] =
          std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * P[tri(m - 1, m - 1)];
    for (int m = 0; m < l_max; ++m)
      P[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * xx * P[tri(m, m)];
    for (int m = 0; m <= l_max; ++m)
      for (int l = m + 2; l <= l_max; ++l) {
        const double al = std::sqrt((4.0 * l * l - 1.0) /
                                    (static_cast<double>(l - m) * (l + m)));
        const double bl =
            std::sqrt(((2.0 * l + 1.0) * (l - 1.0 + m) * (l - 1.0 - m)) /
                      ((2.0 * l - 3.0) * (l - m) * (l + m)));
        P[tri(l, m)] = al * xx * P[tri(l - 1, m)] - bl * P[tri(l - 2, m)];
      }
    // Theta derivatives up to third order by differentiating the relation
    // sin(theta) D1 = l x P - e P_{l-1}.
    double* D = &dpbar_[j * tri_];
    double* D2 = &d2pbar_[j * tri_];
    double* D3 = &d3pbar_[j * tri_];
    for (int m = 0; m <= l_max; ++m)
      for (int l = m; l <= l_max; ++l) {
        const double e =
            (l == m) ? 0.0
                     : std::sqrt((static_cast<double>(l) * l - m * m) *
                                 (2.0 * l + 1.0) / (2.0 * l - 1.0));
        const double pl = P[tri(l, m)];
        const double plm1 = (l > m) ? P[tri(l - 1, m)] : 0.0;
        D[tri(l, m)] = (l * xx * pl - e * plm1) / st;
        const double dl = D[tri(l, m)];
        const double dlm1 = (l > m) ? D[tri(l - 1, m)] : 0.0;
        // N := l x P - e P_{l-1} = st D1; N' = -l st P + l x D1 - e D1_{l-1}.
        D2[tri(l, m)] =
            (-l * st * pl + l * xx * dl - e * dlm1) / st - xx * dl / st;
        const double d2l = D2[tri(l, m)];
        const double d2lm1 = (l > m) ? D2[tri(l - 1, m)] : 0.0;
        // N'' = -l x P - 2 l st D1 + l x D2 - e D2_{l-1}; and
        // D3 = (N'' - 2 x D2 + st D1... ) derived from D2 = N'/st - x D1/st:
        // D3 = (N'' - x D2)/st - d/dth(x D1/st) with the same quotient rule.
        const double npp = -l * xx * pl - 2.0 * l * st * dl + l * xx * d2l -
                           e * d2lm1;
        const double np = -l * st * pl + l * xx * dl - e * dlm1;
        // q := x D1 / st; q' = (-st D1 + x D2)/st - x^2 D1/st^2.
        const double q = xx * dl / st;
        const double qp = (-st * dl + xx * d2l) / st - xx * q / st;
        D3[tri(l, m)] = (npp - np * xx / st) / st - qp;
      }
  }
  const int np = grid_.n_phi;
  cosm_.assign(np * (l_max + 1), 0.0);
  sinm_.assign(np * (l_max + 1), 0.0);
  for (int k = 0; k < np; ++k)
    for (int m = 0; m <= l_max; ++m) {
      cosm_[k * (l_max + 1) + m] = std::cos(m * grid_.phi[k]);
      sinm_[k * (l_max + 1) + m] = std::sin(m * grid_.phi[k]);
    }
}

std::vector<double> Basis::fourier_analyze(const std::vector<double>& s) const {
  const int nt = grid_.n_theta, np = grid_.n_phi, M = l_max_ + 1;
  std::vector<double> rows(nt * 2 * M, 0.0);  // [j][c/s][m]
  for (int j = 0; j < nt; ++j) {
    const double* f = &s[j * np];
    for (int m = 0; m < M; ++m) {
      double c = 0.0, sn = 0.0;
      for (int k = 0; k < np; ++k) {
        c += f[k] * cosm_[k * M + m];
        sn += f[k] * sinm_[k * M + m];
      }
      rows[(j * 2 + 0) * M + m] = c;
      rows[(j * 2 + 1) * M + m] = sn;
    }
  }
  return rows;
}

SphericalHarmonicField Basis::analyze(const std::vector<double>& samples,
                                      bool strict_band,
                                      double alias_tol) const {
  if (static_cast<int>(samples.size()) != n_nodes())
    throw Error("sample count does not match grid");
  const int nt = grid_.n_theta, np = grid_.n_phi, M = l_max_ + 1;
  const auto rows = fourier_analyze(samples);
  SphericalHarmonicField out(l_max_);
  const double sq2 = std::sqrt(2.0);
  for (int m = 0; m < M; ++m) {
    for (int l = m; l <= l_max_; ++l) {
      double ac = 0.0, as = 0.0;
      for (int j = 0; j < nt; ++j) {
        const double wp = grid_.w[j] * pbar(j, l, m);
        ac += wp * rows[(j * 2 + 0) * M + m];
        if (m > 0) as += wp * rows[(j * 2 + 1) * M + m];
      }
      const double scale = (m == 0 ? 1.0 : sq2) / (2.0 * np);
      out.at(l, m) = ac * scale;
      if (m > 0) out.at(l, -m) = as * scale;
    }
  }
  if (strict_band) {
    // Two alias symptoms: energy piling up in the top bands (smooth but
    // unresolved fields) and a synthesis residual (fold-back of content
    // beyond the grid's resolvable orders).
    double total = 0.0, top = 0.0;
    for (int l = 0; l <= l_max_; ++l)
      for (int m = -l; m <= l; ++m) {
        const double e = sqr(out(l, m));
        total += e;
        if (l >= l_max_ - 1) top += e;
      }
    if (total > 0.0 && top > alias_tol * total)
      throw BandLimitError("sampled field is not resolved at this band limit");
    const auto back = synthesize(out);
    double resid = 0.0, scale = 0.0;
    for (int i = 0; i < n_nodes(); ++i) {
      resid += sqr(back[i] - samples[i]);
      scale += sqr(samples[i]);
    }
    if (scale > 0.0 && resid > alias_tol * scale)
      throw BandLimitError("sampled field folds back across the band limit");
  }
  return out;
}

std::vector<double> Basis::legendre_rows(const SphericalHarmonicField& f,
                                         const std::vector<double>& tbl) const {
  if (f.l_max != l_max_) throw Error("field band does not match basis");
  const int nt = grid_.n_theta, M = l_max_ + 1;
  const double sq2 = std::sqrt(2.0);
  std::vector<double> rows(nt * 2 * M, 0.0);
  for (int j = 0; j < nt; ++j) {
    const double* P = &tbl[j * tri_];
    for (int m = 0; m < M; ++m) {
      double gc = 0.0, gs = 0.0;
      for (int l = m; l <= l_max_; ++l) {
        const double p = P[tri(l, m)];
        gc += p * f.a[idx(l, m)];
        if (m > 0) gs += p * f.a[idx(l, -m)];
      }
      const double scale = (m == 0) ? 1.0 : sq2;
      rows[(j * 2 + 0) * M + m] = scale * gc;
      rows[(j * 2 + 1) * M + m] = scale * gs;
    }
  }
  return rows;
}

std::vector<double> Basis::fourier_synth(const std::vector<double>& rows,
                                         int dphi_order) const {
  const int nt = grid_.n_theta, np = grid_.n_phi, M = l_max_ + 1;
  std::vector<double> out(nt * np, 0.0);
  for (int j = 0; j < nt; ++j) {
    double* f = &out[j * np];
    for (int k = 0; k < np; ++k) {
      double v = 0.0;
      for (int m = 0; m < M; ++m) {
        const double c = cosm_[k * M + m], s = sinm_[k * M + m];
        const double gc = rows[(j * 2 + 0) * M + m];
        const double gs = rows[(j * 2 + 1) * M + m];
        switch (dphi_order) {
          case 0:
            v += gc * c + gs * s;
            break;
          case 1:
            v += m * (-gc * s + gs * c);
            break;
          case 2:
            v += -m * m * (gc * c + gs * s);
            break;
          default:
            v += m * m * m * (gc * s - gs * c);
        }
      }
      f[k] = v;
    }
  }
  return out;
}

std::vector<double> Basis::synthesize(const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, pbar_), 0);
}
std::vector<double> Basis::synth_dtheta(const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, dpbar_), 0);
}
std::vector<double> Basis::synth_dphi(const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, pbar_), 1);
}
std::vector<double> Basis::synth_dtheta2(
    const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, d2pbar_), 0);
}
std::vector<double> Basis::synth_dthetadphi(
    const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, dpbar_), 1);
}
std::vector<double> Basis::synth_dphi2(const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, pbar_), 2);
}
std::vector<double> Basis::synth_dtheta3(const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, d3pbar_), 0);
}
std::vector<double> Basis::synth_dtheta2dphi(
    const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, d2pbar_), 1);
}
std::vector<double> Basis::synth_dthetadphi2(
    const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, dpbar_), 2);
}
std::vector<double> Basis::synth_dphi3(const SphericalHarmonicField& f) const {
  return fourier_synth(legendre_rows(f, pbar_), 3);
}

SphericalHarmonicField Basis::adjoint_pair(const std::vector<double>& samples,
                                           Deriv d) const {
  if (static_cast<int>(samples.size()) != n_nodes())
    throw Error("sample count does not match grid");
  const int nt = grid_.n_theta, M = l_max_ + 1;
  const auto rows = fourier_analyze(samples);  // plain ring sums
  const std::vector<double>& tbl = (d == Deriv::DTheta) ? dpbar_ : pbar_;
  SphericalHarmonicField out(l_max_);
  const double sq2 = std::sqrt(2.0);
  for (int m = 0; m < M; ++m) {
    for (int l = m; l <= l_max_; ++l) {
      double ac = 0.0, as = 0.0;
      for (int j = 0; j < nt; ++j) {
        const double p = tbl[j * tri_ + tri(l, m)];
        ac += p * rows[(j * 2 + 0) * M + m];
        if (m > 0) as += p * rows[(j * 2 + 1) * M + m];
      }
      const double scale = (m == 0 ? 1.0 : sq2);
      if (d == Deriv::DPhi) {
        // sum_n s (dY/dphi): cos(m phi) -> -m sin, sin -> +m cos.
        out.at(l, m) = -m * as * scale;
        if (m > 0) out.at(l, -m) = m * ac * scale;
      } else {
        out.at(l, m) = ac * scale;
        if (m > 0) out.at(l, -m) = as * scale;
      }
    }
  }
  return out;
}

double legendre_p(int l, double t) {
  double p0 = 1.0, p1 = t;
  if (l == 0) return p0;
  if (l == 1) return p1;
  for (int n = 1; n < l; ++n) {
    const double p2 = ((2.0 * n + 1.0) * t * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace hfk::sh
