#ifndef HFK_CORE_HPP
#define HFK_CORE_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hfk {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rank-3 array of 3x3 matrices, T[a](i,j) = T_{a i j}.
using Ten3 = std::array<Mat3, 3>;

/// Rank-4: T[a][b](i,j) = T_{a b i j}.
using Ten4 = std::array<std::array<Mat3, 3>, 3>;

// ---------------------------------------------------------------------------
// Error taxonomy.  Numerical failures and hypothesis violations are kept
// apart so the driver can map them to different exit codes.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
  using Error::Error;
};
struct SingularMetric : Error {
  using Error::Error;
};
struct DegenerateSurface : Error {
  using Error::Error;
};
struct BandLimitError : Error {
  using Error::Error;
};
struct ZeroMeanCurvature : Error {
  using Error::Error;
};
struct NonPositiveH : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct StepError : Error {
  using Error::Error;
};
struct TailError : Error {
  using Error::Error;
};
struct ZeroEnergy : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

/// The data fails a hypothesis of the construction rather than the numerics.
struct HypothesisViolation : Error {
  using Error::Error;
};
struct BoundaryMinimum : HypothesisViolation {
  using HypothesisViolation::HypothesisViolation;
};
struct NotAFoliation : HypothesisViolation {
  using HypothesisViolation::HypothesisViolation;
};
struct NotCentered : HypothesisViolation {
  using HypothesisViolation::HypothesisViolation;
};

// ---------------------------------------------------------------------------
// Worker pool.  HFK_THREADS caps the number of workers; all loops fall back
// to serial execution when the range is small.

int worker_count();

/// Runs fn(i) for i in [0, n).  fn must write only to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Small numeric helpers.

inline double sqr(double x) { return x * x; }

/// Symmetrizes the matrix part of roundoff-asymmetric products.
inline Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }

}  // namespace hfk

#endif  // HFK_CORE_HPP
