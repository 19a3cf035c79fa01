#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "stokeskit/system.hpp"

namespace stokeskit {

/// Arc z = center + radius·e^{2πiθ}, θ from start_turn to end_turn (either direction).
struct ArcSegment {
  std::complex<double> center{0, 0};
  double radius = 1;
  double start_turn = 0;
  double end_turn = 1;
};

struct LineSegment {
  std::complex<double> from;
  std::complex<double> to;
};

using Segment = std::variant<ArcSegment, LineSegment>;

class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Segment> segments);

  /// Full circle |z| = radius starting at z = radius (counterclockwise by default).
  static Path circle(double radius, bool counterclockwise = true);

  Path& arc(std::complex<double> center, double radius, double start_turn, double end_turn);
  Path& line(std::complex<double> from, std::complex<double> to);
  /// Continues with all segments of `next`.
  Path& then(const Path& next);

  Path reversed() const;

  const std::vector<Segment>& segments() const { return segments_; }
  std::complex<double> start() const;
  std::complex<double> end() const;

  /// Smallest distance from the path to any of the points.
  double clearance(const std::vector<std::complex<double>>& points) const;

 private:
  std::vector<Segment> segments_;
};

struct TransportOptions {
  /// Paths closer than this to a singular point are rejected.
  double min_clearance = 1e-6;
  /// Accepted steps per run before giving up.
  std::size_t max_steps = 2'000'000;
};

template <class T>
using MatCT = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <class T = double>
struct TransportResult {
  MatCT<T> matrix;
  /// Max-norm difference to a rerun at tol/10.
  double error_estimate = 0;
  std::size_t step_count = 0;
};

/// Singular points of dY/dz = (B(z)/z)·Y at finite distance.
std::vector<std::complex<double>> finite_singular_points(const MatrixSystem& sys);

/// T with Y(end) = T·Y(start) for solutions of δY = B·Y along the path.
template <class T = double>
TransportResult<T> transport(const MatrixSystem& sys, const Path& path, double tol, const TransportOptions& opts = {});

/// Monodromy once around z = 0 along |z| = radius, base point z = radius, basis = identity there.
template <class T = double>
TransportResult<T> loop_monodromy(const MatrixSystem& sys, double radius, double tol, bool counterclockwise = true,
                                  const TransportOptions& opts = {});

/// 1 when B has no finite poles besides 0, else half the smallest nonzero pole modulus.
double default_radius(const MatrixSystem& sys);

/// min(default_radius, 0.05 / max |z^k coefficient of B|, k > 0). Near z = 0 the loop
/// monodromy stays close to exp(2πi B(0)), so its charpoly is well conditioned.
double conditioned_radius(const MatrixSystem& sys);

struct Spectrum {
  /// Monic, leading coefficient first.
  std::vector<std::complex<double>> charpoly;
  std::vector<std::complex<double>> eigenvalues;
  /// ‖(M − λI)v‖ for each eigenpair with ‖v‖ = 1.
  std::vector<double> residuals;
};

Spectrum spectrum(const MatC& m);

}  // namespace stokeskit
