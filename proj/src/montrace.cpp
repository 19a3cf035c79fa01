#include "stokeskit/montrace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stokeskit/errors.hpp"
#include "stokeskit/linalg.hpp"

namespace stokeskit {

namespace odeint = boost::numeric::odeint;

Path::Path(std::vector<Segment> segments) : segments_(std::move(segments)) {}

Path Path::circle(double radius, bool counterclockwise) {
  if (!(radius > 0)) throw DomainError("circle radius must be positive");
  Path p;
  p.arc({0, 0}, radius, 0, counterclockwise ? 1 : -1);
  return p;
}

Path& Path::arc(std::complex<double> center, double radius, double start_turn, double end_turn) {
  if (!(radius > 0)) throw DomainError("arc radius must be positive");
  segments_.push_back(ArcSegment{center, radius, start_turn, end_turn});
  return *this;
}

Path& Path::line(std::complex<double> from, std::complex<double> to) {
  segments_.push_back(LineSegment{from, to});
  return *this;
}

Path& Path::then(const Path& next) {
  segments_.insert(segments_.end(), next.segments_.begin(), next.segments_.end());
  return *this;
}

namespace {

std::complex<double> point_on(const Segment& s, double t) {
  if (const auto* a = std::get_if<ArcSegment>(&s)) {
    const double theta = a->start_turn + (a->end_turn - a->start_turn) * t;
    return a->center + std::polar(a->radius, 2 * std::numbers::pi * theta);
  }
  const auto& l = std::get<LineSegment>(s);
  return l.from + (l.to - l.from) * t;
}

double distance_to(const Segment& s, std::complex<double> p) {
  if (const auto* a = std::get_if<ArcSegment>(&s)) {
    const double lo = std::min(a->start_turn, a->end_turn);
    const double hi = std::max(a->start_turn, a->end_turn);
    const std::complex<double> rel = p - a->center;
    const double rho = std::abs(rel);
    if (hi - lo >= 1 || rho == 0) return std::abs(rho - a->radius);
    double theta = std::arg(rel) / (2 * std::numbers::pi);
    theta += std::ceil(lo - theta);  // first representative >= lo
    if (theta <= hi) return std::abs(rho - a->radius);
    return std::min(std::abs(p - point_on(s, 0)), std::abs(p - point_on(s, 1)));
  }
  const auto& l = std::get<LineSegment>(s);
  const std::complex<double> d = l.to - l.from;
  const double len2 = std::norm(d);
  double t = len2 == 0 ? 0 : ((p - l.from) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (l.from + d * t));
}

}  // namespace

Path Path::reversed() const {
  Path r;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    if (const auto* a = std::get_if<ArcSegment>(&*it)) {
      r.segments_.push_back(ArcSegment{a->center, a->radius, a->end_turn, a->start_turn});
    } else {
      const auto& l = std::get<LineSegment>(*it);
      r.segments_.push_back(LineSegment{l.to, l.from});
    }
  }
  return r;
}

std::complex<double> Path::start() const {
  if (segments_.empty()) throw DomainError("empty path");
  return point_on(segments_.front(), 0);
}

std::complex<double> Path::end() const {
  if (segments_.empty()) throw DomainError("empty path");
  return point_on(segments_.back(), 1);
}

double Path::clearance(const std::vector<std::complex<double>>& points) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_)
    for (const auto& p : points) best = std::min(best, distance_to(s, p));
  return best;
}

std::vector<std::complex<double>> finite_singular_points(const MatrixSystem& sys) {
  std::vector<std::complex<double>> out = sys.nonzero_poles();
  if (sys.singular_at_zero()) out.emplace_back(0, 0);
  return out;
}

namespace {

/// B(z) with coefficients converted once.
template <class T>
class CompiledSystem {
 public:
  explicit CompiledSystem(const MatrixSystem& sys) : n_(sys.dimension()) {
    const auto& b = sys.matrix();
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < n_; ++c) {
        Entry e{r, c, {}, {}};
        if (b(r, c).is_zero()) continue;
        for (const auto& [k, v] : b(r, c).numerator().terms()) e.num.emplace_back(k, v.template to_complex<T>());
        for (const auto& [k, v] : b(r, c).denominator().terms()) e.den.emplace_back(k, v.template to_complex<T>());
        entries_.push_back(std::move(e));
      }
    }
  }

  int dimension() const { return n_; }

  /// Fills a with B(z)/z.
  void evaluate(const std::complex<T>& z, MatCT<T>& a) const {
    a.setZero(n_, n_);
    for (const auto& e : entries_) a(e.row, e.col) = eval(e.num, z) / (eval(e.den, z) * z);
  }

 private:
  using Terms = std::vector<std::pair<int, std::complex<T>>>;
  struct Entry {
    int row, col;
    Terms num, den;
  };
  static std::complex<T> eval(const Terms& t, const std::complex<T>& z) {
    std::complex<T> acc(0);
    for (const auto& [k, c] : t) acc += c * std::pow(z, k);
    return acc;
  }

  int n_;
  std::vector<Entry> entries_;
};

template <class T>
std::complex<T> lift(std::complex<double> z) {
  return {static_cast<T>(z.real()), static_cast<T>(z.imag())};
}

/// One pass over the path at a fixed tolerance.
template <class T>
MatCT<T> run(const CompiledSystem<T>& sys, const Path& path, double tol, const TransportOptions& opts,
             std::size_t& steps) {
  using State = std::vector<T>;
  const int n = sys.dimension();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  State x(2 * nn, T(0));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k) * n + k] = T(1);

  MatCT<T> a(n, n), y(n, n), dy(n, n);
  const T two_pi = 2 * std::numbers::pi_v<T>;
  for (const auto& seg : path.segments()) {
    auto rhs = [&](const State& s, State& ds, T t) {
      std::complex<T> z, dz;
      if (const auto* arc = std::get_if<ArcSegment>(&seg)) {
        const T span = static_cast<T>(arc->end_turn - arc->start_turn);
        const T theta = static_cast<T>(arc->start_turn) + span * t;
        const std::complex<T> w = std::polar(static_cast<T>(arc->radius), two_pi * theta);
        z = lift<T>(arc->center) + w;
        dz = std::complex<T>(0, two_pi * span) * w;
      } else {
        const auto& l = std::get<LineSegment>(seg);
        dz = lift<T>(l.to) - lift<T>(l.from);
        z = lift<T>(l.from) + dz * t;
      }
      sys.evaluate(z, a);
      for (std::size_t k = 0; k < nn; ++k) y.data()[k] = {s[k], s[nn + k]};
      dy.noalias() = (a * dz) * y;
      for (std::size_t k = 0; k < nn; ++k) {
        ds[k] = dy.data()[k].real();
        ds[nn + k] = dy.data()[k].imag();
      }
    };
    std::size_t seg_steps = 0;
    auto observer = [&](const State&, T) {
      if (++seg_steps > opts.max_steps)
        throw NumericalError("transport exceeded " + std::to_string(opts.max_steps) + " steps (tolerance unreachable)");
    };
    auto stepper = odeint::make_controlled(static_cast<T>(tol), static_cast<T>(tol),
                                           odeint::runge_kutta_fehlberg78<State, T, State, T>());
    odeint::integrate_adaptive(stepper, rhs, x, T(0), T(1), T(1) / 64, observer);
    steps += seg_steps;
  }
  MatCT<T> out(n, n);
  for (std::size_t k = 0; k < nn; ++k) out.data()[k] = {x[k], x[nn + k]};
  for (const auto& v : x)
    if (!std::isfinite(static_cast<double>(v))) throw NumericalError("transport diverged");
  return out;
}

}  // namespace

constexpr double kLocalFactor = 100;

template <class T>
TransportResult<T> transport(const MatrixSystem& sys, const Path& path, double tol, const TransportOptions& opts) {
  const double floor_tol = 100 * static_cast<double>(std::numeric_limits<T>::epsilon());
  if (!(tol >= floor_tol)) throw DomainError("tolerance below the floor for this precision");
  if (path.segments().empty()) throw DomainError("empty path");
  const double clearance = path.clearance(finite_singular_points(sys));
  if (clearance < opts.min_clearance) {
    std::ostringstream msg;
    msg << "path passes within " << clearance << " of a singular point (minimum " << opts.min_clearance << ")";
    throw DomainError(msg.str());
  }
  const CompiledSystem<T> compiled(sys);
  TransportResult<T> r;
  // steps run tighter than tol so the accumulated error stays near tol
  const double eps = static_cast<double>(std::numeric_limits<T>::epsilon());
  const double local = std::max(tol / kLocalFactor, 10 * eps);
  r.matrix = run(compiled, path, local, opts, r.step_count);
  std::size_t fine_steps = 0;
  const MatCT<T> fine = run(compiled, path, std::max(local / 10, 4 * eps), opts, fine_steps);
  r.error_estimate = static_cast<double>((fine - r.matrix).cwiseAbs().maxCoeff());
  return r;
}

template <class T>
TransportResult<T> loop_monodromy(const MatrixSystem& sys, double radius, double tol, bool counterclockwise,
                                  const TransportOptions& opts) {
  return transport<T>(sys, Path::circle(radius, counterclockwise), tol, opts);
}

double default_radius(const MatrixSystem& sys) {
  const auto& poles = sys.nonzero_poles();
  if (poles.empty()) return 1.0;
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : poles) m = std::min(m, std::abs(p));
  return m / 2;
}

double conditioned_radius(const MatrixSystem& sys) {
  double scale = 1;
  const auto& b = sys.matrix();
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (const auto& [k, v] : b(r, c).numerator().terms())
        if (k > 0) scale = std::max(scale, std::abs(v.to_complex()));
  return std::min(default_radius(sys), 0.05 / scale);
}

Spectrum spectrum(const MatC& m) {
  if (m.rows() != m.cols()) throw DomainError("spectrum of a non-square matrix");
  Spectrum s;
  const Mat<std::complex<double>> a = m;
  s.charpoly = charpoly(a);
  Eigen::ComplexEigenSolver<MatC> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const std::complex<double> lambda = solver.eigenvalues()(k);
    const Eigen::VectorXcd v = solver.eigenvectors().col(k).normalized();
    s.eigenvalues.push_back(lambda);
    s.residuals.push_back((m * v - lambda * v).norm());
  }
  return s;
}

template TransportResult<double> transport<double>(const MatrixSystem&, const Path&, double, const TransportOptions&);
template TransportResult<long double> transport<long double>(const MatrixSystem&, const Path&, double,
                                                             const TransportOptions&);
template TransportResult<double> loop_monodromy<double>(const MatrixSystem&, double, double, bool,
                                                        const TransportOptions&);
template TransportResult<long double> loop_monodromy<long double>(const MatrixSystem&, double, double, bool,
                                                                  const TransportOptions&);

}  // namespace stokeskit
