#include "hypcomp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hypcomp/error.hpp"
#include "hypcomp/fft.hpp"
#include "hypcomp/poisson.hpp"

namespace hypcomp {

namespace {

constexpr double kExceptionalRatio = 1e-10;
constexpr double kUnimodularTol = 1e-12;
constexpr int kMinFitPoints = 10;
constexpr int kDefaultSkip = 3;

double weighted_norm(const OrbitGrid& grid, const std::vector<Complex>& v, int stride = 1) {
  return std::sqrt(grid.norm_squared(v, stride));
}

void axpy(std::vector<Complex>& acc, Complex c, const std::vector<Complex>& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * x[i];
}

// Terms needed for a geometric tail with ratio rho to drop below tol.
int terms_for(double rho, double tol) {
  if (rho <= 0.0) return 1;
  const double m = std::log(tol * (1.0 - rho)) / std::log(rho);
  return std::max(1, static_cast<int>(std::ceil(m)));
}

}  // namespace

Annulus::Annulus(double inner_radius, double outer_radius)
    : inner(inner_radius), outer(outer_radius) {
  if (!(inner > 0.0 && outer > inner && std::isfinite(outer))) {
    throw Error(ErrorKind::Domain, "annulus needs 0 < R1 < R2 < infinity");
  }
}

bool Annulus::contains(Complex z) const {
  const double r = std::abs(z);
  return r > inner && r < outer;
}

OrbitFamily::OrbitFamily(BoundaryProfile f, HyperbolicAutomorphism phi, OrbitOptions options)
    : profile_(std::move(f)), grid_(phi, options.window, options.grid), window_(options.window) {
  samples_ = grid_.sample_full(profile_);
  const int w = window_;
  norms_.resize(2 * static_cast<std::size_t>(w) + 1);
  diagnostics_.reserve(norms_.size());

  std::optional<H2Function> taylor;
  if (options.taylor_budget > 0) taylor = profile_.to_taylor(options.taylor_budget);

  for (int n = -w; n <= w; ++n) {
    const std::vector<Complex> m = member(n);
    MemberDiagnostics d;
    d.index = n;
    d.norm = weighted_norm(grid_, m);
    norms_[static_cast<std::size_t>(n + w)] = d.norm;
    if (d.norm > 0.0) d.quadrature_gap = std::abs(d.norm - weighted_norm(grid_, m, 2)) / d.norm;
    if (taylor && std::abs(n) <= options.crosscheck_limit) {
      const Complex a = iterate(phi, n).at(0.0);
      const double q = std::sqrt(std::max(0.0, poisson_quadratic_form(*taylor, a)));
      d.poisson_form_gap = d.norm > 0.0 ? std::abs(d.norm - q) / d.norm : q;
      d.taylor_resolved = taylor->is_resolved();
    }
    if (d.quadrature_gap > 1e-10) {
      std::ostringstream os;
      os << "member " << n << ": quadrature gap " << d.quadrature_gap;
      warnings_.push_back(os.str());
    }
    if (!d.taylor_resolved) {
      std::ostringstream os;
      os << "member " << n << ": Taylor cross-check unresolved at budget "
         << options.taylor_budget;
      warnings_.push_back(os.str());
    }
    diagnostics_.push_back(d);
  }
  if (norm(0) == 0.0) throw Error(ErrorKind::Domain, "orbit of the zero function");

  double scale = 0.0;
  double drift = 0.0;
  const OrbitGrid& g = grid_;
  for (int b = 0; b < 2; ++b) {
    for (long j = -g.base_extent(); j <= g.base_extent(); ++j) {
      const Complex here = sample(b, j);
      scale = std::max(scale, std::abs(here));
      drift = std::max(drift, std::abs(sample(b, j + g.period()) - here));
    }
  }
  invariant_ = drift <= 1e-12 * scale;

  for (Direction dir : {Direction::Forward, Direction::Backward}) {
    try {
      DecayFit fit = decay_fit(*this, dir, kDefaultSkip);
      (dir == Direction::Forward ? forward_fit_ : backward_fit_) = fit;
    } catch (const Error&) {
      // vanishing orbits and short windows leave the fit unset
    }
  }
}

double OrbitFamily::norm(int n) const {
  if (std::abs(n) > window_) throw Error(ErrorKind::Domain, "orbit index outside the window");
  return norms_[static_cast<std::size_t>(n + window_)];
}

std::vector<Complex> OrbitFamily::member(int n) const {
  if (std::abs(n) > window_ + 1) throw Error(ErrorKind::Domain, "orbit index outside the grid");
  const long base = grid_.base_extent();
  const long shift = static_cast<long>(n) * grid_.period();
  std::vector<Complex> out(grid_.base_size());
  for (int b = 0; b < 2; ++b) {
    for (long j = -base; j <= base; ++j) out[grid_.base_offset(b, j)] = sample(b, j + shift);
  }
  return out;
}

OrbitFamily orbit_norms(const BoundaryProfile& f, const HyperbolicAutomorphism& phi, int window,
                        OrbitOptions options) {
  if (window < 1) throw Error(ErrorKind::Config, "orbit window must be >= 1");
  options.window = window;
  return OrbitFamily(f, phi, options);
}

DecayFit decay_fit(const OrbitFamily& family, Direction direction, int skip) {
  if (skip < 0) throw Error(ErrorKind::Config, "skip must be >= 0");
  const int sign = direction == Direction::Forward ? 1 : -1;
  const double floor = kZeroRatio * family.norm(0);
  std::vector<double> xs, ys;
  bool vanished = false;
  for (int n = skip; n <= family.window(); ++n) {
    const double v = family.norm(sign * n);
    if (v <= floor) {
      vanished = true;
      break;
    }
    xs.push_back(n);
    ys.push_back(std::log(v));
  }
  if (static_cast<int>(xs.size()) < kMinFitPoints) {
    throw Error(ErrorKind::Numerical,
                vanished ? "decay fit aborted: orbit norms reach the zero threshold"
                         : "decay fit needs at least 10 points after the skip");
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.exponent = -fit.slope / std::log(family.phi().multiplier());
  fit.points_used = static_cast<int>(xs.size());
  return fit;
}

std::vector<Complex> OrbitSeries::samples(const OrbitFamily& family, int shift) const {
  std::vector<Complex> acc(family.grid().base_size());
  for (const auto& [n, c] : coefficients) {
    if (c == Complex{}) continue;
    axpy(acc, c, family.member(n + shift));
  }
  return acc;
}

Complex OrbitSeries::evaluate(const OrbitFamily& family, Complex z) const {
  const auto& phi = family.phi();
  Complex total{};
  for (const auto& [n, c] : coefficients) {
    const Complex w = iterate(phi, n).at(z);
    total += c * family.profile()(CirclePoint::generic(w, phi.attractive(), phi.repulsive()));
  }
  return total;
}

H2Function OrbitSeries::to_taylor(const OrbitFamily& family, std::size_t budget,
                                  std::size_t oversample) const {
  const std::size_t m = next_power_of_two(std::max<std::size_t>(budget * oversample, 2));
  BoundaryGrid grid(m);
  std::vector<Complex> values(m);
  for (std::size_t j = 0; j < m; ++j) values[j] = evaluate(family, grid.node(j));
  std::vector<Complex> c = analysis_dft(values);
  double dropped = 0.0;
  for (std::size_t k = budget; k < m; ++k) dropped += std::norm(c[k]);
  c.resize(budget);
  return H2Function(std::move(c), dropped);
}

OrbitSeries laurent_series(Complex lambda, int truncation) {
  if (lambda == Complex{}) throw Error(ErrorKind::Domain, "lambda must be nonzero");
  OrbitSeries s;
  for (int n = -truncation; n <= truncation; ++n) s.coefficients[n] = std::pow(lambda, -n);
  return s;
}

EigenReport laurent_partial(const OrbitFamily& family, Complex lambda, int truncation) {
  if (truncation < 0 || truncation > family.window()) {
    throw Error(ErrorKind::Config, "truncation must lie in [0, window]");
  }
  const OrbitSeries s = laurent_series(lambda, truncation);
  const std::vector<Complex> f = s.samples(family, 0);
  std::vector<Complex> image = s.samples(family, 1);
  axpy(image, -lambda, f);

  EigenReport r;
  r.lambda = lambda;
  r.truncation = truncation;
  r.eigenfunction_norm = weighted_norm(family.grid(), f);
  for (int n = -truncation; n <= truncation; ++n) {
    r.scale += std::pow(std::abs(lambda), -n) * family.norm(n);
  }
  const double res = weighted_norm(family.grid(), image);
  r.exceptional = r.eigenfunction_norm < kExceptionalRatio * r.scale;
  r.relative_residual = r.eigenfunction_norm > 0.0 ? res / r.eigenfunction_norm
                                                   : std::numeric_limits<double>::infinity();
  if (r.exceptional) r.status = "exceptional";
  return r;
}

EigenReport laurent_eigenfunction(const OrbitFamily& family, Complex lambda, double tol) {
  if (lambda == Complex{}) throw Error(ErrorKind::Domain, "lambda must be nonzero");
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorKind::Config, "tol must lie in (0, 1)");
  const double r = std::abs(lambda);

  if (family.invariant() && std::abs(r - 1.0) <= kUnimodularTol) {
    EigenReport rep = laurent_partial(family, lambda, family.window());
    if (!rep.exceptional) rep.status = "invariant-orbit";
    return rep;
  }

  const double log_mu = std::log(family.phi().multiplier());
  auto ratio = [&](const std::optional<DecayFit>& fit, bool forward, const char* side) {
    if (!fit) {
      // Unset fit: the orbit vanished on this side, or the window is too short.
      if (family.window() < kDefaultSkip + kMinFitPoints) {
        throw Error(ErrorKind::Config, "window too short to fit decay rates");
      }
      return 0.0;
    }
    const double rho = forward ? std::exp(-fit->exponent * log_mu) / r
                               : r * std::exp(-fit->exponent * log_mu);
    if (!(rho < 1.0)) {
      std::ostringstream os;
      os << "Laurent series diverges at lambda = " << lambda << ": " << side
         << " tail ratio " << rho << " >= 1";
      throw Error(ErrorKind::Divergence, os.str());
    }
    return rho;
  };
  const double forward = ratio(family.forward_fit(), true, "forward (n -> +inf)");
  const double backward = ratio(family.backward_fit(), false, "backward (n -> -inf)");
  int m = std::max(terms_for(forward, tol), terms_for(backward, tol));
  bool limited = false;
  if (m > family.window()) {
    m = family.window();
    limited = true;
  }
  EigenReport rep = laurent_partial(family, lambda, m);
  if (limited && !rep.exceptional) rep.status = "window-limited";
  return rep;
}

double ScanResult::pass_fraction() const {
  return reports.empty() ? 0.0 : static_cast<double>(passed) / static_cast<double>(reports.size());
}

bool ScanResult::exceptional_isolated() const {
  auto flagged = [&](int i, int j) {
    if (i < 0 || i >= radial) return false;
    j = (j + angular) % angular;
    return reports[static_cast<std::size_t>(i * angular + j)].exceptional;
  };
  for (int i = 0; i < radial; ++i) {
    for (int j = 0; j < angular; ++j) {
      if (!flagged(i, j)) continue;
      if (flagged(i + 1, j) || flagged(i - 1, j)) return false;
      if (angular > 1 && (flagged(i, j + 1) || flagged(i, j - 1))) return false;
    }
  }
  return true;
}

ScanResult eigen_scan(const OrbitFamily& family, const Annulus& annulus, ScanOptions options) {
  if (options.radial < 1 || options.angular < 1) {
    throw Error(ErrorKind::Config, "scan grid counts must be >= 1");
  }
  ScanResult out;
  out.radial = options.radial;
  out.angular = options.angular;
  out.reports.reserve(static_cast<std::size_t>(options.radial * options.angular));
  const double dr = (annulus.outer - annulus.inner) / options.radial;
  for (int i = 0; i < options.radial; ++i) {
    const double rad = annulus.inner + (i + 0.5) * dr;
    for (int j = 0; j < options.angular; ++j) {
      const double theta = 2.0 * std::numbers::pi * (j + 0.5) / options.angular;
      const Complex lambda = std::polar(rad, theta);
      EigenReport rep;
      try {
        rep = laurent_eigenfunction(family, lambda, options.tail_tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Divergence) throw;
        rep.lambda = lambda;
        rep.status = "divergent";
        rep.relative_residual = std::numeric_limits<double>::infinity();
        ++out.divergent;
      }
      if (rep.exceptional) ++out.exceptional;
      if (rep.status != "divergent" && !rep.exceptional &&
          rep.relative_residual <= options.residual_tol) {
        ++out.passed;
      }
      out.reports.push_back(rep);
    }
  }
  return out;
}

CirclePartial circle_eigen_partial(const OrbitFamily& family, Complex omega, int truncation) {
  if (std::abs(std::abs(omega) - 1.0) > kUnimodularTol) {
    throw Error(ErrorKind::Domain, "omega must be unimodular");
  }
  if (truncation < 0 || truncation > family.window()) {
    throw Error(ErrorKind::Config, "truncation must lie in [0, window]");
  }
  CirclePartial out;
  for (int n = -truncation; n <= truncation; ++n) out.series.coefficients[n] = std::pow(omega, -n);
  const std::vector<Complex> f = out.series.samples(family, 0);
  std::vector<Complex> image = out.series.samples(family, 1);
  axpy(image, -omega, f);
  out.norm = weighted_norm(family.grid(), f);
  const double eig = weighted_norm(family.grid(), image);

  std::vector<Complex> identity = image;
  axpy(identity, std::pow(omega, truncation + 1), family.member(-truncation));
  axpy(identity, -std::pow(omega, -truncation), family.member(truncation + 1));
  const double id = weighted_norm(family.grid(), identity);
  const double denom = out.norm > 0.0 ? out.norm : 1.0;
  out.eigen_residual = eig / denom;
  out.identity_residual = id / denom;
  return out;
}

SquareSum tail_square_sum(const OrbitFamily& family) {
  SquareSum s;
  const int m = family.window();
  for (int n = -m; n <= m; ++n) {
    const double v = family.norm(n) * family.norm(n);
    s.partial += v;
    if (std::abs(n) > m / 2) s.cauchy_gap += v;
  }
  return s;
}

HypercyclicResult hypercyclic_check(const OrbitFamily& family, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Config, "tol must be positive");
  const int m = family.window();
  const double level = tol * family.norm(0);
  HypercyclicResult out;
  // Settle index: start of the final run of norms below the level.
  auto settle = [&](int sign) -> std::optional<int> {
    if (!(family.norm(sign * m) < level)) return std::nullopt;
    int n = m;
    while (n > 0 && family.norm(sign * (n - 1)) < level) --n;
    return n;
  };
  out.forward_settle = settle(1);
  out.backward_settle = settle(-1);
  // Member k needs some n >= 1 with k + n, k - n inside the settled runs.
  for (int k = -m / 2; k <= m / 2; ++k) {
    const bool fwd = out.forward_settle && std::max(*out.forward_settle, k + 1) <= m;
    const bool bwd = out.backward_settle && std::max(*out.backward_settle, -k + 1) <= m;
    if (!(fwd && bwd)) {
      out.first_failing_index = k;
      break;
    }
  }
  out.holds = !out.first_failing_index.has_value();
  return out;
}

OneSidedReport one_sided_check(const OrbitFamily& family, Direction side, std::size_t grid_size) {
  if (grid_size < 8) throw Error(ErrorKind::Config, "grid_size must be >= 8");
  const auto& phi = family.phi();
  const Complex alpha = phi.attractive();
  const Complex beta = phi.repulsive();
  const bool backward = side == Direction::Backward;
  const Complex center = backward ? beta : alpha;
  std::vector<double> g(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) /
                     static_cast<double>(grid_size);
    const Complex step = std::polar(1.0, t);
    const Complex z = center * step;
    // Offset from the center point kept exact near it.
    const Complex near = center * (step - 1.0);
    CirclePoint p = backward ? CirclePoint{z, alpha, beta, z - alpha, near}
                             : CirclePoint{z, alpha, beta, near, z - beta};
    g[j] = std::norm(family.profile()(p));
  }
  OneSidedReport r;
  const int sign = backward ? -1 : 1;
  r.maximal = hl_maximal(g, 0);
  r.first = family.norm(sign);
  for (int n = 1; n <= family.window(); ++n) r.sup = std::max(r.sup, family.norm(sign * n));
  r.bounded = std::isfinite(r.maximal) && r.sup <= 2.0 * r.first;
  return r;
}

std::vector<HolderCase> holder_reduction_cases(double p, double mu, int count) {
  if (!(p > 2.0)) throw Error(ErrorKind::Domain, "the reduction needs p > 2");
  CanonicalParams::from_multiplier(mu);
  if (count < 1) throw Error(ErrorKind::Config, "count must be >= 1");
  const double eps = 0.5 - 1.0 / p;
  std::vector<HolderCase> out;
  for (int k = 1; k <= count; ++k) {
    const double delta = eps * k / (count + 1);
    WeightSpec w;
    w.gamma = 0.5 + delta;
    w.delta = 0.5 + delta;
    out.push_back({delta, w, Annulus(std::pow(mu, -delta), std::pow(mu, delta))});
  }
  return out;
}

}  // namespace hypcomp
