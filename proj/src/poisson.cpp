#include "hypcomp/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypcomp/error.hpp"
#include "hypcomp/moebius.hpp"

namespace hypcomp {

void KernelPoint::validate() const {
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorKind::Domain, "rho must lie in [0, 1)");
  if (!(std::abs(theta) <= std::numbers::pi)) {
    throw Error(ErrorKind::Domain, "theta must lie in [-pi, pi]");
  }
}

double kernel(Complex a, Complex zeta) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::Domain, "Poisson kernel needs |a| < 1");
  return (1.0 - std::norm(a)) / std::norm(zeta - a);
}

double kernel_at_radius(double gap, double theta) {
  const double rho = 1.0 - gap;
  const double s = std::sin(0.5 * theta);
  return gap * (1.0 + rho) / (gap * gap + 4.0 * rho * s * s);
}

double kernel_bound_from_gap(double gap, double theta) {
  const double t = theta / std::numbers::pi;
  return 4.0 * gap / (gap * gap + t * t);
}

double kernel_bound(const KernelPoint& p) {
  p.validate();
  return kernel_bound_from_gap(1.0 - p.rho, p.theta);
}

SumBoundReport orbit_kernel_sum(double mu, double theta, int n_terms) {
  CanonicalParams::from_multiplier(mu);
  if (theta == 0.0) {
    throw Error(ErrorKind::Domain, "orbit kernel sum diverges at theta = 0");
  }
  if (!(std::abs(theta) <= std::numbers::pi)) {
    throw Error(ErrorKind::Domain, "theta must lie in [-pi, pi]");
  }
  if (n_terms < 0) throw Error(ErrorKind::Domain, "n_terms must be >= 0");

  SumBoundReport report;
  report.mu = mu;
  report.theta = theta;
  report.terms_used = n_terms;
  report.bound = 16.0 * mu / (mu - 1.0) * (std::numbers::pi / std::abs(theta));
  double sum = 0.0;
  for (int n = 0; n <= n_terms; ++n) {
    sum += kernel_at_radius(canonical_iterate_gap(mu, n), theta);
  }
  report.partial_sum = sum;
  return report;
}

double hl_maximal(std::span<const double> g, std::size_t index) {
  const std::size_t m = g.size();
  if (m == 0 || index >= m) throw Error(ErrorKind::Domain, "grid index out of range");
  for (double v : g) {
    if (!(v >= 0.0)) throw Error(ErrorKind::Domain, "maximal function needs nonnegative samples");
  }
  // Prefix sums over two periods so every centered arc is a contiguous range.
  std::vector<double> prefix(2 * m + 1, 0.0);
  for (std::size_t j = 0; j < 2 * m; ++j) prefix[j + 1] = prefix[j] + g[j % m];

  double best = g[index];
  for (std::size_t half = 1; half <= m / 2; half *= 2) {
    const std::size_t count = std::min(2 * half + 1, m);
    const std::size_t start = (index + m - half) % m;
    const double avg = (prefix[start + count] - prefix[start]) / static_cast<double>(count);
    best = std::max(best, avg);
  }
  return best;
}

double radial_maximal(std::span<const double> g, Complex zeta, std::span<const double> radii) {
  const std::size_t m = g.size();
  if (m == 0) throw Error(ErrorKind::Domain, "empty sample sequence");
  for (double v : g) {
    if (!(v >= 0.0)) throw Error(ErrorKind::Domain, "maximal function needs nonnegative samples");
  }
  const Complex direction = zeta / std::abs(zeta);
  double best = 0.0;
  for (double rho : radii) {
    if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorKind::Domain, "radii must lie in [0, 1)");
    const Complex a = rho * direction;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const Complex node = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                               static_cast<double>(m));
      s += g[j] * kernel(a, node);
    }
    best = std::max(best, s / static_cast<double>(m));
  }
  return best;
}

}  // namespace hypcomp
