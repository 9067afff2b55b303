#include "hypcomp/boundary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hypcomp/error.hpp"

namespace hypcomp {

namespace {

constexpr double kSamePointTol = 1e-12;
// exp(s) must stay finite in double precision.
constexpr double kMaxLogCoordinate = 700.0;

Complex weight_factor(double exponent, Complex point, const CirclePoint& p) {
  if (exponent == 0.0) return 1.0;
  Complex diff;
  if (std::abs(point - p.alpha) <= kSamePointTol) {
    diff = p.from_alpha;
  } else if (std::abs(point - p.beta) <= kSamePointTol) {
    diff = p.from_beta;
  } else {
    diff = p.z - point;
  }
  // 1 - conj(point) z == -conj(point) (z - point) for unimodular point.
  const Complex base = -std::conj(point) * diff;
  if (base == Complex{}) return 0.0;
  return std::pow(base, exponent);
}

H2Function fit_budget(const H2Function& f, std::size_t budget) {
  if (f.budget() == budget) return f;
  std::vector<Complex> c(budget);
  const std::size_t n = std::min(budget, f.budget());
  for (std::size_t k = 0; k < n; ++k) c[k] = f.coeff(k);
  double dropped = f.tail_energy();
  for (std::size_t k = n; k < f.budget(); ++k) dropped += std::norm(f.coeff(k));
  return H2Function(std::move(c), dropped, std::min(f.resolved_band(), budget));
}

std::string describe(const WeightSpec& w) {
  std::ostringstream os;
  os << "weight(gamma=" << w.gamma << ", delta=" << w.delta << ")";
  return os.str();
}

}  // namespace

CirclePoint CirclePoint::generic(Complex z, Complex alpha, Complex beta) {
  return {z, alpha, beta, z - alpha, z - beta};
}

BoundaryProfile::BoundaryProfile(Evaluator eval, std::string label,
                                 std::function<std::optional<H2Function>(std::size_t)> taylor)
    : eval_(std::move(eval)), label_(std::move(label)), taylor_(std::move(taylor)) {}

std::optional<H2Function> BoundaryProfile::to_taylor(std::size_t budget) const {
  return taylor_(budget);
}

BoundaryProfile BoundaryProfile::constant(Complex value) {
  return BoundaryProfile([value](const CirclePoint&) { return value; }, "constant",
                         [value](std::size_t n) -> std::optional<H2Function> {
                           return H2Function::constant(value, n);
                         });
}

BoundaryProfile BoundaryProfile::weight(const WeightSpec& w) {
  w.validate();
  return BoundaryProfile(
      [w](const CirclePoint& p) {
        return weight_factor(w.gamma, w.attractive, p) * weight_factor(w.delta, w.repulsive, p);
      },
      describe(w),
      [w](std::size_t n) -> std::optional<H2Function> { return weight_function(w, n); });
}

BoundaryProfile BoundaryProfile::weighted(const WeightSpec& w, const H2Function& factor) {
  w.validate();
  return BoundaryProfile(
      [w, factor](const CirclePoint& p) {
        return weight_factor(w.gamma, w.attractive, p) *
               weight_factor(w.delta, w.repulsive, p) * factor(p.z);
      },
      describe(w) + " * taylor",
      [w, factor](std::size_t n) -> std::optional<H2Function> {
        return multiply(weight_function(w, n), fit_budget(factor, n));
      });
}

BoundaryProfile BoundaryProfile::taylor(const H2Function& f) {
  return BoundaryProfile([f](const CirclePoint& p) { return f(p.z); }, "taylor",
                         [f](std::size_t n) -> std::optional<H2Function> {
                           return fit_budget(f, n);
                         });
}

OrbitGrid::OrbitGrid(const HyperbolicAutomorphism& phi, int capacity, OrbitGridOptions options)
    : phi_(phi), capacity_(capacity), period_(options.steps_per_period) {
  if (capacity < 1) throw Error(ErrorKind::Config, "orbit window must be >= 1");
  if (period_ < 2 || period_ % 2 != 0) {
    throw Error(ErrorKind::Config, "steps_per_period must be an even number >= 2");
  }
  if (!(options.margin > 0.0)) throw Error(ErrorKind::Config, "grid margin must be positive");
  const double log_mu = std::log(phi.multiplier());
  step_ = log_mu / period_;
  base_ = static_cast<long>(std::ceil((capacity * log_mu + options.margin) / step_));
  base_ += base_ % 2;  // even extent keeps the stride-2 subgrid symmetric
  full_ = base_ + static_cast<long>(capacity + 1) * period_;
  if (static_cast<double>(full_) * step_ > kMaxLogCoordinate) {
    throw Error(ErrorKind::Config, "orbit window too large for this multiplier");
  }

  weights_.resize(base_size());
  for (int b = 0; b < 2; ++b) {
    for (long j = -base_; j <= base_; ++j) {
      const double s = static_cast<double>(j) * step_;
      double w = step_ / (2.0 * std::numbers::pi * std::cosh(s));
      if (!phi_.is_canonical()) {
        // |psi'| at the canonical node converts dm between the two pictures.
        const MoebiusMap& psi = phi_.normalizer();
        const double y = (b == 0 ? 1.0 : -1.0) * std::exp(s);
        const Complex iy(0.0, y);
        const Complex canon = (iy - 1.0) / (iy + 1.0);
        w *= std::abs(psi.determinant()) / std::norm(psi.c() * canon + psi.d());
      }
      weights_[base_offset(b, j)] = w;
    }
  }
}

CirclePoint OrbitGrid::node(int branch, long j) const {
  const double s = static_cast<double>(j) * step_;
  const double y = (branch == 0 ? 1.0 : -1.0) * std::exp(s);
  const Complex w(0.0, y);
  const Complex den = w + 1.0;
  const Complex zeta = (w - 1.0) / den;
  const Complex minus_one = -2.0 / den;  // zeta - 1
  const Complex plus_one = 2.0 * w / den;  // zeta + 1
  if (phi_.is_canonical()) return {zeta, 1.0, -1.0, minus_one, plus_one};

  const MoebiusMap& psi = phi_.normalizer();
  const Complex q = psi.c() * zeta + psi.d();
  const Complex det = psi.determinant();
  const Complex z = (psi.a() * zeta + psi.b()) / q;
  return {z / std::abs(z), phi_.attractive(), phi_.repulsive(),
          det * minus_one / (q * (psi.c() + psi.d())),
          det * plus_one / (q * (psi.d() - psi.c()))};
}

double OrbitGrid::weight(int branch, long j) const { return weights_[base_offset(branch, j)]; }

std::vector<Complex> OrbitGrid::sample_full(const BoundaryProfile& f) const {
  std::vector<Complex> out(2 * static_cast<std::size_t>(2 * full_ + 1));
  for (int b = 0; b < 2; ++b) {
    for (long j = -full_; j <= full_; ++j) out[full_offset(b, j)] = f(node(b, j));
  }
  return out;
}

double OrbitGrid::norm_squared(std::span<const Complex> samples, int stride) const {
  if (samples.size() != base_size()) {
    throw Error(ErrorKind::Config, "sample vector does not match the orbit grid");
  }
  double total = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (long j = -base_; j <= base_; j += stride) {
      const std::size_t k = base_offset(b, j);
      total += weights_[k] * std::norm(samples[k]);
    }
  }
  return total * stride;
}

}  // namespace hypcomp
