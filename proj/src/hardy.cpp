#include "hypcomp/hardy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hypcomp/error.hpp"
#include "hypcomp/fft.hpp"

namespace hypcomp {

namespace {

constexpr double kCircleTol = 1e-9;
// Lagrange stencil for off-grid evaluation on the oversampled circle grid.
constexpr int kStencil = 24;
constexpr std::size_t kOversampleForInterpolation = 16;
// Safety factor between the boundary stretch of a map and the coefficient
// band it can carry without mixing in discarded tail energy.
constexpr double kBandMargin = 1.25;

void require_budget(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorKind::Config, "coefficient budget must be a power of two, got " +
                                       std::to_string(n));
  }
}

double energy(std::span<const Complex> c, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t k = begin; k < std::min(end, c.size()); ++k) s += std::norm(c[k]);
  return s;
}

std::array<double, kStencil> lagrange_weights() {
  std::array<double, kStencil> w{};
  double binom = 1.0;
  for (int k = 0; k < kStencil; ++k) {
    w[k] = (k % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (kStencil - 1 - k) / (k + 1);
  }
  return w;
}

std::vector<Complex> binomial_series(double exponent, Complex direction, std::size_t n) {
  // (1 - direction z)^exponent
  std::vector<Complex> b(n);
  b[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    b[k] = b[k - 1] * ((kk - 1.0 - exponent) / kk) * direction;
  }
  return b;
}

std::vector<Complex> truncated_product(std::span<const Complex> f, std::span<const Complex> g,
                                       std::size_t n) {
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s{};
    for (std::size_t j = 0; j <= k; ++j) s += f[j] * g[k - j];
    out[k] = s;
  }
  return out;
}

}  // namespace

void WeightSpec::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.5) || !(delta >= 0.0 && delta <= 1.5)) {
    throw Error(ErrorKind::Config, "weight exponents must lie in [0, 3/2]");
  }
  if (std::abs(std::abs(attractive) - 1.0) > kCircleTol ||
      std::abs(std::abs(repulsive) - 1.0) > kCircleTol) {
    throw Error(ErrorKind::Config, "weight points must be unimodular");
  }
}

H2Function::H2Function(std::vector<Complex> coeffs, double tail_energy)
    : H2Function(std::move(coeffs), tail_energy, 0) {
  resolved_ = coeffs_.size();
}

H2Function::H2Function(std::vector<Complex> coeffs, double tail_energy, std::size_t resolved)
    : coeffs_(std::move(coeffs)), tail_energy_(tail_energy), resolved_(resolved) {
  require_budget(coeffs_.size());
  if (!(tail_energy_ >= 0.0)) throw Error(ErrorKind::Config, "tail energy must be >= 0");
  resolved_ = std::min(resolved_, coeffs_.size());
}

H2Function H2Function::constant(Complex value, std::size_t budget) {
  require_budget(budget);
  std::vector<Complex> c(budget);
  c[0] = value;
  return H2Function(std::move(c));
}

H2Function H2Function::monomial(std::size_t degree, std::size_t budget) {
  require_budget(budget);
  if (degree >= budget) throw Error(ErrorKind::Config, "monomial degree exceeds budget");
  std::vector<Complex> c(budget);
  c[degree] = 1.0;
  return H2Function(std::move(c));
}

H2Function H2Function::polynomial(std::span<const Complex> coeffs, std::size_t budget) {
  require_budget(budget);
  if (coeffs.size() > budget) throw Error(ErrorKind::Config, "polynomial exceeds budget");
  std::vector<Complex> c(budget);
  std::copy(coeffs.begin(), coeffs.end(), c.begin());
  return H2Function(std::move(c));
}

double H2Function::norm_squared() const { return energy(coeffs_, 0, coeffs_.size()); }

bool H2Function::is_resolved() const {
  return tail_energy_ <= kUnresolvedRatio * norm_squared();
}

Complex H2Function::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

H2Function& H2Function::operator+=(const H2Function& other) {
  if (other.budget() != budget()) throw Error(ErrorKind::Config, "budget mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  const double t = std::sqrt(tail_energy_) + std::sqrt(other.tail_energy_);
  tail_energy_ = t * t;
  resolved_ = std::min(resolved_, other.resolved_);
  return *this;
}

H2Function& H2Function::operator-=(const H2Function& other) {
  if (other.budget() != budget()) throw Error(ErrorKind::Config, "budget mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  const double t = std::sqrt(tail_energy_) + std::sqrt(other.tail_energy_);
  tail_energy_ = t * t;
  resolved_ = std::min(resolved_, other.resolved_);
  return *this;
}

H2Function& H2Function::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  tail_energy_ *= std::norm(s);
  return *this;
}

H2Function operator+(H2Function lhs, const H2Function& rhs) { return lhs += rhs; }
H2Function operator-(H2Function lhs, const H2Function& rhs) { return lhs -= rhs; }
H2Function operator*(Complex s, H2Function f) { return f *= s; }

BoundaryGrid::BoundaryGrid(std::size_t size) {
  require_budget(size);
  nodes_.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    nodes_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                    static_cast<double>(size));
  }
}

double max_boundary_stretch(const MoebiusMap& m) {
  const ExtendedPoint origin = m.apply(0.0);
  if (origin.infinite || std::abs(origin.value) >= 1.0) {
    throw Error(ErrorKind::Domain, "map does not send the disc into itself");
  }
  const double s = std::abs(origin.value);
  return (1.0 + s) / (1.0 - s);
}

std::size_t recommended_grid_size(std::size_t budget, const MoebiusMap& m,
                                  std::size_t oversample) {
  require_budget(budget);
  const double stretch = max_boundary_stretch(m);
  const double needed = (stretch + kBandMargin) * static_cast<double>(budget);
  return next_power_of_two(std::max<std::size_t>(oversample * budget,
                                                 static_cast<std::size_t>(std::ceil(needed))));
}

double estimate_tail_energy(std::span<const Complex> c) {
  const std::size_t n = c.size();
  if (n < 8) return 0.0;
  const double upper = energy(c, n / 2, n);
  const double lower = energy(c, n / 4, n / 2);
  if (upper == 0.0) return 0.0;
  if (!(lower > upper)) {
    // No decay across the last octave: the truncation says nothing useful.
    return std::max(upper, lower) * 1e6;
  }
  // Octave energies shrink geometrically for power-law coefficients.
  const double ratio = upper / lower;
  return upper * ratio / (1.0 - ratio);
}

H2Function weight_function(const WeightSpec& w, std::size_t budget) {
  require_budget(budget);
  w.validate();
  const auto a = binomial_series(w.gamma, std::conj(w.attractive), budget);
  const auto b = binomial_series(w.delta, std::conj(w.repulsive), budget);
  std::vector<Complex> c;
  if (w.delta == 0.0) {
    c = a;
  } else if (w.gamma == 0.0) {
    c = b;
  } else {
    c = truncated_product(a, b, budget);
  }
  // Clean exact zeros of terminating series (integer exponents).
  for (auto& v : c) {
    if (std::abs(v) < 1e-300) v = 0.0;
  }
  const double tail = estimate_tail_energy(c);
  return H2Function(std::move(c), tail);
}

H2Function eigenfunction_fa(Complex a, std::size_t budget) {
  require_budget(budget);
  if (!(std::abs(a.real()) < 0.5)) {
    throw Error(ErrorKind::NotInH2, "f_a lies in H2 only for |Re a| < 1/2");
  }
  // e = exp(h), h = 2a (z + z^3/3 + ...), so n e_n = sum_k k h_k e_{n-k} and
  // k h_k = 2a for every odd k: e_n = (2a/n) * sum of e_m with m = n-1, n-3, ...
  std::vector<Complex> e(budget);
  e[0] = 1.0;
  std::array<Complex, 2> parity_sum{Complex{1.0}, Complex{}};
  for (std::size_t n = 1; n < budget; ++n) {
    e[n] = 2.0 * a / static_cast<double>(n) * parity_sum[(n - 1) % 2];
    parity_sum[n % 2] += e[n];
  }
  const double tail = estimate_tail_energy(e);
  return H2Function(std::move(e), tail);
}

std::vector<Complex> evaluate_on_circle(const H2Function& f, std::span<const Complex> points) {
  std::vector<Complex> out(points.size());
  const std::size_t n = f.budget();
  bool on_circle = true;
  for (const auto& p : points) {
    if (std::abs(std::abs(p) - 1.0) > 1e-12) {
      on_circle = false;
      break;
    }
  }
  if (!on_circle || static_cast<double>(n) * static_cast<double>(points.size()) <= 1 << 20) {
    for (std::size_t j = 0; j < points.size(); ++j) out[j] = f(points[j]);
    return out;
  }

  const std::size_t fine = std::max<std::size_t>(64, kOversampleForInterpolation * n);
  const std::vector<Complex> values = synthesis_dft(f.coeffs(), fine);
  static const std::array<double, kStencil> weights = lagrange_weights();
  const double scale = static_cast<double>(fine) / (2.0 * std::numbers::pi);
  const long m = static_cast<long>(fine);
  for (std::size_t j = 0; j < points.size(); ++j) {
    double t = std::arg(points[j]);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    const double u = t * scale;
    const long base = static_cast<long>(std::floor(u));
    const double frac = u - static_cast<double>(base);
    if (frac == 0.0) {
      out[j] = values[static_cast<std::size_t>(((base % m) + m) % m)];
      continue;
    }
    const long first = base - (kStencil / 2 - 1);
    Complex num{};
    double den = 0.0;
    for (int k = 0; k < kStencil; ++k) {
      const double x = u - static_cast<double>(first + k);
      const double wk = weights[k] / x;
      const std::size_t idx = static_cast<std::size_t>((((first + k) % m) + m) % m);
      num += wk * values[idx];
      den += wk;
    }
    out[j] = num / den;
  }
  return out;
}

H2Function compose(const H2Function& f, const MoebiusMap& m, const BoundaryGrid& grid) {
  const std::size_t n = f.budget();
  const std::size_t size = grid.size();
  if (size < 4 * n) {
    throw Error(ErrorKind::Config, "boundary grid must have at least 4x the coefficient budget");
  }
  std::vector<Complex> points(size);
  for (std::size_t j = 0; j < size; ++j) {
    const ExtendedPoint p = m.apply(grid.node(j));
    if (p.infinite || std::abs(std::abs(p.value) - 1.0) > kCircleTol) {
      throw Error(ErrorKind::Domain, "composition map does not preserve the unit circle");
    }
    points[j] = p.value / std::abs(p.value);
  }
  const double stretch = max_boundary_stretch(m);

  const std::vector<Complex> values = evaluate_on_circle(f, points);
  std::vector<Complex> spectrum = analysis_dft(values);

  // Analytic images carry no negative frequencies; energy there is wrap-around.
  const double truncated = energy(spectrum, n, size / 2);
  const double aliased = energy(spectrum, size / 2, size);
  const double propagated = f.tail_energy() * stretch;

  std::size_t resolved = f.resolved_band();
  const bool exact_input = f.tail_energy() == 0.0 && f.resolved_band() == n;
  if (!exact_input && stretch > 1.0 + 1e-12) {
    resolved = static_cast<std::size_t>(
        std::floor(static_cast<double>(resolved) / (kBandMargin * stretch)));
  }
  spectrum.resize(n);
  return H2Function(std::move(spectrum), truncated + aliased + propagated, resolved);
}

double norm(const H2Function& f) { return std::sqrt(f.norm_squared()); }

Complex inner(const H2Function& f, const H2Function& g) {
  Complex s{};
  const std::size_t n = std::min(f.budget(), g.budget());
  for (std::size_t k = 0; k < n; ++k) s += f.coeff(k) * std::conj(g.coeff(k));
  return s;
}

H2Function multiply(const H2Function& f, const H2Function& g) {
  const std::size_t n = std::max(f.budget(), g.budget());
  const std::size_t size = 2 * n;
  auto fv = synthesis_dft(f.coeffs(), size);
  const auto gv = synthesis_dft(g.coeffs(), size);
  for (std::size_t j = 0; j < size; ++j) fv[j] *= gv[j];
  std::vector<Complex> full = analysis_dft(fv);
  const double discarded = energy(full, n, size);
  full.resize(n);
  const double carried = f.norm_squared() * g.tail_energy() + g.norm_squared() * f.tail_energy();
  return H2Function(std::move(full), discarded + carried,
                    std::min(f.resolved_band(), g.resolved_band()));
}

double poisson_quadratic_form(const H2Function& f, Complex a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::Domain, "Poisson kernel needs |a| < 1");
  const auto c = f.coeffs();
  std::size_t len = c.size();
  while (len > 0 && c[len - 1] == Complex{}) --len;
  double total = energy(c, 0, len);
  Complex off{};
  Complex power = 1.0;
  for (std::size_t d = 1; d < len; ++d) {
    power *= a;
    Complex corr{};
    for (std::size_t k = 0; k + d < len; ++k) corr += c[k + d] * std::conj(c[k]);
    off += power * corr;
  }
  total += 2.0 * off.real();
  return total;
}

double relative_eigen_residual(const H2Function& image, const H2Function& f, Complex lambda) {
  const std::size_t band = std::min({image.resolved_band(), f.resolved_band(), image.budget(),
                                     f.budget()});
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < band; ++k) {
    num += std::norm(image.coeff(k) - lambda * f.coeff(k));
    den += std::norm(f.coeff(k));
  }
  if (!(den > 0.0)) throw Error(ErrorKind::Numerical, "eigen residual of a zero function");
  return std::sqrt(num / den);
}

}  // namespace hypcomp
