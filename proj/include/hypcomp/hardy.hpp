#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hypcomp/moebius.hpp"

namespace hypcomp {

/// Tail energy above this fraction of norm^2 marks a function as unresolved.
inline constexpr double kUnresolvedRatio = 1e-6;
/// Norms at or below this fraction of the input scale count as zero.
inline constexpr double kZeroRatio = 1e-12;

/// Exponents of the weight (1 - conj(attractive) z)^gamma (1 - conj(repulsive) z)^delta.
///
/// With the default points this is (1 - z)^gamma (1 + z)^delta, whose boundary
/// modulus is |z - 1|^gamma |z + 1|^delta. Principal branches throughout; the
/// factor differs from (z - alpha)^gamma (z - beta)^delta by a unimodular
/// constant only.
struct WeightSpec {
  double gamma = 0.0;
  double delta = 0.0;
  Complex attractive{1.0, 0.0};
  Complex repulsive{-1.0, 0.0};

  void validate() const;
};

/// Analytic function on the disc stored as a truncated Taylor series.
///
/// `tail_energy` estimates the squared H2 norm lost beyond the budget (and any
/// aliasing picked up along the way). `resolved` is the number of leading
/// coefficients that are trusted; composition shrinks it because energy from
/// the discarded tail moves into the upper part of the band.
class H2Function {
 public:
  H2Function() = default;
  explicit H2Function(std::vector<Complex> coeffs, double tail_energy = 0.0);
  H2Function(std::vector<Complex> coeffs, double tail_energy, std::size_t resolved);

  static H2Function constant(Complex value, std::size_t budget);
  static H2Function monomial(std::size_t degree, std::size_t budget);
  /// Coefficients zero-padded to the budget.
  static H2Function polynomial(std::span<const Complex> coeffs, std::size_t budget);

  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
  std::size_t budget() const { return coeffs_.size(); }
  double tail_energy() const { return tail_energy_; }
  std::size_t resolved_band() const { return resolved_; }

  double norm_squared() const;
  /// tail_energy <= kUnresolvedRatio * norm^2
  bool is_resolved() const;

  /// Horner evaluation of the truncation.
  Complex operator()(Complex z) const;

  H2Function& operator+=(const H2Function& other);
  H2Function& operator-=(const H2Function& other);
  H2Function& operator*=(Complex s);

 private:
  std::vector<Complex> coeffs_;
  double tail_energy_ = 0.0;
  std::size_t resolved_ = 0;
};

H2Function operator+(H2Function lhs, const H2Function& rhs);
H2Function operator-(H2Function lhs, const H2Function& rhs);
H2Function operator*(Complex s, H2Function f);

/// M equispaced nodes on the circle, each with quadrature weight 1/M.
class BoundaryGrid {
 public:
  explicit BoundaryGrid(std::size_t size);

  std::size_t size() const { return nodes_.size(); }
  std::span<const Complex> nodes() const { return nodes_; }
  Complex node(std::size_t j) const { return nodes_[j]; }
  double weight() const { return 1.0 / static_cast<double>(nodes_.size()); }

 private:
  std::vector<Complex> nodes_;
};

/// Largest |m'| on the unit circle for a disc automorphism m:
/// (1 + |m(0)|) / (1 - |m(0)|).
double max_boundary_stretch(const MoebiusMap& m);

/// Smallest power-of-two grid that is at least oversample * budget and keeps
/// the composed series free of wrap-around for the map's boundary stretch.
std::size_t recommended_grid_size(std::size_t budget, const MoebiusMap& m,
                                  std::size_t oversample = 4);

/// Power-law extrapolation of sum_{k >= N} |c_k|^2 from the last two octaves.
double estimate_tail_energy(std::span<const Complex> coeffs);

H2Function weight_function(const WeightSpec& w, std::size_t budget);

/// ((1 + z) / (1 - z))^a as exp(2 a artanh z); requires |Re a| < 1/2.
H2Function eigenfunction_fa(Complex a, std::size_t budget);

/// Values of the truncated series at arbitrary points of the closed disc.
/// Large inputs on the circle go through an oversampled grid and local
/// Lagrange interpolation; small ones use Horner directly.
std::vector<Complex> evaluate_on_circle(const H2Function& f, std::span<const Complex> points);

/// f o m, sampled on the grid and transformed back to Taylor coefficients.
/// m must map the circle onto itself; grid.size() >= 4 * f.budget().
H2Function compose(const H2Function& f, const MoebiusMap& m, const BoundaryGrid& grid);

double norm(const H2Function& f);
/// Conjugate-linear in the second argument.
Complex inner(const H2Function& f, const H2Function& g);
H2Function multiply(const H2Function& f, const H2Function& g);

/// Integral of |f|^2 P_a dm on the truncation, computed exactly from the
/// Fourier coefficients of the Poisson kernel (a^{j-k} above the diagonal,
/// conj(a)^{k-j} below).
double poisson_quadratic_form(const H2Function& f, Complex a);

/// ||image - lambda f|| / ||f|| over the band both functions resolve.
double relative_eigen_residual(const H2Function& image, const H2Function& f, Complex lambda);

}  // namespace hypcomp
