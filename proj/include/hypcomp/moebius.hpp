#pragma once

#include <complex>
#include <optional>
#include <utility>

namespace hypcomp {

using Complex = std::complex<double>;

/// A point of the Riemann sphere. The point at infinity is an explicit state,
/// never an overflowed double.
struct ExtendedPoint {
  Complex value{0.0, 0.0};
  bool infinite = false;

  static ExtendedPoint at_infinity() { return {Complex{}, true}; }
  static ExtendedPoint finite(Complex z) { return {z, false}; }

  bool is_finite() const { return !infinite; }
};

bool near(const ExtendedPoint& p, const ExtendedPoint& q, double tol);

enum class MapKind { Identity, Elliptic, Parabolic, Hyperbolic, Loxodromic };

const char* to_string(MapKind kind);

/// z -> (a z + b) / (c z + d), defined up to a common nonzero scale.
class MoebiusMap {
 public:
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MoebiusMap rotation(Complex unimodular) { return {unimodular, 0.0, 0.0, 1.0}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  ExtendedPoint operator()(const ExtendedPoint& z) const;
  /// Evaluates at a finite point; returns the extended point at the pole.
  ExtendedPoint apply(Complex z) const { return (*this)(ExtendedPoint::finite(z)); }
  /// Finite evaluation for callers that know z is not the pole.
  Complex at(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }

  Complex derivative(Complex z) const;

  /// (*this) o other
  MoebiusMap compose(const MoebiusMap& other) const;
  MoebiusMap inverse() const;

  /// Same map scaled so that ad - bc = 1 (sign ambiguity left as is).
  MoebiusMap normalized() const;

  /// Projective equality: both maps normalized to unit determinant, then
  /// compared entrywise against either sign.
  bool projectively_equal(const MoebiusMap& other, double tol = 1e-10) const;

 private:
  Complex a_, b_, c_, d_;
};

/// Trace-squared classification with a 1e-9 band around the boundary cases.
MapKind classify(const MoebiusMap& m);

/// Roots of c z^2 + (d - a) z - b = 0. Finite points come first; when both
/// are finite the one with |m'| < 1 (attracting) is listed first.
std::pair<ExtendedPoint, ExtendedPoint> fixed_points(const MoebiusMap& m);

/// Derivative of the conjugated dilation, normalized so |multiplier| >= 1.
Complex multiplier(const MoebiusMap& m);

struct CanonicalParams {
  double mu;
  double r;

  static CanonicalParams from_multiplier(double mu);
};

/// A validated hyperbolic automorphism of the unit disc.
///
/// Besides the map itself it keeps the normalizing automorphism psi with
/// psi(+1) = attractive and psi(-1) = repulsive, so that
/// map = psi o canonical(mu) o psi^{-1}. For canonical maps psi is the identity.
class HyperbolicAutomorphism {
 public:
  static HyperbolicAutomorphism canonical(double mu);
  static HyperbolicAutomorphism from_map(const MoebiusMap& m);

  const MoebiusMap& map() const { return map_; }
  const MoebiusMap& normalizer() const { return normalizer_; }
  Complex attractive() const { return alpha_; }
  Complex repulsive() const { return beta_; }
  double multiplier() const { return mu_; }
  bool is_canonical() const { return canonical_; }

  Complex operator()(Complex z) const { return map_.at(z); }

 private:
  HyperbolicAutomorphism(MoebiusMap map, MoebiusMap normalizer, Complex alpha, Complex beta,
                         double mu, bool canonical);

  MoebiusMap map_;
  MoebiusMap normalizer_;
  Complex alpha_;
  Complex beta_;
  double mu_;
  bool canonical_;
};

HyperbolicAutomorphism make_canonical(double mu);

/// Signed canonical parameter of the n-th iterate: tanh(n log(mu) / 2).
double canonical_iterate_parameter(double mu, int n);
/// 1 - r_n for n >= 0, i.e. 2 / (mu^n + 1), evaluated without cancellation.
double canonical_iterate_gap(double mu, int n);

/// n-th compositional iterate (negative n iterates the inverse). Canonical
/// maps use the closed form; others are conjugated to canonical form.
MoebiusMap iterate(const HyperbolicAutomorphism& phi, int n);

/// Binary-powering of the coefficient matrix. Slower and less accurate than
/// iterate(); kept as an independent route.
MoebiusMap iterate_by_composition(const MoebiusMap& m, int n);

ExtendedPoint cayley(const ExtendedPoint& w);
ExtendedPoint cayley_inverse(const ExtendedPoint& z);
MoebiusMap cayley_map();
MoebiusMap cayley_inverse_map();

/// Disc automorphism psi with psi(+1) = alpha and psi(-1) = beta, built from
/// the half-plane map i (w - i b) / (w - i a) conjugated by the Cayley map.
MoebiusMap conjugator(Complex alpha, Complex beta);

/// psi o phi o psi^{-1} for a disc automorphism psi.
HyperbolicAutomorphism conjugate(const HyperbolicAutomorphism& phi, const MoebiusMap& psi);

}  // namespace hypcomp
