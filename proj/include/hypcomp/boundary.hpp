#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"

namespace hypcomp {

/// A point of the unit circle with its offsets from the two fixed points of a
/// hyperbolic automorphism. The offsets are carried separately because orbit
/// points crowd the fixed points at distances far below machine epsilon
/// relative to 1, where z - alpha cannot be recovered from z.
struct CirclePoint {
  Complex z;
  Complex alpha;
  Complex beta;
  Complex from_alpha;  // z - alpha
  Complex from_beta;   // z - beta

  static CirclePoint generic(Complex z, Complex alpha, Complex beta);
};

/// A function on the closed disc known through its boundary values.
///
/// Profiles are the inputs of the orbit constructions: weights
/// (1 - conj(alpha) z)^gamma (1 - conj(beta) z)^delta, optionally multiplied by
/// a polynomial, or a plain truncated Taylor series.
class BoundaryProfile {
 public:
  using Evaluator = std::function<Complex(const CirclePoint&)>;

  static BoundaryProfile constant(Complex value);
  static BoundaryProfile weight(const WeightSpec& w);
  static BoundaryProfile weighted(const WeightSpec& w, const H2Function& factor);
  static BoundaryProfile taylor(const H2Function& f);

  Complex operator()(const CirclePoint& p) const { return eval_(p); }
  const std::string& label() const { return label_; }

  /// Truncated Taylor expansion, when the profile has one at this budget.
  std::optional<H2Function> to_taylor(std::size_t budget) const;

 private:
  BoundaryProfile(Evaluator eval, std::string label,
                  std::function<std::optional<H2Function>(std::size_t)> taylor);

  Evaluator eval_;
  std::string label_;
  std::function<std::optional<H2Function>(std::size_t)> taylor_;
};

struct OrbitGridOptions {
  int steps_per_period = 8;  // grid nodes per factor mu in the half-plane
  double margin = 40.0;      // extra log-coordinate range beyond the orbit window
};

/// Quadrature on the unit circle adapted to a hyperbolic automorphism.
///
/// The circle is pulled back to the imaginary axis of the right half-plane by
/// the Cayley map and parametrized by s = log|y| on each half (upper: y > 0,
/// lower: y < 0). The canonical map acts there as s -> s + log(mu), so with a
/// step of log(mu) / steps_per_period one application of phi is a shift by
/// steps_per_period nodes. Non-canonical maps are handled by transporting the
/// nodes with the normalizer psi. Nodes with |index| <= base_extent() carry the
/// quadrature; the rest exist so that members f o phi_n with |n| <= capacity
/// can be read off by shifting.
class OrbitGrid {
 public:
  OrbitGrid(const HyperbolicAutomorphism& phi, int capacity, OrbitGridOptions options = {});

  const HyperbolicAutomorphism& phi() const { return phi_; }
  int period() const { return period_; }
  double step() const { return step_; }
  long base_extent() const { return base_; }
  long full_extent() const { return full_; }
  int capacity() const { return capacity_; }

  /// Number of quadrature nodes (both halves).
  std::size_t base_size() const { return 2 * static_cast<std::size_t>(2 * base_ + 1); }

  /// Node on half `branch` (0 upper, 1 lower) at index j in [-full, full].
  CirclePoint node(int branch, long j) const;
  /// Quadrature weight of a base node, normalized measure.
  double weight(int branch, long j) const;

  /// Samples of a profile on all nodes, laid out by branch then index.
  std::vector<Complex> sample_full(const BoundaryProfile& f) const;
  /// Position of (branch, j) in a full-extent sample vector.
  std::size_t full_offset(int branch, long j) const {
    return static_cast<std::size_t>(branch) * static_cast<std::size_t>(2 * full_ + 1) +
           static_cast<std::size_t>(j + full_);
  }
  /// Position of (branch, j) in a base-extent vector.
  std::size_t base_offset(int branch, long j) const {
    return static_cast<std::size_t>(branch) * static_cast<std::size_t>(2 * base_ + 1) +
           static_cast<std::size_t>(j + base_);
  }

  /// Boundary L2 norm^2 (equal to the H2 norm^2 for analytic functions) of
  /// base-extent samples. `stride` 2 uses every other node with doubled
  /// weight, for quadrature error estimates.
  double norm_squared(std::span<const Complex> base_samples, int stride = 1) const;

 private:
  HyperbolicAutomorphism phi_;
  int capacity_;
  int period_;
  double step_;
  long base_;
  long full_;
  std::vector<double> weights_;  // base nodes, layout as base_offset
};

}  // namespace hypcomp
