#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypcomp/boundary.hpp"
#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"

namespace hypcomp {

/// Open annulus R1 < |z| < R2 centered at the origin.
struct Annulus {
  double inner = 0.0;
  double outer = 0.0;

  Annulus(double inner_radius, double outer_radius);
  bool contains(Complex z) const;
};

enum class Direction { Forward, Backward };

struct OrbitOptions {
  int window = 40;
  OrbitGridOptions grid{};
  /// Taylor budget for the Poisson-form cross-check of member norms; 0 skips it.
  std::size_t taylor_budget = 1024;
  /// Members with |n| up to this index are cross-checked.
  int crosscheck_limit = 6;
};

struct MemberDiagnostics {
  int index = 0;
  double norm = 0.0;
  /// |norm(step h) - norm(step 2h)| / norm: trapezoid error estimate.
  double quadrature_gap = 0.0;
  /// |norm - sqrt(Poisson form of the Taylor truncation)| / norm, when computed.
  std::optional<double> poisson_form_gap;
  /// Whether the Taylor truncation used for the cross-check was resolved.
  bool taylor_resolved = true;
};

struct DecayFit {
  double exponent = 0.0;  // fitted epsilon: norms ~ mu^{-n * exponent}
  double slope = 0.0;     // d log(norm) / dn
  int points_used = 0;
};

/// The orbit {f o phi_n : |n| <= window} of a boundary profile, sampled on an
/// orbit grid, with the member norms and their diagnostics.
class OrbitFamily {
 public:
  OrbitFamily(BoundaryProfile f, HyperbolicAutomorphism phi, OrbitOptions options = {});

  const BoundaryProfile& profile() const { return profile_; }
  const HyperbolicAutomorphism& phi() const { return grid_.phi(); }
  const OrbitGrid& grid() const { return grid_; }
  int window() const { return window_; }

  /// ||f o phi_n|| for |n| <= window.
  double norm(int n) const;
  const std::vector<MemberDiagnostics>& diagnostics() const { return diagnostics_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Samples of f o phi_n on the quadrature nodes, |n| <= window + 1.
  std::vector<Complex> member(int n) const;
  /// f at full-extent node (branch, j).
  Complex sample(int branch, long j) const { return samples_[grid_.full_offset(branch, j)]; }

  /// True when f o phi = f up to rounding (e.g. constants).
  bool invariant() const { return invariant_; }

  /// Decay exponents fitted with skip = 3 at construction.
  const std::optional<DecayFit>& forward_fit() const { return forward_fit_; }
  const std::optional<DecayFit>& backward_fit() const { return backward_fit_; }

 private:
  BoundaryProfile profile_;
  OrbitGrid grid_;
  int window_;
  std::vector<Complex> samples_;
  std::vector<double> norms_;
  std::vector<MemberDiagnostics> diagnostics_;
  std::vector<std::string> warnings_;
  bool invariant_ = false;
  std::optional<DecayFit> forward_fit_;
  std::optional<DecayFit> backward_fit_;
};

OrbitFamily orbit_norms(const BoundaryProfile& f, const HyperbolicAutomorphism& phi, int window,
                        OrbitOptions options = {});

/// Least-squares slope of log ||f o phi_{+-n}|| against n over
/// n = skip .. window, divided by -log(mu). Points whose norm has fallen to
/// the zero threshold end the range.
DecayFit decay_fit(const OrbitFamily& family, Direction direction, int skip);

/// Finite combination sum_n c_n (f o phi_n) of orbit members.
struct OrbitSeries {
  std::map<int, Complex> coefficients;

  /// Samples of (sum_n c_n f o phi_{n + shift}) on the quadrature nodes;
  /// shift = 1 gives the series composed with phi.
  std::vector<Complex> samples(const OrbitFamily& family, int shift = 0) const;
  /// Value at an arbitrary point of the closed disc via Moebius iterates.
  Complex evaluate(const OrbitFamily& family, Complex z) const;
  /// Taylor coefficients from samples on the equispaced circle grid.
  H2Function to_taylor(const OrbitFamily& family, std::size_t budget,
                       std::size_t oversample = 4) const;
};

struct EigenReport {
  Complex lambda;
  int truncation = 0;
  double eigenfunction_norm = 0.0;
  double relative_residual = 0.0;
  bool exceptional = false;
  /// ok | window-limited | invariant-orbit | exceptional | divergent
  std::string status = "ok";
  /// sum_n |lambda|^{-n} ||f o phi_n|| over the truncation.
  double scale = 0.0;
};

OrbitSeries laurent_series(Complex lambda, int truncation);

/// Partial sum over |n| <= truncation with its residual, no convergence check.
EigenReport laurent_partial(const OrbitFamily& family, Complex lambda, int truncation);

/// Laurent eigenfunction F = sum lambda^{-n} f o phi_n with the truncation
/// picked from the fitted decay rates so both geometric tails fall below tol.
/// Throws Divergence when a tail ratio is >= 1 at this lambda.
EigenReport laurent_eigenfunction(const OrbitFamily& family, Complex lambda, double tol);

struct ScanOptions {
  int radial = 16;
  int angular = 16;
  double residual_tol = 1e-4;
  double tail_tol = 1e-6;
};

struct ScanResult {
  std::vector<EigenReport> reports;  // radial-major grid order
  int radial = 0;
  int angular = 0;
  int passed = 0;
  int exceptional = 0;
  int divergent = 0;

  double pass_fraction() const;
  /// No two flagged exceptional points are grid neighbours.
  bool exceptional_isolated() const;
};

/// Laurent eigenfunctions on a polar grid of the annulus (midpoint radii,
/// angles 2 pi (j + 1/2) / angular).
ScanResult eigen_scan(const OrbitFamily& family, const Annulus& annulus, ScanOptions options = {});

struct CirclePartial {
  OrbitSeries series;
  double norm = 0.0;
  double identity_residual = 0.0;  // telescoping identity check
  double eigen_residual = 0.0;     // ||C F - omega F|| / ||F||
};

/// F_M(omega) = sum_{|n| <= M} omega^{-n} f o phi_n for unimodular omega.
CirclePartial circle_eigen_partial(const OrbitFamily& family, Complex omega, int truncation);

struct SquareSum {
  double partial = 0.0;
  double cauchy_gap = 0.0;  // part from window/2 < |n| <= window
};

SquareSum tail_square_sum(const OrbitFamily& family);

struct HypercyclicResult {
  bool holds = false;
  /// First member index whose forward or backward orbit did not settle below tol.
  std::optional<int> first_failing_index;
  /// Smallest n such that all ||f o phi_m||, n <= m <= window, are below tol.
  std::optional<int> forward_settle;
  std::optional<int> backward_settle;
};

/// Sufficient condition for hypercyclicity on the orbit span: forward and
/// backward norms settle below tol * ||f|| inside the window for every member
/// index |k| <= window / 2.
HypercyclicResult hypercyclic_check(const OrbitFamily& family, double tol);

struct OneSidedReport {
  double maximal = 0.0;  // discrete Hardy-Littlewood of |f|^2 at the fixed point
  double sup = 0.0;      // sup of the orbit norms over 1 <= |n| <= window on the side
  double first = 0.0;    // norm at n = -1 (Backward) or n = 1 (Forward)
  bool bounded = false;  // finite maximal value and sup <= 2 * first
};

/// Checks used for the one-sided construction. Backward: maximal function of
/// |f|^2 at the repulsive point and boundedness of the norms for n < 0.
/// Forward: the same at the attractive point for n > 0 (fixed-point roles
/// reversed). The maximal function uses an equispaced grid of `grid_size`.
OneSidedReport one_sided_check(const OrbitFamily& family, Direction side = Direction::Backward,
                               std::size_t grid_size = 4096);

struct HolderCase {
  double delta;
  WeightSpec weight;
  Annulus annulus;
};

/// Weighted classes [(z-1)(z+1)]^{1/2 + delta} H2 for `count` values of delta
/// spread over (0, 1/2 - 1/p), each paired with A(mu^-delta, mu^delta).
std::vector<HolderCase> holder_reduction_cases(double p, double mu, int count);

}  // namespace hypcomp
