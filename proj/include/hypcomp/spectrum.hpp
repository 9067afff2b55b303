#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"

namespace hypcomp {

/// Finite section of C_phi: column k holds the first N Taylor coefficients of phi^k.
struct CompressionMatrix {
  Eigen::MatrixXcd entries;
  /// Per column: more than 1e-12 of the column energy sat above half the DFT grid.
  std::vector<bool> aliased;
  /// Leading columns whose images stay inside the coefficient band.
  std::size_t resolved_columns = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(entries.cols()); }
};

CompressionMatrix truncated_matrix(const HyperbolicAutomorphism& phi, std::size_t n,
                                   const BoundaryGrid& grid);

/// Largest singular value, from a dense Hermitian eigensolve of m* m.
double operator_norm_estimate(const CompressionMatrix& m);

/// Smallest singular value of the first `columns` columns (0: resolved columns).
double smallest_singular_value(const CompressionMatrix& m, std::size_t columns = 0);

enum class SpectralStatus { Inside, Boundary, Outside };
const char* to_string(SpectralStatus s);

struct ResidualPoint {
  Complex lambda;
  Complex a;  // log(lambda) / log(mu), principal branch
  SpectralStatus status = SpectralStatus::Inside;
  double residual = 0.0;   // NaN unless inside
  double gram_det = 0.0;   // NaN unless inside
  /// (|Re a| - 1/2) normalized; negative inside.
  double distance = 0.0;
};

struct ResidualMapOptions {
  std::size_t budget = 4096;
  bool gram = true;
};

/// For each lambda, the eigen-residual of the explicit eigenfunction f_a
/// (transported by the normalizer for non-canonical maps) and the Gram
/// determinant of f_a, f_{a + 2 pi i / log mu}.
std::vector<ResidualPoint> annulus_residual_map(const HyperbolicAutomorphism& phi,
                                                const std::vector<Complex>& lambdas,
                                                ResidualMapOptions options = {});

}  // namespace hypcomp
