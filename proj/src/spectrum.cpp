#include "hypcomp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hypcomp/error.hpp"
#include "hypcomp/fft.hpp"

namespace hypcomp {

namespace {

constexpr double kAliasRatio = 1e-12;
constexpr double kBandMargin = 1.25;
constexpr double kBoundaryTol = 1e-12;

}  // namespace

CompressionMatrix truncated_matrix(const HyperbolicAutomorphism& phi, std::size_t n,
                                   const BoundaryGrid& grid) {
  if (n == 0) throw Error(ErrorKind::Config, "dimension must be >= 1");
  const std::size_t size = grid.size();
  if (size < 4 * n) {
    throw Error(ErrorKind::Config, "boundary grid must have at least 4x the dimension");
  }
  std::vector<Complex> boundary(size);
  for (std::size_t j = 0; j < size; ++j) {
    const Complex w = phi.map().at(grid.node(j));
    boundary[j] = w / std::abs(w);
  }

  CompressionMatrix m;
  m.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.aliased.assign(n, false);
  std::vector<Complex> power(size, Complex{1.0});
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      for (std::size_t j = 0; j < size; ++j) power[j] *= boundary[j];
    }
    const std::vector<Complex> c = analysis_dft(power);
    double wrapped = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      const double e = std::norm(c[j]);
      total += e;
      if (j >= size / 2) wrapped += e;
    }
    m.aliased[k] = wrapped > kAliasRatio * total;
    for (std::size_t j = 0; j < n; ++j) {
      m.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = c[j];
    }
  }
  const double stretch = max_boundary_stretch(phi.map());
  m.resolved_columns = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::floor(static_cast<double>(n) / (kBandMargin * stretch))), 1, n);
  return m;
}

double operator_norm_estimate(const CompressionMatrix& m) {
  if (m.entries.size() == 0) throw Error(ErrorKind::Config, "empty matrix");
  // Largest eigenvalue of the Hermitian Gram matrix A* A.
  const Eigen::MatrixXcd gram = m.entries.adjoint() * m.entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "Hermitian eigensolver did not converge");
  }
  return std::sqrt(std::max(es.eigenvalues()(es.eigenvalues().size() - 1), 0.0));
}

double smallest_singular_value(const CompressionMatrix& m, std::size_t columns) {
  const std::size_t k = columns == 0 ? m.resolved_columns : std::min(columns, m.dimension());
  if (k == 0) throw Error(ErrorKind::Config, "no columns selected");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.entries.leftCols(static_cast<Eigen::Index>(k)));
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

const char* to_string(SpectralStatus s) {
  switch (s) {
    case SpectralStatus::Inside: return "inside";
    case SpectralStatus::Boundary: return "boundary";
    case SpectralStatus::Outside: return "outside";
  }
  return "?";
}

std::vector<ResidualPoint> annulus_residual_map(const HyperbolicAutomorphism& phi,
                                                const std::vector<Complex>& lambdas,
                                                ResidualMapOptions options) {
  const double log_mu = std::log(phi.multiplier());
  const std::size_t n = options.budget;
  const MoebiusMap& map = phi.map();
  const BoundaryGrid grid(recommended_grid_size(n, map));
  const bool transport = !phi.is_canonical();
  const MoebiusMap back = phi.normalizer().inverse();
  const BoundaryGrid transport_grid = transport ? BoundaryGrid(recommended_grid_size(n, back)) : grid;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto lift = [&](const H2Function& f) {
    return transport ? compose(f, back, transport_grid) : f;
  };

  std::vector<ResidualPoint> out;
  out.reserve(lambdas.size());
  for (const Complex lambda : lambdas) {
    if (lambda == Complex{}) throw Error(ErrorKind::Domain, "lambda must be nonzero");
    ResidualPoint p;
    p.lambda = lambda;
    p.a = std::log(lambda) / log_mu;
    p.distance = std::abs(p.a.real()) - 0.5;
    p.residual = nan;
    p.gram_det = nan;
    if (std::abs(p.distance) <= kBoundaryTol) {
      p.status = SpectralStatus::Boundary;
    } else if (p.distance > 0.0) {
      p.status = SpectralStatus::Outside;
    } else {
      p.status = SpectralStatus::Inside;
      const H2Function f = lift(eigenfunction_fa(p.a, n));
      const H2Function image = compose(f, map, grid);
      p.residual = relative_eigen_residual(image, f, lambda);
      if (options.gram) {
        const Complex shift(0.0, 2.0 * std::numbers::pi / log_mu);
        const H2Function g = lift(eigenfunction_fa(p.a + shift, n));
        const double ff = norm(f) * norm(f);
        const double gg = norm(g) * norm(g);
        p.gram_det = 1.0 - std::norm(inner(f, g)) / (ff * gg);
      }
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace hypcomp
